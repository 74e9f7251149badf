#pragma once

// Grid-level verification: continuity, Born-density matching, covariance,
// weak-value identity, null metric, negative-density maps and the
// paraxial-vs-relativistic comparison. Every check returns a report whose
// `pass` is max_residual <= tolerance.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bohm/trajectories.hpp"

namespace bohm {

struct DiagnosticReport {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::pair<std::string, double>> details;

    /// NaN if absent.
    double detail(const std::string& key) const;
};

DiagnosticReport make_report(std::string name, double residual, double tolerance,
                             std::vector<std::pair<std::string, double>> details = {});

/// Flat key=value block terminated by a blank line.
std::string serialize_report(const DiagnosticReport& r);

using CurrentField = std::function<Current(SpacetimePoint)>;

/// Central-difference d_t rho + d_x j at every grid node, normalised by the
/// largest |d_t rho| on the grid.
DiagnosticReport continuity_check(const CurrentField& field, const GridSpec& grid, double h, double tol = 1e-5,
                                  std::string name = "continuity");
/// As above on the wavefunction's current. For the General regime the
/// details also carry the Klein-Gordon residual |psi_tt - psi_xx + kz^2 psi|
/// relative to max |psi| E^2, from differences of the quadrature derivatives.
DiagnosticReport continuity_check(const Wavefunction& wf, const GridSpec& grid, double h, double tol = 1e-5);

/// Log10 ratio of the continuity residuals at h_coarse and h_fine; passes when
/// the slope is within 0.25 of 2.
DiagnosticReport continuity_slope(const Wavefunction& wf, const GridSpec& grid, double h_coarse = 1e-3,
                                  double h_fine = 1e-4);

/// Sorted trajectory positions at each time against the rho-CDF quantiles at
/// the same levels; residual is the max deviation over the window width.
/// Trajectories that did not reach a time are left out at that time.
/// Throws InsufficientTrajectories below 100 paths.
DiagnosticReport density_match(const Wavefunction& wf, const std::vector<Trajectory>& trajs,
                               std::span<const double> times, double x_lo, double x_hi, double tol = 0.02);

/// j / rho against k_weak / H_weak at each point, relative to max(1, |V|).
DiagnosticReport weak_value_identity(const Wavefunction& wf, std::span<const SpacetimePoint> points, double tol);

/// Velocity transformed by the addition rule against the velocity of the
/// re-evaluated boosted field at boost_point(p), relative to max(1, |V'|).
/// Points where either |rho| <= rho_min are skipped and counted in the details.
DiagnosticReport covariance_check(const Wavefunction& lab, BoostFrame f, std::span<const SpacetimePoint> points,
                                  double tol, double rho_min = kRhoFloor);

/// Null form with V = j/rho over the grid.
DiagnosticReport null_metric_grid(const Wavefunction& wf, const GridSpec& grid, double tol = 1e-12);
DiagnosticReport null_metric_ensemble(const Wavefunction& wf, const std::vector<Trajectory>& trajs,
                                      double tol = 1e-8);

struct NegativeCell {
    int i = 0;  // time index
    int j = 0;  // space index
    SpacetimePoint point;
    double rho = 0.0;
};

/// Grid cells (in the wavefunction's own frame) where rho < 0.
std::vector<NegativeCell> negative_density_map(const Wavefunction& wf, const GridSpec& grid, unsigned workers = 0);

struct NegativityStats {
    long strict_cells = 0;       // rho < 0
    long unsuppressed_cells = 0; // rho < 0 where the density is not suppressed
    long significant_cells = 0;  // rho < -eta max|rho| where the density is not suppressed
    long node_cells = 0;         // significant cells at interference minima
    double min_rho = 0.0;
    double max_abs_rho = 0.0;
    double eta = 0.0;
};

/// A cell is suppressed when both movers are below e^-16 of their peak
/// amplitude; it sits at an interference minimum when |psi| is at most half
/// of |psi_R| + |psi_L|. eta = optical_negativity_bound(spec).
NegativityStats negativity_stats(const Wavefunction& wf, const GridSpec& grid, unsigned workers = 0);

/// Passes when there are no significant negative cells.
DiagnosticReport positivity_check(const Wavefunction& wf, const GridSpec& grid);

/// Max |V_general - V_paraxial| for each kz on the grid t in +-4 kz/k0,
/// x in [-6, 6]; passes when the last value is below tol and the sequence
/// strictly decreases.
DiagnosticReport paraxial_convergence(double alpha, double k0, double sigma, std::span<const double> kzs,
                                      int nt, int nx, const QuadratureOptions& quad = {}, double tol = 1e-3);

/// Max |V_general - V_paraxial| on one grid, ignoring points where either
/// |rho| <= kRhoFloor.
double paraxial_deviation(double alpha, double k0, double sigma, double kz, const GridSpec& grid,
                          const QuadratureOptions& quad = {});
GridSpec paraxial_comparison_grid(double k0, double kz, int nt, int nx);

/// Uniform random points inside the grid rectangle.
std::vector<SpacetimePoint> random_points(const GridSpec& box, int n, std::uint64_t seed);

}  // namespace bohm
