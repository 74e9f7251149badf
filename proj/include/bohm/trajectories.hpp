#pragma once

// Bohmian trajectories: density-quantile seeding, adaptive integration of
// dx/dt = V(t, x), and mapping ensembles between frames.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bohm/ode.hpp"
#include "bohm/observables.hpp"

namespace bohm {

using TrajectoryStatus = OdeStatus;

struct Trajectory {
    int id = 0;
    std::vector<SpacetimePoint> samples;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    double max_step_error = 0.0;
};

enum class Sampling { DensityQuantile, UniformWindow, DensityRandom };

struct EnsembleSpec {
    int n_traj = 40;
    double t0 = -4.0;
    double t1 = 4.0;
    Sampling sampling = Sampling::DensityQuantile;
    std::uint64_t seed = 0;  // DensityRandom only
};

struct IntegratorOptions {
    double abs_tol = 1e-8;
    double rel_tol = 0.0;
    std::optional<std::pair<double, double>> x_domain;
};

/// Cumulative distribution of rho(., t) on [x_lo, x_hi] from the trapezoid
/// rule on a uniform mesh. rho is used signed.
class DensityCdf {
public:
    DensityCdf(const Wavefunction& wf, double t, double x_lo, double x_hi, int n = 20001);

    /// Position where the normalised CDF reaches q in [0, 1].
    double quantile(double q) const;
    /// Normalised CDF at x (clamped to the window).
    double cdf(double x) const;
    double total() const { return cum_.back(); }
    double min_rho() const { return min_rho_; }
    double max_rho() const { return max_rho_; }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }

private:
    double x_lo_, x_hi_, dx_;
    std::vector<double> cum_;
    double min_rho_ = 0.0, max_rho_ = 0.0;
};

/// Relative negative density attributable to the optical approximation,
/// (max sigma / k0)^2. Boost invariant.
double optical_negativity_bound(const WavepacketSpec& spec);

/// Initial positions at ens.t0. Quantile seeding uses the midpoints
/// (i + 1/2) / n of the normalised CDF.
/// Throws NegativeDensityInWindow when rho(., t0) dips below
/// -optical_negativity_bound * max rho on the window.
std::vector<double> sample_initial(const Wavefunction& wf, const EnsembleSpec& ens, double x_lo, double x_hi);

/// Integrates one path through `times` (first entry is the start time).
/// Samples are recorded at every time reached; integration may run backwards.
Trajectory integrate(const Wavefunction& wf, double x0, std::span<const double> times,
                     const IntegratorOptions& opts = {}, int id = 0);
Trajectory integrate(const Wavefunction& wf, double x0, double t0, double t1, const IntegratorOptions& opts = {});

/// Seeds on [x_lo, x_hi] at times.front() and integrates every path through
/// `times`, in parallel; output is ordered by id and independent of scheduling.
std::vector<Trajectory> ensemble(const Wavefunction& wf, const EnsembleSpec& ens, std::span<const double> times,
                                 double x_lo, double x_hi, const IntegratorOptions& opts = {},
                                 unsigned workers = 0);

/// Applies boost_point to every sample. Output may run backwards in t'.
std::vector<Trajectory> map_to_frame(const std::vector<Trajectory>& trajs, BoostFrame f);

/// Evenly spaced output times from t0 to t1 inclusive.
std::vector<double> output_times(double t0, double t1, int n);

}  // namespace bohm
