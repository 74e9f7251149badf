#pragma once

// 1+1 dimensional Alcubierre-form metric whose coordinate light speed equals
// the Bohmian velocity: ds^2 = -(1 - v_s^2) dt^2 - 2 v_s dt dx + dx^2.

#include <vector>

#include "bohm/trajectories.hpp"

namespace bohm {

struct MetricSample {
    SpacetimePoint point;
    double v_s = 0.0;
    double g_tt = 0.0;
    double g_tx = 0.0;
    double g_xx = 1.0;
};

/// +1 on positive values, -1 on zero and negative values.
inline double sgn(double v) { return v > 0.0 ? 1.0 : -1.0; }

/// v_s = (|V| - 1) sgn(V).
double shift_from_velocity(double V);
MetricSample metric_from_velocity(SpacetimePoint p, double V);

/// Throws UndefinedAtNode where |rho| <= kRhoFloor.
double shift_field(const Wavefunction& wf, SpacetimePoint p);
MetricSample metric_sample(const Wavefunction& wf, SpacetimePoint p);

/// ds^2/dt^2 along dx/dt = V, evaluated as (V - v_s - 1)(V - v_s + 1), which
/// equals -(1 - v_s^2) - 2 v_s V + V^2 without the cancellation at large |V|.
double null_form(double v_s, double V);

/// Determinant of the (t, x) block, g_tt g_xx - g_tx^2.
double metric_determinant(const MetricSample& m);

/// Max |ds^2/dt^2| over the samples of `traj`, with V and v_s taken from the
/// field at each sample. Samples where the velocity is undefined are skipped.
double null_residual(const Trajectory& traj, const Wavefunction& wf);

/// v_s over the grid, row-major; NaN where undefined.
std::vector<double> shift_grid(const Wavefunction& wf, const GridSpec& grid, unsigned workers = 0);

}  // namespace bohm
