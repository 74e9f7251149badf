#include "bohm/metric.hpp"

#include <algorithm>
#include <limits>

#include "bohm/parallel.hpp"

namespace bohm {

double shift_from_velocity(double V)
{
    return (std::abs(V) - 1.0) * sgn(V);
}

MetricSample metric_from_velocity(SpacetimePoint p, double V)
{
    MetricSample m;
    m.point = p;
    m.v_s = shift_from_velocity(V);
    m.g_tt = -(1.0 - m.v_s * m.v_s);
    m.g_tx = -m.v_s;
    m.g_xx = 1.0;
    return m;
}

double shift_field(const Wavefunction& wf, SpacetimePoint p)
{
    return shift_from_velocity(velocity(wf, p).value());
}

MetricSample metric_sample(const Wavefunction& wf, SpacetimePoint p)
{
    return metric_from_velocity(p, velocity(wf, p).value());
}

double null_form(double v_s, double V)
{
    const double d = V - v_s;
    return (d - 1.0) * (d + 1.0);
}

double metric_determinant(const MetricSample& m)
{
    return m.g_tt * m.g_xx - m.g_tx * m.g_tx;
}

double null_residual(const Trajectory& traj, const Wavefunction& wf)
{
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const Velocity v = velocity(wf, s);
        if (!v.defined()) continue;
        const double V = v.value_or_nan();
        worst = std::max(worst, std::abs(null_form(shift_from_velocity(V), V)));
    }
    return worst;
}

std::vector<double> shift_grid(const Wavefunction& wf, const GridSpec& grid, unsigned workers)
{
    const auto nx = static_cast<std::size_t>(grid.nx);
    std::vector<double> out(static_cast<std::size_t>(grid.nt) * nx);
    parallel_for(
        out.size(),
        [&](std::size_t k) {
            const Velocity v = velocity(wf, {grid.t(static_cast<int>(k / nx)), grid.x(static_cast<int>(k % nx))});
            out[k] = v.defined() ? shift_from_velocity(v.value_or_nan()) : std::numeric_limits<double>::quiet_NaN();
        },
        workers);
    return out;
}

}  // namespace bohm
