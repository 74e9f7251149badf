#include "bohm/relativity.hpp"

namespace bohm {

SpacetimePoint boost_point(SpacetimePoint p, BoostFrame f)
{
    const double g = f.gamma(), v = f.v();
    return {g * (p.t - v * p.x), g * (p.x - v * p.t)};
}

double add_velocity(double V, double v)
{
    return (V - v) / (1.0 - v * V);
}

Velocity add_velocity(Velocity V, BoostFrame f)
{
    if (!V.defined()) {
        if (!V.divergent()) return V;
        // Infinite speed maps to -1/v (or stays infinite when v = 0).
        if (f.v() == 0.0) return V;
        return Velocity::finite(-1.0 / f.v());
    }
    const double u = V.value_or_nan();
    const double v = f.v();
    const double den = 1.0 - v * u;
    if (den == 0.0) {
        // Approaching from 1 - vV > 0, the quotient has the sign of V - v.
        return Velocity::divergent(u - v >= 0.0 ? 1 : -1);
    }
    // Exact light-speed invariance, independent of rounding.
    if (u == 1.0 || u == -1.0) return Velocity::finite(u);
    return Velocity::finite((u - v) / den);
}

Current boost_current(Current c, BoostFrame f)
{
    const double g = f.gamma(), v = f.v();
    return {g * (c.j - v * c.rho), g * (c.rho - v * c.j)};
}

BoostFrame compose(BoostFrame first, BoostFrame second)
{
    const double a = first.v(), b = second.v();
    return BoostFrame((a + b) / (1.0 + a * b));
}

BoostFrame relative(BoostFrame from, BoostFrame to)
{
    return BoostFrame(add_velocity(to.v(), from.v()));
}

double doppler_right(BoostFrame f)
{
    const double v = f.v();
    return std::sqrt((1.0 - v) / (1.0 + v));
}

BoostedSpec boost_spec(const WavepacketSpec& spec, BoostFrame f)
{
    const double dr = doppler_right(f);
    const double dl = 1.0 / dr;
    WavepacketSpec p = spec;
    p.k0R = dr * spec.k0R;
    p.sigmaR = dr * spec.sigmaR;
    p.k0L = dl * spec.k0L;
    p.sigmaL = dl * spec.sigmaL;
    return {p, f};
}

BoostFrame positivity_frame(const WavepacketSpec& spec, double optical_ratio)
{
    if (!validate_spec(spec, optical_ratio).optical)
        throw NonOpticalSpec("positivity frame requires an optical spec (k0 >= ratio * sigma on both movers)");
    return BoostFrame((spec.k0R - spec.k0L) / (spec.k0R + spec.k0L));
}

}  // namespace bohm
