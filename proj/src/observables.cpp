#include "bohm/observables.hpp"

#include <numbers>
#include <stdexcept>

#include "bohm/parallel.hpp"

namespace bohm {
namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

double norm_or_throw(const PsiEval& e)
{
    const double n = std::norm(e.psi);
    if (!(n > kRhoFloor)) throw UndefinedAtNode("|psi|^2 below floor");
    return n;
}

}  // namespace

WeakValuePair weak_values(const PsiEval& e, SpacetimePoint p)
{
    const double n = norm_or_throw(e);
    const cplx c = std::conj(e.psi);
    return {std::imag(c * e.dpsi_dx) / n, -std::imag(c * e.dpsi_dt) / n, p};
}

WeakValuePair weak_values(const Wavefunction& wf, SpacetimePoint p)
{
    return weak_values(wf(p), p);
}

double weak_momentum(const Wavefunction& wf, SpacetimePoint p)
{
    return weak_values(wf, p).k_weak;
}

double weak_energy(const Wavefunction& wf, SpacetimePoint p)
{
    return weak_values(wf, p).H_weak;
}

Current headon_current(const WavepacketSpec& s, SpacetimePoint p)
{
    const double u = p.t - p.x, w = p.t + p.x;
    const double sR2 = s.sigmaR * s.sigmaR, sL2 = s.sigmaL * s.sigmaL;
    const double mu2 = s.alpha * kSqrt2OverPi * s.sigmaR * std::exp(-2.0 * sR2 * u * u);
    const double nu2 = (1.0 - s.alpha) * kSqrt2OverPi * s.sigmaL * std::exp(-2.0 * sL2 * w * w);
    Current c{mu2 - nu2, mu2 + nu2};
    if (s.alpha > 0.0 && s.alpha < 1.0) {
        const double munu = std::sqrt(s.alpha * (1.0 - s.alpha)) * kSqrt2OverPi *
                            std::sqrt(s.sigmaR * s.sigmaL) * std::exp(-sR2 * u * u - sL2 * w * w) / s.k_ref();
        const double phi = s.k0L * w - s.k0R * u;
        const double cs = std::cos(phi), sn = std::sin(phi);
        c.rho += munu * ((s.k0R + s.k0L) * cs - 2.0 * (sL2 * w - sR2 * u) * sn);
        c.j += munu * ((s.k0R - s.k0L) * cs + 2.0 * (sL2 * w + sR2 * u) * sn);
    }
    return c;
}

Current paraxial_current(const WavepacketSpec& s, SpacetimePoint p)
{
    if (!s.symmetric()) throw std::invalid_argument("paraxial_current: decomposition needs a symmetric spec");
    const double k0 = s.k0R, kz = s.kz, sg = s.sigmaR;
    const double s2 = sg * sg, s4 = s2 * s2;
    const double t = p.t, x = p.x;
    const double delta = kz * kz + 4.0 * t * t * s4;
    const double m0 = kSqrt2OverPi * kz * sg / (delta * std::sqrt(delta));
    const double c0 = m0 * (k0 * kz - 4.0 * t * x * s4);
    const double d0 = m0 * (k0 * kz + 4.0 * t * x * s4);
    const double k_0 = kSqrt2OverPi * kz * sg / std::sqrt(delta);
    const double eL = std::exp(-2.0 * s2 * (k0 * t + kz * x) * (k0 * t + kz * x) / delta);
    const double eR = std::exp(-2.0 * s2 * (k0 * t - kz * x) * (k0 * t - kz * x) / delta);
    Current c{s.alpha * d0 * eR - (1.0 - s.alpha) * c0 * eL, (1.0 - s.alpha) * k_0 * eL + s.alpha * k_0 * eR};
    if (s.alpha > 0.0 && s.alpha < 1.0) {
        const double w = std::sqrt(s.alpha * (1.0 - s.alpha));
        const double eI = std::exp(-2.0 * s2 * (k0 * k0 * t * t + kz * kz * x * x) / delta);
        const double arg = 2.0 * k0 * kz * kz * x / delta;
        const double l0 = 4.0 * s2 * t * m0 * (2.0 * x * s2 * std::cos(arg) + k0 * std::sin(arg));
        c.j += w * l0 * eI;
        c.rho += w * 2.0 * k_0 * std::cos(arg) * eI;
    }
    return c;
}

Current current_from_psi(const Wavefunction& wf, const PsiEval& e)
{
    const cplx c = std::conj(e.psi);
    if (wf.regime() == Regime::Paraxial) return {std::imag(c * e.dpsi_dx) / wf.spec().kz, std::norm(e.psi)};
    const double k = wf.spec().k_ref();
    return {std::imag(c * e.dpsi_dx) / k, -std::imag(c * e.dpsi_dt) / k};
}

Current current_density(const Wavefunction& wf, SpacetimePoint p)
{
    switch (wf.regime()) {
    case Regime::HeadOn: return headon_current(wf.local_spec(), p);
    case Regime::Paraxial:
        if (wf.spec().symmetric()) return paraxial_current(wf.spec(), p);
        break;
    case Regime::General: break;
    }
    return current_from_psi(wf, wf(p));
}

Velocity velocity_from_current(Current c)
{
    if (!(std::abs(c.rho) > kRhoFloor)) return Velocity::undefined();
    return Velocity::finite(c.j / c.rho);
}

Velocity velocity(const Wavefunction& wf, SpacetimePoint p)
{
    return velocity_from_current(current_density(wf, p));
}

double quantum_potential(const Wavefunction& wf, SpacetimePoint p)
{
    const PsiEval e = wf(p);
    const double n = norm_or_throw(e);
    const cplx d2 = wf.d2psi_dx2(p);
    const cplx c = std::conj(e.psi);
    // R = |psi|: R''/R = (|psi'|^2 + Re psi* psi'') / |psi|^2 - (Re psi* psi')^2 / |psi|^4.
    const double re1 = std::real(c * e.dpsi_dx);
    const double r2 = (std::norm(e.dpsi_dx) + std::real(c * d2)) / n - re1 * re1 / (n * n);
    return -r2 / (2.0 * wf.spec().kz);
}

FieldSample sample_field(const Wavefunction& wf, SpacetimePoint p)
{
    const PsiEval e = wf(p);
    FieldSample s;
    s.point = p;
    s.psi = e.psi;
    s.dpsi_dx = e.dpsi_dx;
    s.dpsi_dt = e.dpsi_dt;
    Current c;
    if (wf.regime() == Regime::HeadOn)
        c = headon_current(wf.local_spec(), p);
    else if (wf.regime() == Regime::Paraxial && wf.spec().symmetric())
        c = paraxial_current(wf.spec(), p);
    else
        c = current_from_psi(wf, e);
    s.j = c.j;
    s.rho = c.rho;
    s.V = velocity_from_current(c);
    return s;
}

std::vector<FieldSample> sample_grid(const Wavefunction& wf, const GridSpec& grid, unsigned workers)
{
    const auto nx = static_cast<std::size_t>(grid.nx);
    std::vector<FieldSample> out(static_cast<std::size_t>(grid.nt) * nx);
    parallel_for(
        out.size(),
        [&](std::size_t k) {
            const int i = static_cast<int>(k / nx), jx = static_cast<int>(k % nx);
            out[k] = sample_field(wf, {grid.t(i), grid.x(jx)});
        },
        workers);
    return out;
}

}  // namespace bohm
