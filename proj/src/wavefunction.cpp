#include "bohm/wavefunction.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bohm/relativity.hpp"

namespace bohm {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double weight(const WavepacketSpec& spec, bool right)
{
    return std::sqrt(right ? spec.alpha : 1.0 - spec.alpha);
}

// Momentum-space description of one mover: f(k) = amp exp(-(k - kc)^2 / (4 s^2)).
struct Mover {
    bool right = true;
    double amp = 0.0;
    double kc = 0.0;
    double s = 1.0;
};

Mover mover(const WavepacketSpec& spec, bool right)
{
    Mover m;
    m.right = right;
    m.s = right ? spec.sigmaR : spec.sigmaL;
    const double k0 = right ? spec.k0R : spec.k0L;
    m.kc = right ? k0 : -k0;
    m.amp = weight(spec, right) * std::sqrt(spec.k_ref() / k0) *
            std::pow(2.0 * kPi * m.s * m.s, -0.25) / std::sqrt(2.0 * kPi);
    return m;
}

double energy(double k, double kz) { return std::hypot(k, kz); }

// E - kz without cancellation.
double energy_minus_kz(double k, double e, double kz)
{
    const double den = e + kz;
    return den > 0.0 ? k * k / den : 0.0;
}

// Lab momentum window of a mover, mapped to the observer's momenta.
std::array<double, 2> primed_window(const Mover& m, double kz, BoostFrame f, double window_sigmas)
{
    const double g = f.gamma(), v = f.v();
    auto to_primed = [&](double k) { return g * (k - v * energy(k, kz)); };
    return {to_primed(m.kc - window_sigmas * m.s), to_primed(m.kc + window_sigmas * m.s)};
}

QuadratureRule mover_rule(const Mover& m, double kz, BoostFrame f, SpacetimePoint p, int refinement,
                          const QuadratureOptions& opts)
{
    const auto [lo, hi] = primed_window(m, kz, f, opts.window_sigmas);
    // Group velocity k/E is monotone in k, so the phase rate |x - t k/E| peaks
    // at an end of the window.
    const double rate = std::max(std::abs(p.x - p.t * lo / energy(lo, kz)),
                                 std::abs(p.x - p.t * hi / energy(hi, kz)));
    const double width = kPi / std::max(rate, 1.0);
    const int base = std::max(opts.min_panels, static_cast<int>(std::ceil((hi - lo) / width)));
    std::array<double, 1> zero{0.0};
    std::span<const double> bps = kz == 0.0 ? std::span<const double>(zero) : std::span<const double>{};
    return make_panel_rule(lo, hi, base * refinement, opts.order, bps);
}

struct Sums {
    cplx s0, sx, st;
};

Sums integrate_mover(const Mover& m, double kz, BoostFrame f, SpacetimePoint p, const QuadratureRule& rule)
{
    const double g = f.gamma(), v = f.v();
    const double inv4s2 = 1.0 / (4.0 * m.s * m.s);
    Sums out;
    for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
        const double kp = rule.nodes[n];
        const double ep = energy(kp, kz);
        // Lab momentum of the same plane wave, and the Jacobian E / E'.
        const double k = f.is_identity() ? kp : g * (kp + v * ep);
        double jac = 1.0;
        if (!f.is_identity()) jac = ep > 0.0 ? g * (ep + v * kp) / ep : g * (1.0 + (kp < 0.0 ? -v : v));
        const double d = k - m.kc;
        const double env = rule.weights[n] * m.amp * jac * std::exp(-d * d * inv4s2);
        const double de = energy_minus_kz(kp, ep, kz);
        const cplx term = env * std::polar(1.0, kp * p.x - de * p.t);
        out.s0 += term;
        out.sx += term * kp;
        out.st += term * de;
    }
    out.sx *= kI;
    out.st *= -kI;
    return out;
}

PsiEval assemble(const Sums& s, double kz, double t)
{
    const cplx carrier = std::polar(1.0, -kz * t);
    PsiEval e;
    e.psi = carrier * s.s0;
    e.dpsi_dx = carrier * s.sx;
    e.dpsi_dt = carrier * (s.st - kI * kz * s.s0);
    e.method = EvalMethod::Quadrature;
    return e;
}

std::vector<Mover> active_movers(const WavepacketSpec& spec)
{
    std::vector<Mover> ms;
    if (spec.alpha > 0.0) ms.push_back(mover(spec, true));
    if (spec.alpha < 1.0) ms.push_back(mover(spec, false));
    return ms;
}

// Largest |k'| and E' over the integration windows, for scaling derivative changes.
std::array<double, 2> derivative_scales(const std::vector<Mover>& ms, double kz, BoostFrame f,
                                        const QuadratureOptions& opts)
{
    double kmax = 1.0;
    for (const auto& m : ms)
        for (double k : primed_window(m, kz, f, opts.window_sigmas)) kmax = std::max(kmax, std::abs(k));
    return {kmax, std::max(1.0, energy(kmax, kz))};
}

// Paraxial: one mover's field and log-derivatives.
struct ParaxialPart {
    cplx psi, dlog_dx, dlog_dt;
    cplx A;
};

ParaxialPart paraxial_part(const WavepacketSpec& spec, bool right, SpacetimePoint p)
{
    const Mover m = mover(spec, right);
    const double kz = spec.kz, s2 = m.s * m.s;
    const cplx dA = kI / (2.0 * kz);
    const cplx A = 1.0 / (4.0 * s2) + p.t * dA;
    // B^2/(4A) - kc^2/(4 s^2) rewritten so the large terms cancel analytically.
    const cplx Q = -p.x * p.x + kI * m.kc * (p.x - p.t / (2.0 * kz) * m.kc) / s2;
    const cplx dQ = -kI * m.kc * m.kc / (2.0 * kz * s2);
    ParaxialPart out;
    out.A = A;
    out.psi = m.amp * std::sqrt(kPi / A) * std::exp(Q / (4.0 * A)) * std::polar(1.0, -kz * p.t);
    out.dlog_dx = (-2.0 * p.x + kI * m.kc / s2) / (4.0 * A);
    out.dlog_dt = -0.5 * dA / A + dQ / (4.0 * A) - Q * dA / (4.0 * A * A) - kI * kz;
    return out;
}

void require_regime(const WavepacketSpec& spec, Regime r, const char* who)
{
    if (spec.regime != r)
        throw std::invalid_argument(std::string(who) + ": spec regime is " + std::string(to_string(spec.regime)));
}

}  // namespace

double mover_amplitude(const WavepacketSpec& spec, bool right)
{
    const double s = right ? spec.sigmaR : spec.sigmaL;
    const double k0 = right ? spec.k0R : spec.k0L;
    return weight(spec, right) * std::pow(2.0 * s * s / kPi, 0.25) * std::sqrt(spec.k_ref() / k0);
}

PsiEval eval_headon(const WavepacketSpec& spec, SpacetimePoint p)
{
    const double u = p.t - p.x, w = p.t + p.x;
    const double sR2 = spec.sigmaR * spec.sigmaR, sL2 = spec.sigmaL * spec.sigmaL;
    const cplx vR = kI * spec.k0R + u * sR2;
    const cplx vL = kI * spec.k0L + w * sL2;
    const cplx a = spec.alpha > 0.0 ? mover_amplitude(spec, true) * std::exp(-u * vR) : cplx{};
    const cplx b = spec.alpha < 1.0 ? mover_amplitude(spec, false) * std::exp(-w * vL) : cplx{};
    // d/du (u vR) = ik0 + 2u sigma^2, likewise for w.
    const cplx gR = kI * spec.k0R + 2.0 * u * sR2;
    const cplx gL = kI * spec.k0L + 2.0 * w * sL2;
    PsiEval e;
    e.psi = a + b;
    e.dpsi_dx = a * gR - b * gL;
    e.dpsi_dt = -a * gR - b * gL;
    e.method = EvalMethod::ClosedHeadOn;
    return e;
}

PsiEval eval_paraxial(const WavepacketSpec& spec, SpacetimePoint p)
{
    if (!(spec.kz > 0.0)) throw std::invalid_argument("eval_paraxial: kz must be positive");
    PsiEval e;
    e.method = EvalMethod::ClosedParaxial;
    for (bool right : {true, false}) {
        if (weight(spec, right) == 0.0) continue;
        const auto part = paraxial_part(spec, right, p);
        e.psi += part.psi;
        e.dpsi_dx += part.psi * part.dlog_dx;
        e.dpsi_dt += part.psi * part.dlog_dt;
    }
    return e;
}

cplx paraxial_d2psi_dx2(const WavepacketSpec& spec, SpacetimePoint p)
{
    cplx out;
    for (bool right : {true, false}) {
        if (weight(spec, right) == 0.0) continue;
        const auto part = paraxial_part(spec, right, p);
        out += part.psi * (part.dlog_dx * part.dlog_dx - 1.0 / (2.0 * part.A));
    }
    return out;
}

EnvelopeRules make_envelope_rules(const WavepacketSpec& spec, BoostFrame frame, SpacetimePoint p,
                                  int refinement, const QuadratureOptions& opts)
{
    EnvelopeRules r;
    if (spec.alpha > 0.0) r.right = mover_rule(mover(spec, true), spec.kz, frame, p, refinement, opts);
    if (spec.alpha < 1.0) r.left = mover_rule(mover(spec, false), spec.kz, frame, p, refinement, opts);
    return r;
}

PsiEval eval_with_rules(const WavepacketSpec& spec, BoostFrame frame, SpacetimePoint p,
                        const EnvelopeRules& rules)
{
    Sums total;
    for (const auto& m : active_movers(spec)) {
        const Sums s = integrate_mover(m, spec.kz, frame, p, m.right ? rules.right : rules.left);
        total.s0 += s.s0;
        total.sx += s.sx;
        total.st += s.st;
    }
    return assemble(total, spec.kz, p.t);
}

PsiEval eval_general(const WavepacketSpec& spec, SpacetimePoint p, const QuadratureOptions& opts)
{
    return eval_general(spec, BoostFrame{}, p, opts);
}

PsiEval eval_general(const WavepacketSpec& spec, BoostFrame frame, SpacetimePoint p,
                     const QuadratureOptions& opts)
{
    const auto ms = active_movers(spec);
    double amp_scale = 0.0;
    for (bool right : {true, false}) amp_scale += mover_amplitude(spec, right);
    const auto [kscale, escale] = derivative_scales(ms, spec.kz, frame, opts);

    PsiEval prev = eval_with_rules(spec, frame, p, make_envelope_rules(spec, frame, p, 1, opts));
    double change = 0.0;
    for (int level = 1; level <= opts.max_refinements; ++level) {
        PsiEval next = eval_with_rules(spec, frame, p, make_envelope_rules(spec, frame, p, 1 << level, opts));
        change = std::max({std::abs(next.psi - prev.psi), std::abs(next.dpsi_dx - prev.dpsi_dx) / kscale,
                           std::abs(next.dpsi_dt - prev.dpsi_dt) / escale}) /
                 amp_scale;
        if (change <= opts.tol) {
            next.est_quad_error = change;
            return next;
        }
        prev = next;
    }
    throw QuadratureNotConverged("quadrature did not converge at t=" + std::to_string(p.t) +
                                     " x=" + std::to_string(p.x),
                                 change);
}

Wavefunction::Wavefunction(const WavepacketSpec& spec, const QuadratureOptions& quad)
    : Wavefunction(spec, BoostFrame{}, quad)
{
}

Wavefunction::Wavefunction(const WavepacketSpec& spec, BoostFrame frame, const QuadratureOptions& quad)
    : lab_(spec), local_(boost_spec(spec, frame).spec), frame_(frame), quad_(quad)
{
    if (spec.regime == Regime::Paraxial && !frame.is_identity())
        throw std::invalid_argument("paraxial fields cannot be boosted");
}

PsiEval Wavefunction::operator()(SpacetimePoint p) const
{
    switch (lab_.regime) {
    case Regime::HeadOn: return eval_headon(local_, p);
    case Regime::Paraxial: return eval_paraxial(lab_, p);
    case Regime::General: return eval_general(lab_, frame_, p, quad_);
    }
    throw std::logic_error("unknown regime");
}

cplx Wavefunction::d2psi_dx2(SpacetimePoint p) const
{
    require_regime(lab_, Regime::Paraxial, "d2psi_dx2");
    return paraxial_d2psi_dx2(lab_, p);
}

Wavefunction Wavefunction::boosted(BoostFrame f) const
{
    return Wavefunction(lab_, compose(frame_, f), quad_);
}

}  // namespace bohm
