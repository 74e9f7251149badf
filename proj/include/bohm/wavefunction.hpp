#pragma once

// Position-space wavefunction psi(x, t) and its first derivatives for the
// three dispersion regimes.
//
// Every mover carries the amplitude sqrt(weight) (2 sigma^2 / pi)^{1/4}
// sqrt(k_ref / k0), where k_ref = sqrt(k0R k0L). The last factor is the
// per-mover relativistic normalisation; with it psi is a Lorentz scalar under
// boosts along x (primed parameters in primed coordinates reproduce the same
// field), and for symmetric packets it is identically 1.

#include "bohm/core.hpp"
#include "bohm/quadrature.hpp"

namespace bohm {

enum class EvalMethod { ClosedHeadOn, ClosedParaxial, Quadrature };

struct PsiEval {
    cplx psi;
    cplx dpsi_dx;
    cplx dpsi_dt;
    EvalMethod method = EvalMethod::ClosedHeadOn;
    double est_quad_error = 0.0;
};

struct QuadratureOptions {
    int order = 20;             // Gauss-Legendre points per panel
    double tol = 1e-10;         // node-doubling change, relative to the peak amplitude
    int max_refinements = 10;
    double window_sigmas = 12.0;  // envelope truncation, in bandwidths either side of the centre
    int min_panels = 12;
};

/// One quadrature rule per mover, over that mover's (possibly boosted) window.
struct EnvelopeRules {
    QuadratureRule right;
    QuadratureRule left;
};

/// Peak amplitude of the right (left) mover, including its normalisation.
double mover_amplitude(const WavepacketSpec& spec, bool right);

/// Closed form for E(k) = |k| with each envelope extended over the whole axis.
PsiEval eval_headon(const WavepacketSpec& spec, SpacetimePoint p);

/// Closed form for E(k) = kz + k^2 / (2 kz).
PsiEval eval_paraxial(const WavepacketSpec& spec, SpacetimePoint p);
/// d^2 psi / dx^2 of the paraxial closed form.
cplx paraxial_d2psi_dx2(const WavepacketSpec& spec, SpacetimePoint p);

/// Quadrature for E(k) = sqrt(k^2 + kz^2) with node doubling until the change
/// drops below opts.tol. `frame` evaluates the same state from a boosted
/// observer (p is then in primed coordinates): the integral is carried out
/// over primed momenta with the Lorentz-invariant measure dk / E.
/// Throws QuadratureNotConverged after opts.max_refinements doublings.
PsiEval eval_general(const WavepacketSpec& spec, SpacetimePoint p, const QuadratureOptions& opts = {});
PsiEval eval_general(const WavepacketSpec& spec, BoostFrame frame, SpacetimePoint p,
                     const QuadratureOptions& opts = {});

/// Rules whose panel width resolves the phase k x - E t at `p`, scaled by
/// `refinement` (1, 2, 4, ...).
EnvelopeRules make_envelope_rules(const WavepacketSpec& spec, BoostFrame frame, SpacetimePoint p,
                                  int refinement, const QuadratureOptions& opts = {});
/// Single quadrature pass with fixed rules (est_quad_error left at 0).
PsiEval eval_with_rules(const WavepacketSpec& spec, BoostFrame frame, SpacetimePoint p,
                        const EnvelopeRules& rules);

/// Regime-dispatching evaluator for one state seen from one frame.
///
/// HeadOn boosts use the Doppler-shifted closed form (exact); General boosts
/// use the primed-momentum quadrature. Paraxial fields are not Lorentz
/// covariant, so a Paraxial spec only accepts the identity frame.
class Wavefunction {
public:
    explicit Wavefunction(const WavepacketSpec& spec, const QuadratureOptions& quad = {});
    Wavefunction(const WavepacketSpec& spec, BoostFrame frame, const QuadratureOptions& quad = {});

    /// `p` is in this frame's coordinates.
    PsiEval operator()(SpacetimePoint p) const;
    /// Paraxial regime only.
    cplx d2psi_dx2(SpacetimePoint p) const;

    const WavepacketSpec& spec() const { return lab_; }
    /// Doppler-shifted parameters in this frame (equal to spec() at rest).
    const WavepacketSpec& local_spec() const { return local_; }
    BoostFrame frame() const { return frame_; }
    Regime regime() const { return lab_.regime; }
    const QuadratureOptions& quadrature() const { return quad_; }
    /// The constant 2 k_ref dividing 2 Im psi* d psi.
    double current_normalisation() const { return 2.0 * lab_.k_ref(); }

    /// Same state seen from `f` composed on top of this frame.
    Wavefunction boosted(BoostFrame f) const;

private:
    WavepacketSpec lab_;
    WavepacketSpec local_;
    BoostFrame frame_;
    QuadratureOptions quad_;
};

}  // namespace bohm
