#pragma once

// Reconstruction used only by negative tests: the Schroedinger-style current
// forced onto the head-on field, rho = |psi|^2 and j = Im(psi* d_x psi) / k_ref.
// It drops the tail term of the Klein-Gordon density and so violates
// continuity once the movers interfere.

#include "bohm/wavefunction.hpp"

namespace bohm::detail {

inline Current naive_schrodinger_current(const WavepacketSpec& spec, SpacetimePoint p)
{
    const PsiEval e = eval_headon(spec, p);
    return {std::imag(std::conj(e.psi) * e.dpsi_dx) / spec.k_ref(), std::norm(e.psi)};
}

}  // namespace bohm::detail
