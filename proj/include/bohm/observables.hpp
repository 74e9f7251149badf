#pragma once

// Weak values, the conserved current, the velocity field and the paraxial
// quantum potential.
//
// Sign conventions are fixed so that a pure right mover has rho > 0 and V = +1:
//   k_weak = Im(psi* d_x psi) / |psi|^2,   H_weak = -Im(psi* d_t psi) / |psi|^2,
//   j = Im(psi* d_x psi) / k_ref,          rho = -Im(psi* d_t psi) / k_ref.
// In the paraxial regime (j, rho) are the Schroedinger current and density,
// j = Im(psi* d_x psi) / kz and rho = |psi|^2, so V = k_weak / kz there.

#include <vector>

#include "bohm/wavefunction.hpp"

namespace bohm {

struct WeakValuePair {
    double k_weak = 0.0;
    double H_weak = 0.0;
    SpacetimePoint point;
};

/// Throw UndefinedAtNode when |psi|^2 <= kRhoFloor.
double weak_momentum(const Wavefunction& wf, SpacetimePoint p);
double weak_energy(const Wavefunction& wf, SpacetimePoint p);
WeakValuePair weak_values(const Wavefunction& wf, SpacetimePoint p);
WeakValuePair weak_values(const PsiEval& e, SpacetimePoint p);

/// Closed forms for HeadOn (any alpha, unequal packets allowed) and for
/// symmetric Paraxial packets (right, left and interference parts); otherwise
/// taken from the evaluated psi. rho is signed and never clipped.
Current current_density(const Wavefunction& wf, SpacetimePoint p);
/// Current from an already evaluated psi, using the regime's normalisation.
Current current_from_psi(const Wavefunction& wf, const PsiEval& e);

/// Head-on closed form in the given parameters.
Current headon_current(const WavepacketSpec& spec, SpacetimePoint p);
/// Paraxial right + left + interference decomposition; needs a symmetric spec.
Current paraxial_current(const WavepacketSpec& spec, SpacetimePoint p);

/// j / rho, undefined when |rho| <= kRhoFloor.
Velocity velocity_from_current(Current c);
Velocity velocity(const Wavefunction& wf, SpacetimePoint p);

/// Q = -(1 / 2kz) R'' / R with R = |psi|; Paraxial only.
double quantum_potential(const Wavefunction& wf, SpacetimePoint p);

FieldSample sample_field(const Wavefunction& wf, SpacetimePoint p);
/// Row-major over the grid (t outer, x inner); evaluated in parallel with
/// results identical to a sequential sweep.
std::vector<FieldSample> sample_grid(const Wavefunction& wf, const GridSpec& grid, unsigned workers = 0);

}  // namespace bohm
