#pragma once

#include "klein/types.hpp"

namespace klein {

//! psi and dpsi/dx at a point.
struct ScalarWaveValue {
    cplx value;
    cplx derivative;
};

//! Energy branch of the decoupled equation; E == V falls on the negative side.
Branch kg_branch(double energy, double potential, double mass_energy);

/*!
 * Spin-0 particle on the step V = V0 for x > 0.
 *
 * B = (q - p) / (q + p) in both propagating ranges; inside the gap
 * B = (q - ik) / (q + ik), so R = 1. Gap edges (p = 0) return the limit R = 1.
 */
ScatteringSolution kg_step_solve(const ParticleSpec& spec, double v0);

/*!
 * Spin-0 particle on a square barrier of height V0 on (0, width].
 *
 *   propagating: B = (q^2 - p^2) sin(pa) / ((p^2 + q^2) sin(pa) + 2ipq cos(pa))
 *   gap:         B = (k^2 + q^2) tanh(ka) / ((q^2 - k^2) tanh(ka) + 2ikq)
 *   k = 0:       B = qa / (qa + 2i)
 * The k = 0 value is a limit without an attached wavefunction.
 */
ScatteringSolution kg_barrier_solve(const ParticleSpec& spec, double v0, double width);

//! Reflection amplitude alone (no amplitudes, no flags).
cplx kg_barrier_reflection(const ParticleSpec& spec, double v0, double width);

ScalarWaveValue kg_wavefunction(const ScatteringSolution& sol, double x);

//! Im(psi* psi').
double kg_current(const ScalarWaveValue& psi);

}  // namespace klein
