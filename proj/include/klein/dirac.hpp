#pragma once

#include "klein/types.hpp"

namespace klein {

//! Two components of the one-dimensional Dirac spinor at a point.
struct SpinorValue {
    cplx upper;
    cplx lower;
};

/*!
 * Dirac particle on the step V = V0 for x > 0.
 *
 * Branch selection: positive-energy plane waves where E > V0, the
 * negative-energy column (V0 - E + m, p) where E < V0 - m, and the decaying
 * evanescent column inside the gap, where R = 1 exactly. Gap edges return the
 * limit value R = 1. A massless particle is always transmitted.
 */
ScatteringSolution dirac_step_solve(const ParticleSpec& spec, double v0);

//! Step reflection as V0 -> infinity: (m / (E + sqrt(E^2 - m^2)))^2.
double dirac_step_limit(const ParticleSpec& spec);

/*!
 * Dirac particle on a square barrier of height V0 on (0, width].
 *
 * Closed forms, written without the cot/coth poles:
 *   V0 < E - m:  B = -V0 m sin(pa) / ((z^2 - E V0) sin(pa) + i p z cos(pa))
 *   V0 > E + m:  B = (V0 - 2E) m sin(pa) / ((E V0 - 2E^2 + z^2) sin(pa) + i p z cos(pa))
 *   in the gap:  B = -V0 m tanh(ka) / ((z^2 - E V0) tanh(ka) + i k z)
 * with z = sqrt(E^2 - m^2). At V0 = E the solution is the lower one-sided
 * endpoint value (see dirac_barrier_endpoints) and carries both sides; at the
 * gap edges R = 1. Both of those are limit values without a wavefunction.
 */
ScatteringSolution dirac_barrier_solve(const ParticleSpec& spec, double v0, double width);

//! Reflection amplitude alone, for V0 off the boundary points.
cplx dirac_barrier_reflection(const ParticleSpec& spec, double v0, double width);

/*!
 * V0 -> infinity limit of the barrier reflection at fixed phase = p a:
 * m^2 / (E^2 + (E^2 - m^2) cot^2(phase)). Throws at poles of cot.
 */
double dirac_barrier_limit(const ParticleSpec& spec, double phase);

/*!
 * One-sided barrier values at V0 = E, with k = m:
 *   below: B = -E^2 / (m^2 - z^2 - 2 i m z coth(m a))
 *   above: B = E / (m - i z coth(m a))
 * Both are 0 for a massless particle.
 */
OneSidedValues dirac_barrier_endpoints(const ParticleSpec& spec, double width);

SpinorValue dirac_wavefunction(const ScatteringSolution& sol, double x);

//! x-component of the probability flux, 2 Re(upper* lower).
double dirac_current(const SpinorValue& psi);

}  // namespace klein
