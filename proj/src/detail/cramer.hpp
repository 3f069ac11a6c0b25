#pragma once

#include <array>

#include "klein/types.hpp"

namespace klein::detail {

inline cplx det2(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b)
{
    return a[0] * b[1] - a[1] * b[0];
}

// Step at x = 0: incident + B reflected = F transmitted. Solved by crossing
// with the reflected column, so F does not depend on B.
inline cplx step_transmitted(const BasisFunction& incident,
                             const BasisFunction& reflected,
                             const BasisFunction& transmitted)
{
    auto u_in = incident.at(0.0);
    auto u_out = reflected.at(0.0);
    return det2(u_in, u_out) / det2(transmitted.at(0.0), u_out);
}

struct BarrierAmplitudes {
    cplx first;   // F1
    cplx second;  // F2
    cplx transmitted;  // G
};

/*!
 * Interior and transmitted amplitudes of a barrier on (0, width).
 *
 * G comes from the full 4x4 system by Cramer's rule; F2 from the x = 0
 * conditions crossed with the first interior column, F1 from x = width crossed
 * with the second. Only direction vectors enter the divisions, so the
 * exp(-k a) factors of evanescent interiors never appear as divisors.
 */
inline BarrierAmplitudes barrier_amplitudes(const BasisFunction& incident,
                                            const BasisFunction& reflected,
                                            const std::array<BasisFunction, 2>& interior,
                                            const BasisFunction& outgoing,
                                            double width, cplx reflection)
{
    const auto u_in = incident.at(0.0);
    const auto u_out = reflected.at(0.0);
    const auto w00 = interior[0].at(0.0);
    const auto w10 = interior[1].at(0.0);
    const auto w0a = interior[0].at(width);
    const auto w1a = interior[1].at(width);
    const auto t_a = outgoing.at(width);
    const auto& s0 = interior[0].components;
    const auto& s1 = interior[1].components;

    const cplx denom = det2(t_a, w1a) * det2(w00, u_out) + det2(w0a, t_a) * det2(w10, u_out);
    const cplx g = det2(u_in, u_out) * det2(w0a, w1a) / denom;

    std::array<cplx, 2> v0{u_in[0] + reflection * u_out[0], u_in[1] + reflection * u_out[1]};
    const cplx f2 = det2(s0, v0) / det2(s0, w10);
    const cplx f1 = g * det2(t_a, s1) / det2(w0a, s1);
    return {f1, f2, g};
}

}  // namespace klein::detail
