#pragma once

#include "klein/types.hpp"

namespace klein {

/*!
 * Place V on the four-way partition around the energy gap [E - m, E + m].
 *
 * Ties: V = E - m and V = E + m belong to the gap (lower/upper edge flag),
 * V = E belongs to EvanescentBelowE with the AtEnergy flag. Total function.
 */
RegimeClass classify_regime(double energy, double potential, double mass_energy);

/*!
 * Branch and momentum in a region of constant potential.
 *
 * p = sqrt((E-V)^2 - m^2) when |E - V| >= m, otherwise k = sqrt(m^2 - (E-V)^2).
 * Positive branch when E >= V.
 */
RegionKinematics kinematics(double energy, double potential, double mass_energy);

// Endpoints of the evanescent V interval, [E - m, E + m].
struct GapInterval {
    double lower;
    double upper;
};
GapInterval gap_interval(const ParticleSpec& spec);

}  // namespace klein
