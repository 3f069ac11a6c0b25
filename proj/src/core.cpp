#include "klein/core.hpp"

#include <algorithm>
#include <cmath>

namespace klein {

RegimeClass classify_regime(double energy, double potential, double mass_energy)
{
    // The partition runs on E - V, the quantity kinematics() uses, so the two
    // never disagree about which side of an edge a point is on. An edge is
    // flagged when either V = E -+ m or E - V = +-m holds in floating point.
    const double excess = energy - potential;

    // Checked first so the massless case (all three points coincide) is AtEnergy.
    if (potential == energy) {
        return {Regime::EvanescentBelowE, BoundaryFlag::AtEnergy};
    }
    if (potential == energy - mass_energy || excess == mass_energy) {
        return {Regime::EvanescentBelowE, BoundaryFlag::LowerGapEdge};
    }
    if (potential == energy + mass_energy || excess == -mass_energy) {
        return {Regime::EvanescentAboveE, BoundaryFlag::UpperGapEdge};
    }
    if (excess > mass_energy) {
        return {Regime::PropagatingPositive};
    }
    if (excess > 0.0) {
        return {Regime::EvanescentBelowE};
    }
    if (excess > -mass_energy) {
        return {Regime::EvanescentAboveE};
    }
    return {Regime::PropagatingNegative};
}

RegionKinematics kinematics(double energy, double potential, double mass_energy)
{
    const double excess = energy - potential;
    const Branch branch = excess >= 0.0 ? Branch::Positive : Branch::Negative;
    const double abs_excess = std::abs(excess);

    // (|E-V| - m)(|E-V| + m) loses less precision near the gap edges than the
    // difference of squares.
    if (abs_excess >= mass_energy) {
        double p2 = (abs_excess - mass_energy) * (abs_excess + mass_energy);
        return {branch, Wave::Propagating, std::sqrt(std::max(p2, 0.0))};
    }
    double k2 = (mass_energy - abs_excess) * (mass_energy + abs_excess);
    return {branch, Wave::Evanescent, std::sqrt(k2)};
}

GapInterval gap_interval(const ParticleSpec& spec)
{
    return {spec.energy - spec.mass_energy, spec.energy + spec.mass_energy};
}

}  // namespace klein
