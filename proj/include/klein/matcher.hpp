#pragma once

#include <Eigen/Dense>

#include "klein/types.hpp"

namespace klein {

/*!
 * Two independent solutions of one constant-potential region.
 *
 * Dirac columns come from the first-order equations
 *   -i phi' = (E - V + m) chi,   -i chi' = (E - V - m) phi
 * except in the negative-energy propagating zone, which uses the column
 * (V - E + m, +-p) e^{+-ipx} with the transmitted wave e^{+ipx}.
 * Klein-Gordon columns are (1, kappa) e^{kappa x}.
 */
struct RegionBasis {
    Segment segment;
    RegimeClass regime;
    RegionKinematics kinematics;
    std::array<BasisFunction, 2> waves;

    //! Zero momentum: the two columns coincide.
    bool degenerate() const { return kinematics.momentum == 0.0; }
};

RegionBasis build_basis(const Segment& region, const ParticleSpec& spec, Model model);

/*!
 * Interface conditions as a dense complex system.
 *
 * Unknowns are (B, interior pairs..., G); two rows per interface. Columns are
 * equilibrated, so the solution of the stored system is scale[j] * unknown[j].
 */
struct InterfaceSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    Eigen::VectorXd column_scale;
    std::vector<RegionBasis> regions;
};

InterfaceSystem assemble_system(const PotentialProfile& profile, const ParticleSpec& spec,
                                Model model);

//! Dense pivoted LU. Throws SingularSystem on degenerate or ill-conditioned systems.
ScatteringSolution solve_numeric(const PotentialProfile& profile, const ParticleSpec& spec,
                                 Model model);

//! Log-scaled region-by-region propagation; any number of regions.
ScatteringSolution transfer_matrix_solve(const PotentialProfile& profile,
                                         const ParticleSpec& spec, Model model);

/*!
 * Largest mismatch of the matched components across all interfaces, relative
 * to the largest component of the incident wave.
 */
double continuity_residual(const ScatteringSolution& sol);

//! Net flux in region i, evaluated at x (any point of the region).
double region_flux(const ScatteringSolution& sol, std::size_t region, double x);

}  // namespace klein
