"""Dirac and Klein-Gordon scattering on piecewise-constant potentials."""

from ._core import (
    Geometry,
    InvalidInput,
    Model,
    ParticleSpec,
    ScatteringSolution,
    SingularSystem,
    classify_regime,
    continuity_residual,
    dirac_barrier_limit,
    dirac_barrier_solve,
    dirac_step_limit,
    dirac_step_solve,
    find_total_transmissions,
    jump_gap,
    kg_barrier_solve,
    kg_step_solve,
    kinematics,
    massless_phase_solution,
    run_property_suite,
    small_mass_bound,
    solve_numeric,
    sweep,
    transfer_matrix_solve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
