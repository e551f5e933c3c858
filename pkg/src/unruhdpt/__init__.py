"""Dissipative dynamics of two uniformly accelerated two-level detectors.

Assembles the Lindblad generator from vacuum correlation functions, solves
for dynamics and steady states, analyzes the generator's weak symmetry and
spectrum, and sweeps acceleration across the localized-to-thermal transition.
"""

from .algebra import (
    BlochState,
    Observables,
    check_density_matrix,
    concurrence_closed_form,
    concurrence_wootters,
    density_matrix_from_json,
    density_matrix_to_json,
    maximally_mixed_state,
    observables,
    product_state,
    purity,
    reconstruct_symmetric,
    singlet_state,
    triplet_zero_state,
    von_neumann_entropy,
)
from .correlations import (
    C_LIGHT,
    DimensionlessParams,
    DissipationCoefficients,
    PhysicalParams,
    critical_acceleration,
    dissipation_coefficients,
    f_factor,
    fourier_closed_form,
    fourier_transform_oracle,
    wightman,
)
from .lindblad import (
    KAPPA_CAL,
    S_B,
    BlochSystem,
    KossakowskiMatrix,
    Liouvillian,
    Spectrum,
    SteadySpace,
    Trajectory,
    bloch_system,
    build_kossakowski,
    build_liouvillian,
    evolve,
    evolve_bloch,
    project_consistency,
    spectrum,
    steady_closed_form,
    steady_density_matrix,
    steady_states,
)
from .sweep import SweepConfig, SweepRow, derivative_scan, emit, run_sweep
from .symmetry import (
    classify_phase,
    conserved_quantity,
    dark_states,
    symmetry_operator,
    symmetry_residual,
)

__version__ = "0.1.0"
