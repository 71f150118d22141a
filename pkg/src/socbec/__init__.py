"""Quasi-1D spin-orbit-coupled two-component BEC simulator.

Computes interacting ground states, evolves the driven spinor
Gross-Pitaevskii equation with a split-step spectral integrator, and
extracts spin-qubit observables (purity, Bloch vector, spin dipole).
"""

__version__ = "0.1.0"
VERSION_STRING = f"socbec-{__version__}"

from .grid import (
    ModelParams,
    PhysicalUnits,
    SpatialGrid,
    SpinorField,
    boundary_density_ratio,
    integrate,
    make_grid,
    normalize,
    physical_to_dimensionless,
    spectral_transform,
    spinor_from_components,
)
from .observables import (
    BlochRecord,
    SpinDensityMatrix,
    analytic_free_purity,
    analytic_imprinted_purity,
    bloch_vector,
    condensate_width,
    purity,
    spin_density_matrix,
    spin_dipole_moment,
)
from .ground_state import (
    GroundStateResult,
    HermiteExpansion,
    VariationalGaussian,
    gaussian_variational,
    hermite_basis_functions,
    imaginary_time_ground_state,
    minimize_hermite,
    spin_dipole_frequency,
    thomas_fermi_profile,
    total_energy_functional,
)
from .dynamics import (
    DriveSchedule,
    EvolutionConfig,
    RabiParameters,
    Trajectory,
    build_initial_state,
    crank_nicolson_step,
    evolve,
    rabi_parameters,
    schedule_from_params,
    split_step,
    total_energy,
    trap_displacement,
)
