"""Bound states of diatomic molecules in Morse and Kratzer wells plus a
ring-shaped angular potential, with a finite-difference cross-check."""

from .angular import (
    AngularChannel,
    AngularSolution,
    NonQuantizedError,
    NuRootCheck,
    angular_eigenvalue,
    nu_k_roots,
    oscillation_quanta,
)
from .catalog import (
    CatalogConflictError,
    CatalogError,
    MoleculeParams,
    chemical_dissociation,
    default_catalog,
    load_catalog,
    morse_width,
    rotational_constant,
)
from .radial import (
    EnergyLevel,
    PekerisCoefficients,
    UnboundLevelError,
    kratzer_energy,
    morse_energy,
    morse_nmax,
    pekeris_coefficients,
)
from .units import CONSTANTS, hbar2_over_2mu, wavenumber_to_ev

__version__ = "0.1.0"
