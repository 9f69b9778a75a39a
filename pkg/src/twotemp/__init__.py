"""Two-temperature moment model toolkit for rarefied polyatomic gases."""

__version__ = "0.1.0"

from .coefficients import (
    CoefficientSet,
    linear_flux_coefficients,
    model1_coefficients,
    model2_coefficients,
    model3_coefficients,
    model4_coefficients,
    model_coefficients,
    nonlinear_flux_coefficients,
    reduced_coefficients,
    reduced_model_for_species,
)
from .errors import (
    DomainError,
    MissingModelDataError,
    SolverError,
    SpeciesConfigError,
    TwoTempError,
)
from .species import GasSpecies, heat_capacity_ratio, load_species, resolve_species

__all__ = [
    "CoefficientSet",
    "DomainError",
    "GasSpecies",
    "MissingModelDataError",
    "SolverError",
    "SpeciesConfigError",
    "TwoTempError",
    "__version__",
    "heat_capacity_ratio",
    "linear_flux_coefficients",
    "load_species",
    "model1_coefficients",
    "model2_coefficients",
    "model3_coefficients",
    "model4_coefficients",
    "model_coefficients",
    "nonlinear_flux_coefficients",
    "reduced_coefficients",
    "reduced_model_for_species",
    "resolve_species",
]
