"""Exception types shared across the package."""


class TwoTempError(Exception):
    """Base class for all package errors."""


class SpeciesConfigError(TwoTempError):
    """Malformed or out-of-range species configuration data."""


class MissingModelDataError(SpeciesConfigError):
    """A coefficient model was requested for which the species carries no constants."""


class SolverError(TwoTempError):
    """Numerical failure: singular system, degenerate polynomial, failed root selection."""


class DomainError(TwoTempError):
    """Input lies outside the mathematical domain of an expression (e.g. a pole)."""
