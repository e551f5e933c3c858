"""Exception types shared across the package."""


class UnruhDptError(Exception):
    """Base class for all package errors."""


class InvalidStateError(UnruhDptError):
    """A matrix fails the density-matrix invariants (hermiticity, trace, positivity)."""


class UnphysicalStateError(UnruhDptError):
    """A requested observable triple lies outside the physical region."""


class ConcurrenceDomainError(UnruhDptError):
    """Negative radicand in the closed-form concurrence expression."""


class NoLocalizedPhaseError(UnruhDptError):
    """No acceleration window with 1 - f below the threshold exists at this geometry."""

    def __init__(self, message, min_deficit=None):
        super().__init__(message)
        self.min_deficit = min_deficit


class OracleFailureError(UnruhDptError):
    """Numerical Fourier-transform oracle did not converge."""


class CompletePositivityError(UnruhDptError):
    """Coefficient matrix is not positive semidefinite."""


class ModelInconsistencyError(UnruhDptError):
    """Superoperator and reduced Bloch dynamics cannot be reconciled by calibration."""


class NoSteadyStateError(UnruhDptError):
    """Empty Liouvillian kernel; indicates a construction bug."""


class IntegrationDivergedError(UnruhDptError):
    """State invariants violated beyond tolerance during time integration."""


class ConfigError(UnruhDptError):
    """Invalid sweep or CLI configuration."""
