# qfridge/errors.py
"""
Exception hierarchy.

Every error carries the process exit status the CLI reports for it:
1 for invalid input, 2 for solver failures, 3 for failed verification.
"""

from typing import Optional, Sequence


class FridgeError(Exception):
    """Root of all qfridge errors."""

    exit_code: int = 2


class ValidationError(FridgeError, ValueError):
    """Parameters or states that violate a documented invariant."""

    exit_code = 1


class DomainError(ValidationError):
    """A function was evaluated outside its mathematical domain."""


class UndefinedBoundError(DomainError):
    """Carnot COP requested with beta1 == beta2 (the bound diverges)."""


class UndefinedCOPError(DomainError):
    """COP requested at a point where the hot-bath current vanishes."""


class NoCoolingWindowError(DomainError):
    """The cooling window is empty, so there is no maximum cooling power."""


class SolverError(FridgeError):
    exit_code = 2


class DegeneracyError(SolverError):
    """The kernel of a generator has an unexpected dimension."""

    def __init__(self, message: str, spectrum: Optional[Sequence[complex]] = None):
        super().__init__(message)
        self.spectrum = list(spectrum) if spectrum is not None else []


class StiffnessError(SolverError):
    """Adaptive integration could not proceed (step size underflow)."""

    def __init__(self, message: str, spectral_gap: float = float("nan")):
        super().__init__(message)
        self.spectral_gap = spectral_gap


class ClosureError(SolverError):
    """The ten-coordinate projection of the generator is not closed."""


class PositivityError(SolverError):
    """No kernel vector yields a positive semidefinite density matrix."""


class SecondLawViolation(SolverError):
    """Entropy production came out negative beyond tolerance."""


class VerificationFailure(FridgeError):
    exit_code = 3
