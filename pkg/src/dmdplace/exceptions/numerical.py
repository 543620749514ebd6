"""
numerical.py

Exceptions raised by the numerical kernels of dmdplace.

Classes:
    - NumericalError: Base exception for numerical failures.
    - RankDeficiencyError: Requested truncation rank exceeds the numerical rank.
    - DegenerateSignalError: Data has no usable (oscillatory / nonzero) content.
    - UnstableSystemError: A Gramian was requested for a system with spectral radius >= 1.
    - RiccatiConvergenceError: The Riccati fixed-point iteration failed to converge.
"""
from .base import DmdPlaceError


class NumericalError(DmdPlaceError):
    """Base exception for numerical failures in dmdplace."""
    def __init__(self, message=None, **context):
        if message is None:
            message = "A numerical error occurred."
        super().__init__(message, **context)


class RankDeficiencyError(NumericalError):
    """
    Raised when a truncation rank exceeds the numerical rank of the data.

    Args:
        requested: Requested rank.
        available: Numerical rank found.
    """
    def __init__(self, requested=None, available=None, message=None):
        if message is None:
            message = f"Requested rank {requested} exceeds numerical rank {available}."
        super().__init__(message, requested=requested, available=available)
        self.requested = requested
        self.available = available


class DegenerateSignalError(NumericalError):
    """Raised when a signal carries no usable content (all zero, no spectral peak)."""
    def __init__(self, detail=None, message=None):
        if message is None:
            message = f"Degenerate signal: {detail or 'no usable content'}."
        super().__init__(message, detail=detail)


class UnstableSystemError(NumericalError):
    """
    Raised when an operation needs an asymptotically stable system.

    Args:
        spectral_radius: Spectral radius of A.
    """
    def __init__(self, spectral_radius=None, message=None):
        if message is None:
            message = f"System is not asymptotically stable (spectral radius {spectral_radius})."
        super().__init__(message, spectral_radius=spectral_radius)
        self.spectral_radius = spectral_radius


class RiccatiConvergenceError(NumericalError):
    """
    Raised when the discrete Riccati iteration does not reach a stabilizing fixed point.

    Args:
        iterations: Iterations performed.
        detail: What went wrong.
    """
    def __init__(self, iterations=None, detail=None, message=None):
        if message is None:
            message = f"Riccati iteration failed after {iterations} iterations: {detail or 'no convergence'}."
        super().__init__(message, iterations=iterations, detail=detail)
        self.iterations = iterations

