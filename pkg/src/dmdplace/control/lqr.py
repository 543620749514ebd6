"""
lqr.py

Discrete-time LQR by Riccati value iteration.

    P_{k+1} = Q + A^T P_k A - A^T P_k B (R + B^T P_k B)^-1 B^T P_k A,   P_0 = Q

iterated until ||P_{k+1} - P_k||_F <= tol * ||P_k||_F. The gain is
K = (R + B^T P B)^-1 B^T P A and the closed loop A - B K must be Schur stable.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import linalg

from .lti import ModalLti
from ..exceptions import RiccatiConvergenceError, ValidationError
from ..identification.systems import LtiSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LqrSolution:
    """Gain, Riccati solution, iteration count and closed-loop spectral radius."""

    K: np.ndarray
    P: np.ndarray
    iterations: int
    closed_loop_radius: float


def _check_weights(Q: np.ndarray, R: np.ndarray, n: int, m: int) -> None:
    if Q.shape != (n, n):
        raise ValidationError(f"Q must be {n}x{n}, got {Q.shape}", field="Q")
    if R.shape != (m, m):
        raise ValidationError(f"R must be {m}x{m}, got {R.shape}", field="R")
    if not np.allclose(Q, Q.T) or np.min(linalg.eigvalsh(0.5 * (Q + Q.T))) < -1e-12 * max(1.0, np.abs(Q).max()):
        raise ValidationError("Q must be symmetric positive semidefinite", field="Q")
    if not np.allclose(R, R.T) or np.min(linalg.eigvalsh(0.5 * (R + R.T))) <= 0.0:
        raise ValidationError("R must be symmetric positive definite", field="R")


def solve_lqr(sys: Union[ModalLti, LtiSystem], Q, R, tol: float = 1e-12,
              max_iter: int = 500_000) -> LqrSolution:
    """
    Infinite-horizon discrete LQR gain.

    Args:
        sys: ModalLti or LtiSystem.
        Q: State weight, symmetric positive semidefinite.
        R: Input weight, symmetric positive definite.
        tol: Relative Frobenius stopping tolerance.
        max_iter: Iteration cap.

    Raises:
        RiccatiConvergenceError: If the iteration diverges, does not settle within max_iter,
            or yields a gain whose closed loop is not Schur stable.
    """
    system = sys.system if isinstance(sys, ModalLti) else sys
    A, B = system.A, system.B
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    R = np.atleast_2d(np.asarray(R, dtype=float))
    _check_weights(Q, R, A.shape[0], B.shape[1])

    P = Q.copy()
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        BtP = B.T @ P
        gain = linalg.solve(R + BtP @ B, BtP @ A, assume_a="pos")
        P_next = Q + A.T @ P @ A - (A.T @ P @ B) @ gain
        P_next = 0.5 * (P_next + P_next.T)
        if not np.all(np.isfinite(P_next)):
            raise RiccatiConvergenceError(iterations, "Riccati iterate became non-finite")
        step = np.linalg.norm(P_next - P)
        P = P_next
        if step <= tol * np.linalg.norm(P):
            converged = True
            break
    if not converged:
        raise RiccatiConvergenceError(iterations, "tolerance not reached")

    BtP = B.T @ P
    K = linalg.solve(R + BtP @ B, BtP @ A, assume_a="pos")
    radius = float(np.max(np.abs(np.linalg.eigvals(A - B @ K))))
    if radius >= 1.0:
        raise RiccatiConvergenceError(iterations, f"closed loop not stable (spectral radius {radius})")
    logger.debug("Riccati iteration converged in %d steps, closed-loop radius %.6f", iterations, radius)
    return LqrSolution(K, P, iterations, radius)
