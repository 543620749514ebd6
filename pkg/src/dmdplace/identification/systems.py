"""
systems.py

Discrete-time state-space systems and a generator of random stable test systems.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import RangeError, ValidationError
from ..validators import IntegerValidator, RangeValidator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LtiSystem:
    """
    x_{k+1} = A x_k + B u_k,  y_k = C x_k.

    Attributes:
        A: n x n state matrix.
        B: n x m input matrix.
        C: p x n output matrix.
        dt: Sample interval (s).
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        B = np.asarray(self.B, dtype=float)
        C = np.asarray(self.C, dtype=float)
        n = A.shape[0]
        B = B.reshape(n, -1) if B.ndim < 2 else B
        C = C.reshape(-1, n) if C.ndim < 2 else C
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        if A.shape != (n, n):
            raise ValidationError(f"A must be square, got shape {A.shape}", field="A")
        if B.shape[0] != n:
            raise ValidationError(f"B must have {n} rows, got {B.shape[0]}", field="B")
        if C.shape[1] != n:
            raise ValidationError(f"C must have {n} columns, got {C.shape[1]}", field="C")
        if not self.dt > 0:
            raise RangeError(min_value=0.0, actual_value=self.dt, field="dt")

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.C.shape[0]

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.A))))

    def is_stable(self) -> bool:
        return self.spectral_radius() < 1.0


def random_stable_system(rng: np.random.Generator, n: int, m: int = 2, p: int = 2,
                         radius_range=(0.2, 0.95)) -> LtiSystem:
    """
    Random asymptotically stable system for oracle tests.

    A is an orthogonal similarity of a block-diagonal matrix of real eigenvalues and 2x2
    rotation blocks whose eigenvalue magnitudes lie in ``radius_range``. B and C are dense
    standard normal.
    """
    IntegerValidator(positive_only=True, field_name="n").validate(n)
    IntegerValidator(positive_only=True, field_name="m").validate(m)
    IntegerValidator(positive_only=True, field_name="p").validate(p)
    low, high = radius_range
    RangeValidator(0.0, 1.0, min_inclusive=False, max_inclusive=False,
                   field_name="radius_range").validate(high)
    RangeValidator(0.0, high, min_inclusive=False, field_name="radius_range").validate(low)

    D = np.zeros((n, n))
    i = 0
    while i < n:
        radius = rng.uniform(low, high)
        if i + 1 < n and rng.random() < 0.5:
            theta = rng.uniform(0.1, np.pi - 0.1)
            c, s = radius * np.cos(theta), radius * np.sin(theta)
            D[i:i + 2, i:i + 2] = [[c, -s], [s, c]]
            i += 2
        else:
            D[i, i] = radius * rng.choice([-1.0, 1.0])
            i += 1

    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    A = Q @ D @ Q.T
    B = rng.standard_normal((n, m))
    C = rng.standard_normal((p, n))
    return LtiSystem(A, B, C)
