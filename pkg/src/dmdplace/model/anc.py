"""
anc.py

Mass-perturbed modes of a beam carrying point masses (analytical-and-numerical-combined method).

The unloaded clamped-free shapes are treated as mass-normalized, so every added mass is a ratio
to the modal mass. Attaching masses m_j at x_j turns the modal mass matrix into
M_p = I + sum_j m_j phi(x_j) phi(x_j)^T while the modal stiffness stays diag(omega^2). The
corrected modes are combinations of the unloaded ones with participation vectors eta.

Purpose:
- Build the perturbation matrix and solve the loaded eigenproblem.
- Expose corrected frequencies and shapes for loaded-beam synthesis.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import linalg

from .truth import ModeSet, mode_shape, shape_matrix
from ..exceptions import RangeError, ValidationError
from ..validators import FloatValidator, IntegerValidator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MassLoad:
    """
    Point masses attached to the beam.

    Attributes:
        positions: Mass positions along the beam (m).
        masses: Mass ratios to the modal mass, one per position.
    """

    positions: tuple
    masses: tuple

    def __post_init__(self):
        positions = tuple(float(x) for x in self.positions)
        masses = tuple(float(m) for m in self.masses)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "masses", masses)
        if len(positions) != len(masses):
            raise ValidationError(
                f"{len(positions)} positions but {len(masses)} masses", field="masses")
        for m in masses:
            if not math.isfinite(m) or m < 0.0:
                raise RangeError(min_value=0.0, actual_value=m, field="masses",
                                 message=f"Point masses must be non-negative (got {m})")

    @classmethod
    def at_nodes(cls, node_x: np.ndarray, nodes: Sequence[int], pair_mass: float) -> "MassLoad":
        """One mass of ``pair_mass`` at each listed mesh node."""
        return cls(tuple(float(node_x[i]) for i in nodes), tuple(pair_mass for _ in nodes))

    @property
    def total_mass(self) -> float:
        return float(sum(self.masses))

    @property
    def is_empty(self) -> bool:
        return self.total_mass == 0.0

    def to_dict(self) -> dict:
        return {"positions": list(self.positions), "masses": list(self.masses)}


def perturbation_matrix(shape_values: np.ndarray, masses: Sequence[float]) -> np.ndarray:
    """
    Assemble M_p = I + sum_j m_j phi(x_j) phi(x_j)^T.

    Args:
        shape_values: n_modes x n_masses matrix; column j holds the unloaded shapes at x_j.
        masses: One non-negative mass ratio per column.

    Returns:
        Symmetric positive definite n_modes x n_modes matrix.

    Raises:
        RangeError: If any mass is negative.
        ValidationError: If the column count and mass count differ.
    """
    phi = np.atleast_2d(np.asarray(shape_values, dtype=float))
    m = np.asarray(masses, dtype=float).ravel()
    if phi.shape[1] != m.size:
        raise ValidationError(
            f"shape_values has {phi.shape[1]} columns but {m.size} masses were given",
            field="masses")
    for value in m:
        FloatValidator(field_name="masses").validate(float(value))
        if value < 0.0:
            raise RangeError(min_value=0.0, actual_value=float(value), field="masses",
                             message=f"Point masses must be non-negative (got {value})")

    m_p = np.eye(phi.shape[0]) + (phi * m) @ phi.T
    # rank-one sums are symmetric only up to rounding
    return 0.5 * (m_p + m_p.T)


@dataclass(frozen=True)
class CorrectedModes:
    """
    Result of the loaded-beam eigenproblem.

    Attributes:
        base: Unloaded modes.
        load: Attached masses.
        n_keep: Number of corrected modes reported.
        mu: Squared frequency ratios (omega_i / omega_bar_i)^2 of the generalized problem
            diag(omega^2) eta = omega_bar^2 M_p eta, each >= 1; not eigenvalues of M_p.
        eta: n_modes x n_keep participation vectors, eta_kk > 0.
        freq_ratios: omega_bar_i / omega_i per kept mode.
    """

    base: ModeSet
    load: MassLoad
    n_keep: int
    mu: np.ndarray
    eta: np.ndarray
    freq_ratios: np.ndarray

    @property
    def natural_frequencies_rad(self) -> np.ndarray:
        omega = np.array([m.natural_rad for m in self.base.modes[:self.n_keep]])
        return omega * self.freq_ratios

    @property
    def damped_frequencies_hz(self) -> np.ndarray:
        zeta = np.array([m.zeta for m in self.base.modes[:self.n_keep]])
        return self.natural_frequencies_rad * np.sqrt(1.0 - zeta ** 2) / (2.0 * math.pi)

    def corrected_shapes(self, x_norm) -> np.ndarray:
        """Corrected shapes at position fractions, normalized to unit tip value."""
        x = np.atleast_1d(np.asarray(x_norm, dtype=float))
        unloaded = np.column_stack([mode_shape(m, x) for m in self.base.modes])
        return (unloaded @ self.eta) / self._tip_values()

    def modal_shapes(self, node_x: np.ndarray) -> np.ndarray:
        """Corrected shapes Phi @ eta at physical positions, normalized to the loaded mass."""
        return shape_matrix(self.base, node_x) @ self.eta

    def displacement_shapes(self, node_x: np.ndarray) -> np.ndarray:
        """
        Corrected shapes at physical positions scaled to the unloaded tip value of each mode.

        With no mass attached these are exactly the unloaded shapes.
        """
        tips = np.array([mode_shape(m, 1.0) for m in self.base.modes[:self.n_keep]])
        psi = shape_matrix(self.base, node_x) @ self.eta
        return psi / self._tip_values() * tips

    def _tip_values(self) -> np.ndarray:
        tip_row = np.array([mode_shape(m, 1.0) for m in self.base.modes])
        tips = tip_row @ self.eta
        small = np.abs(tips) < 1e-12
        # a shape with a node at the tip keeps its raw scale
        return np.where(small, 1.0, tips)

    def frequency_table(self, n_report: Optional[int] = None) -> List[dict]:
        """Before/after frequency rows for the first ``n_report`` modes."""
        n = self.n_keep if n_report is None else min(n_report, self.n_keep)
        rows = []
        after_hz = self.damped_frequencies_hz
        after_rad = self.natural_frequencies_rad
        for i in range(n):
            mode = self.base.modes[i]
            rows.append({
                "mode": i + 1,
                "unloaded_hz": mode.freq_hz,
                "loaded_hz": float(after_hz[i]),
                "unloaded_rad": mode.natural_rad,
                "loaded_rad": float(after_rad[i]),
                "ratio": float(self.freq_ratios[i]),
            })
        return rows


def corrected_modes(mode_set: ModeSet, load: MassLoad,
                    n_keep: Optional[int] = None) -> CorrectedModes:
    """
    Solve the mass-perturbed eigenproblem for the loaded beam.

    Every unloaded mode takes part in the eigenproblem; the first ``n_keep`` corrected modes are
    returned. The generalized problem diag(omega^2) eta = omega_bar^2 M_p eta is solved, so
    mu_i = (omega_i / omega_bar_i)^2 >= 1 and added mass never raises a frequency.

    Args:
        mode_set: Unloaded modes.
        load: Point masses; positions in metres, masses as modal-mass ratios.
        n_keep: Number of corrected modes to keep (default: all).

    Returns:
        CorrectedModes. With no mass, eta is the identity and ratios are exactly 1.
    """
    n_modes = mode_set.n_modes
    if n_keep is None:
        n_keep = n_modes
    IntegerValidator(positive_only=True, field_name="n_keep").validate(n_keep)
    if n_keep > n_modes:
        raise RangeError(max_value=n_modes, actual_value=n_keep, field="n_keep")
    for x in load.positions:
        if x < 0.0 or x > mode_set.beam_length:
            raise RangeError(0.0, mode_set.beam_length, actual_value=x, field="positions")

    if load.is_empty:
        logger.debug("no attached mass; corrected modes equal unloaded modes")
        return CorrectedModes(mode_set, load, n_keep, np.ones(n_keep), np.eye(n_modes)[:, :n_keep],
                              np.ones(n_keep))

    x_norm = np.asarray(load.positions) / mode_set.beam_length
    shape_values = np.vstack([mode_shape(m, x_norm) for m in mode_set.modes])
    m_p = perturbation_matrix(shape_values, load.masses)

    omega = np.array([m.natural_rad for m in mode_set.modes])
    omega_bar_sq, eta = linalg.eigh(np.diag(omega ** 2), m_p)
    order = np.argsort(omega_bar_sq)
    omega_bar_sq = omega_bar_sq[order]
    eta = eta[:, order]

    # sign convention: dominant self-participation is positive
    signs = np.sign(np.diag(eta))
    signs[signs == 0] = 1.0
    eta = eta * signs

    omega_bar = np.sqrt(omega_bar_sq)
    mu = (omega / omega_bar) ** 2
    logger.debug("loaded beam: mode-1 ratio %.6f with total mass %.4f",
                 omega_bar[0] / omega[0], load.total_mass)
    return CorrectedModes(mode_set, load, n_keep, mu[:n_keep], eta[:, :n_keep],
                          (omega_bar / omega)[:n_keep])
