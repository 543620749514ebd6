"""
truth.py

Ground-truth snapshot generation for a clamped-free (cantilever) beam.

The beam response is a damped superposition of Euler-Bernoulli bending modes. Every mode
starts at peak displacement with zero velocity and decays at its own damping ratio. The
default mode table reproduces the ten-mode truth model used throughout dmdplace.

Purpose:
- Provide the modal constants (ModeSpec, ModeSet, DEFAULT_MODES).
- Evaluate clamped-free mode shapes without catastrophic cancellation at high mode numbers.
- Synthesize node-by-time displacement snapshots for unloaded and mass-loaded beams.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..exceptions import RangeError, ValidationError
from ..validators import IntegerValidator, ModeTableValidator, SamplingValidator

logger = logging.getLogger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class ModeSpec:
    """
    One bending mode of the truth model.

    Attributes:
        lambda_const: Dimensionless clamped-free eigen-constant.
        amplitude: Initial modal displacement (m).
        freq_hz: Damped frequency (Hz).
        zeta: Damping ratio, 0 < zeta < 1.
    """

    lambda_const: float
    amplitude: float
    freq_hz: float
    zeta: float

    def __post_init__(self):
        ModeTableValidator().validate([self])

    @property
    def natural_rad(self) -> float:
        """Undamped natural frequency omega = 2*pi*f_d / sqrt(1 - zeta^2) (rad/s)."""
        return 2.0 * math.pi * self.freq_hz / math.sqrt(1.0 - self.zeta ** 2)

    @property
    def decay_rate(self) -> float:
        """Envelope exponent zeta * omega (1/s)."""
        return self.zeta * self.natural_rad

    def to_dict(self) -> dict:
        return {
            "lambda_const": self.lambda_const,
            "amplitude": self.amplitude,
            "freq_hz": self.freq_hz,
            "zeta": self.zeta,
        }


@dataclass(frozen=True)
class ModeSet:
    """
    Ordered collection of modes for a beam of a given length.

    Invariants (checked on construction): eigen-constants and frequencies strictly
    increasing, damping ratios in (0, 1), amplitudes non-negative.
    """

    modes: Tuple[ModeSpec, ...]
    beam_length: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        ModeTableValidator(field_name="modes").validate(self.modes)
        if not self.beam_length > 0:
            raise RangeError(min_value=0.0, actual_value=self.beam_length, field="beam_length",
                             message=f"beam_length must be positive (got {self.beam_length})")

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def max_freq_hz(self) -> float:
        return self.modes[-1].freq_hz

    def dominant(self, k: int) -> "ModeSet":
        """Return the first ``k`` modes as a new ModeSet."""
        IntegerValidator(positive_only=True, field_name="k").validate(k)
        if k > self.n_modes:
            raise RangeError(max_value=self.n_modes, actual_value=k, field="k")
        return ModeSet(self.modes[:k], self.beam_length)

    def with_amplitudes(self, amplitudes: Sequence[float]) -> "ModeSet":
        if len(amplitudes) != self.n_modes:
            raise ValidationError("One amplitude per mode is required", field="amplitudes")
        modes = [ModeSpec(m.lambda_const, float(a), m.freq_hz, m.zeta)
                 for m, a in zip(self.modes, amplitudes)]
        return ModeSet(tuple(modes), self.beam_length)

    @classmethod
    def from_rows(cls, rows: Sequence[dict], beam_length: float = 1.0) -> "ModeSet":
        ModeTableValidator(field_name="modes").validate(list(rows))
        return cls(tuple(ModeSpec(**row) for row in rows), beam_length)

    def to_rows(self) -> List[dict]:
        return [m.to_dict() for m in self.modes]


DEFAULT_MODES = ModeSet((
    ModeSpec(1.8751, 0.800, 3.58, 0.01),
    ModeSpec(4.6941, 0.500, 22.45, 0.03),
    ModeSpec(7.8548, 0.100, 62.85, 0.04),
    ModeSpec(10.9955, 0.020, 122.85, 0.08),
    ModeSpec(14.1372, 0.010, 203.09, 0.08),
    ModeSpec(17.2877, 0.010, 303.38, 0.08),
    ModeSpec(20.4204, 0.005, 423.72, 0.08),
    ModeSpec(23.5619, 0.005, 563.10, 0.10),
    ModeSpec(26.7035, 0.002, 723.27, 0.10),
    ModeSpec(29.8451, 0.001, 903.47, 0.10),
))


@dataclass(frozen=True)
class SnapshotData:
    """
    Transverse displacement snapshots.

    Attributes:
        values: n_nodes x n_t displacement matrix (m).
        node_x: Node positions (m); node_x[0] = 0 is the clamped root, node_x[-1] the tip.
        dt: Sample interval (s).
    """

    values: np.ndarray
    node_x: np.ndarray
    dt: float
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        node_x = np.asarray(self.node_x, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "node_x", node_x)
        if values.ndim != 2:
            raise ValidationError("values must be a 2-D node-by-time matrix", field="values")
        if values.shape[0] != node_x.shape[0]:
            raise ValidationError(
                f"values has {values.shape[0]} rows but node_x has {node_x.shape[0]} entries",
                field="node_x")
        if values.shape[0] < 2:
            raise RangeError(min_value=2, actual_value=values.shape[0], field="n_nodes")
        if values.shape[1] < 3:
            raise RangeError(min_value=3, actual_value=values.shape[1], field="n_t")
        if node_x[0] != 0.0 or np.any(np.diff(node_x) <= 0):
            raise ValidationError("node_x must start at 0 and be strictly increasing", field="node_x")
        if not self.dt > 0:
            raise RangeError(min_value=0.0, actual_value=self.dt, field="dt")

    @property
    def n_nodes(self) -> int:
        return self.values.shape[0]

    @property
    def n_t(self) -> int:
        return self.values.shape[1]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_t) * self.dt

    @property
    def beam_length(self) -> float:
        return float(self.node_x[-1])

    @property
    def tip(self) -> np.ndarray:
        return self.values[-1]


def _sigma_terms(lam: float) -> Tuple[float, float]:
    """Return (sigma, 1 - sigma) for the clamped-free shape, the latter without cancellation."""
    denom = math.sinh(lam) + math.sin(lam)
    sigma = (math.cosh(lam) + math.cos(lam)) / denom
    one_minus_sigma = (math.sin(lam) - math.cos(lam) - math.exp(-lam)) / denom
    return sigma, one_minus_sigma


def mode_shape(mode: Union[ModeSpec, float], x_norm: ArrayLike) -> Union[float, np.ndarray]:
    """
    Evaluate the clamped-free Euler-Bernoulli mode shape.

    phi(x) = cosh(lx) - cos(lx) - sigma (sinh(lx) - sin(lx)),
    sigma = (cosh l + cos l) / (sinh l + sin l). The hyperbolic part is evaluated as
    ((1 - sigma) e^{lx} + (1 + sigma) e^{-lx}) / 2 so large eigen-constants stay accurate.
    The clamped root returns exactly 0.

    Args:
        mode: ModeSpec or bare eigen-constant.
        x_norm: Position fraction(s) in [0, 1].

    Returns:
        Shape value(s); a float for scalar input.

    Raises:
        RangeError: If any position lies outside [0, 1].
    """
    lam = mode.lambda_const if isinstance(mode, ModeSpec) else float(mode)
    x = np.asarray(x_norm, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise RangeError(0.0, 1.0, actual_value=x_norm, field="x_norm")

    sigma, one_minus_sigma = _sigma_terms(lam)
    z = lam * x
    hyperbolic = 0.5 * (one_minus_sigma * np.exp(z) + (1.0 + sigma) * np.exp(-z))
    shape = np.where(z == 0.0, 0.0, hyperbolic - np.cos(z) + sigma * np.sin(z))
    if shape.ndim == 0:
        return float(shape)
    return shape


def shape_matrix(mode_set: ModeSet, node_x: np.ndarray) -> np.ndarray:
    """Mode shapes at physical positions, n_nodes x n_modes."""
    x_norm = np.clip(np.asarray(node_x, dtype=float) / mode_set.beam_length, 0.0, 1.0)
    return np.column_stack([mode_shape(m, x_norm) for m in mode_set.modes])


def modal_frequencies(mode_set: ModeSet) -> List[Tuple[float, float]]:
    """
    Natural and damped frequency per mode.

    Returns:
        List of (omega rad/s, f_d Hz) with omega = 2*pi*f_d / sqrt(1 - zeta^2).
    """
    return [(m.natural_rad, m.freq_hz) for m in mode_set.modes]


def node_positions(n_candidates: int, beam_length: float = 1.0) -> np.ndarray:
    """Uniform mesh: clamped root plus ``n_candidates`` nodes up to and including the tip."""
    IntegerValidator(positive_only=True, field_name="n_candidates").validate(n_candidates)
    return np.linspace(0.0, beam_length, n_candidates + 1)


def sample_count(dt: float, t_final: float) -> int:
    """Number of samples t_k = k*dt, k = 0..n_t-1, covering [0, t_final)."""
    return int(round(t_final / dt))


def _synthesize(shapes: np.ndarray, amplitudes: np.ndarray, freq_hz: np.ndarray,
                decay: np.ndarray, times: np.ndarray) -> np.ndarray:
    temporal = np.exp(-np.outer(decay, times)) * np.cos(2.0 * math.pi * np.outer(freq_hz, times))
    return (shapes * amplitudes) @ temporal


def _check_grid(max_freq_hz: float, n_nodes: int, dt: float, t_final: float) -> None:
    if n_nodes < 2:
        raise RangeError(min_value=2, actual_value=n_nodes, field="n_nodes",
                         message=f"n_nodes must be at least 2 (got {n_nodes})")
    SamplingValidator(max_freq_hz, min_samples=3).validate({"dt": dt, "t_final": t_final})


def simulate(mode_set: ModeSet = DEFAULT_MODES, n_nodes: int = 51, dt: float = 1.0 / 4000.0,
             t_final: float = 2.0) -> SnapshotData:
    """
    Generate truth snapshots for the unloaded beam.

    values[n, k] = sum_i Amp_i phi_i(x_n) exp(-zeta_i omega_i t_k) cos(2 pi f_i t_k).

    Args:
        mode_set: Modal constants.
        n_nodes: Mesh size including the clamped root and the tip.
        dt: Sample interval (s); must satisfy dt < 1/(2 max f).
        t_final: Record length (s); n_t = round(t_final / dt).

    Raises:
        NyquistError: If dt cannot resolve the fastest mode.
        RangeError: If n_nodes < 2 or fewer than 3 samples result.
    """
    _check_grid(mode_set.max_freq_hz, n_nodes, dt, t_final)
    node_x = np.linspace(0.0, mode_set.beam_length, n_nodes)
    times = np.arange(sample_count(dt, t_final)) * dt

    amplitudes = np.array([m.amplitude for m in mode_set.modes])
    freq_hz = np.array([m.freq_hz for m in mode_set.modes])
    decay = np.array([m.decay_rate for m in mode_set.modes])
    values = _synthesize(shape_matrix(mode_set, node_x), amplitudes, freq_hz, decay, times)
    values[0] = 0.0

    logger.debug("simulated %d modes on %d nodes x %d samples", mode_set.n_modes, n_nodes, times.size)
    return SnapshotData(values, node_x, dt, {"source": "unloaded"})


def simulate_loaded(corrected, n_nodes: int = 51, dt: float = 1.0 / 4000.0,
                    t_final: float = 2.0) -> SnapshotData:
    """
    Generate snapshots for a beam carrying point masses.

    Uses the corrected frequencies and displacement shapes of ``corrected`` (a CorrectedModes
    from dmdplace.model.anc); amplitudes and damping ratios are those of the unloaded modes,
    so each mode starts with the same tip deflection as on the unloaded beam.
    """
    base: ModeSet = corrected.base
    if corrected.load.is_empty and corrected.n_keep == base.n_modes:
        return simulate(base, n_nodes, dt, t_final)
    _check_grid(base.max_freq_hz, n_nodes, dt, t_final)
    node_x = np.linspace(0.0, base.beam_length, n_nodes)
    times = np.arange(sample_count(dt, t_final)) * dt

    n_keep = corrected.n_keep
    modes = base.modes[:n_keep]
    amplitudes = np.array([m.amplitude for m in modes])
    zeta = np.array([m.zeta for m in modes])
    omega_bar = corrected.natural_frequencies_rad
    freq_hz = omega_bar * np.sqrt(1.0 - zeta ** 2) / (2.0 * math.pi)
    values = _synthesize(corrected.displacement_shapes(node_x), amplitudes, freq_hz,
                         zeta * omega_bar, times)
    values[0] = 0.0

    logger.debug("simulated loaded beam: %d modes, masses at %s", n_keep, list(corrected.load.positions))
    return SnapshotData(values, node_x, dt, {"source": "loaded"})
