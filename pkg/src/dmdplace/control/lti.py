"""
lti.py

Modal state-space model of the beam for a given sensor/actuator placement.

State ordering is [q_1, dq_1, q_2, dq_2, ...]. Each retained mode contributes the continuous
block [[0, 1], [-omega^2, -2 zeta omega]]; actuators enter the velocity rows through the
mode-shape values at the actuator nodes and sensors read the displacement rows through the
shape values at the sensor nodes. The model is discretized by zero-order hold.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import signal

from ..exceptions import RangeError, RequiredValueError
from ..identification.systems import LtiSystem
from ..model.anc import CorrectedModes
from ..model.truth import ModeSet, node_positions, shape_matrix
from ..validators import IntegerValidator, SamplingValidator

logger = logging.getLogger(__name__)

Modes = Union[ModeSet, CorrectedModes]


@dataclass(frozen=True)
class ModalLti:
    """
    Discretized modal model with its placement.

    Attributes:
        system: Discrete LtiSystem (A, B, C, dt).
        sensor_nodes, actuator_nodes: Mesh indices of the placement.
        continuous_A: Block-diagonal continuous state matrix before discretization.
        omega, zeta: Natural frequencies (rad/s) and damping ratios of the retained modes.
        amplitudes: Initial modal displacements of the retained modes (m).
    """

    system: LtiSystem
    sensor_nodes: Tuple[int, ...]
    actuator_nodes: Tuple[int, ...]
    continuous_A: np.ndarray = field(repr=False)
    omega: np.ndarray = field(repr=False)
    zeta: np.ndarray = field(repr=False)
    amplitudes: np.ndarray = field(repr=False)

    @property
    def n_modes(self) -> int:
        return self.omega.size

    @property
    def dt(self) -> float:
        return self.system.dt

    def energy_weight(self) -> np.ndarray:
        """State weight of the modal mechanical energy: omega^2 on q_k and 1 on dq_k."""
        weights = np.empty(2 * self.n_modes)
        weights[0::2] = self.omega ** 2
        weights[1::2] = 1.0
        return np.diag(weights)

    def modal_excitation(self, amplitudes: Optional[Sequence[float]] = None) -> np.ndarray:
        """Initial state: modal displacements at ``amplitudes`` (default: the mode table)."""
        amps = self.amplitudes if amplitudes is None else np.asarray(amplitudes, dtype=float)
        if amps.size != self.n_modes:
            raise RangeError(self.n_modes, self.n_modes, actual_value=amps.size, field="amplitudes")
        x0 = np.zeros(2 * self.n_modes)
        x0[0::2] = amps
        return x0


def _modal_data(modes: Modes, node_x: np.ndarray, n_modes: int):
    if isinstance(modes, CorrectedModes):
        if n_modes > modes.n_keep:
            raise RangeError(max_value=modes.n_keep, actual_value=n_modes, field="n_modes")
        base = modes.base.modes[:n_modes]
        omega = modes.natural_frequencies_rad[:n_modes]
        shapes = modes.modal_shapes(node_x)[:, :n_modes]
    else:
        if n_modes > modes.n_modes:
            raise RangeError(max_value=modes.n_modes, actual_value=n_modes, field="n_modes")
        base = modes.modes[:n_modes]
        omega = np.array([m.natural_rad for m in base])
        shapes = shape_matrix(modes, node_x)[:, :n_modes]
    zeta = np.array([m.zeta for m in base])
    amplitudes = np.array([m.amplitude for m in base])
    return omega, zeta, shapes, amplitudes


def _check_nodes(nodes: Sequence[int], n_nodes: int, name: str) -> Tuple[int, ...]:
    nodes = tuple(int(n) for n in nodes)
    if not nodes:
        raise RequiredValueError(field=name)
    for n in nodes:
        if not 0 <= n < n_nodes:
            raise RangeError(0, n_nodes - 1, actual_value=n, field=name)
    return nodes


def continuous_modal_matrices(omega: np.ndarray, zeta: np.ndarray, b_rows: np.ndarray,
                              c_cols: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Continuous (A, B, C) of a modal model.

    Args:
        omega, zeta: Per-mode natural frequency and damping.
        b_rows: n_modes x n_actuators shape values at the actuators.
        c_cols: n_sensors x n_modes shape values at the sensors.
    """
    n = omega.size
    A = np.zeros((2 * n, 2 * n))
    B = np.zeros((2 * n, b_rows.shape[1]))
    C = np.zeros((c_cols.shape[0], 2 * n))
    for i in range(n):
        A[2 * i:2 * i + 2, 2 * i:2 * i + 2] = [[0.0, 1.0],
                                                [-omega[i] ** 2, -2.0 * zeta[i] * omega[i]]]
        B[2 * i + 1] = b_rows[i]
        C[:, 2 * i] = c_cols[:, i]
    return A, B, C


def build_modal_lti(modes: Modes, sensor_nodes: Sequence[int],
                    actuator_nodes: Optional[Sequence[int]] = None, dt: float = 1e-3,
                    n_candidates: int = 50, n_modes: int = 3) -> ModalLti:
    """
    Assemble and discretize the modal model for a placement.

    Args:
        modes: Unloaded ModeSet or CorrectedModes of a loaded beam.
        sensor_nodes: Mesh indices of the sensors (0 is the clamped root).
        actuator_nodes: Mesh indices of the actuators (default: collocated with the sensors).
        dt: Control sample interval (s); must resolve the fastest retained mode.
        n_candidates: Mesh size besides the root.
        n_modes: Number of retained modes.

    Raises:
        RangeError: For node indices outside the mesh or too many retained modes.
        NyquistError: If dt cannot resolve the retained modes.
    """
    IntegerValidator(positive_only=True, field_name="n_modes").validate(n_modes)
    base = modes.base if isinstance(modes, CorrectedModes) else modes
    node_x = node_positions(n_candidates, base.beam_length)
    sensors = _check_nodes(sensor_nodes, node_x.size, "sensor_nodes")
    actuators = sensors if actuator_nodes is None else _check_nodes(
        actuator_nodes, node_x.size, "actuator_nodes")

    omega, zeta, shapes, amplitudes = _modal_data(modes, node_x, n_modes)
    fastest_hz = float(np.max(omega)) / (2.0 * np.pi)
    SamplingValidator(fastest_hz, field_name="control").validate({"dt": dt})

    A, B, C = continuous_modal_matrices(omega, zeta, shapes[list(actuators)].T,
                                        shapes[list(sensors)])
    Ad, Bd, Cd, _, _ = signal.cont2discrete((A, B, C, np.zeros((C.shape[0], B.shape[1]))), dt,
                                            method="zoh")
    logger.debug("modal LTI: %d modes, sensors %s, actuators %s", n_modes, sensors, actuators)
    return ModalLti(LtiSystem(Ad, Bd, Cd, dt), sensors, actuators, A, omega, zeta, amplitudes)
