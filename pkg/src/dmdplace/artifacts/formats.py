"""
formats.py

CSV and JSON codecs for dmdplace data types.

Floats are written with 17 significant digits so they read back exactly. Complex arrays are
stored as [re, im] pairs and non-finite floats as the strings "inf", "-inf" and "nan".
"""

import csv
import math
from pathlib import Path
from typing import Any, List, Sequence, Tuple, Union

import numpy as np

from ..exceptions import ArtifactError
from ..identification.dmd import DmdModel
from ..model.truth import SnapshotData


def format_float(value: float) -> str:
    return "%.17g" % value


def to_jsonable(value: Any) -> Any:
    """Convert numpy values, complex numbers, tuples and non-finite floats for json.dumps."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(float(value.real)), to_jsonable(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def snapshot_rows(data: SnapshotData, include_root: bool = False) -> Tuple[List[str], List[List[float]]]:
    """
    Header t, then one cell per node holding its position; one row per sample.

    The clamped root (x = 0, identically zero) is left out unless ``include_root`` is set.
    """
    first = 0 if include_root else 1
    header = ["t"] + [format_float(float(x)) for x in data.node_x[first:]]
    times = data.times
    rows = [[float(times[k])] + [float(v) for v in data.values[first:, k]] for k in range(data.n_t)]
    return header, rows


def read_snapshot_csv(path: Union[str, Path]) -> SnapshotData:
    """Read a snapshot CSV written by snapshot_rows, restoring the root row when omitted."""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            body = np.array([[float(v) for v in row] for row in reader], dtype=float)
    except (OSError, StopIteration, ValueError) as e:
        raise ArtifactError(f"Cannot read snapshot CSV '{path}': {e}", path=str(path))
    if header[0] != "t" or body.ndim != 2 or body.shape[0] < 2:
        raise ArtifactError(f"Malformed snapshot CSV '{path}'", path=str(path))
    node_x = np.array([float(h) for h in header[1:]])
    values = body[:, 1:].T
    if node_x.size and node_x[0] > 0.0:
        node_x = np.concatenate([[0.0], node_x])
        values = np.vstack([np.zeros((1, values.shape[1])), values])
    dt = float(body[1, 0] - body[0, 0])
    return SnapshotData(values, node_x, dt)


def _complex_pairs(values: np.ndarray) -> List[Any]:
    return np.stack([values.real, values.imag], axis=-1).tolist()


def _from_pairs(values: Sequence[Any]) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    return array[..., 0] + 1j * array[..., 1]


def dmd_model_to_dict(model: DmdModel) -> dict:
    return {
        "dt": model.dt,
        "r": model.rank,
        "q": model.q,
        "stride": model.stride,
        "n_nodes": model.n_nodes,
        "n_snapshots": model.n_snapshots,
        "eigvals": _complex_pairs(model.eigvals),
        "modes": _complex_pairs(model.modes),
        "amplitudes": _complex_pairs(model.amplitudes),
        "A_tilde": _complex_pairs(model.A_tilde.astype(complex)),
        "singular_values": model.singular_values.tolist(),
        "U_r": model.U_r.tolist(),
        "V_r": model.V_r.tolist(),
    }


def dmd_model_from_dict(payload: dict) -> DmdModel:
    try:
        rank = int(payload["r"])
        singular_values = np.asarray(payload["singular_values"], dtype=float)
        return DmdModel(
            U_r=np.asarray(payload["U_r"], dtype=float),
            Sigma_r=singular_values[:rank],
            V_r=np.asarray(payload["V_r"], dtype=float),
            A_tilde=_from_pairs(payload["A_tilde"]),
            eigvals=_from_pairs(payload["eigvals"]),
            modes=_from_pairs(payload["modes"]),
            amplitudes=_from_pairs(payload["amplitudes"]),
            rank=rank,
            dt=float(payload["dt"]),
            q=int(payload["q"]),
            n_nodes=int(payload["n_nodes"]),
            n_snapshots=int(payload["n_snapshots"]),
            singular_values=singular_values,
            stride=int(payload.get("stride", 1)),
        )
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ArtifactError(f"Malformed DMD model document: {e}")
