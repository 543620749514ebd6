"""
dmd.py

Exact Dynamic Mode Decomposition with time-shift stacking.

Snapshots are stacked q deep so standing waves, which a single snapshot row cannot separate
into travelling components, become resolvable. The fit follows the exact-DMD recipe:

    X = U S V^H,  A_tilde = U_r^T X' V_r S_r^-1,  A_tilde W = W Lambda,  Phi = X' V_r S_r^-1 W

and amplitudes b solve Phi b ~ x_1 in least squares.

Stacking consecutive samples of a finely sampled record makes the delayed block nearly equal
to the first one, and the rank-r truncation then keeps one direction per mode instead of a
conjugate pair. The pair is therefore built on every ``stride``-th snapshot; the fitted
eigenvalues are mapped back to the source sample interval (lambda = lambda_c^(1/stride) on
the principal branch), so the model reconstructs on the original time grid. Modes above the
decimated Nyquist frequency alias and cannot be identified.

Purpose:
- Build stacked snapshot pairs and fit a reduced linear surrogate.
- Reconstruct responses and convert discrete eigenvalues to frequency and damping.
- Provide the derived tables used for reporting (energy, spectra, dominant shapes).
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import (
    DegenerateSignalError, RangeError, RankDeficiencyError, RequiredValueError, ValidationError)
from ..model.truth import SnapshotData
from ..validators import FloatValidator, IntegerValidator

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ShiftedSnapshots:
    """
    Stacked snapshot pair.

    Attributes:
        X: (q * n_nodes) x (m - q) matrix over the m decimated snapshots,
            column j = [x_j; x_{j+stride}; ...; x_{j+(q-1)stride}].
        Xp: One-step advance of X on the decimated grid.
        q: Stacking depth.
        dt: Sample interval of the source data (s).
        n_nodes: Rows per block.
        n_t: Number of source snapshots.
        stride: Decimation factor; the pair advances by stride * dt.
    """

    X: np.ndarray
    Xp: np.ndarray
    q: int
    dt: float
    n_nodes: int
    n_t: int
    stride: int = 1

    @property
    def m_cols(self) -> int:
        return self.X.shape[1]

    @property
    def step(self) -> float:
        """Time advance between X and Xp (s)."""
        return self.dt * self.stride


@dataclass(frozen=True)
class DmdModel:
    """
    Fitted DMD surrogate.

    Immutable after construction. ``eigvals`` advance one source sample ``dt`` even when the
    fit ran on a decimated grid (``stride`` > 1). Eigenpairs are ordered by
    |b_j| * ||phi_j|| descending, except that each conjugate pair is grouped with its
    positive-imaginary member first, at the position of the heavier member.
    """

    U_r: np.ndarray
    Sigma_r: np.ndarray
    V_r: np.ndarray
    A_tilde: np.ndarray
    eigvals: np.ndarray
    modes: np.ndarray
    amplitudes: np.ndarray
    rank: int
    dt: float
    q: int
    n_nodes: int
    n_snapshots: int
    singular_values: np.ndarray
    stride: int = 1

    def continuous_spectrum(self) -> np.ndarray:
        """
        Frequency/damping table of the oscillatory content.

        Returns:
            Array of rows (freq_hz, zeta, |b|) for eigenvalues with Im >= 0, sorted by frequency.
        """
        rows = []
        for lam, b in zip(self.eigvals, self.amplitudes):
            if lam.imag < 0 or lam == 0:
                continue
            freq, zeta = discrete_to_continuous(lam, self.dt)
            rows.append((freq, zeta, abs(b)))
        rows.sort(key=lambda row: row[0])
        return np.array(rows, dtype=float).reshape(-1, 3)


def build_shifted_snapshots(data: SnapshotData, q: int = 2, stride: int = 1) -> ShiftedSnapshots:
    """
    Stack q snapshots per column, stride samples apart.

    Args:
        data: Snapshot matrix.
        q: Stacking depth; q = 1 gives the plain X / X' pair.
        stride: Keep every stride-th snapshot before stacking; 1 uses the record as sampled.

    Raises:
        RangeError: If q < 1, stride < 1 or fewer than q + 1 decimated snapshots exist.
    """
    IntegerValidator(positive_only=True, field_name="q").validate(q)
    IntegerValidator(positive_only=True, field_name="stride").validate(stride)
    values = data.values[:, ::stride]
    n_kept = values.shape[1]
    if n_kept < q + 1:
        raise RangeError(min_value=q + 1, actual_value=n_kept, field="n_t",
                         message=f"{n_kept} snapshots (stride {stride}) are too few for "
                                 f"stacking depth {q}")
    m = n_kept - q
    X = np.vstack([values[:, i:i + m] for i in range(q)])
    Xp = np.vstack([values[:, i + 1:i + 1 + m] for i in range(q)])
    return ShiftedSnapshots(X, Xp, q, data.dt, values.shape[0], data.n_t, stride)


def _is_conjugate(a: complex, b: complex) -> bool:
    return abs(a - np.conj(b)) <= 1e-10 * max(abs(a), 1.0)


def _pair_conjugates(eigvals: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Group each conjugate pair at the position of its first member, Im > 0 first."""
    remaining = list(order)
    grouped = []
    while remaining:
        head = remaining.pop(0)
        lam = eigvals[head]
        if lam.imag == 0:
            grouped.append(head)
            continue
        partner = next((j for j in remaining if _is_conjugate(lam, eigvals[j])), None)
        if partner is None:
            grouped.append(head)
            continue
        remaining.remove(partner)
        grouped.extend([head, partner] if lam.imag > 0 else [partner, head])
    return np.array(grouped, dtype=int)


def _to_source_step(eigvals: np.ndarray, stride: int) -> np.ndarray:
    if stride == 1:
        return eigvals
    mapped = np.zeros_like(eigvals, dtype=complex)
    nonzero = eigvals != 0
    mapped[nonzero] = np.exp(np.log(eigvals[nonzero].astype(complex)) / stride)
    return mapped


def fit_dmd(snap: ShiftedSnapshots, rank: int) -> DmdModel:
    """
    Fit exact DMD of the requested rank.

    Args:
        snap: Stacked snapshot pair.
        rank: Truncation rank r, 1 <= r <= numerical rank of X.

    Returns:
        DmdModel.

    Raises:
        RankDeficiencyError: If singular value r lies below max(sigma) * 1e-12.
    """
    IntegerValidator(positive_only=True, field_name="rank").validate(rank)
    U, S, Vh = np.linalg.svd(snap.X, full_matrices=False)
    floor = S[0] * RANK_TOLERANCE if S.size else 0.0
    numerical_rank = int(np.count_nonzero(S > floor)) if S.size and S[0] > 0 else 0
    if rank > numerical_rank:
        raise RankDeficiencyError(requested=rank, available=numerical_rank)

    U_r = U[:, :rank]
    S_r = S[:rank]
    V_r = Vh[:rank].conj().T

    projected = snap.Xp @ V_r / S_r
    A_tilde = U_r.conj().T @ projected
    eigvals, W = np.linalg.eig(A_tilde)
    modes = projected @ W
    amplitudes = np.linalg.lstsq(modes, snap.X[:, 0].astype(complex), rcond=None)[0]

    weight = np.abs(amplitudes) * np.linalg.norm(modes, axis=0)
    order = _pair_conjugates(eigvals, np.argsort(-weight, kind="stable"))
    eigvals = _to_source_step(eigvals, snap.stride)

    logger.debug("fitted DMD rank %d (numerical rank %d, q=%d, stride %d)",
                 rank, numerical_rank, snap.q, snap.stride)
    return DmdModel(
        U_r=U_r,
        Sigma_r=S_r,
        V_r=V_r,
        A_tilde=A_tilde,
        eigvals=eigvals[order],
        modes=modes[:, order],
        amplitudes=amplitudes[order],
        rank=rank,
        dt=snap.dt,
        q=snap.q,
        n_nodes=snap.n_nodes,
        n_snapshots=snap.n_t,
        singular_values=S,
        stride=snap.stride,
    )


def energy_fraction(singular_values: Sequence[float], k: int, squared: bool = False) -> float:
    """
    Normalized cumulative sum of singular values.

    Args:
        singular_values: Nonincreasing non-negative values.
        k: Number of leading values, 0 <= k <= len(singular_values).
        squared: Use sigma^2 (variance) instead of sigma.

    Returns:
        Fraction in [0, 1]; exactly 1 at k = len(singular_values).
    """
    sigma = np.asarray(singular_values, dtype=float).ravel()
    if sigma.size == 0:
        raise RequiredValueError(field="singular_values")
    IntegerValidator(non_negative=True, field_name="k").validate(k)
    if k > sigma.size:
        raise RangeError(max_value=sigma.size, actual_value=k, field="k")
    if np.any(sigma < 0):
        raise RangeError(min_value=0.0, actual_value=float(sigma.min()), field="singular_values")
    if k == 0:
        return 0.0
    weights = sigma ** 2 if squared else sigma
    cumulative = np.cumsum(weights)
    if cumulative[-1] == 0.0:
        raise DegenerateSignalError("all singular values are zero")
    return float(cumulative[k - 1] / cumulative[-1])


def reconstruct(model: DmdModel, t_indices: Optional[Sequence[int]] = None,
                node_subset: Optional[Sequence[int]] = None) -> np.ndarray:
    """
    Reconstruct Re(sum_j phi_j lambda_j^(t-1) b_j).

    Args:
        model: Fitted model.
        t_indices: 1-based snapshot numbers (default: 1..n_snapshots).
        node_subset: Rows of the stacked state (default: the first block, i.e. every node).
            Block i leads the first block by i * stride samples.

    Returns:
        Real matrix len(node_subset) x len(t_indices).

    Raises:
        RangeError: If an index is out of range.
    """
    if t_indices is None:
        t = np.arange(1, model.n_snapshots + 1)
    else:
        t = np.asarray(t_indices, dtype=int).ravel()
        if t.size and t.min() < 1:
            raise RangeError(min_value=1, actual_value=int(t.min()), field="t_indices")
    if node_subset is None:
        rows = np.arange(model.n_nodes)
    else:
        rows = np.asarray(node_subset, dtype=int).ravel()
        n_rows = model.modes.shape[0]
        if rows.size and (rows.min() < 0 or rows.max() >= n_rows):
            raise RangeError(0, n_rows - 1, actual_value=list(rows), field="node_subset")

    dynamics = model.amplitudes[:, None] * np.power(model.eigvals[:, None], (t - 1)[None, :])
    return np.real(model.modes[rows] @ dynamics)


def discrete_to_continuous(lam: complex, dt: float) -> Tuple[float, float]:
    """
    Convert a discrete eigenvalue to (frequency Hz, damping ratio).

    s = ln(lambda)/dt, f = |Im s|/(2 pi), zeta = -Re s/|s| (0 when s = 0).

    Raises:
        ValidationError: If lambda is zero.
    """
    FloatValidator(positive_only=True, field_name="dt").validate(dt)
    if lam == 0:
        raise ValidationError("A zero eigenvalue has no continuous-time counterpart",
                              field="lambda", value=lam)
    s = cmath.log(complex(lam)) / dt
    freq = abs(s.imag) / (2.0 * math.pi)
    magnitude = abs(s)
    zeta = -s.real / magnitude if magnitude > 0 else 0.0
    return freq, zeta


def dominant_mode_shapes(model: DmdModel, k: int = 3) -> np.ndarray:
    """
    Normalized real shapes of the k dominant modes, one per conjugate pair.

    Each complex mode (first block only) is rotated so its largest entry is real and
    positive, then scaled to unit peak.

    Returns:
        n_nodes x k matrix.
    """
    IntegerValidator(positive_only=True, field_name="k").validate(k)
    chosen = []
    for j, lam in enumerate(model.eigvals):
        if any(abs(lam - np.conj(model.eigvals[c])) <= 1e-10 * max(abs(lam), 1.0) for c in chosen):
            continue
        chosen.append(j)
        if len(chosen) == k:
            break
    if len(chosen) < k:
        raise RangeError(max_value=len(chosen), actual_value=k, field="k",
                         message=f"Model holds only {len(chosen)} distinct modes, {k} requested")

    shapes = []
    for j in chosen:
        v = model.modes[:model.n_nodes, j]
        peak = v[np.argmax(np.abs(v))]
        real = np.real(v * np.conj(peak) / abs(peak))
        shapes.append(real / np.max(np.abs(real)))
    return np.column_stack(shapes)


def tip_spectrum_comparison(truth: np.ndarray, recon: np.ndarray,
                            dt: float) -> Dict[str, np.ndarray]:
    """
    One-sided FFT magnitudes of a truth and a reconstructed signal.

    Returns:
        Dict with ``freq_hz``, ``truth`` and ``reconstruction`` arrays (amplitude spectrum, 2|X|/N).
    """
    truth = np.asarray(truth, dtype=float).ravel()
    recon = np.asarray(recon, dtype=float).ravel()
    if truth.size != recon.size:
        raise ValidationError("Signals must have equal length", field="recon")
    n = truth.size
    return {
        "freq_hz": np.fft.rfftfreq(n, dt),
        "truth": 2.0 * np.abs(np.fft.rfft(truth)) / n,
        "reconstruction": 2.0 * np.abs(np.fft.rfft(recon)) / n,
    }
