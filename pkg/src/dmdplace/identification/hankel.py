"""
hankel.py

Block Hankel matrices, finite Gramians and the Hankel/Gramian spectrum check.

Two Hankel sources are supported: Markov parameters h_k = C A^(k-1) B of a known system,
and raw output records. For a stable system the Hankel matrix factors as H0 = O_s C_r and
its nonzero singular values are the square roots of the nonzero eigenvalues of
O_s Wc O_s^T with the finite Gramian Wc = C_r C_r^T.

Purpose:
- Build Hankel matrices from either source and pick the Hankel depth from data.
- Compute finite Gramians and compare both spectra on random stable systems.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import linalg, optimize

from .systems import LtiSystem, random_stable_system
from ..exceptions import (
    DegenerateSignalError, RangeError, RequiredValueError, UnstableSystemError, ValidationError)
from ..validators import FloatValidator, IntegerValidator

logger = logging.getLogger(__name__)

NONZERO_FLOOR = 1e-12


@dataclass(frozen=True)
class HankelSpec:
    """
    Hankel dimensions.

    Attributes:
        s: Block rows.
        r: Columns (or block columns for Markov Hankels).
        source: ``"markov"`` or ``"output"``.
    """

    s: int
    r: int
    source: str = "markov"

    def __post_init__(self):
        IntegerValidator(positive_only=True, field_name="s").validate(self.s)
        IntegerValidator(positive_only=True, field_name="r").validate(self.r)
        if self.source not in ("markov", "output"):
            raise ValidationError(f"Unknown Hankel source '{self.source}'", field="source",
                                  value=self.source)

    @classmethod
    def for_output(cls, n_t: int, s: int) -> "HankelSpec":
        """Output-data Hankel with r = n_t - 2s + 1 columns."""
        return cls(s, n_t - 2 * s + 1, "output")


def markov_params(sys: LtiSystem, k_max: int) -> List[np.ndarray]:
    """Markov parameters h_k = C A^(k-1) B for k = 1..k_max."""
    IntegerValidator(positive_only=True, field_name="k_max").validate(k_max)
    params = []
    AkB = sys.B.copy()
    for _ in range(k_max):
        params.append(sys.C @ AkB)
        AkB = sys.A @ AkB
    return params


def observability_matrix(sys: LtiSystem, s: int) -> np.ndarray:
    """O_s = [C; CA; ...; CA^(s-1)]."""
    IntegerValidator(positive_only=True, field_name="s").validate(s)
    blocks = []
    CAk = sys.C.copy()
    for _ in range(s):
        blocks.append(CAk)
        CAk = CAk @ sys.A
    return np.vstack(blocks)


def controllability_matrix(sys: LtiSystem, r: int) -> np.ndarray:
    """C_r = [B, AB, ..., A^(r-1) B]."""
    IntegerValidator(positive_only=True, field_name="r").validate(r)
    blocks = []
    AkB = sys.B.copy()
    for _ in range(r):
        blocks.append(AkB)
        AkB = sys.A @ AkB
    return np.hstack(blocks)


def build_hankel_markov(h: Sequence[np.ndarray], s: int, r: int) -> np.ndarray:
    """
    Block Hankel matrix with block (i, j) = h_(i+j-1), 1-based.

    Raises:
        RangeError: If fewer than s + r - 1 Markov parameters are given.
    """
    IntegerValidator(positive_only=True, field_name="s").validate(s)
    IntegerValidator(positive_only=True, field_name="r").validate(r)
    if len(h) < s + r - 1:
        raise RangeError(min_value=s + r - 1, actual_value=len(h), field="h",
                         message=f"{len(h)} Markov parameters given, {s + r - 1} needed")
    blocks = [np.atleast_2d(np.asarray(hk, dtype=float)) for hk in h[:s + r - 1]]
    return np.block([[blocks[i + j] for j in range(r)] for i in range(s)])


def build_output_hankel(Y: np.ndarray, subset: Sequence[int], s: int) -> np.ndarray:
    """
    Output-data block Hankel of the selected rows of Y.

    Each selected output contributes s rows [y(t) ... y(t + r - 1)], t = 0..s-1, with
    r = n_t - 2s + 1; blocks are stacked in subset order.

    Raises:
        RangeError: If n_t < 2s or an index is out of range.
        RequiredValueError: If the subset is empty.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    IntegerValidator(positive_only=True, field_name="s").validate(s)
    rows = list(subset)
    if not rows:
        raise RequiredValueError(field="subset")
    n_x, n_t = Y.shape
    if n_t < 2 * s:
        raise RangeError(min_value=2 * s, actual_value=n_t, field="n_t",
                         message=f"n_t = {n_t} samples is too short for Hankel depth s = {s}")
    for i in rows:
        if not 0 <= i < n_x:
            raise RangeError(0, n_x - 1, actual_value=i, field="subset")
    r = n_t - 2 * s + 1
    return np.vstack([sliding_window_view(Y[i], r)[:s] for i in rows])


def _average_power(Y: np.ndarray, dt: float, freq_hz: float, window: np.ndarray) -> float:
    phase = np.exp(-2j * math.pi * freq_hz * dt * np.arange(Y.shape[1]))
    return float(np.mean(np.abs((Y * window) @ phase) ** 2))


def choose_hankel_depth(Y: np.ndarray, dt: float) -> int:
    """
    Hankel depth from the dominant period of the data.

    The averaged Hann-windowed spectrum of the mean-removed rows is searched for its peak
    (coarse zero-padded FFT, refined with a bounded scalar search); s = ceil(T_dom / dt),
    clipped to [1, n_t // 2].

    Raises:
        DegenerateSignalError: If the data are all zero or carry no oscillation.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    FloatValidator(positive_only=True, field_name="dt").validate(dt)
    n_t = Y.shape[1]
    if n_t < 4:
        raise RangeError(min_value=4, actual_value=n_t, field="n_t")
    if not np.any(Y):
        raise DegenerateSignalError("all-zero output data")
    centered = Y - Y.mean(axis=1, keepdims=True)
    scale = np.max(np.abs(Y))
    if np.max(np.abs(centered)) <= 1e-12 * scale:
        raise DegenerateSignalError("constant output data has no spectral peak")

    window = np.hanning(n_t)
    n_fft = 1 << int(math.ceil(math.log2(4 * n_t)))
    power = np.mean(np.abs(np.fft.rfft(centered * window, n=n_fft, axis=1)) ** 2, axis=0)
    freqs = np.fft.rfftfreq(n_fft, dt)
    peak = int(np.argmax(power[1:])) + 1
    step = freqs[1]
    result = optimize.minimize_scalar(
        lambda f: -_average_power(centered, dt, f, window),
        bounds=(max(freqs[peak] - step, step * 1e-3), freqs[peak] + step),
        method="bounded",
        options={"xatol": step * 1e-6},
    )
    f_dom = float(result.x)
    s = int(math.ceil(1.0 / (f_dom * dt)))
    clipped = min(max(s, 1), n_t // 2)
    logger.debug("dominant frequency %.6f Hz -> Hankel depth %d (clipped %d)", f_dom, s, clipped)
    return clipped


def finite_gramians(sys: LtiSystem, s: int, r: int,
                    require_stable: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """
    Finite Gramians W_c^(r) = C_r C_r^T and W_o^(s) = O_s^T O_s.

    Raises:
        UnstableSystemError: If require_stable and the spectral radius of A is >= 1.
    """
    if require_stable:
        rho = sys.spectral_radius()
        if rho >= 1.0:
            raise UnstableSystemError(spectral_radius=rho)
    ctrb = controllability_matrix(sys, r)
    obsv = observability_matrix(sys, s)
    return ctrb @ ctrb.T, obsv.T @ obsv


def gramian_sqrt(factor: np.ndarray) -> np.ndarray:
    """
    Symmetric square root of the Gramian W = F F^T, computed from the factor F.

    With F = U S V^T the root is U S U^T; W itself is never formed, so small Hankel
    singular values keep their relative accuracy.
    """
    factor = np.atleast_2d(np.asarray(factor, dtype=float))
    if factor.size == 0:
        return np.zeros((factor.shape[0], factor.shape[0]))
    U, S, _ = linalg.svd(factor, full_matrices=False)
    return (U * S) @ U.T


def _nonzero(sigma: np.ndarray, floor: float) -> np.ndarray:
    return np.sort(sigma[sigma > floor])[::-1]


@dataclass(frozen=True)
class EquivalenceReport:
    """
    Outcome of one Hankel/Gramian spectrum comparison.

    ``max_rel_dev`` is the largest deviation of a Gramian-side value from its Hankel
    counterpart, relative to that Hankel value (floored at 1e-12 times the largest value).
    """

    n: int
    s: int
    r: int
    max_rel_dev: float
    factorization_error: float
    passed: bool
    hankel_hsv: np.ndarray = field(repr=False)
    gramian_hsv: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {"n": self.n, "s": self.s, "r": self.r, "max_rel_dev": self.max_rel_dev,
                "factorization_error": self.factorization_error, "pass": self.passed}


def _max_deviation(reference: np.ndarray, other: np.ndarray, floor: float) -> float:
    size = max(reference.size, other.size)
    if size == 0:
        return 0.0
    reference = np.pad(reference, (0, size - reference.size))
    other = np.pad(other, (0, size - other.size))
    return float(np.max(np.abs(reference - other) / np.maximum(reference, floor)))


def verify_spectrum_equivalence(sys: LtiSystem, s: int, r: int,
                                tol: float = 1e-8) -> EquivalenceReport:
    """
    Compare Hankel singular values from Markov parameters and from the finite Gramians.

    Nonzero singular values of H0 are checked, value by value, against those of
    O_s Wc^(1/2) and Wo^(1/2) C_r, whose squares are the nonzero eigenvalues of
    O_s Wc O_s^T and C_r^T Wo C_r. Values below max(sigma) * 1e-12 count as zero.

    Raises:
        UnstableSystemError: If the spectral radius of A is >= 1.
    """
    rho = sys.spectral_radius()
    if rho >= 1.0:
        raise UnstableSystemError(spectral_radius=rho)
    H0 = build_hankel_markov(markov_params(sys, s + r - 1), s, r)
    obsv = observability_matrix(sys, s)
    ctrb = controllability_matrix(sys, r)

    hankel_sigma = linalg.svdvals(H0)
    via_wc = linalg.svdvals(obsv @ gramian_sqrt(ctrb))
    via_wo = linalg.svdvals(gramian_sqrt(obsv.T) @ ctrb)

    top = max(hankel_sigma.max(initial=0.0), via_wc.max(initial=0.0), via_wo.max(initial=0.0))
    floor = top * NONZERO_FLOOR if top > 0 else NONZERO_FLOOR
    hankel_hsv = _nonzero(hankel_sigma, floor)
    gramian_hsv = _nonzero(via_wc, floor)
    deviation = max(_max_deviation(hankel_hsv, gramian_hsv, floor),
                    _max_deviation(hankel_hsv, _nonzero(via_wo, floor), floor))

    product = obsv @ ctrb
    factorization_error = float(np.max(np.abs(H0 - product))) if H0.size else 0.0
    return EquivalenceReport(sys.n_states, s, r, deviation, factorization_error,
                             deviation <= tol, hankel_hsv, gramian_hsv)


@dataclass(frozen=True)
class EquivalenceSummary:
    trials: List[EquivalenceReport]
    tol: float

    @property
    def worst_dev(self) -> float:
        return max((t.max_rel_dev for t in self.trials), default=0.0)

    @property
    def worst_factorization_error(self) -> float:
        return max((t.factorization_error for t in self.trials), default=0.0)

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials)

    def to_dict(self) -> dict:
        return {
            "trials": [t.to_dict() for t in self.trials],
            "summary": {"trials": len(self.trials), "worst_dev": self.worst_dev,
                        "worst_factorization_error": self.worst_factorization_error,
                        "tol": self.tol, "pass": self.passed},
        }


def _run_trial(seed: int, index: int, n_max: int, tol: float) -> EquivalenceReport:
    rng = np.random.default_rng([seed, index])
    n = int(rng.integers(1, n_max + 1))
    sys = random_stable_system(rng, n)
    return verify_spectrum_equivalence(sys, 2 * n, 2 * n, tol)


def run_equivalence_trials(trials: int = 100, seed: int = 0, n_max: int = 6, tol: float = 1e-8,
                           workers: Optional[int] = None) -> EquivalenceSummary:
    """
    Spectrum check on ``trials`` random stable systems with s = r = 2n.

    Trial i draws from default_rng([seed, i]), so results are independent of ``workers``
    and always ordered by trial index.
    """
    IntegerValidator(positive_only=True, field_name="trials").validate(trials)
    IntegerValidator(positive_only=True, field_name="n_max").validate(n_max)
    indices = range(trials)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda i: _run_trial(seed, i, n_max, tol), indices))
    else:
        reports = [_run_trial(seed, i, n_max, tol) for i in indices]
    summary = EquivalenceSummary(reports, tol)
    logger.info("spectrum equivalence: %d trials, worst deviation %.3e, pass=%s",
                trials, summary.worst_dev, summary.passed)
    return summary
