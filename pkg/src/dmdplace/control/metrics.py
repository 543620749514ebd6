"""
metrics.py

Vibration-suppression metrics: integrated PSD, overshoot, settling time and control effort.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import integrate, signal

from ..exceptions import RangeError
from ..validators import FloatValidator, IntegerValidator, RangeValidator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PsdResult:
    """Welch PSD estimate and its integral (the signal variance)."""

    freq_hz: np.ndarray
    psd: np.ndarray
    variance: float


def psd_variance(x, dt: float, segments: int = 8, window: str = "hann") -> PsdResult:
    """
    Averaged-periodogram PSD and integrated variance sum(PSD) * df.

    Segments overlap by half; ``segments`` half-overlapping segments span the record, so each
    holds 2N / (segments + 1) samples. Each segment is mean-removed before windowing.

    Raises:
        RangeError: If fewer than 2 samples are given.
    """
    x = np.asarray(x, dtype=float).ravel()
    FloatValidator(positive_only=True, field_name="dt").validate(dt)
    IntegerValidator(positive_only=True, field_name="segments").validate(segments)
    if x.size < 2:
        raise RangeError(min_value=2, actual_value=x.size, field="signal")
    nperseg = min(x.size, max(2, int(2 * x.size / (segments + 1))))
    freq, psd = signal.welch(x, fs=1.0 / dt, window=window, nperseg=nperseg,
                             noverlap=nperseg // 2, detrend="constant", scaling="density")
    df = 1.0 / (nperseg * dt)
    return PsdResult(freq, psd, float(np.sum(psd) * df))


@dataclass(frozen=True)
class StepMetrics:
    """
    Overshoot and settling of one response.

    ``settling_time`` is math.inf when the response never stays inside the band before the
    end of the record; ``label`` then reads "> horizon".
    """

    overshoot_pct: float
    settling_time: float
    horizon: float

    @property
    def settled(self) -> bool:
        return math.isfinite(self.settling_time)

    @property
    def label(self) -> str:
        if self.settled:
            return f"{self.settling_time:.3f}"
        return f"> {self.horizon:g}"


def step_metrics(y, dt: float, band: float = 0.02, final: Optional[float] = None) -> StepMetrics:
    """
    Overshoot (%) and settling time of a response.

    Args:
        y: Response samples starting at t = 0.
        dt: Sample interval (s).
        band: Settling band as a fraction of |final - y[0]|.
        final: Final value (default: the last sample).

    Overshoot is (peak - final)/|final| * 100 in the direction of the step for a nonzero final
    value. For a zero final value (regulation) it is the largest excursion on the far side
    of zero relative to |y[0]|. Settling time is the time just after the last sample outside
    the band.
    """
    y = np.asarray(y, dtype=float).ravel()
    FloatValidator(positive_only=True, field_name="dt").validate(dt)
    RangeValidator(0.0, 1.0, min_inclusive=False, max_inclusive=False, field_name="band").validate(band)
    if y.size < 2:
        raise RangeError(min_value=2, actual_value=y.size, field="signal")
    horizon = (y.size - 1) * dt
    final = float(y[-1]) if final is None else float(final)
    y0 = float(y[0])
    span = abs(final - y0)

    if final != 0.0:
        direction = 1.0 if final >= y0 else -1.0
        overshoot = max(0.0, float(np.max((y - final) * direction))) / abs(final) * 100.0
    elif y0 != 0.0:
        overshoot = max(0.0, float(np.max(-np.sign(y0) * y))) / abs(y0) * 100.0
    else:
        overshoot = 0.0

    if span == 0.0:
        outside = np.abs(y - final) > 0.0
    else:
        outside = np.abs(y - final) > band * span
    if not np.any(outside):
        settling = 0.0
    else:
        last = int(np.flatnonzero(outside)[-1])
        settling = math.inf if last == y.size - 1 else (last + 1) * dt
    return StepMetrics(overshoot, settling, horizon)


def control_effort(u, dt: float, per_channel: bool = False) -> Union[float, np.ndarray]:
    """
    Trapezoidal integral of u^2 over time.

    Args:
        u: Input samples, 1-D or channels x time.
        dt: Sample interval (s).
        per_channel: Return one value per channel instead of the sum.
    """
    FloatValidator(positive_only=True, field_name="dt").validate(dt)
    u = np.atleast_2d(np.asarray(u, dtype=float))
    if u.shape[1] < 2:
        effort = np.zeros(u.shape[0])
    else:
        effort = integrate.trapezoid(u ** 2, dx=dt, axis=1)
    return effort if per_channel else float(np.sum(effort))
