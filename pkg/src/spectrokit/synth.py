"""Test-signal generators with analytically known spectra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import ParameterError, TimeSeries


@dataclass(frozen=True)
class SynthComponent:
    """One ``amplitude * cos(2*pi*freq_hz*t + phase_rad)`` term."""

    amplitude: float
    freq_hz: float
    phase_rad: float = 0.0

    def __post_init__(self) -> None:
        if self.freq_hz < 0:
            raise ParameterError(f"component frequency must be >= 0, got {self.freq_hz}")


def _sample_count(fs_hz: float, duration_s: float) -> int:
    if not fs_hz > 0:
        raise ParameterError(f"sample rate must be > 0, got {fs_hz}")
    if not duration_s > 0:
        raise ParameterError(f"duration must be > 0, got {duration_s}")
    n = int(round(fs_hz * duration_s))
    if n < 1:
        raise ParameterError(f"fs*duration rounds to {n} samples")
    return n


def synth_cosine_sum(
    a0: float,
    components: Iterable[SynthComponent],
    fs_hz: float,
    duration_s: float,
) -> TimeSeries:
    """Constant offset plus a sum of cosines, sampled at ``t = n / fs``."""
    n = _sample_count(fs_hz, duration_s)
    t = np.arange(n) / fs_hz
    x = np.full(n, float(a0))
    for c in components:
        x += c.amplitude * np.cos(2 * np.pi * c.freq_hz * t + c.phase_rad)
    return TimeSeries(x, fs_hz)


def square_harmonic_amplitude(m: int) -> float:
    """Sine-series coefficient of the m-th odd harmonic of a +/-1 square wave."""
    return 4.0 / (math.pi * (2 * m - 1))


def synth_square_partial_sum(
    f0_hz: float, n_harmonics: int, fs_hz: float, duration_s: float
) -> TimeSeries:
    """Truncated Fourier series of a unit square wave.

    The target wave is +1 on the first half of each period and -1 on the
    second, so the series is ``sum 4/(pi*(2m-1)) * sin(2*pi*(2m-1)*f0*t)``
    over ``m = 1..n_harmonics``.
    """
    if n_harmonics < 1 or int(n_harmonics) != n_harmonics:
        raise ParameterError(f"n_harmonics must be a positive integer, got {n_harmonics}")
    if not f0_hz > 0:
        raise ParameterError(f"f0 must be > 0, got {f0_hz}")
    top = (2 * n_harmonics - 1) * f0_hz
    if not fs_hz > 2 * top:
        raise ParameterError(
            f"highest harmonic {top} Hz is at or above Nyquist ({fs_hz / 2} Hz)"
        )
    n = _sample_count(fs_hz, duration_s)
    t = np.arange(n) / fs_hz
    x = np.zeros(n)
    for m in range(1, int(n_harmonics) + 1):
        x += square_harmonic_amplitude(m) * np.sin(2 * np.pi * (2 * m - 1) * f0_hz * t)
    return TimeSeries(x, fs_hz)


def ideal_square(f0_hz: float, t: np.ndarray) -> np.ndarray:
    """The +/-1 square wave the partial sums converge to (0 at the jumps)."""
    phase = np.mod(np.asarray(t, dtype=float) * f0_hz, 1.0)
    out = np.where(phase < 0.5, 1.0, -1.0)
    out[(phase == 0.0) | (phase == 0.5)] = 0.0
    return out


def synth_linear_chirp(
    f0_hz: float, rate_hz_per_s: float, fs_hz: float, duration_s: float
) -> TimeSeries:
    """``cos(2*pi*f0*t + pi*rate*t**2)``; instantaneous frequency ``f0 + rate*t``."""
    end_freq = f0_hz + rate_hz_per_s * duration_s
    if not fs_hz > 2 * max(abs(end_freq), abs(f0_hz)):
        raise ParameterError(
            f"sweep reaches {end_freq} Hz, at or above Nyquist ({fs_hz / 2} Hz)"
        )
    n = _sample_count(fs_hz, duration_s)
    t = np.arange(n) / fs_hz
    return TimeSeries(np.cos(2 * np.pi * f0_hz * t + np.pi * rate_hz_per_s * t * t), fs_hz)


def chirp_instantaneous_frequency(f0_hz: float, rate_hz_per_s: float, t) -> np.ndarray:
    return f0_hz + rate_hz_per_s * np.asarray(t, dtype=float)
