"""Shared data containers and basic signal utilities.

Every container is a frozen dataclass holding read-only float64/complex128
arrays, so instances can be passed between threads without copying.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

WindowKind = Literal["hann", "rectangular"]
Scaling = Literal["density", "spectrum"]
Detrend = Literal["constant", "none"]
GridUnit = Literal["power", "db"]

WINDOW_KINDS = ("hann", "rectangular")
SCALINGS = ("density", "spectrum")
DETRENDS = ("constant", "none")


class ParameterError(ValueError):
    """An argument violates an operation's precondition."""


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled real signal.

    ``samples`` is always stored as a read-only float64 vector regardless of
    what was passed in.
    """

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples)
        if np.iscomplexobj(samples):
            raise ParameterError("TimeSeries samples must be real")
        samples = _frozen(samples, np.float64)
        if samples.ndim != 1:
            raise ParameterError(f"samples must be 1-D, got shape {samples.shape}")
        rate = float(self.sample_rate_hz)
        if not np.isfinite(rate) or rate <= 0:
            raise ParameterError(f"sample_rate_hz must be > 0, got {self.sample_rate_hz}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", rate)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times_s(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate_hz

    def require_nonempty(self) -> None:
        if self.samples.size == 0:
            raise ParameterError("signal is empty")


@dataclass(frozen=True)
class ComplexSpectrum:
    """Full (two-sided) DFT coefficients; bin ``k`` sits at ``k * fs / N``."""

    bins: np.ndarray
    sample_rate_hz: float = 1.0

    def __post_init__(self) -> None:
        bins = _frozen(self.bins, np.complex128)
        if bins.ndim != 1 or bins.size == 0:
            raise ParameterError("spectrum must be a non-empty 1-D sequence")
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    @property
    def bin_count(self) -> int:
        return self.bins.size

    @property
    def freqs_hz(self) -> np.ndarray:
        return np.arange(self.bin_count) * self.sample_rate_hz / self.bin_count

    def __len__(self) -> int:
        return self.bin_count


@dataclass(frozen=True)
class SpectralDensity:
    """One-sided power spectrum.

    ``scaling`` is ``"density"`` (units^2/Hz) or ``"spectrum"`` (units^2).
    """

    freqs_hz: np.ndarray
    power: np.ndarray
    scaling: Scaling = "density"
    segment_count_used: int = 1

    def __post_init__(self) -> None:
        freqs = _frozen(self.freqs_hz, np.float64)
        power = _frozen(self.power, np.float64)
        if freqs.shape != power.shape or freqs.ndim != 1:
            raise ParameterError(
                f"freqs_hz and power must be equal-length vectors, got {freqs.shape} and {power.shape}"
            )
        if np.any(power < 0):
            raise ParameterError("power values must be non-negative")
        if freqs.size > 1 and np.any(np.diff(freqs) <= 0):
            raise ParameterError("freqs_hz must be strictly ascending")
        if self.scaling not in SCALINGS:
            raise ParameterError(f"unknown scaling {self.scaling!r}")
        object.__setattr__(self, "freqs_hz", freqs)
        object.__setattr__(self, "power", power)

    @property
    def resolution_hz(self) -> float:
        return float(self.freqs_hz[1] - self.freqs_hz[0]) if self.freqs_hz.size > 1 else 0.0

    def __len__(self) -> int:
        return self.freqs_hz.size


@dataclass(frozen=True)
class SpectrogramGrid:
    """Time-frequency matrix, ``values[freq_index, time_index]``."""

    times_s: np.ndarray
    freqs_hz: np.ndarray
    values: np.ndarray
    unit: GridUnit = "power"

    def __post_init__(self) -> None:
        times = _frozen(self.times_s, np.float64)
        freqs = _frozen(self.freqs_hz, np.float64)
        values = _frozen(self.values, np.float64)
        if values.shape != (freqs.size, times.size):
            raise ParameterError(
                f"values shape {values.shape} does not match axes ({freqs.size}, {times.size})"
            )
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise ParameterError("times_s must be strictly ascending")
        if freqs.size > 1 and np.any(np.diff(freqs) <= 0):
            raise ParameterError("freqs_hz must be strictly ascending")
        if self.unit not in ("power", "db"):
            raise ParameterError(f"unknown unit {self.unit!r}")
        if self.unit == "power" and np.any(values < 0):
            raise ParameterError("power grid values must be non-negative")
        object.__setattr__(self, "times_s", times)
        object.__setattr__(self, "freqs_hz", freqs)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def is_empty(self) -> bool:
        return self.values.size == 0


@dataclass(frozen=True)
class AnalysisParams:
    """Segmentation and scaling settings shared by Welch and spectrogram.

    The defaults are the 256-point Hann, zero-overlap PSD configuration.
    ``detrend="constant"`` subtracts each segment's mean before windowing.
    """

    nperseg: int = 256
    noverlap: int = 0
    window: WindowKind = "hann"
    scaling: Scaling = "density"
    detrend: Detrend = "constant"

    def __post_init__(self) -> None:
        if int(self.nperseg) != self.nperseg or self.nperseg < 1:
            raise ParameterError(f"nperseg must be a positive integer, got {self.nperseg}")
        if int(self.noverlap) != self.noverlap or not 0 <= self.noverlap < self.nperseg:
            raise ParameterError(
                f"noverlap must satisfy 0 <= noverlap < nperseg, got {self.noverlap} (nperseg={self.nperseg})"
            )
        if self.window not in WINDOW_KINDS:
            raise ParameterError(f"unknown window {self.window!r}")
        if self.scaling not in SCALINGS:
            raise ParameterError(f"unknown scaling {self.scaling!r}")
        if self.detrend not in DETRENDS:
            raise ParameterError(f"unknown detrend {self.detrend!r}")
        object.__setattr__(self, "nperseg", int(self.nperseg))
        object.__setattr__(self, "noverlap", int(self.noverlap))

    @property
    def hop(self) -> int:
        return self.nperseg - self.noverlap


def duration_s(ts: TimeSeries) -> float:
    """Length of the signal in seconds."""
    return ts.samples.size / ts.sample_rate_hz


def mean_power(ts: TimeSeries) -> float:
    """Average of the squared samples."""
    ts.require_nonempty()
    x = ts.samples
    return float(np.dot(x, x) / x.size)
