"""Welch's averaged periodogram.

The signal is cut into ``nperseg``-sample segments advancing by
``nperseg - noverlap``; each segment is optionally mean-removed, windowed,
transformed, and turned into a one-sided periodogram. The PSD is the plain
arithmetic mean of those periodograms. Trailing samples that do not fill a
whole segment are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import AnalysisParams, ParameterError, Scaling, SpectralDensity, TimeSeries
from .fft import get_plan, rfft_freqs
from .window import WindowVector, make_window, window_coherent_sum, window_power_sum


class SignalTooShortError(ParameterError):
    """The signal holds fewer samples than one analysis segment."""


@dataclass(frozen=True)
class SegmentView:
    start_index: int
    length: int

    @property
    def stop_index(self) -> int:
        return self.start_index + self.length


def segment_count(n_samples: int, nperseg: int, noverlap: int) -> int:
    if not 0 <= noverlap < nperseg:
        raise ParameterError(
            f"noverlap must satisfy 0 <= noverlap < nperseg, got {noverlap} (nperseg={nperseg})"
        )
    if nperseg > n_samples:
        raise SignalTooShortError(
            f"signal shorter than segment: {n_samples} samples < nperseg={nperseg}"
        )
    return (n_samples - noverlap) // (nperseg - noverlap)


def segment_starts(n_samples: int, nperseg: int, noverlap: int) -> list[SegmentView]:
    """Every full segment that fits, in order."""
    count = segment_count(n_samples, nperseg, noverlap)
    hop = nperseg - noverlap
    return [SegmentView(i * hop, nperseg) for i in range(count)]


def segment_matrix(samples: np.ndarray, nperseg: int, noverlap: int) -> np.ndarray:
    """Stack the segments into a ``(n_segments, nperseg)`` array (a copy)."""
    samples = np.asarray(samples, dtype=np.float64)
    count = segment_count(samples.size, nperseg, noverlap)
    hop = nperseg - noverlap
    view = np.lib.stride_tricks.sliding_window_view(samples, nperseg)[::hop][:count]
    return np.array(view)


def _normalizer(w: WindowVector, fs_hz: float, scaling: Scaling) -> float:
    if scaling == "density":
        norm = fs_hz * window_power_sum(w)
    elif scaling == "spectrum":
        norm = window_coherent_sum(w) ** 2
    else:
        raise ParameterError(f"unknown scaling {scaling!r}")
    if norm <= 0:
        raise ParameterError("window has zero energy; use a longer segment")
    return norm


def one_sided_periodograms(
    frames: np.ndarray, w: WindowVector, fs_hz: float, scaling: Scaling
) -> np.ndarray:
    """Periodogram of each row of ``frames``, shape ``(n_frames, n//2 + 1)``.

    Frames are used as given (no detrending). Interior bins are doubled;
    DC, and Nyquist for even lengths, are not.
    """
    frames = np.asarray(frames, dtype=np.float64)
    n = frames.shape[-1]
    if n != len(w):
        raise ParameterError(f"frame length {n} does not match window length {len(w)}")
    if n < 2:
        raise ParameterError("periodogram needs at least 2 samples per frame")
    if not fs_hz > 0:
        raise ParameterError(f"sample rate must be > 0, got {fs_hz}")
    spectrum = get_plan(n).execute(frames * w.coefficients)[..., : n // 2 + 1]
    power = (spectrum.real**2 + spectrum.imag**2) / _normalizer(w, fs_hz, scaling)
    last = n // 2 if n % 2 else n // 2 - 1  # last doubled index
    power[..., 1 : last + 1] *= 2.0
    return power


def periodogram(
    frame: Sequence[float],
    w: WindowVector,
    fs_hz: float,
    scaling: Scaling = "density",
) -> SpectralDensity:
    """One-sided periodogram ``|FFT(frame * w)|**2 / norm`` of a single frame.

    ``norm`` is ``fs * sum(w**2)`` for density scaling and ``sum(w)**2``
    for spectrum scaling.
    """
    frame = np.asarray(frame, dtype=np.float64)
    if frame.ndim != 1:
        raise ParameterError("periodogram takes a single 1-D frame")
    power = one_sided_periodograms(frame[None, :], w, fs_hz, scaling)[0]
    return SpectralDensity(rfft_freqs(frame.size, fs_hz), power, scaling, 1)


def _detrend(frames: np.ndarray, mode: str) -> np.ndarray:
    if mode == "constant":
        return frames - frames.mean(axis=-1, keepdims=True)
    if mode == "none":
        return frames
    raise ParameterError(f"unknown detrend {mode!r}")


def segment_periodograms(ts: TimeSeries, params: AnalysisParams) -> tuple[np.ndarray, np.ndarray]:
    """Per-segment periodograms and their start indices.

    This is the single code path behind both :func:`welch_psd` and the
    spectrogram, so the two always agree on segmentation and scaling.
    """
    ts.require_nonempty()
    frames = segment_matrix(ts.samples, params.nperseg, params.noverlap)
    frames = _detrend(frames, params.detrend)
    w = make_window(params.window, params.nperseg)
    power = one_sided_periodograms(frames, w, ts.sample_rate_hz, params.scaling)
    starts = np.arange(frames.shape[0]) * params.hop
    return power, starts


def welch_psd(ts: TimeSeries, params: AnalysisParams | None = None) -> SpectralDensity:
    """Welch PSD estimate of ``ts``.

    Parameters
    ----------
    ts : TimeSeries
        Signal with at least ``params.nperseg`` samples.
    params : AnalysisParams, optional
        Segmentation, window, scaling and detrend settings. Defaults to
        256-sample Hann segments with no overlap, density scaling, and
        per-segment mean removal.

    Returns
    -------
    SpectralDensity
        One-sided estimate on ``rfft_freqs(nperseg, fs)``, with
        ``segment_count_used`` set to the number of averaged segments.
    """
    params = params or AnalysisParams()
    power, starts = segment_periodograms(ts, params)
    return SpectralDensity(
        rfft_freqs(params.nperseg, ts.sample_rate_hz),
        power.mean(axis=0),
        params.scaling,
        int(starts.size),
    )
