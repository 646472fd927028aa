"""Short-time spectral analysis on a time x frequency grid."""

from __future__ import annotations

import numpy as np

from .core import AnalysisParams, ParameterError, SpectrogramGrid, TimeSeries
from .fft import rfft_freqs
from .welch import segment_periodograms

DEFAULT_FLOOR_DB = -120.0


def spectrogram(ts: TimeSeries, params: AnalysisParams | None = None) -> SpectrogramGrid:
    """Periodogram of every segment, one column per segment.

    Column ``j`` is stamped with the centre of its segment,
    ``(start_j + nperseg/2) / fs``. When ``params`` is omitted the
    256-sample Hann / 128-sample overlap configuration is used.
    """
    if params is None:
        params = AnalysisParams(nperseg=256, noverlap=128)
    power, starts = segment_periodograms(ts, params)
    times = (starts + params.nperseg / 2) / ts.sample_rate_hz
    return SpectrogramGrid(
        times_s=times,
        freqs_hz=rfft_freqs(params.nperseg, ts.sample_rate_hz),
        values=power.T,
        unit="power",
    )


def to_db(grid: SpectrogramGrid, floor_db: float = DEFAULT_FLOOR_DB) -> SpectrogramGrid:
    """Convert a power grid to ``10*log10`` decibels, clamped below at ``floor_db``."""
    if grid.unit != "power":
        raise ParameterError("grid is already in dB")
    if not floor_db < 0:
        raise ParameterError(f"floor_db must be negative, got {floor_db}")
    values = grid.values
    with np.errstate(divide="ignore"):
        db = np.where(values > 0, 10.0 * np.log10(np.where(values > 0, values, 1.0)), -np.inf)
    return SpectrogramGrid(grid.times_s, grid.freqs_hz, np.maximum(db, floor_db), unit="db")


def ridge_track(grid: SpectrogramGrid) -> list[tuple[float, float]]:
    """Frequency of the strongest bin in every column.

    Ties resolve to the lowest frequency, so a silent column reports 0 Hz.
    """
    if grid.is_empty:
        raise ParameterError("grid is empty")
    peak_rows = np.argmax(grid.values, axis=0)
    return [(float(t), float(grid.freqs_hz[k])) for t, k in zip(grid.times_s, peak_rows)]
