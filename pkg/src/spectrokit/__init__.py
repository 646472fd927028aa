"""Spectral analysis toolkit: FFT, Welch PSD, STFT spectrograms, WAV I/O."""

__version__ = "0.1.0"

from .core import (
    AnalysisParams,
    ComplexSpectrum,
    ParameterError,
    SpectralDensity,
    SpectrogramGrid,
    TimeSeries,
    duration_s,
    mean_power,
)
from .fft import TransformPlan, dft_naive, fft, get_plan, ifft, rfft_freqs
from .render import grid_to_csv, grid_to_pgm, psd_to_csv
from .spectrogram import ridge_track, spectrogram, to_db
from .synth import (
    SynthComponent,
    synth_cosine_sum,
    synth_linear_chirp,
    synth_square_partial_sum,
)
from .wavio import WavError, WavMetadata, read_wav, write_wav
from .welch import SegmentView, periodogram, segment_starts, welch_psd
from .window import WindowVector, make_window, window_coherent_sum, window_power_sum

__all__ = [
    "AnalysisParams",
    "ComplexSpectrum",
    "ParameterError",
    "SegmentView",
    "SpectralDensity",
    "SpectrogramGrid",
    "SynthComponent",
    "TimeSeries",
    "TransformPlan",
    "WavError",
    "WavMetadata",
    "WindowVector",
    "dft_naive",
    "duration_s",
    "fft",
    "get_plan",
    "grid_to_csv",
    "grid_to_pgm",
    "ifft",
    "make_window",
    "mean_power",
    "periodogram",
    "psd_to_csv",
    "read_wav",
    "rfft_freqs",
    "ridge_track",
    "segment_starts",
    "spectrogram",
    "synth_cosine_sum",
    "synth_linear_chirp",
    "synth_square_partial_sum",
    "to_db",
    "welch_psd",
    "window_coherent_sum",
    "window_power_sum",
    "write_wav",
]
