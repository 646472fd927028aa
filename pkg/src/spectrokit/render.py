"""Text and image serialization of analysis results."""

from __future__ import annotations

import numpy as np

from .core import ParameterError, SpectralDensity, SpectrogramGrid

DEFAULT_DYNAMIC_RANGE_DB = 80.0


def _fmt(v: float) -> str:
    # 9 significant digits
    return f"{v:.8e}"


def psd_to_csv(psd: SpectralDensity) -> str:
    lines = ["freq_hz,psd"]
    lines.extend(f"{_fmt(f)},{_fmt(p)}" for f, p in zip(psd.freqs_hz, psd.power))
    return "\n".join(lines) + "\n"


def grid_to_csv(grid: SpectrogramGrid) -> str:
    """One row per time frame: the frame time followed by its values.

    The header row is ``time_s`` followed by the frequency axis.
    """
    if grid.is_empty:
        raise ParameterError("cannot serialize an empty grid")
    lines = [",".join(["time_s", *(_fmt(f) for f in grid.freqs_hz)])]
    for j, t in enumerate(grid.times_s):
        lines.append(",".join([_fmt(t), *(_fmt(v) for v in grid.values[:, j])]))
    return "\n".join(lines) + "\n"


def display_range(grid: SpectrogramGrid, dynamic_range_db: float = DEFAULT_DYNAMIC_RANGE_DB) -> tuple[float, float]:
    """Default ``(min_db, max_db)``: the grid peak and ``dynamic_range_db`` below it."""
    top = float(np.max(grid.values))
    return top - dynamic_range_db, top


def grid_to_pgm(
    grid: SpectrogramGrid,
    min_db: float | None = None,
    max_db: float | None = None,
) -> bytes:
    """Render a dB grid as a binary (P5) 8-bit grayscale PGM.

    Width is the number of time frames, height the number of frequency
    bins, with the highest frequency on the top row. Pixel values are
    ``round(255 * clamp((v - min_db) / (max_db - min_db), 0, 1))`` with
    halves rounded up.
    """
    if grid.unit != "db":
        raise ParameterError("grid_to_pgm expects a dB grid; convert with to_db first")
    if grid.is_empty:
        raise ParameterError("cannot render an empty grid")
    if min_db is None or max_db is None:
        lo, hi = display_range(grid)
        min_db = lo if min_db is None else min_db
        max_db = hi if max_db is None else max_db
    if not min_db < max_db:
        raise ParameterError(f"min_db ({min_db}) must be below max_db ({max_db})")
    scaled = np.clip((grid.values - min_db) / (max_db - min_db), 0.0, 1.0)
    pixels = np.floor(255.0 * scaled + 0.5).astype(np.uint8)[::-1, :]
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(pixels).tobytes()
