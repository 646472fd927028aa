"""Analysis windows and the normalization sums PSD scaling needs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import WINDOW_KINDS, ParameterError, WindowKind

Symmetry = Literal["periodic", "symmetric"]

_ALIASES = {"rect": "rectangular", "boxcar": "rectangular", "hanning": "hann"}


def normalize_kind(kind: str) -> WindowKind:
    kind = _ALIASES.get(kind, kind)
    if kind not in WINDOW_KINDS:
        raise ParameterError(f"unknown window kind {kind!r}")
    return kind  # type: ignore[return-value]


@dataclass(frozen=True)
class WindowVector:
    coefficients: np.ndarray
    kind: WindowKind
    symmetry: Symmetry = "periodic"

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=np.float64)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    def __len__(self) -> int:
        return self.coefficients.size


def make_window(kind: str, n: int, symmetry: Symmetry = "periodic") -> WindowVector:
    """Build a Hann or rectangular window of length ``n``.

    The periodic Hann, ``0.5*(1 - cos(2*pi*j/n))``, is the DFT-even form used
    for spectral estimation. The symmetric form divides by ``n - 1`` instead
    and has zeros at both ends.
    """
    kind = normalize_kind(kind)
    if int(n) != n or n < 1:
        raise ParameterError(f"window length must be a positive integer, got {n}")
    if symmetry not in ("periodic", "symmetric"):
        raise ParameterError(f"unknown symmetry {symmetry!r}")
    n = int(n)
    if kind == "rectangular":
        coeffs = np.ones(n)
    elif symmetry == "symmetric" and n == 1:
        coeffs = np.ones(1)
    else:
        period = n if symmetry == "periodic" else n - 1
        j = np.arange(n)
        coeffs = 0.5 * (1.0 - np.cos(2.0 * np.pi * j / period))
        # Cosine rounding leaves ~1e-17 residue at the exact zeros/peak.
        coeffs[j == 0] = 0.0
        if period % 2 == 0:
            coeffs[j == period // 2] = 1.0
        if period % 4 == 0:
            coeffs[(j == period // 4) | (j == 3 * period // 4)] = 0.5
        if symmetry == "symmetric":
            coeffs[j == period] = 0.0
    return WindowVector(coeffs, kind, symmetry)


def window_power_sum(w: WindowVector) -> float:
    """Sum of squared coefficients (the window's energy).

    Accumulated with ``math.fsum`` so the periodic-Hann identity
    ``sum w**2 == 3N/8`` holds to the last bit for the common lengths.
    """
    c = w.coefficients
    return math.fsum(c * c)


def window_coherent_sum(w: WindowVector) -> float:
    """Sum of coefficients (the window's DC gain)."""
    return math.fsum(w.coefficients)
