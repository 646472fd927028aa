"""Discrete Fourier transforms.

Power-of-two lengths use an iterative radix-2 decimation-in-time FFT; every
other length goes through Bluestein's chirp-z algorithm, which re-expresses
the DFT as a circular convolution of power-of-two size and so reuses the
same radix-2 core. :func:`dft_naive` is the O(N^2) direct sum kept as a
reference.

Transforms act on the last axis, so a stack of equal-length frames
(shape ``(n_frames, N)``) is transformed in one call.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Literal, Sequence, Union

import numpy as np

from .core import ComplexSpectrum, ParameterError, TimeSeries

Strategy = Literal["radix2", "bluestein", "naive"]
ArrayLike = Union[Sequence[complex], np.ndarray]

# Rows of the naive DFT evaluated per block; bounds memory at ~16 MB per block.
_NAIVE_BLOCK_ELEMS = 1 << 20


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _next_power_of_two(n: int) -> int:
    return 1 << (n - 1).bit_length()


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Index array ``p`` with ``p[i]`` = ``i`` with its log2(n) bits reversed."""
    if not is_power_of_two(n):
        raise ParameterError(f"bit reversal needs a power-of-two length, got {n}")
    perm = np.zeros(n, dtype=np.intp)
    # Doubling construction: rev(2i) = rev(i)/2, rev(2i+1) = rev(2i) + n/2.
    size, half = 1, n >> 1
    while size < n:
        perm[size : 2 * size] = perm[:size] + half
        size <<= 1
        half >>= 1
    return perm


def _unit_roots(n: int, count: int) -> np.ndarray:
    """``exp(-2j*pi*k/n)`` for k < count, reduced mod n for accuracy."""
    k = np.arange(count, dtype=np.int64) % n
    return np.exp(-2j * np.pi * k / n)


class TransformPlan:
    """Precomputed tables for transforms of one length.

    Plans hold only read-only arrays, so one plan may be executed from many
    threads at once. Use :func:`get_plan` to share cached instances.
    """

    def __init__(self, length: int, strategy: Strategy | None = None):
        length = int(length)
        if length < 1:
            raise ParameterError(f"transform length must be >= 1, got {length}")
        if strategy is None:
            strategy = "radix2" if is_power_of_two(length) else "bluestein"
        if strategy == "radix2" and not is_power_of_two(length):
            raise ParameterError(f"radix2 plan requires a power-of-two length, got {length}")
        if strategy not in ("radix2", "bluestein", "naive"):
            raise ParameterError(f"unknown strategy {strategy!r}")
        self.length = length
        self.strategy: Strategy = strategy

        if strategy == "radix2":
            self._perm = bit_reversal_permutation(length)
            self._twiddles = _unit_roots(length, max(length // 2, 1))
            self._readonly(self._perm, self._twiddles)
        elif strategy == "bluestein":
            m = _next_power_of_two(2 * length - 1)
            self._inner = get_plan(m, "radix2")
            k = np.arange(length, dtype=np.int64)
            # k^2 mod 2N keeps the chirp argument small for large N.
            self._chirp = np.exp(-1j * np.pi * ((k * k) % (2 * length)) / length)
            kernel = np.zeros(m, dtype=np.complex128)
            kernel[:length] = np.conj(self._chirp)
            kernel[m - length + 1 :] = np.conj(self._chirp[1:][::-1])
            self._kernel_spectrum = self._inner.execute(kernel)
            self._readonly(self._chirp, self._kernel_spectrum)
        else:
            idx = np.arange(length, dtype=np.int64)
            self._matrix = _unit_roots(length, length)[np.outer(idx, idx) % length]
            self._readonly(self._matrix)

    @staticmethod
    def _readonly(*arrays: np.ndarray) -> None:
        for a in arrays:
            a.setflags(write=False)

    def __repr__(self) -> str:
        return f"TransformPlan(length={self.length}, strategy={self.strategy!r})"

    def execute(self, x: ArrayLike, inverse: bool = False) -> np.ndarray:
        """Transform along the last axis into a new array.

        The forward transform is unnormalized; ``inverse=True`` applies 1/N.
        """
        x = np.asarray(x, dtype=np.complex128)
        if x.ndim == 0 or x.shape[-1] != self.length:
            raise ParameterError(
                f"plan of length {self.length} applied to input of shape {x.shape}"
            )
        if inverse:
            return np.conj(self._forward(np.conj(x))) / self.length
        return self._forward(x)

    def _forward(self, x: np.ndarray) -> np.ndarray:
        if self.strategy == "radix2":
            return self._radix2(x)
        if self.strategy == "bluestein":
            return self._bluestein(x)
        return x @ self._matrix

    def _radix2(self, x: np.ndarray) -> np.ndarray:
        n = self.length
        batch = x.shape[:-1]
        y = x[..., self._perm]  # fancy indexing copies, input stays untouched
        half = 1
        while half < n:
            span = 2 * half
            w = self._twiddles[:: n // span][:half]
            blocks = y.reshape(*batch, n // span, 2, half)
            even = blocks[..., 0, :]
            odd = blocks[..., 1, :] * w
            y = np.stack((even + odd, even - odd), axis=-2).reshape(*batch, n)
            half = span
        return y

    def _bluestein(self, x: np.ndarray) -> np.ndarray:
        n, m = self.length, self._inner.length
        padded = np.zeros(x.shape[:-1] + (m,), dtype=np.complex128)
        padded[..., :n] = x * self._chirp
        conv = self._inner.execute(self._inner.execute(padded) * self._kernel_spectrum, inverse=True)
        return conv[..., :n] * self._chirp


@lru_cache(maxsize=128)
def get_plan(length: int, strategy: Strategy | None = None) -> TransformPlan:
    """Cached :class:`TransformPlan` for ``length``."""
    return TransformPlan(length, strategy)


def _as_input(x) -> tuple[np.ndarray, float]:
    if isinstance(x, TimeSeries):
        return np.asarray(x.samples, dtype=np.complex128), x.sample_rate_hz
    if isinstance(x, ComplexSpectrum):
        return np.asarray(x.bins), x.sample_rate_hz
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1:
        raise ParameterError(f"expected a 1-D sequence, got shape {arr.shape}")
    return arr, 1.0


def dft_naive(x, sample_rate_hz: float | None = None) -> ComplexSpectrum:
    """Direct evaluation of ``X[k] = sum_n x[n] exp(-2j*pi*k*n/N)``.

    O(N^2) and deliberately independent of the fast paths: each exponent is
    reduced as ``(k*n) mod N`` before evaluation, no recursion or plans.
    """
    arr, rate = _as_input(x)
    n = arr.size
    if n == 0:
        raise ParameterError("cannot transform an empty sequence")
    idx = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.complex128)
    rows = max(1, _NAIVE_BLOCK_ELEMS // n)
    for start in range(0, n, rows):
        k = idx[start : start + rows, None]
        out[start : start + rows] = np.exp(-2j * np.pi * ((k * idx) % n) / n) @ arr
    return ComplexSpectrum(out, rate if sample_rate_hz is None else sample_rate_hz)


def fft(x, sample_rate_hz: float | None = None) -> ComplexSpectrum:
    """Forward DFT of a 1-D sequence (or the samples of a TimeSeries)."""
    arr, rate = _as_input(x)
    if arr.size == 0:
        raise ParameterError("cannot transform an empty sequence")
    bins = get_plan(arr.size).execute(arr)
    return ComplexSpectrum(bins, rate if sample_rate_hz is None else sample_rate_hz)


def ifft(spectrum) -> np.ndarray:
    """Inverse DFT with 1/N normalization; returns complex samples."""
    arr, _ = _as_input(spectrum)
    if arr.size == 0:
        raise ParameterError("cannot transform an empty sequence")
    return get_plan(arr.size).execute(arr, inverse=True)


def rfft_freqs(n: int, fs_hz: float) -> np.ndarray:
    """Non-negative frequency axis ``k*fs/n`` for ``k = 0..n//2``."""
    if n < 2:
        raise ParameterError(f"need at least 2 points for a frequency axis, got {n}")
    return np.arange(n // 2 + 1) * fs_hz / n
