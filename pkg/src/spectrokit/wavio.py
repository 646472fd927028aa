"""RIFF/WAVE reading and writing.

Reads 16-bit PCM and 32-bit IEEE float (format tags 1 and 3, or the same
inside WAVE_FORMAT_EXTENSIBLE), mixing multichannel audio down to mono by
averaging. Writes mono 16-bit PCM. Chunks other than ``fmt `` and ``data``
are skipped.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import ParameterError, TimeSeries

SampleFormat = Literal["pcm_int", "ieee_float"]

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_IEEE_FLOAT = 0x0003
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

_SUPPORTED = {
    (WAVE_FORMAT_PCM, 16): ("pcm_int", "<i2"),
    (WAVE_FORMAT_IEEE_FLOAT, 32): ("ieee_float", "<f4"),
}


class WavError(ValueError):
    """Malformed or unsupported WAV data; ``offset`` is the byte position involved."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class NotWaveError(WavError):
    """The RIFF or WAVE magic is missing."""


class MissingChunkError(WavError):
    """A required chunk (``fmt `` or ``data``) is absent."""


class UnsupportedFormatError(WavError):
    """Format tag, bit depth or layout this reader does not handle."""


class TruncatedChunkError(WavError):
    """A chunk extends past the end of the available bytes."""


@dataclass(frozen=True)
class WavMetadata:
    sample_rate_hz: int
    channels: int
    bits_per_sample: int
    sample_format: SampleFormat
    n_frames: int


@dataclass(frozen=True)
class _Fmt:
    tag: int
    channels: int
    sample_rate: int
    block_align: int
    bits: int


def _parse_fmt(body: bytes, offset: int) -> _Fmt:
    if len(body) < 16:
        raise UnsupportedFormatError(f"fmt chunk too short ({len(body)} bytes)", offset)
    tag, channels, rate, _byte_rate, block_align, bits = struct.unpack_from("<HHIIHH", body)
    if tag == WAVE_FORMAT_EXTENSIBLE:
        if len(body) < 40:
            raise UnsupportedFormatError("extensible fmt chunk shorter than 40 bytes", offset)
        # SubFormat GUID starts at byte 24; its first two bytes carry the real tag.
        (tag,) = struct.unpack_from("<H", body, 24)
    if channels < 1:
        raise UnsupportedFormatError(f"channel count {channels}", offset)
    if rate < 1:
        raise UnsupportedFormatError(f"sample rate {rate}", offset)
    if (tag, bits) not in _SUPPORTED:
        raise UnsupportedFormatError(f"format tag {tag:#06x} with {bits} bits per sample", offset)
    if block_align != channels * bits // 8:
        raise UnsupportedFormatError(
            f"block align {block_align} inconsistent with {channels} x {bits}-bit", offset
        )
    return _Fmt(tag, channels, rate, block_align, bits)


def _iter_chunks(data: bytes, end: int):
    pos = 12
    while pos < end:
        if pos + 8 > end:
            raise TruncatedChunkError("chunk header cut short", pos)
        chunk_id, size = struct.unpack_from("<4sI", data, pos)
        body_start = pos + 8
        body_end = body_start + size
        if body_end > end:
            raise TruncatedChunkError(
                f"chunk {chunk_id!r} declares {size} bytes, only {end - body_start} available", pos
            )
        yield chunk_id, pos, data[body_start:body_end]
        pos = body_end + (size & 1)


def read_wav(data: bytes) -> tuple[TimeSeries, WavMetadata]:
    """Decode a RIFF/WAVE byte string into a mono TimeSeries plus metadata.

    PCM16 maps to ``[-1, 1)`` by dividing by 32768; float32 is passed
    through. All channels are averaged.
    """
    data = bytes(data)
    if len(data) < 4 or data[:4] != b"RIFF":
        if len(data) < 4 and b"RIFF".startswith(data):
            raise TruncatedChunkError("file shorter than the RIFF header", 0)
        raise NotWaveError("missing RIFF magic", 0)
    if len(data) < 12:
        raise TruncatedChunkError("file shorter than the RIFF header", 0)
    if data[8:12] != b"WAVE":
        raise NotWaveError("RIFF form type is not WAVE", 8)
    (riff_size,) = struct.unpack_from("<I", data, 4)
    end = 8 + riff_size
    if end > len(data):
        raise TruncatedChunkError(
            f"RIFF declares {riff_size} bytes, only {len(data) - 8} present", 0
        )

    fmt: _Fmt | None = None
    data_offset = None
    payload = b""
    for chunk_id, offset, body in _iter_chunks(data, end):
        if chunk_id == b"fmt " and fmt is None:
            fmt = _parse_fmt(body, offset)
        elif chunk_id == b"data" and data_offset is None:
            data_offset, payload = offset, body

    if fmt is None:
        raise MissingChunkError("no 'fmt ' chunk", 12)
    if data_offset is None:
        raise MissingChunkError("no 'data' chunk", 12)
    if len(payload) % fmt.block_align:
        raise TruncatedChunkError(
            f"data chunk of {len(payload)} bytes is not a whole number of "
            f"{fmt.block_align}-byte frames",
            data_offset,
        )

    sample_format, dtype = _SUPPORTED[(fmt.tag, fmt.bits)]
    raw = np.frombuffer(payload, dtype=dtype).astype(np.float64)
    if sample_format == "pcm_int":
        raw /= 32768.0
    frames = raw.reshape(-1, fmt.channels)
    mono = frames[:, 0] if fmt.channels == 1 else frames.mean(axis=1)
    meta = WavMetadata(fmt.sample_rate, fmt.channels, fmt.bits, sample_format, frames.shape[0])
    return TimeSeries(mono, fmt.sample_rate), meta


def write_wav(ts: TimeSeries, bits: int = 16) -> bytes:
    """Encode ``ts`` as mono 16-bit PCM.

    Samples are scaled by 32768 (the decoder's divisor) and rounded half away
    from zero; the top code is 32767, so +1.0 encodes as 32767. Any sample in
    [-1, 1] therefore survives a write/read round trip within 1/32768.
    Values outside [-1, 1] raise instead of clipping.
    """
    if bits != 16:
        raise ParameterError(f"only 16-bit output is supported, got {bits}")
    x = ts.samples
    if x.size == 0:
        raise ParameterError("cannot write an empty signal")
    if not np.all(np.isfinite(x)):
        raise ParameterError("signal contains non-finite samples")
    peak = float(np.max(np.abs(x)))
    if peak > 1.0:
        raise ParameterError(f"samples must lie in [-1, 1]; peak magnitude is {peak:.6g}")
    rate = ts.sample_rate_hz
    if rate != int(rate) or not 0 < rate < 2**32:
        raise ParameterError(f"WAV needs an integer sample rate, got {rate}")
    rate = int(rate)

    scaled = x * 32768.0
    codes = np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)
    pcm = np.minimum(codes, 32767.0).astype("<i2")
    payload = pcm.tobytes()
    fmt_body = struct.pack("<HHIIHH", WAVE_FORMAT_PCM, 1, rate, rate * 2, 2, 16)
    chunks = (
        b"fmt " + struct.pack("<I", len(fmt_body)) + fmt_body
        + b"data" + struct.pack("<I", len(payload)) + payload
    )
    return b"RIFF" + struct.pack("<I", 4 + len(chunks)) + b"WAVE" + chunks


def read_wav_file(path: str | os.PathLike) -> tuple[TimeSeries, WavMetadata]:
    with open(path, "rb") as fh:
        return read_wav(fh.read())


def write_wav_file(path: str | os.PathLike, ts: TimeSeries, bits: int = 16) -> None:
    payload = write_wav(ts, bits)
    with open(path, "wb") as fh:
        fh.write(payload)
