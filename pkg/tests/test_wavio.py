import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spectrokit.core import ParameterError, TimeSeries
from spectrokit.synth import SynthComponent, synth_cosine_sum
from spectrokit.wavio import (
    MissingChunkError,
    NotWaveError,
    TruncatedChunkError,
    UnsupportedFormatError,
    WavError,
    read_wav,
    read_wav_file,
    write_wav,
    write_wav_file,
)


def chunk(cid: bytes, body: bytes) -> bytes:
    pad = b"\x00" if len(body) % 2 else b""
    return cid + struct.pack("<I", len(body)) + body + pad


def fmt_body(tag=1, channels=1, rate=44100, bits=16):
    align = channels * bits // 8
    return struct.pack("<HHIIHH", tag, channels, rate, rate * align, align, bits)


def riff(*chunks: bytes) -> bytes:
    body = b"WAVE" + b"".join(chunks)
    return b"RIFF" + struct.pack("<I", len(body)) + body


def pcm16(*values) -> bytes:
    return struct.pack(f"<{len(values)}h", *values)


MINIMAL = riff(chunk(b"fmt ", fmt_body()), chunk(b"data", pcm16(0, 16384, -16384)))


def test_minimal_fixture():
    assert len(MINIMAL) == 44 + 6
    ts, meta = read_wav(MINIMAL)
    assert ts.samples.tolist() == [0.0, 0.5, -0.5]
    assert ts.sample_rate_hz == 44100
    assert (meta.channels, meta.bits_per_sample, meta.sample_format, meta.n_frames) == (1, 16, "pcm_int", 3)


def test_stereo_is_averaged():
    data = riff(chunk(b"fmt ", fmt_body(channels=2)), chunk(b"data", pcm16(16384, -16384, 8192, 8192)))
    ts, meta = read_wav(data)
    assert meta.channels == 2 and meta.n_frames == 2
    assert ts.samples.tolist() == [0.0, 0.25]


def test_list_chunk_is_skipped():
    info = chunk(b"LIST", b"INFOISFT" + struct.pack("<I", 5) + b"test\x00")  # odd length -> padded
    with_list = riff(chunk(b"fmt ", fmt_body()), info, chunk(b"data", pcm16(0, 16384, -16384)))
    a, ma = read_wav(MINIMAL)
    b, mb = read_wav(with_list)
    np.testing.assert_array_equal(a.samples, b.samples)
    assert ma == mb


def test_odd_chunk_padding_respected():
    junk = chunk(b"junk", b"abc")
    data = riff(chunk(b"fmt ", fmt_body()), junk, chunk(b"data", pcm16(1, 2)))
    ts, _ = read_wav(data)
    assert ts.samples.tolist() == [1 / 32768, 2 / 32768]


def test_data_before_fmt():
    data = riff(chunk(b"data", pcm16(16384)), chunk(b"fmt ", fmt_body()))
    assert read_wav(data)[0].samples.tolist() == [0.5]


def test_float32():
    body = struct.pack("<3f", 0.25, -1.0, 0.125)
    data = riff(chunk(b"fmt ", fmt_body(tag=3, bits=32, rate=96000)), chunk(b"data", body))
    ts, meta = read_wav(data)
    assert meta.sample_format == "ieee_float" and meta.sample_rate_hz == 96000
    assert ts.samples.tolist() == [0.25, -1.0, 0.125]


def test_extensible_pcm():
    ext = fmt_body() + struct.pack("<HHI", 22, 16, 4) + struct.pack("<H", 1) + b"\x00\x00\x00\x00\x10\x00\x80\x00\x00\xaa\x00\x38\x9b\x71"
    ext = struct.pack("<H", 0xFFFE) + ext[2:]
    ts, meta = read_wav(riff(chunk(b"fmt ", ext), chunk(b"data", pcm16(16384))))
    assert ts.samples.tolist() == [0.5] and meta.sample_format == "pcm_int"


@pytest.mark.parametrize(
    "data, exc",
    [
        (b"RIFX" + MINIMAL[4:], NotWaveError),
        (MINIMAL[:8] + b"AVI " + MINIMAL[12:], NotWaveError),
        (riff(chunk(b"data", pcm16(1))), MissingChunkError),
        (riff(chunk(b"fmt ", fmt_body())), MissingChunkError),
        (riff(chunk(b"fmt ", fmt_body(tag=2))), UnsupportedFormatError),
        (riff(chunk(b"fmt ", fmt_body(bits=24)), chunk(b"data", b"\x00" * 6)), UnsupportedFormatError),
        (riff(chunk(b"fmt ", fmt_body(bits=8)), chunk(b"data", b"\x00" * 2)), UnsupportedFormatError),
        (riff(chunk(b"fmt ", fmt_body(channels=2)), chunk(b"data", pcm16(1, 2, 3))), TruncatedChunkError),
        (MINIMAL[:-2], TruncatedChunkError),
        (b"RI", TruncatedChunkError),
        (b"", TruncatedChunkError),
    ],
)
def test_errors(data, exc):
    with pytest.raises(exc) as info:
        read_wav(data)
    assert info.value.offset is not None


def test_data_chunk_declaring_too_much():
    body = b"WAVE" + chunk(b"fmt ", fmt_body()) + b"data" + struct.pack("<I", 100) + pcm16(1, 2)
    data = b"RIFF" + struct.pack("<I", len(body)) + body
    with pytest.raises(TruncatedChunkError) as info:
        read_wav(data)
    assert info.value.offset == 12 + 8 + 16


@settings(max_examples=200)
@given(st.data())
def test_truncations_always_raise(data):
    full = riff(
        chunk(b"fmt ", fmt_body(channels=2)),
        chunk(b"LIST", b"INFOxyz"),
        chunk(b"data", pcm16(*range(-20, 20))),
    )
    cut = data.draw(st.integers(0, len(full) - 1))
    with pytest.raises(WavError):
        read_wav(full[:cut])


def test_round_trip_tone():
    ts = synth_cosine_sum(0, [SynthComponent(1.0, 1000.0)], 44100.0, 0.25)
    back, meta = read_wav(write_wav(ts))
    assert np.max(np.abs(back.samples - ts.samples)) <= 1 / 32767
    assert meta.sample_rate_hz == 44100 and meta.n_frames == len(ts)


def test_full_scale_encoding():
    payload = write_wav(TimeSeries([1.0, -1.0, 0.0, 0.5], 8000))
    assert len(payload) == 44 + 8
    assert struct.unpack("<4h", payload[44:]) == (32767, -32768, 0, 16384)
    assert payload[:4] == b"RIFF" and payload[8:16] == b"WAVEfmt "


def test_write_errors():
    with pytest.raises(ParameterError):
        write_wav(TimeSeries([], 8000))
    with pytest.raises(ParameterError):
        write_wav(TimeSeries([0.0, 1.0001], 8000))
    with pytest.raises(ParameterError):
        write_wav(TimeSeries([0.0], 8000.5))
    with pytest.raises(ParameterError):
        write_wav(TimeSeries([0.0], 8000), bits=24)


@settings(max_examples=50)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=200), st.sampled_from([8000, 44100, 96000]))
def test_round_trip_property(samples, rate):
    back, meta = read_wav(write_wav(TimeSeries(samples, rate)))
    assert meta.sample_rate_hz == rate and meta.n_frames == len(samples)
    assert np.max(np.abs(back.samples - np.asarray(samples))) <= 1 / 32768


def test_file_helpers(tmp_path):
    path = tmp_path / "x.wav"
    write_wav_file(path, TimeSeries([0.0, 0.5], 22050))
    ts, meta = read_wav_file(path)
    assert meta.sample_rate_hz == 22050 and len(ts) == 2
