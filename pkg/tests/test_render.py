import csv
import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spectrokit.core import ParameterError, SpectralDensity, SpectrogramGrid
from spectrokit.render import grid_to_csv, grid_to_pgm, psd_to_csv


def parse_pgm(data: bytes):
    magic, dims, maxval, pixels = data.split(b"\n", 3)
    width, height = map(int, dims.split())
    assert magic == b"P5" and maxval == b"255"
    return width, height, np.frombuffer(pixels, dtype=np.uint8).reshape(height, width)


def test_psd_csv_layout():
    psd = SpectralDensity([0.0, 1.0, 2.0], [3.0, 1e-20, 0.5])
    text = psd_to_csv(psd)
    lines = text.split("\n")
    assert lines[-1] == "" and "\r" not in text
    assert lines[:-1] == [
        "freq_hz,psd",
        "0.00000000e+00,3.00000000e+00",
        "1.00000000e+00,1.00000000e-20",
        "2.00000000e+00,5.00000000e-01",
    ]


def test_psd_csv_round_trip(rng):
    freqs = np.sort(rng.uniform(0, 1e4, 50))
    power = rng.uniform(0, 1, 50) * 10.0 ** rng.integers(-12, 3, 50)
    rows = list(csv.reader(io.StringIO(psd_to_csv(SpectralDensity(freqs, power)))))
    back = np.array(rows[1:], dtype=float)
    np.testing.assert_allclose(back[:, 0], freqs, rtol=1e-8)
    np.testing.assert_allclose(back[:, 1], power, rtol=1e-8)
    assert np.all(np.diff(back[:, 0]) > 0)


def test_grid_csv_dimensions():
    grid = SpectrogramGrid(np.arange(19.0), np.arange(129.0), np.ones((129, 19)))
    rows = list(csv.reader(io.StringIO(grid_to_csv(grid))))
    assert len(rows) == 20
    assert all(len(r) == 130 for r in rows)
    assert rows[0][0] == "time_s"


def test_grid_csv_round_trip(rng):
    values = rng.uniform(0, 1, (7, 5)) * 1e-3
    grid = SpectrogramGrid(np.linspace(0.1, 0.5, 5), np.linspace(0, 300, 7), values)
    rows = list(csv.reader(io.StringIO(grid_to_csv(grid))))
    np.testing.assert_allclose(np.array(rows[0][1:], dtype=float), grid.freqs_hz, rtol=1e-8)
    body = np.array(rows[1:], dtype=float)
    np.testing.assert_allclose(body[:, 0], grid.times_s, rtol=1e-8)
    np.testing.assert_allclose(body[:, 1:].T, values, rtol=1e-8)


def test_grid_csv_empty():
    with pytest.raises(ParameterError):
        grid_to_csv(SpectrogramGrid([], [0.0], np.zeros((1, 0))))


def _db_grid(values):
    values = np.asarray(values, dtype=float)
    return SpectrogramGrid(np.arange(values.shape[1]) + 1.0, np.arange(values.shape[0]) * 10.0, values, "db")


def test_pgm_saturation_and_floor():
    grid = _db_grid(np.full((3, 4), -10.0))
    w, h, px = parse_pgm(grid_to_pgm(grid, -90.0, -10.0))
    assert (w, h) == (4, 3) and np.all(px == 255)
    _, _, px = parse_pgm(grid_to_pgm(_db_grid(np.full((3, 4), -90.0)), -90.0, -10.0))
    assert np.all(px == 0)


def test_pgm_two_by_two():
    lo, hi = -100.0, -20.0
    mid = (lo + hi) / 2
    # image row 0 is the top = highest frequency = last grid row
    grid = _db_grid([[mid, mid], [lo, hi]])
    _, _, px = parse_pgm(grid_to_pgm(grid, lo, hi))
    assert px.tolist() == [[0, 255], [128, 128]]


def test_pgm_byte_length():
    grid = _db_grid(np.zeros((129, 19)))
    data = grid_to_pgm(grid, -80.0, 0.0)
    header = b"P5\n19 129\n255\n"
    assert data.startswith(header)
    assert len(data) == len(header) + 19 * 129


def test_pgm_default_range():
    grid = _db_grid([[0.0, -40.0], [-80.0, -200.0]])
    _, _, px = parse_pgm(grid_to_pgm(grid))
    assert px.tolist() == [[0, 0], [255, 128]]


def test_pgm_requires_db():
    grid = SpectrogramGrid([0.0], [0.0], np.ones((1, 1)))
    with pytest.raises(ParameterError):
        grid_to_pgm(grid, -1.0, 0.0)
    with pytest.raises(ParameterError):
        grid_to_pgm(_db_grid([[0.0]]), 0.0, 0.0)


@given(st.lists(st.floats(-300, 100), min_size=2, max_size=40))
def test_pgm_monotone(values):
    values = sorted(values)
    grid = _db_grid([values])
    _, _, px = parse_pgm(grid_to_pgm(grid, -120.0, 0.0))
    assert np.all(np.diff(px[0].astype(int)) >= 0)
