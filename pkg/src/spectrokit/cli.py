"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 I/O or file-format error,
3 parameter/precondition error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .core import AnalysisParams, ParameterError, TimeSeries, duration_s
from .fft import fft
from .render import grid_to_csv, grid_to_pgm, psd_to_csv
from .spectrogram import DEFAULT_FLOOR_DB, spectrogram, to_db
from .synth import SynthComponent, synth_cosine_sum, synth_linear_chirp, synth_square_partial_sum
from .wavio import WavError, read_wav_file, write_wav_file
from .welch import welch_psd

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PARAM = 3

_KIND_DEFAULT_F0 = {"square": 5.0, "chirp": 75.0}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which is reserved for I/O
        raise UsageError(f"{self.prog}: {message}")


def _component(text: str) -> SynthComponent:
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected AMP,FREQ[,PHASE], got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric component {text!r}") from None
    return SynthComponent(*values)


def _window(text: str) -> str:
    return {"rect": "rectangular", "rectangular": "rectangular", "hann": "hann"}[text]


def _add_analysis_flags(p: argparse.ArgumentParser, noverlap: int) -> None:
    p.add_argument("--in", dest="input", required=True, help="input WAV file")
    p.add_argument("--nperseg", type=int, default=256, help="samples per segment (default 256)")
    p.add_argument(
        "--noverlap", type=int, default=noverlap,
        help=f"samples shared by consecutive segments (default {noverlap})",
    )
    p.add_argument("--window", choices=["hann", "rect", "rectangular"], default="hann")
    p.add_argument("--scaling", choices=["density", "spectrum"], default="density")
    p.add_argument("--detrend", choices=["constant", "none"], default="constant")
    p.add_argument("--out", help="output file (stdout when omitted)")
    p.add_argument("--format", choices=["csv", "pgm"], help="override the format implied by --out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectrokit", description="FFT, Welch PSD and spectrogram toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="print WAV metadata")
    p.add_argument("wav")

    p = sub.add_parser("synth", help="synthesize a test signal to a WAV file")
    p.add_argument("--kind", choices=["cosine", "square", "chirp"], required=True)
    p.add_argument("--fs", type=float, default=44100.0, help="sample rate in Hz (default 44100)")
    p.add_argument("--duration", type=float, default=1.0, help="seconds (default 1)")
    p.add_argument("--a0", type=float, default=0.0, help="cosine: constant offset")
    p.add_argument(
        "--component", type=_component, action="append", metavar="AMP,FREQ[,PHASE]",
        help="cosine: add a term (repeatable; default 1,1000,0)",
    )
    p.add_argument("--f0", type=float, help="square: fundamental (default 5); chirp: start frequency (default 75)")
    p.add_argument("--harmonics", type=int, default=9, help="square: odd harmonics to sum (default 9)")
    p.add_argument("--rate", type=float, default=9000.0, help="chirp: sweep rate in Hz/s (default 9000)")
    p.add_argument("--gain", type=float, default=1.0, help="multiply samples before writing")
    p.add_argument("--normalize", action="store_true", help="scale to unit peak before writing")
    p.add_argument("--out", required=True, help="output WAV file")

    p = sub.add_parser("fft", help="FFT of a WAV excerpt as CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--start", type=int, default=0, help="first sample (default 0)")
    p.add_argument("--len", dest="length", type=int, help="number of samples (default: to the end)")
    p.add_argument("--out", help="output CSV (stdout when omitted)")

    p = sub.add_parser("psd", help="Welch power spectral density")
    _add_analysis_flags(p, noverlap=0)

    p = sub.add_parser("spec", help="spectrogram as CSV or PGM")
    _add_analysis_flags(p, noverlap=128)
    p.add_argument("--db", action="store_true", help="CSV values in dB (PGM is always dB)")
    p.add_argument("--floor-db", type=float, default=DEFAULT_FLOOR_DB, help="dB floor (default -120)")
    p.add_argument("--min-db", type=float, help="PGM black level (default: max - 80)")
    p.add_argument("--max-db", type=float, help="PGM white level (default: grid max)")
    return parser


def _output_format(path: str | None, override: str | None, allowed: Sequence[str]) -> str:
    if override:
        fmt = override
    elif path is None:
        fmt = "csv"
    else:
        fmt = os.path.splitext(path)[1].lower().lstrip(".")
    if fmt not in allowed:
        raise UsageError(f"cannot infer output format from {path!r}; use one of {', '.join(allowed)}")
    return fmt


def _emit(data: str | bytes, path: str | None) -> None:
    if path is None:
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    # newline="" keeps LF line endings on every platform.
    if isinstance(data, bytes):
        with open(path, "wb") as fh:
            fh.write(data)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(data)


def _params(args) -> AnalysisParams:
    return AnalysisParams(
        nperseg=args.nperseg,
        noverlap=args.noverlap,
        window=_window(args.window),
        scaling=args.scaling,
        detrend=args.detrend,
    )


def cmd_info(args) -> None:
    ts, meta = read_wav_file(args.wav)
    print(f"sample_rate_hz: {meta.sample_rate_hz}")
    print(f"channels: {meta.channels}")
    print(f"bits_per_sample: {meta.bits_per_sample}")
    print(f"sample_format: {meta.sample_format}")
    print(f"n_frames: {meta.n_frames}")
    print(f"duration_s: {duration_s(ts):.6f}")


def cmd_synth(args) -> None:
    _output_format(args.out, None, ["wav"])
    f0 = args.f0 if args.f0 is not None else _KIND_DEFAULT_F0.get(args.kind)
    if args.kind == "cosine":
        components = args.component or [SynthComponent(1.0, 1000.0, 0.0)]
        ts = synth_cosine_sum(args.a0, components, args.fs, args.duration)
    elif args.kind == "square":
        ts = synth_square_partial_sum(f0, args.harmonics, args.fs, args.duration)
    else:
        ts = synth_linear_chirp(f0, args.rate, args.fs, args.duration)
    samples = ts.samples * args.gain
    if args.normalize:
        peak = np.max(np.abs(samples))
        if peak > 0:
            samples = samples / peak
    peak = float(np.max(np.abs(samples)))
    if peak > 1.0:
        raise ParameterError(
            f"signal peak {peak:.4f} exceeds 1.0; pass --normalize or a smaller --gain"
        )
    write_wav_file(args.out, TimeSeries(samples, ts.sample_rate_hz))


def cmd_fft(args) -> None:
    fmt = _output_format(args.out, None, ["csv"])
    ts, _ = read_wav_file(args.input)
    start = args.start
    stop = len(ts) if args.length is None else start + args.length
    if start < 0 or stop > len(ts) or stop <= start:
        raise ParameterError(f"excerpt [{start}, {stop}) outside the {len(ts)}-sample signal")
    spec = fft(ts.samples[start:stop], ts.sample_rate_hz)
    lines = ["bin,freq_hz,real,imag,magnitude"]
    for k, (f, c) in enumerate(zip(spec.freqs_hz, spec.bins)):
        lines.append(f"{k},{f:.8e},{c.real:.8e},{c.imag:.8e},{abs(c):.8e}")
    assert fmt == "csv"
    _emit("\n".join(lines) + "\n", args.out)


def cmd_psd(args) -> None:
    _output_format(args.out, args.format, ["csv"])
    ts, _ = read_wav_file(args.input)
    _emit(psd_to_csv(welch_psd(ts, _params(args))), args.out)


def cmd_spec(args) -> None:
    fmt = _output_format(args.out, args.format, ["csv", "pgm"])
    ts, _ = read_wav_file(args.input)
    grid = spectrogram(ts, _params(args))
    if fmt == "pgm":
        _emit(grid_to_pgm(to_db(grid, args.floor_db), args.min_db, args.max_db), args.out)
    else:
        if args.db:
            grid = to_db(grid, args.floor_db)
        _emit(grid_to_csv(grid), args.out)


_COMMANDS = {"info": cmd_info, "synth": cmd_synth, "fft": cmd_fft, "psd": cmd_psd, "spec": cmd_spec}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (WavError, OSError) as exc:
        print(f"spectrokit: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParameterError as exc:
        print(f"spectrokit: {exc}", file=sys.stderr)
        return EXIT_PARAM
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
