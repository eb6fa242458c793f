"""Batch command line for the sonification workbench.

Subcommands: sonify (series -> WAV, optional SVG), events (event list ->
WAV), transform (series -> CSV) and train simulate (machine participant
over a generated block).  Exit codes: 0 success, 1 input/validation error,
2 usage error.  Standard output stays machine readable; human messages go
to standard error and honor SONOWORK_LANG (en/es).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import i18n
from .errors import SonoworkError
from .ingest import parse_events, parse_table, serialize_table, Series, Table
from .pipeline import sonified_series, transformed_series
from .synth import SonifyConfig, map_value_to_freq, render_plot, sonify_events, write_wav
from .training import simulate_session
from .transform import TransformSpec

CLI_MAPPINGS = {"linear": "linear", "log": "logarithmic"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sonowork", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sonify = sub.add_parser("sonify", help="render a data series as a WAV file")
    sonify.add_argument("file", help="delimited text input")
    sonify.add_argument("--x", dest="x_col", default=None, help="x column name (default: row index)")
    sonify.add_argument("--y", dest="y_col", required=True, help="y column name")
    sonify.add_argument("--ops", default="[]", help="transform pipeline as a JSON array")
    sonify.add_argument("--waveform", choices=["sine", "square"], default=None)
    sonify.add_argument("--mapping", choices=["linear", "log"], default=None)
    sonify.add_argument("--fmin", type=float, default=None, help="lowest frequency in Hz")
    sonify.add_argument("--fmax", type=float, default=None, help="highest frequency in Hz")
    sonify.add_argument("--note-dur", type=float, default=None, help="seconds per data point")
    sonify.add_argument("--out", required=True, help="output WAV path")
    sonify.add_argument("--plot", default=None, help="also write an SVG plot here")

    events = sub.add_parser("events", help="render a (time, weight) event list as pings")
    events.add_argument("file", help="two-column event input")
    events.add_argument("--timeline", type=float, required=True, help="output duration in seconds")
    events.add_argument("--out", required=True, help="output WAV path")
    events.add_argument("--fmin", type=float, default=None)
    events.add_argument("--fmax", type=float, default=None)

    transform = sub.add_parser("transform", help="apply transforms and write CSV")
    transform.add_argument("file")
    transform.add_argument("--x", dest="x_col", default=None)
    transform.add_argument("--y", dest="y_col", default=None)
    transform.add_argument("--ops", required=True, help="transform pipeline as a JSON array")
    transform.add_argument("--out", required=True, help="output CSV path")

    train = sub.add_parser("train", help="training session utilities")
    train_sub = train.add_subparsers(dest="train_command", required=True)
    simulate = train_sub.add_parser("simulate", help="run the machine participant over a block")
    simulate.add_argument("--block", type=int, choices=[1, 2, 3], required=True)
    simulate.add_argument("--count", type=int, required=True, help="stimuli per class")
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--report", default=None, help="also write the report JSON here")

    return parser


def _parse_ops(parser: argparse.ArgumentParser, ops: str) -> TransformSpec:
    """Structural validation is a usage error; range errors surface at apply time."""
    try:
        data = json.loads(ops)
    except json.JSONDecodeError as exc:
        parser.error(f"--ops is not valid JSON: {exc}")
    try:
        return TransformSpec.from_json(data)
    except SonoworkError as exc:
        parser.error(f"--ops: {i18n.describe_error(exc)}")


def _config_from_flags(args: argparse.Namespace) -> SonifyConfig:
    kwargs = {}
    if getattr(args, "waveform", None) is not None:
        kwargs["waveform"] = args.waveform
    if getattr(args, "mapping", None) is not None:
        kwargs["mapping"] = CLI_MAPPINGS[args.mapping]
    if getattr(args, "fmin", None) is not None:
        kwargs["f_min"] = args.fmin
    if getattr(args, "fmax", None) is not None:
        kwargs["f_max"] = args.fmax
    if getattr(args, "note_dur", None) is not None:
        kwargs["note_duration"] = args.note_dur
    return SonifyConfig(**kwargs)


def _read_input(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _CliFailure(i18n.message("cli.cannot_read", path=path, reason=exc.strerror or str(exc)))


def _write_output(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise _CliFailure(i18n.message("cli.cannot_write", path=path, reason=exc.strerror or str(exc)))


class _CliFailure(Exception):
    """Carries an already-localized message for exit code 1."""


def _default_xy(table: Table, x_col: str | None, y_col: str | None) -> tuple[str | None, str]:
    """transform subcommand defaults: first column is x, second is y."""
    if y_col is not None:
        return x_col, y_col
    names = table.names
    if len(names) >= 2:
        return x_col if x_col is not None else names[0], names[1]
    return x_col, names[0]


def _cmd_sonify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    spec = _parse_ops(parser, args.ops)
    config = _config_from_flags(args)
    table = parse_table(_read_input(args.file))
    series, audio = sonified_series(table, args.x_col, args.y_col, spec, config)
    _write_output(args.out, write_wav(audio))
    if args.plot:
        _write_output(args.plot, render_plot(series))
    finite = series.y[np.isfinite(series.y)]
    f_lo = map_value_to_freq(float(finite.min()), config) if len(finite) else math.nan
    f_hi = map_value_to_freq(float(finite.max()), config) if len(finite) else math.nan
    print(f"points={len(series)} duration={audio.duration:.3f}s freq={f_lo:.1f}..{f_hi:.1f}Hz")
    return 0


def _cmd_events(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    config = _config_from_flags(args)
    events = parse_events(_read_input(args.file))
    audio = sonify_events(events, args.timeline, config)
    _write_output(args.out, write_wav(audio))
    print(f"events={len(events)} duration={audio.duration:.3f}s")
    return 0


def _cmd_transform(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    spec = _parse_ops(parser, args.ops)
    table = parse_table(_read_input(args.file))
    x_col, y_col = _default_xy(table, args.x_col, args.y_col)
    series = transformed_series(table, x_col, y_col, spec)
    out = Table([("x", series.x), (series.label or "y", series.y)], len(series))
    _write_output(args.out, serialize_table(out).encode("utf-8"))
    print(f"points={len(series)} columns=x,{series.label or 'y'}")
    return 0


def _cmd_train(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    report = simulate_session(args.block, args.count, args.seed, SonifyConfig())
    text = json.dumps(report.to_json(), indent=2, sort_keys=True)
    print(text)
    if args.report:
        _write_output(args.report, (text + "\n").encode("utf-8"))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "sonify": _cmd_sonify,
        "events": _cmd_events,
        "transform": _cmd_transform,
        "train": _cmd_train,
    }
    try:
        return handlers[args.command](parser, args)
    except SystemExit as exc:  # parser.error inside a handler
        return exc.code if isinstance(exc.code, int) else 2
    except _CliFailure as exc:
        print(f"{i18n.message('cli.error_prefix')}: {exc}", file=sys.stderr)
        return 1
    except SonoworkError as exc:
        print(f"{i18n.message('cli.error_prefix')}: {i18n.describe_error(exc)}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
