"""Command-line interface.

Subcommands: run (one optimization), suite (all functions x replicates),
oracle (grid or reachability verification), trace (line-delimited events
of a single run, for external plotting).

Flags override an optional key=value config file (--config); data goes to
stdout or --out-file, diagnostics to stderr. Exit status: 0 ok, 2 usage
error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from rmga.core import ConfigurationError, GridTooLargeError
from rmga.harness import (
    SuiteReport,
    aggregate,
    format_decimal,
    grid_oracle,
    reachability_oracle,
    render,
    run_replicates,
    run_suite,
)
from rmga.objectives import FUNCTION_NAMES, get
from rmga.optimizer import RmConfig, rmga_run

_DEFAULTS = {
    "function": None,
    "seed": "0",
    "rms": "0.1",
    "beta": "0.1,0.25,0.5,0.75,1.0",
    "alphas": "1,2,3,4,5,6,7,8,9,10",
    "replicates": "1",
    "max-generations": "100000",
    "output": "text",
    "out-file": None,
    "resolution": None,
    "budget": "1000000",
    "mode": "grid",
}


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmga", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_function: bool) -> None:
        if with_function:
            p.add_argument("--function", help=f"one of {', '.join(FUNCTION_NAMES)}")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--rms", type=float, default=None)
        p.add_argument("--beta", help="comma-separated ascending step sizes")
        p.add_argument("--alphas", help="comma-separated ascending step multipliers")
        p.add_argument("--max-generations", type=int, default=None)
        p.add_argument("--output", choices=("text", "csv", "json"), default=None)
        p.add_argument("--out-file", default=None)
        p.add_argument("--config", default=None, help="key=value config file")

    p_run = sub.add_parser("run", help="one optimization run")
    common(p_run, with_function=True)

    p_suite = sub.add_parser("suite", help="all benchmark functions x replicates")
    common(p_suite, with_function=False)
    p_suite.add_argument("--replicates", type=int, default=None)

    p_oracle = sub.add_parser("oracle", help="verification oracles")
    common(p_oracle, with_function=True)
    p_oracle.add_argument("--mode", choices=("grid", "reachability"), default=None)
    p_oracle.add_argument("--resolution", type=float, default=None)
    p_oracle.add_argument("--budget", type=int, default=None)

    p_trace = sub.add_parser("trace", help="line-delimited trace of one run")
    common(p_trace, with_function=True)

    return parser


def _load_config_file(path: str) -> dict[str, str]:
    data: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise _UsageError(f"cannot read config file: {exc}") from exc
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _UsageError(f"malformed config line {raw!r} (expected key=value)")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in _DEFAULTS:
            raise _UsageError(f"unknown config key {key!r}")
        data[key] = value.strip()
    return data


class _Settings:
    """Flag > config file > default, with typed accessors."""

    def __init__(self, args: argparse.Namespace):
        self._args = vars(args)
        self._file = _load_config_file(args.config) if args.config else {}

    def _raw(self, key: str) -> Optional[str]:
        cli = self._args.get(key.replace("-", "_"))
        if cli is not None:
            return str(cli)
        if key in self._file:
            return self._file[key]
        return _DEFAULTS.get(key)

    def string(self, key: str) -> Optional[str]:
        return self._raw(key)

    def integer(self, key: str) -> int:
        raw = self._raw(key)
        assert raw is not None
        try:
            return int(raw)
        except ValueError:
            raise _UsageError(f"{key} must be an integer, got {raw!r}") from None

    def real(self, key: str) -> float:
        raw = self._raw(key)
        assert raw is not None
        try:
            return float(raw)
        except ValueError:
            raise _UsageError(f"{key} must be a real number, got {raw!r}") from None

    def csv_floats(self, key: str) -> tuple[float, ...]:
        raw = self._raw(key)
        assert raw is not None
        try:
            return tuple(float(tok) for tok in raw.split(","))
        except ValueError:
            raise _UsageError(f"{key} must be comma-separated reals, got {raw!r}") from None

    def csv_ints(self, key: str) -> tuple[int, ...]:
        raw = self._raw(key)
        assert raw is not None
        try:
            return tuple(int(tok) for tok in raw.split(","))
        except ValueError:
            raise _UsageError(f"{key} must be comma-separated integers, got {raw!r}") from None


def _make_config(s: _Settings) -> RmConfig:
    try:
        return RmConfig(
            rms=s.real("rms"),
            alpha_multipliers=s.csv_ints("alphas"),
            beta_schedule=s.csv_floats("beta"),
            max_generations=s.integer("max-generations"),
            seed=s.integer("seed"),
        )
    except ConfigurationError as exc:
        raise _UsageError(str(exc)) from exc


def _get_spec(s: _Settings):
    name = s.string("function")
    if name is None:
        raise _UsageError("--function is required (or set function= in the config file)")
    try:
        return get(name)
    except KeyError as exc:
        raise _UsageError(str(exc)) from exc


def _emit(data: bytes, out_file: Optional[str]) -> None:
    if out_file:
        with open(out_file, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _format_trace(result, fmt: str) -> bytes:
    assert result.trace is not None
    rows = []
    for ev in result.trace:
        rows.append(
            {
                "generation": ev.generation,
                "kind": ev.kind.value,
                "point": list(ev.point),
                "value": ev.value,
                "direction": list(ev.direction) if ev.direction is not None else None,
                "step_length": ev.step_length,
            }
        )
    if fmt == "json":
        return ("\n".join(json.dumps(r) for r in rows) + "\n").encode()
    lines = []
    header = ["generation", "kind", "point", "value", "direction", "step_length"]
    if fmt == "csv":
        lines.append(",".join(header))
        for r in rows:
            lines.append(
                ",".join(
                    (
                        str(r["generation"]),
                        r["kind"],
                        ";".join(format_decimal(c) for c in r["point"]),
                        format_decimal(r["value"]),
                        "" if r["direction"] is None else ";".join(str(d) for d in r["direction"]),
                        "" if r["step_length"] is None else format_decimal(r["step_length"]),
                    )
                )
            )
        return ("\n".join(lines) + "\n").encode()
    # text
    table = [header]
    for r in rows:
        table.append(
            [
                str(r["generation"]),
                r["kind"],
                "(" + ", ".join(format_decimal(c) for c in r["point"]) + ")",
                format_decimal(r["value"]),
                "-" if r["direction"] is None else "(" + ", ".join(f"{d:+d}" for d in r["direction"]) + ")",
                "-" if r["step_length"] is None else format_decimal(r["step_length"]),
            ]
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return ("\n".join(lines) + "\n").encode()


def _single_run_report(spec, config: RmConfig) -> SuiteReport:
    reports = run_replicates(spec, config, replicates=1)
    return SuiteReport(
        summaries=(aggregate(reports),),
        png=None,
        seeds=(config.seed,),
        config=config,
    )


def _cmd_run(s: _Settings) -> bytes:
    spec = _get_spec(s)
    config = _make_config(s)
    return render(_single_run_report(spec, config), s.string("output") or "text")


def _cmd_suite(s: _Settings) -> bytes:
    config = _make_config(s)
    replicates = s.integer("replicates")
    if replicates < 1:
        raise _UsageError("replicates must be >= 1")
    report = run_suite(config, replicates=replicates)
    return render(report, s.string("output") or "text")


def _cmd_oracle(s: _Settings) -> bytes:
    spec = _get_spec(s)
    config = _make_config(s)
    fmt = s.string("output") or "text"
    mode = s.string("mode") or "grid"
    if mode == "grid":
        raw = s.string("resolution")
        if raw is None:
            raise _UsageError("grid oracle needs --resolution")
        resolution = s.real("resolution")
        try:
            point, value = grid_oracle(spec, resolution)
        except (GridTooLargeError, ValueError) as exc:
            raise _UsageError(str(exc)) from exc
        fields = {
            "mode": "grid",
            "function": spec.name,
            "resolution": resolution,
            "point": list(point),
            "value": value,
        }
    else:
        budget = s.integer("budget")
        try:
            rep = reachability_oracle(spec, config, budget)
        except (ConfigurationError, ValueError) as exc:
            raise _UsageError(str(exc)) from exc
        reachable = "unknown" if rep.optimum_reachable is None else str(rep.optimum_reachable).lower()
        fields = {
            "mode": "reachability",
            "function": spec.name,
            "optimum_reachable": reachable,
            "best_point": list(rep.best_point),
            "best_value": rep.best_value,
            "visited": rep.visited,
            "truncated": rep.truncated,
        }
    if fmt == "json":
        return (json.dumps(fields, indent=2) + "\n").encode()
    if fmt == "csv":
        keys = list(fields)
        vals = []
        for k in keys:
            v = fields[k]
            if isinstance(v, list):
                vals.append(";".join(format_decimal(c) for c in v))
            elif isinstance(v, float):
                vals.append(format_decimal(v))
            else:
                vals.append(str(v))
        return (",".join(keys) + "\n" + ",".join(vals) + "\n").encode()
    lines = []
    for k, v in fields.items():
        if isinstance(v, list):
            v = "(" + ", ".join(format_decimal(c) for c in v) + ")"
        elif isinstance(v, float):
            v = format_decimal(v)
        lines.append(f"{k}: {v}")
    return ("\n".join(lines) + "\n").encode()


def _cmd_trace(s: _Settings) -> bytes:
    spec = _get_spec(s)
    config = _make_config(s)
    result = rmga_run(spec, config)
    return _format_trace(result, s.string("output") or "text")


_COMMANDS = {
    "run": _cmd_run,
    "suite": _cmd_suite,
    "oracle": _cmd_oracle,
    "trace": _cmd_trace,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = _Settings(args)
        data = _COMMANDS[args.command](settings)
        _emit(data, settings.string("out-file"))
        return 0
    except _UsageError as exc:
        print(f"rmga: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:  # internal failure: report, never emit data
        print(f"rmga: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
