"""Command-line harness.

Subcommands
-----------
truncate    apply strategies to a distribution file; case-study table
trajectory  simulate one decoding run; per-step CSV
compare     seed-paired strategy comparison; summary JSON
sweep       bandwidth x temperature grid; summary CSV

Exit codes: 0 success, 2 usage/input error, 3 output I/O error.
``BANDLAB_SEED`` overrides the built-in default seed (precedence:
flag > environment > 0).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .distfile import (
    build_report,
    format_table,
    load_distribution,
    report_to_csv,
    report_to_jsonable,
)
from .errors import BandlabError
from .simulate import ProcessConfig, RunSummary, run_comparison, run_trajectory, sweep_grid
from .strategies import (
    STRATEGY_NAMES,
    Epsilon,
    Eta,
    MinP,
    StrategyConfig,
    TemperatureOnly,
    TopB,
    TopK,
    TopP,
)

_RANGE_EPS = 1e-9


class _UsageError(BandlabError):
    pass


class _OutputError(Exception):
    pass


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("BANDLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"BANDLAB_SEED must be an integer, got {env!r}") from None
    return 0


def _build_strategy(name: str, args: argparse.Namespace) -> StrategyConfig:
    temperature = args.temperature
    if name == "top-b":
        return TopB(base_bandwidth=args.base_bandwidth, temperature=temperature)
    if name == "top-k":
        return TopK(k=args.k, temperature=temperature)
    if name == "top-p":
        return TopP(p=args.p, temperature=temperature)
    if name == "min-p":
        return MinP(alpha=args.alpha, temperature=temperature)
    if name == "epsilon":
        if args.epsilon is None:
            raise _UsageError("strategy 'epsilon' requires --epsilon")
        return Epsilon(epsilon=args.epsilon, temperature=temperature)
    if name == "eta":
        if args.eta is None:
            raise _UsageError("strategy 'eta' requires --eta")
        return Eta(eta=args.eta, temperature=temperature)
    if name == "temperature":
        return TemperatureOnly(temperature=temperature)
    raise _UsageError(f"unknown strategy {name!r}; valid names: {', '.join(STRATEGY_NAMES)}")


def _add_strategy_flags(parser: argparse.ArgumentParser, multiple: bool, default=None):
    parser.add_argument(
        "--strategy",
        action="append" if multiple else "store",
        choices=STRATEGY_NAMES,
        default=default,
        help="strategy to apply" + (" (repeatable)" if multiple else ""),
    )
    parser.add_argument("--base-bandwidth", type=float, default=0.3)
    parser.add_argument("--k", type=int, default=40)
    parser.add_argument("--p", type=float, default=0.9)
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--eta", type=float, default=None)
    parser.add_argument("--temperature", type=float, default=1.0)


def _input_path(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise _UsageError(f"no such file: {path}")
    return p


def _load_process_config(path: str) -> ProcessConfig:
    text = _input_path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"process config: invalid JSON ({exc})") from exc
    return ProcessConfig.from_dict(data)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _OutputError(f"cannot write {out!r}: {exc}") from exc


def _parse_bandwidth_spec(spec: str) -> list[float]:
    """Parse 'start:stop:step' (inclusive of stop when reachable) or a single value."""
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise _UsageError(
            f"invalid bandwidth spec {spec!r}; expected a value or start:stop:step"
        ) from None
    if step <= 0:
        raise _UsageError(f"bandwidth step must be positive, got {step!r}")
    values = []
    v = start
    while v <= stop + _RANGE_EPS:
        values.append(v)
        v = start + len(values) * step
    if not values:
        raise _UsageError(f"bandwidth spec {spec!r} yields an empty range")
    return values


def _parse_float_list(spec: str, flag: str) -> list[float]:
    items = [s for s in spec.split(",") if s.strip() != ""]
    if not items:
        raise _UsageError(f"{flag} yields an empty list")
    try:
        return [float(s) for s in items]
    except ValueError:
        raise _UsageError(f"{flag} must be a comma-separated list of numbers, got {spec!r}") from None


# --- subcommands ---------------------------------------------------------


def _cmd_truncate(args: argparse.Namespace) -> int:
    dfile = load_distribution(_input_path(args.dist_file))
    names = args.strategy or ["top-b", "top-p", "top-k", "min-p"]
    configs = [_build_strategy(name, args) for name in names]
    rows = build_report(dfile, configs)
    if args.format == "table":
        _emit(format_table(rows), args.out)
    elif args.format == "json":
        _emit(json.dumps(report_to_jsonable(rows), indent=2) + "\n", args.out)
    else:
        _emit(report_to_csv(rows), args.out)
    return 0


def _trajectory_csv(record) -> str:
    lines = ["step,entropy,normalized_entropy,support_size,bandwidth,sampled_token,mode_agreement"]
    for t in range(record.steps):
        bw = record.bandwidth[t]
        bw_text = "" if math.isnan(bw) else _fmt(bw)
        lines.append(
            f"{t},{_fmt(record.entropy[t])},{_fmt(record.normalized_entropy[t])},"
            f"{record.support_size[t]},{bw_text},{record.sampled_token[t]},"
            f"{int(record.mode_agreement[t])}"
        )
    return "\n".join(lines) + "\n"


def _cmd_trajectory(args: argparse.Namespace) -> int:
    process = _load_process_config(args.process_config)
    strategy = _build_strategy(args.strategy, args)
    seed = _resolve_seed(args.seed)
    record = run_trajectory(process, strategy, seed)
    _emit(_trajectory_csv(record), args.out)
    return 0


def _summary_jsonable(summary: RunSummary) -> dict:
    out: dict = {"n_seeds": summary.n_seeds}
    for metric in RunSummary.METRICS:
        ms = getattr(summary, metric)
        out[metric] = {"mean": ms.mean, "variance": ms.variance}
    return out


def _cmd_compare(args: argparse.Namespace) -> int:
    process = _load_process_config(args.process_config)
    if not args.strategy:
        raise _UsageError(
            f"at least one --strategy is required; valid names: {', '.join(STRATEGY_NAMES)}"
        )
    configs = [_build_strategy(name, args) for name in args.strategy]
    summaries = run_comparison(process, configs, args.seeds)
    payload = {name: _summary_jsonable(summary) for name, summary in summaries.items()}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    process = _load_process_config(args.process_config)
    bandwidths = _parse_bandwidth_spec(args.base_bandwidth)
    temperatures = _parse_float_list(args.temperature, "--temperature")
    cells = sweep_grid(process, bandwidths, temperatures, args.seeds)
    lines = [
        "bandwidth,temperature,mean_entropy,mean_support_size,"
        "mode_agreement_rate,variance_mode_agreement"
    ]
    for cell in cells:
        s = cell.summary
        lines.append(
            f"{_fmt(cell.bandwidth)},{_fmt(cell.temperature)},{_fmt(s.mean_entropy.mean)},"
            f"{_fmt(s.mean_support_size.mean)},{_fmt(s.mode_agreement_rate.mean)},"
            f"{_fmt(s.mode_agreement_rate.variance)}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandlab",
        description="Entropy-regulated relative-band truncation and a synthetic decoding-process harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_trunc = sub.add_parser("truncate", help="apply strategies to a distribution file")
    p_trunc.add_argument("dist_file", help="JSON distribution file")
    _add_strategy_flags(p_trunc, multiple=True)
    p_trunc.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_trunc.add_argument("--out", default=None)
    p_trunc.set_defaults(func=_cmd_truncate)

    p_traj = sub.add_parser("trajectory", help="simulate one decoding run, emit per-step CSV")
    p_traj.add_argument("process_config", help="JSON process config file")
    _add_strategy_flags(p_traj, multiple=False, default="top-b")
    p_traj.add_argument("--seed", type=int, default=None)
    p_traj.add_argument("--out", default=None)
    p_traj.set_defaults(func=_cmd_trajectory)

    p_cmp = sub.add_parser("compare", help="seed-paired strategy comparison, emit summary JSON")
    p_cmp.add_argument("process_config", help="JSON process config file")
    _add_strategy_flags(p_cmp, multiple=True)
    p_cmp.add_argument("--seeds", type=int, default=8, help="number of paired seeds (0..N-1)")
    p_cmp.add_argument("--out", default=None)
    p_cmp.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", help="bandwidth x temperature grid, emit CSV")
    p_sweep.add_argument("process_config", help="JSON process config file")
    p_sweep.add_argument(
        "--base-bandwidth",
        default="0.1:0.5:0.1",
        help="range spec start:stop:step (inclusive) or a single value",
    )
    p_sweep.add_argument(
        "--temperature", default="1.0", help="comma-separated temperature list"
    )
    p_sweep.add_argument("--seeds", type=int, default=8)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BandlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
