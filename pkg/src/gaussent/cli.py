"""Command-line front end.

Subcommands: ``thresholds``, ``sweep``, ``gap-sweep``, ``analyze``,
``montecarlo``, ``classify``.  Sweeps emit CSV (or JSON rows with
``--format json``), everything else emits JSON.  All numbers come straight
from library calls, rounded to 12 significant digits; identical
configurations produce byte-identical output.  Exit codes: 0 success,
1 validation or numerical failure, 2 usage error.

The environment variable ``GAUSSENT_THREADS`` caps the worker threads used
to evaluate sweep rows; rows are always assembled in input order, so the
output does not depend on the thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import protocol
from .core import load_state
from .errors import GaussentError
from .ops import sample_preparation
from .separability import classify_three_mode, splitting_sigma, two_mode_metrics

_STAGE_ALIASES = {
    "initial": protocol.STAGE_INITIAL,
    "shared": protocol.STAGE_SHARED,
    "final-via-A'": protocol.STAGE_FINAL_VIA_APRIME,
    "final-via-Aprime": protocol.STAGE_FINAL_VIA_APRIME,
    "final-via-A": protocol.STAGE_FINAL_VIA_A,
}

SWEEP_COLUMNS = ("r", "mu_pair", "mu_m", "sigma_shared_A", "class_final")
GAP_SWEEP_COLUMNS = ("epsilon", "r_l", "r_e", "r_m", "gap")


def _round12(value):
    """Round floats to 12 significant digits, recursing through containers."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _emit_json(payload: dict, output: str | None) -> None:
    _emit(json.dumps(_round12(payload), indent=2) + "\n", output)


def _emit_rows(columns, rows, fmt: str, output: str | None) -> None:
    if fmt == "json":
        payload = [dict(zip(columns, row)) for row in rows]
        _emit(json.dumps(_round12(payload), indent=2) + "\n", output)
    else:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        _emit("\n".join(lines) + "\n", output)


def _map_rows(func, items):
    """Evaluate rows, optionally threaded via GAUSSENT_THREADS, in input order."""
    threads = int(os.environ.get("GAUSSENT_THREADS", "1") or "1")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _cmd_thresholds(args) -> int:
    report = protocol.threshold_report(args.epsilon)
    payload = {k: v for k, v in report.to_json_dict().items() if k not in ("p", "q")}
    _emit_json(payload, args.output)
    return 0


def _sweep_row(task):
    r, epsilon = task
    params = protocol.ProtocolParams(r, epsilon)
    mu_pair = two_mode_metrics(protocol.reduced_pair_cm(params)).mu
    shared, _ = protocol.shared_cm(params)
    sigma_a = splitting_sigma(shared.cm, 0).sigma
    final = protocol.final_cm(params, protocol.ROUTE_VIA_APRIME)
    return (r, mu_pair, protocol.mu_m(params), sigma_a, classify_three_mode(final.cm).class_label)


def _cmd_sweep(args) -> int:
    grid = np.linspace(args.r_min, args.r_max, args.steps)
    rows = _map_rows(_sweep_row, [(float(r), args.epsilon) for r in grid])
    rows = [(r, *map(_round12, rest)) for r, *rest in rows]
    _emit_rows(SWEEP_COLUMNS, rows, args.format, args.output)
    return 0


def _cmd_gap_sweep(args) -> int:
    grid = np.linspace(args.eps_min, args.eps_max, args.steps)
    reports = _map_rows(protocol.threshold_report, [float(e) for e in grid])
    rows = [
        tuple(_round12(getattr(rep, col)) for col in GAP_SWEEP_COLUMNS)
        for rep in reports
    ]
    _emit_rows(GAP_SWEEP_COLUMNS, rows, args.format, args.output)
    return 0


def _cmd_analyze(args) -> int:
    stage = protocol.stage_state(protocol.ProtocolParams(args.r, args.epsilon), _STAGE_ALIASES[args.stage])
    payload = {
        "stage": stage.stage,
        "r": args.r,
        "epsilon": args.epsilon,
        "state": {
            "n_modes": stage.state.n_modes,
            "cm": stage.state.cm.ravel().tolist(),
            "displacement": stage.state.displacement.tolist(),
        },
        "report": stage.report.to_json_dict(),
    }
    _emit_json(payload, args.output)
    return 0


def _cmd_montecarlo(args) -> int:
    batch = sample_preparation(
        protocol.ProtocolParams(args.r, args.epsilon), args.samples, args.seed
    )
    _emit_json(batch.to_json_dict(), args.output)
    return 0


def _cmd_classify(args) -> int:
    state = load_state(args.input)
    _emit_json(classify_three_mode(state.cm).to_json_dict(), args.output)
    return 0


def _nonneg(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussent",
        description="Analyze the three-mode Gaussian entanglement-sharing protocol.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("thresholds", help="squeezing thresholds at one noise value")
    p.add_argument("--epsilon", type=_nonneg, required=True)
    add_output(p)
    p.set_defaults(func=_cmd_thresholds)

    p = sub.add_parser("sweep", help="mu curves and class labels versus squeezing")
    p.add_argument("--epsilon", type=_nonneg, required=True)
    p.add_argument("--r-min", type=_nonneg, default=0.0)
    p.add_argument("--r-max", type=_nonneg, default=0.6)
    p.add_argument("--steps", type=int, default=600)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("gap-sweep", help="thresholds and their gap versus noise")
    p.add_argument("--eps-min", type=_nonneg, default=0.001)
    p.add_argument("--eps-max", type=_nonneg, default=3.0)
    p.add_argument("--steps", type=int, default=60)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output(p)
    p.set_defaults(func=_cmd_gap_sweep)

    p = sub.add_parser("analyze", help="full separability report at one protocol stage")
    p.add_argument("--r", type=_nonneg, required=True)
    p.add_argument("--epsilon", type=_nonneg, required=True)
    p.add_argument("--stage", choices=sorted(_STAGE_ALIASES), required=True)
    add_output(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("montecarlo", help="Monte Carlo check of the preparation step")
    p.add_argument("--r", type=_nonneg, required=True)
    p.add_argument("--epsilon", type=_nonneg, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    add_output(p)
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("classify", help="classify a three-mode state from a JSON file")
    p.add_argument("--input", required=True, help="covariance-matrix JSON file")
    add_output(p)
    p.set_defaults(func=_cmd_classify)

    return parser


def _validate(args, parser) -> None:
    if args.command in ("sweep", "gap-sweep") and args.steps < 2:
        parser.error(f"--steps must be at least 2, got {args.steps}")
    if args.command == "sweep" and not args.r_min < args.r_max:
        parser.error(f"--r-min must be below --r-max, got {args.r_min} >= {args.r_max}")
    if args.command == "gap-sweep" and not args.eps_min < args.eps_max:
        parser.error(f"--eps-min must be below --eps-max, got {args.eps_min} >= {args.eps_max}")
    if args.command == "montecarlo" and args.samples < 2:
        parser.error(f"--samples must be at least 2, got {args.samples}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    try:
        return args.func(args)
    except (GaussentError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
