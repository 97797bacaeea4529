"""Command-line front end.

Subcommands:
  price          one pricing run with explicit parameters
  table          run a pricing-table preset (table4..table13) to CSV
  bench          time a bench preset (table14..table16) to CSV
  paths          dump simulated paths with jump markers to CSV
  list-presets   show the known preset ids

All randomness is controlled by --seed; --threads only changes how the
work is scheduled, never the numbers. Exit code is 0 on success and 2 on
any error, with a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .model import (
    ConfigError,
    DeltaMode,
    MarketParams,
    OptionKind,
    PDifMPParams,
    SimConfig,
)
from .presets import (
    H_FINE,
    H_GBM,
    ExperimentSpec,
    RunConfig,
    SCENARIO_ALPHA,
    execute,
    known_presets,
    make_run,
    result_row,
    run_bench,
    run_experiment,
    scenario_combos,
)
from .presets import (
    BUFFER,
    LAPLACE_SCALE,
    MATURITY,
    MU0,
    N_EXERCISE,
    N_PATHS,
    RATE,
    SIGMA,
    STRIKE,
)
from .reporting import write_paths_csv, write_rows
from .results import Method


def _parse_delta(text: str) -> DeltaMode | float:
    if text == "strike":
        return DeltaMode.STRIKE
    if text == "initial":
        return DeltaMode.INITIAL
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"--delta must be 'strike', 'initial' or a number, got '{text}'")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=1, help="master seed (64-bit)")
    p.add_argument("--threads", type=int, default=1, help="worker-thread cap")


def _add_model_flags(p: argparse.ArgumentParser):
    p.add_argument("--s0", type=float, default=36.0)
    p.add_argument("--strike", type=float, default=STRIKE)
    p.add_argument("--r", type=float, default=RATE)
    p.add_argument("--sigma", type=float, default=SIGMA)
    p.add_argument("--maturity", type=float, default=MATURITY)
    p.add_argument("--mu0", type=float, default=MU0)
    p.add_argument("--lambda0", type=float, default=0.4)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--b", type=float, default=LAPLACE_SCALE)
    p.add_argument("--beta", type=float, default=BUFFER)
    p.add_argument("--delta", type=str, default="initial",
                   help="'strike', 'initial' or a custom price level")
    p.add_argument("--step", type=float, default=None,
                   help="fine step h (defaults: 0.02 for ls, 0.001 otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amcarlo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price", help="price one option")
    p.add_argument("--method", choices=[m.value for m in Method], required=True)
    p.add_argument("--option", choices=["put", "call"], default="put")
    _add_model_flags(p)
    p.add_argument("--drift", type=float, default=None,
                   help="GBM drift for the ls method (default: mu0)")
    p.add_argument("--paths", type=int, default=N_PATHS)
    p.add_argument("--exercise-points", type=int, default=N_EXERCISE)
    p.add_argument("--out", type=str, default=None, help="optional CSV output path")
    p.add_argument("--omit-timing", action="store_true",
                   help="write runtime_s as 0.0 for byte-stable output")
    _add_common(p)

    p = sub.add_parser("table", help="run a pricing-table preset")
    p.add_argument("--id", required=True, help="table4..table13")
    p.add_argument("--out", required=True)
    p.add_argument("--paths", type=int, default=None, help="override the path count")
    p.add_argument("--exercise-points", type=int, default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--omit-timing", action="store_true",
                   help="write runtime_s as 0.0 for byte-stable output")
    _add_common(p)

    p = sub.add_parser("bench", help="time a bench preset")
    p.add_argument("--id", required=True, help="table14..table16")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--paths", type=int, default=None, help="override the path count")
    _add_common(p)

    p = sub.add_parser("paths", help="dump simulated paths to CSV")
    p.add_argument("--scenario", type=str, default=None,
                   help="scenarioA..scenarioE (one CSV per parameter combo)")
    _add_model_flags(p)
    p.add_argument("--n", type=int, default=5, help="paths per file")
    p.add_argument("--record-every", type=int, default=1,
                   help="keep every k-th grid point (jump rows always kept)")
    p.add_argument("--out", required=True,
                   help="output file, or directory in scenario mode")
    _add_common(p)

    sub.add_parser("list-presets", help="show the known preset ids")
    return parser


def _cmd_price(args) -> int:
    method = Method(args.method)
    kind = OptionKind(args.option)
    h = args.step if args.step is not None else (H_GBM if method is Method.LS_CLASSIC else H_FINE)
    run = RunConfig(
        method=method,
        kind=kind,
        market=MarketParams(args.s0, args.strike, args.r, args.sigma, args.maturity),
        jumps=PDifMPParams(
            mu0=args.mu0,
            lambda0=args.lambda0,
            eta=args.eta,
            beta=args.beta,
            alpha=args.alpha,
            b=args.b,
            delta_mode=_parse_delta(args.delta),
        ),
        cfg=SimConfig(h=h, n_paths=args.paths, n_exercise=args.exercise_points, seed=args.seed),
        gbm_drift=args.drift if args.drift is not None else args.mu0,
    )
    result = execute(run, args.threads)
    print(
        f"{method.value} {kind.value}: price={result.price:.6f} "
        f"std_error={result.std_error:.6f} paths={result.n_paths} "
        f"flagged={result.flagged_paths} runtime={result.runtime:.2f}s seed={result.seed}"
    )
    if args.out:
        write_rows(args.out, [result_row(run, result, args.omit_timing)])
        print(f"wrote {args.out}")
    return 0


def _overrides(args) -> dict:
    out = {}
    if getattr(args, "paths", None) is not None:
        out["n_paths"] = args.paths
    if getattr(args, "exercise_points", None) is not None:
        out["n_exercise"] = args.exercise_points
    if getattr(args, "step", None) is not None:
        out["h"] = args.step
    return out


def _cmd_table(args) -> int:
    spec = ExperimentSpec(args.id, args.seed, args.out, _overrides(args))
    rows = run_experiment(spec, args.threads, args.omit_timing)
    write_rows(args.out, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_bench(args) -> int:
    spec = ExperimentSpec(args.id, args.seed, args.out, _overrides(args))
    rows = run_bench(spec, args.trials, args.threads)
    write_rows(args.out, rows)
    by_method: dict[str, list[float]] = {}
    for row in rows:
        by_method.setdefault(row.method, []).append(row.seconds)
    for method, secs in by_method.items():
        print(f"{method}: mean {sum(secs) / len(secs):.3f}s over {len(secs)} timed runs")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_paths(args) -> int:
    h = args.step if args.step is not None else H_FINE
    if args.scenario:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for s0, lam, eta in scenario_combos(args.scenario):
            market = MarketParams(s0, args.strike, args.r, args.sigma, args.maturity)
            params = PDifMPParams(
                mu0=args.mu0, lambda0=lam, eta=eta, beta=args.beta,
                alpha=SCENARIO_ALPHA, b=args.b, delta_mode=_parse_delta(args.delta),
            )
            target = out_dir / f"{args.scenario}_lambda{lam:g}_eta{eta:g}.csv"
            write_paths_csv(target, market, params, args.n, h, args.seed,
                            args.record_every, args.threads)
            print(f"wrote {target}")
        return 0
    market = MarketParams(args.s0, args.strike, args.r, args.sigma, args.maturity)
    params = PDifMPParams(
        mu0=args.mu0, lambda0=args.lambda0, eta=args.eta, beta=args.beta,
        alpha=args.alpha, b=args.b, delta_mode=_parse_delta(args.delta),
    )
    write_paths_csv(args.out, market, params, args.n, h, args.seed,
                    args.record_every, args.threads)
    print(f"wrote {args.out}")
    return 0


def _cmd_list(_args) -> int:
    for group, names in known_presets().items():
        print(f"{group}: {' '.join(names)}")
    return 0


_COMMANDS = {
    "price": _cmd_price,
    "table": _cmd_table,
    "bench": _cmd_bench,
    "paths": _cmd_paths,
    "list-presets": _cmd_list,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
