"""Experiment presets: the published parameter grids for every result table.

Pricing tables (table4..table13) expand to one cell per (method, parameter
row); bench tables (table14..table16) name the timing comparisons; scenario
presets (scenarioA..scenarioE) describe the path-simulation parameter
sweeps. Defaults follow the published parameter sets: the classic LS runs
on a 0.02-year grid, the jump-modulated runs on a 0.001-year grid, both
with 10^4 paths and 50 exercise dates, strike 40, rate and baseline drift
0.06, volatility 0.2, one-year maturity, Laplace scale 0.01, no buffer zone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Sequence

from .direct import price_pdifmp
from .lsm import price_ls_classic, price_ls_pdifmp
from .model import (
    ConfigError,
    DeltaMode,
    MarketParams,
    OptionKind,
    OptionSpec,
    PDifMPParams,
    SimConfig,
    resolve_delta,
)
from .reporting import BenchRow, ResultRow
from .results import Method, PricingResult

STRIKE = 40.0
RATE = 0.06
SIGMA = 0.2
MATURITY = 1.0
MU0 = 0.06
LAPLACE_SCALE = 0.01
BUFFER = 0.0
N_PATHS = 10_000
N_EXERCISE = 50
H_GBM = 0.02
H_FINE = 1e-3

PUT_S0 = (36.0, 38.0, 40.0, 42.0, 44.0)


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved pricing run."""

    method: Method
    kind: OptionKind
    market: MarketParams
    jumps: PDifMPParams
    cfg: SimConfig
    gbm_drift: float = MU0


@dataclass(frozen=True)
class ExperimentSpec:
    """A named preset plus global overrides, seed and output path."""

    table_id: str
    seed: int
    out_path: str
    overrides: dict | None = None


def make_run(
    method: Method,
    kind: OptionKind,
    s0: float,
    lambda0: float,
    eta: float,
    alpha: float,
    seed: int,
    delta_mode: DeltaMode | float = DeltaMode.INITIAL,
    n_paths: int = N_PATHS,
    n_exercise: int = N_EXERCISE,
    h: float | None = None,
) -> RunConfig:
    if h is None:
        h = H_GBM if method is Method.LS_CLASSIC else H_FINE
    return RunConfig(
        method=method,
        kind=kind,
        market=MarketParams(s0=s0, strike=STRIKE, r=RATE, sigma=SIGMA, maturity=MATURITY),
        jumps=PDifMPParams(
            mu0=MU0,
            lambda0=lambda0,
            eta=eta,
            beta=BUFFER,
            alpha=alpha,
            b=LAPLACE_SCALE,
            delta_mode=delta_mode,
        ),
        cfg=SimConfig(h=h, n_paths=n_paths, n_exercise=n_exercise, seed=seed),
    )


def execute(run: RunConfig, n_workers: int = 1) -> PricingResult:
    spec = OptionSpec(run.kind, run.market.strike)
    if run.method is Method.LS_CLASSIC:
        return price_ls_classic(run.market, spec, run.gbm_drift, run.cfg, n_workers)
    if run.method is Method.LS_PDIFMP:
        return price_ls_pdifmp(run.market, spec, run.jumps, run.cfg, n_workers)
    return price_pdifmp(run.market, spec, run.jumps, run.cfg, n_workers)


def result_row(run: RunConfig, result: PricingResult, omit_timing: bool = False) -> ResultRow:
    return ResultRow(
        method=run.method.value,
        option=run.kind.value,
        s0=run.market.s0,
        strike=run.market.strike,
        r=run.market.r,
        sigma=run.market.sigma,
        maturity=run.market.maturity,
        lambda0=run.jumps.lambda0,
        eta=run.jumps.eta,
        alpha=run.jumps.alpha,
        b=run.jumps.b,
        beta=run.jumps.beta,
        delta=resolve_delta(run.jumps, run.market),
        n_paths=run.cfg.n_paths,
        n_exercise=run.cfg.n_exercise,
        step=run.cfg.h,
        seed=run.cfg.seed,
        price=result.price,
        std_error=result.std_error,
        runtime_s=0.0 if omit_timing else result.runtime,
        flagged_paths=result.flagged_paths,
    )


# --------------------------------------------------------------------------
# pricing-table presets
# --------------------------------------------------------------------------

_LS3 = (Method.LS_CLASSIC, Method.LS_PDIFMP, Method.PDIFMP_DIRECT)
_LS2 = (Method.LS_CLASSIC, Method.LS_PDIFMP)


def _sweep(methods, kind, rows, seed, **kw) -> list[RunConfig]:
    """One RunConfig per method per parameter row (row = dict of make_run args)."""
    out = []
    for row in rows:
        for method in methods:
            out.append(make_run(method=method, kind=kind, seed=seed, **row, **kw))
    return out


def _lambda_rows(s0s, lambdas, eta, alpha):
    return [
        {"s0": s0, "lambda0": lam, "eta": eta, "alpha": alpha}
        for s0 in s0s
        for lam in lambdas
    ]


def pricing_cells(table_id: str, seed: int) -> list[RunConfig]:
    """Expand a pricing-table preset into its run cells."""
    put = OptionKind.PUT
    call = OptionKind.CALL
    if table_id == "table4":
        rows = []
        for s0, modes in [
            (36.0, (DeltaMode.STRIKE, DeltaMode.INITIAL)),
            (38.0, (DeltaMode.STRIKE, DeltaMode.INITIAL)),
            (40.0, (DeltaMode.INITIAL,)),
            (42.0, (DeltaMode.STRIKE, DeltaMode.INITIAL)),
            (44.0, (DeltaMode.STRIKE, DeltaMode.INITIAL)),
        ]:
            for mode in modes:
                rows.append(
                    {"s0": s0, "lambda0": 5.0, "eta": 0.5, "alpha": 1e-6, "delta_mode": mode}
                )
        return _sweep(_LS2, put, rows, seed)
    if table_id == "table5":
        return _sweep(_LS3, put, _lambda_rows(PUT_S0, (0.4, 0.6, 0.8), 0.0, 0.01), seed)
    if table_id == "table6":
        return _sweep(_LS3, put, _lambda_rows(PUT_S0, (0.4, 0.6, 0.8), 0.0, -0.01), seed)
    if table_id == "table7":
        rows = [
            {"s0": s0, "lambda0": 0.4, "eta": 0.005, "alpha": alpha}
            for s0 in PUT_S0
            for alpha in (0.01, -0.01)
        ]
        return _sweep(_LS3, put, rows, seed)
    if table_id == "table8":
        rows = [
            {"s0": s0, "lambda0": lam, "eta": eta, "alpha": 0.01}
            for s0 in PUT_S0
            for lam, eta in ((0.5, 0.0), (1.0, 0.0), (0.5, 0.01))
        ]
        return _sweep(_LS2, put, rows, seed)
    if table_id == "table9":
        rows = [
            {"s0": s0, "lambda0": lam, "eta": eta, "alpha": 1e-6}
            for s0 in PUT_S0
            for lam, eta in ((5.0, 0.0), (5.0, 0.3), (5.0, 0.5), (10.0, 0.6))
        ]
        return _sweep(_LS2, put, rows, seed)
    if table_id == "table10":
        return _sweep(_LS3, put, _lambda_rows(PUT_S0, (0.4, 0.6, 0.8), 0.0, 0.0), seed)
    if table_id == "table11":
        rows = _lambda_rows((32.0, 34.0), (0.4, 0.6, 0.8, 1.0, 1.2), 0.0, 0.01)
        rows += _lambda_rows((46.0, 48.0), (0.4, 0.6, 0.8), 0.0, 0.01)
        return _sweep(_LS3, put, rows, seed)
    if table_id == "table12":
        rows = [
            {"s0": s0, "lambda0": 0.4, "eta": eta, "alpha": 0.01}
            for s0 in PUT_S0
            for eta in (0.001, 0.005, 0.01)
        ]
        return _sweep(_LS3, put, rows, seed)
    if table_id == "table13":
        return _sweep(_LS3, call, _lambda_rows(PUT_S0, (0.01, 0.1, 0.2), 0.0, 0.01), seed)
    raise ConfigError(f"unknown pricing table '{table_id}' (table4..table13)")


def bench_cells(table_id: str, seed: int) -> list[RunConfig]:
    """Expand a timing-table preset into its run cells."""
    if table_id == "table14":
        rows = _lambda_rows((36.0,), (0.4, 0.6, 0.8), 0.0, 0.01)
        return _sweep(_LS3, OptionKind.PUT, rows, seed)
    if table_id == "table15":
        rows = _lambda_rows((36.0,), (0.01, 0.1, 0.2), 0.0, 0.01)
        return _sweep(_LS3, OptionKind.CALL, rows, seed)
    if table_id == "table16":
        rows = _lambda_rows((36.0,), (0.6, 0.8, 1.0, 1.2), 0.0, 0.01)
        return _sweep((Method.LS_CLASSIC, Method.PDIFMP_DIRECT), OptionKind.CALL, rows, seed)
    raise ConfigError(f"unknown bench table '{table_id}' (table14..table16)")


# --------------------------------------------------------------------------
# path-simulation scenario presets
# --------------------------------------------------------------------------

_SCENARIOS: dict[str, tuple[float, tuple[tuple[float, float], ...]]] = {
    # scenario id -> (s0, ((lambda0, eta), ...))
    "scenarioA": (36.0, ((5.0, 0.0), (5.0, 0.3), (5.0, 0.5), (5.0, 1.0))),
    "scenarioB": (36.0, ((5.0, 1.0), (1.0, 1.0), (0.1, 1.0), (0.01, 1.0))),
    "scenarioC": (36.0, ((20.0, 0.0), (50.0, 0.3))),
    "scenarioD": (36.0, ((10.0, 0.0), (10.0, 0.5), (1.0, 0.5), (1.0, 1.0))),
    "scenarioE": (44.0, ((10.0, 0.0), (10.0, 0.5), (1.0, 0.5), (1.0, 1.0))),
}

SCENARIO_ALPHA = 1e-6


def scenario_combos(scenario_id: str) -> list[tuple[float, float, float]]:
    """(s0, lambda0, eta) combinations of a scenario preset."""
    if scenario_id not in _SCENARIOS:
        known = ", ".join(sorted(_SCENARIOS))
        raise ConfigError(f"unknown scenario '{scenario_id}' (known: {known})")
    s0, pairs = _SCENARIOS[scenario_id]
    return [(s0, lam, eta) for lam, eta in pairs]


def known_presets() -> dict[str, list[str]]:
    return {
        "pricing": [f"table{i}" for i in range(4, 14)],
        "bench": [f"table{i}" for i in range(14, 17)],
        "scenario": sorted(_SCENARIOS),
    }


# --------------------------------------------------------------------------
# runners
# --------------------------------------------------------------------------


def _apply_overrides(cells: list[RunConfig], overrides: dict | None) -> list[RunConfig]:
    if not overrides:
        return cells
    allowed = {"n_paths", "n_exercise", "h"}
    unknown = set(overrides) - allowed
    if unknown:
        raise ConfigError(f"unknown overrides {sorted(unknown)}; allowed: {sorted(allowed)}")
    out = []
    for cell in cells:
        cfg = cell.cfg
        if "n_paths" in overrides:
            cfg = replace(cfg, n_paths=int(overrides["n_paths"]))
        if "n_exercise" in overrides:
            cfg = replace(cfg, n_exercise=int(overrides["n_exercise"]))
        if "h" in overrides:
            cfg = replace(cfg, h=float(overrides["h"]))
        out.append(replace(cell, cfg=cfg))
    return out


def run_experiment(
    spec: ExperimentSpec, n_workers: int = 1, omit_timing: bool = False
) -> list[ResultRow]:
    """Execute every cell of a pricing table; deterministic per seed."""
    cells = _apply_overrides(pricing_cells(spec.table_id, spec.seed), spec.overrides)
    return [result_row(cell, execute(cell, n_workers), omit_timing) for cell in cells]


def run_bench(
    spec: ExperimentSpec, trials: int, n_workers: int = 1
) -> list[BenchRow]:
    """Time every cell of a bench table over the requested trials.

    Each trial reseeds with seed + trial so trials are independent; the
    reported seconds are wall-clock per pricing call (monotonic clock).
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    cells = _apply_overrides(bench_cells(spec.table_id, spec.seed), spec.overrides)
    rows = []
    for trial in range(trials):
        for cell in cells:
            run = replace(cell, cfg=replace(cell.cfg, seed=spec.seed + trial))
            start = time.perf_counter()
            execute(run, n_workers)
            seconds = time.perf_counter() - start
            rows.append(
                BenchRow(
                    method=run.method.value,
                    option=run.kind.value,
                    s0=run.market.s0,
                    lambda0=run.jumps.lambda0,
                    eta=run.jumps.eta,
                    alpha=run.jumps.alpha,
                    n_paths=run.cfg.n_paths,
                    seed=run.cfg.seed,
                    trial=trial,
                    seconds=seconds,
                )
            )
    return rows
