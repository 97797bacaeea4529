"""Direct jump-time pricer: exercise opportunities are the jump times.

Each simulated path yields the maximum of its discounted intrinsic values
over all drift-jump times plus maturity; the price is the average over
paths. The per-path maximum looks at the whole path rather than following
a stopping rule, which is a modelling choice of the method, not a bug.
Inception (t=0) is never an opportunity; maturity always is.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .model import MarketParams, OptionSpec, PDifMPParams, SimConfig, intrinsic
from .paths import PDifMPPath, map_paths, simulate_pdifmp_path
from .results import Method, PricingResult


@dataclass(frozen=True)
class PathPayoff:
    """Best discounted exercise value found along one path."""

    best_value: float
    best_time: float | None
    n_opportunities: int


def path_best_discounted_payoff(
    path: PDifMPPath, spec: OptionSpec, r: float
) -> PathPayoff:
    """Maximum of e^{-r t} * intrinsic over the path's recorded times.

    The recorded times are the drift-jump times plus maturity (the final
    entry of jump_times). Returns a zero payoff with no best_time when the
    option is never in the money at any of them.
    """
    values = np.exp(-r * path.jump_times) * intrinsic(
        spec, path.prices[path.jump_indices]
    )
    k = int(np.argmax(values))
    best = float(values[k])
    if best <= 0.0:
        return PathPayoff(0.0, None, len(values))
    return PathPayoff(best, float(path.jump_times[k]), len(values))


def price_pdifmp(
    market: MarketParams,
    spec: OptionSpec,
    params: PDifMPParams,
    cfg: SimConfig,
    n_workers: int = 1,
) -> PricingResult:
    """Average the per-path best discounted payoffs over M fresh paths."""
    start = time.perf_counter()

    def one(i: int):
        path = simulate_pdifmp_path(market, params, cfg, i)
        payoff = path_best_discounted_payoff(path, spec, market.r)
        return payoff.best_value, path.prices.max() > 3.0 * path.prices[0]

    out = map_paths(cfg.n_paths, one, n_workers)
    values = np.array([v for v, _ in out])
    n = cfg.n_paths
    std_error = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return PricingResult(
        price=float(values.mean()),
        std_error=std_error,
        n_paths=n,
        runtime=time.perf_counter() - start,
        flagged_paths=sum(f for _, f in out),
        seed=cfg.seed,
        method=Method.PDIFMP_DIRECT,
    )
