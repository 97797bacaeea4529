"""Longstaff-Schwartz backward-induction pricer with a quadratic basis.

The backward pass runs from the second-to-last exercise date down to the
second one, so the first exercise date never triggers regression-based
early exercise. That mirrors the loop bounds of the procedure this pricer
implements; some LSM variants include the first date, this one does not.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .model import MarketParams, OptionSpec, PDifMPParams, SimConfig, intrinsic
from .paths import (
    PathMatrix,
    exercise_indices,
    map_paths,
    n_steps,
    sample_on_grid,
    simulate_gbm_path,
    simulate_pdifmp_path,
)
from .results import Method, PricingResult


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares fit of y on {1, x, x^2}.

    Degenerate fits (fewer than 3 observations or a rank-deficient design)
    encode the fallback rule directly: c0 is the plain mean of y and the
    slope/curvature are zero, so evaluating the fit returns that mean.
    """

    c0: float
    c1: float
    c2: float
    n_obs: int
    degenerate: bool

    def continuation(self, x):
        return self.c0 + self.c1 * x + self.c2 * x * x


def regress_quadratic(x, y) -> RegressionFit:
    """Fit y on a constant, x and x^2 by least squares."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    n = x.size
    if n < 3:
        fallback = float(y.mean()) if n else 0.0
        return RegressionFit(fallback, 0.0, 0.0, n, True)
    basis = np.column_stack([np.ones(n), x, x * x])
    coef, _, rank, _ = np.linalg.lstsq(basis, y, rcond=None)
    if rank < 3:
        return RegressionFit(float(y.mean()), 0.0, 0.0, n, True)
    return RegressionFit(float(coef[0]), float(coef[1]), float(coef[2]), n, False)


def backward_cash_flows(
    values: np.ndarray, spec: OptionSpec, r: float, maturity: float
) -> np.ndarray:
    """Run the backward induction and return the exercise cash-flow matrix.

    Column k holds the payoff received at exercise date k+1 (dates are
    1..n_exercise at spacing maturity/n_exercise); after the pass each path
    has at most one positive entry. Terminal cash flows are the intrinsic
    values at maturity; at each earlier date (down to date 2) the in-the-money
    paths regress their discounted future cash flow on the current price and
    exercise where the intrinsic value strictly exceeds the fit. Dates with
    an empty in-the-money set are skipped.
    """
    m, me = values.shape
    dt = maturity / me
    cash = np.zeros_like(values)
    cash[:, -1] = intrinsic(spec, values[:, -1])
    for col in range(me - 2, 0, -1):
        x = values[:, col]
        inner = intrinsic(spec, x)
        itm = inner > 0.0
        if not itm.any():
            continue
        width = me - 1 - col
        dfs = np.exp(-r * dt * np.arange(1, width + 1))
        y = cash[itm, col + 1 :] @ dfs
        fit = regress_quadratic(x[itm], y)
        exercise = inner[itm] > fit.continuation(x[itm])
        rows = np.flatnonzero(itm)[exercise]
        cash[rows, col] = inner[itm][exercise]
        cash[rows, col + 1 :] = 0.0
    return cash


def ls_price(
    matrix: PathMatrix,
    spec: OptionSpec,
    r: float,
    maturity: float,
    *,
    method: Method = Method.LS_CLASSIC,
    seed: int = 0,
) -> PricingResult:
    """Price from an exercise-date path matrix via Longstaff-Schwartz.

    The price is the mean over paths of the cash flow discounted to time
    zero; the standard error is the sample standard deviation over paths
    divided by sqrt(M).
    """
    if matrix.n_paths == 0 or matrix.values.size == 0:
        raise ValueError("empty path matrix")
    start = time.perf_counter()
    me = matrix.values.shape[1]
    dt = maturity / me
    cash = backward_cash_flows(matrix.values, spec, r, maturity)
    per_path = cash @ np.exp(-r * dt * np.arange(1, me + 1))
    price = float(per_path.mean())
    n = matrix.n_paths
    std_error = float(per_path.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return PricingResult(
        price=price,
        std_error=std_error,
        n_paths=n,
        runtime=time.perf_counter() - start,
        flagged_paths=int(np.count_nonzero(matrix.flags)),
        seed=seed,
        method=method,
    )


def price_ls_classic(
    market: MarketParams,
    spec: OptionSpec,
    drift: float,
    cfg: SimConfig,
    n_workers: int = 1,
) -> PricingResult:
    """Longstaff-Schwartz on GBM paths with the given constant drift."""
    start = time.perf_counter()
    paths = map_paths(
        cfg.n_paths, lambda i: simulate_gbm_path(market, drift, cfg, i), n_workers
    )
    matrix = sample_on_grid(paths, cfg.n_exercise)
    result = ls_price(
        matrix, spec, market.r, market.maturity, method=Method.LS_CLASSIC, seed=cfg.seed
    )
    return replace(result, runtime=time.perf_counter() - start)


def price_ls_pdifmp(
    market: MarketParams,
    spec: OptionSpec,
    params: PDifMPParams,
    cfg: SimConfig,
    n_workers: int = 1,
) -> PricingResult:
    """Longstaff-Schwartz on jump-modulated paths.

    Paths are simulated on the fine grid, sampled at the exercise dates and
    fed to the same backward induction as the classic variant. The fine
    grids are reduced per path to keep the batch memory flat.
    """
    start = time.perf_counter()
    idx = exercise_indices(n_steps(market, cfg), cfg.n_exercise)

    def row(i: int):
        path = simulate_pdifmp_path(market, params, cfg, i)
        return path.prices[idx], path.prices.max() > 3.0 * path.prices[0], path.times[idx]

    extracted = map_paths(cfg.n_paths, row, n_workers)
    matrix = PathMatrix(
        n_paths=cfg.n_paths,
        exercise_times=extracted[0][2],
        values=np.vstack([e[0] for e in extracted]),
        flags=np.asarray([e[1] for e in extracted]),
    )
    result = ls_price(
        matrix, spec, market.r, market.maturity, method=Method.LS_PDIFMP, seed=cfg.seed
    )
    return replace(result, runtime=time.perf_counter() - start)
