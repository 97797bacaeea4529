"""Path simulation engines: plain GBM and the jump-modulated drift process.

Between jumps the asset follows geometric Brownian motion with the current
regime drift, advanced with the exact one-step lognormal update (no Euler
bias in the diffusion part). Jump times come from a piecewise-constant-rate
time change on the fine grid: the state-dependent intensity is accumulated
step by step against an exponential clock, which snaps jumps to the grid
with O(h) error. At each jump a fresh drift is drawn from the Laplace kernel.

Every path is a pure function of (params, seed, path_index); batches are
embarrassingly parallel and reduced in index order, so results never depend
on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .model import (
    ConfigError,
    MarketParams,
    PDifMPParams,
    PDifMPState,
    SimConfig,
    rate_from_price,
    resolve_delta,
    sample_drift,
)
from .rng import CLOCK, KERNEL, WIENER, positive_uniform, substream


@dataclass(frozen=True)
class GbmPath:
    """One GBM trajectory on the fine grid, times from 0 to maturity."""

    times: np.ndarray
    prices: np.ndarray


@dataclass(frozen=True)
class PDifMPPath:
    """One jump-modulated trajectory.

    jump_times holds the drift-change times in (0, T) plus maturity T as the
    final entry; jump_indices are the matching fine-grid indices. drifts has
    one entry per regime (the initial drift plus one per jump), and n_jumps
    counts the actual drift changes (maturity excluded). The price is
    continuous across jumps: only the drift is redrawn.
    """

    times: np.ndarray
    prices: np.ndarray
    jump_times: np.ndarray
    jump_indices: np.ndarray
    drifts: np.ndarray
    n_jumps: int


@dataclass(frozen=True)
class PathMatrix:
    """M paths sampled at the n_exercise equally spaced exercise dates.

    flags marks paths whose fine-grid running maximum exceeded three times
    their initial value (a diagnostic for runaway drift feedback).
    """

    n_paths: int
    exercise_times: np.ndarray
    values: np.ndarray
    flags: np.ndarray


def n_steps(market: MarketParams, cfg: SimConfig) -> int:
    """Number of fine steps; maturity must be an integer multiple of h."""
    ratio = market.maturity / cfg.h
    n = round(ratio)
    if n < 1 or abs(ratio - n) > 1e-9 * max(1.0, n):
        raise ConfigError(
            f"maturity/h must be integral, got maturity={market.maturity}, h={cfg.h}"
        )
    return n


def exercise_indices(n: int, n_exercise: int) -> np.ndarray:
    """Fine-grid indices of the exercise dates k*T/n_exercise, k=1..n_exercise."""
    if n % n_exercise != 0:
        raise ConfigError(
            f"exercise dates must lie on the fine grid: {n} steps, {n_exercise} dates"
        )
    stride = n // n_exercise
    return np.arange(1, n_exercise + 1) * stride


def simulate_gbm_path(
    market: MarketParams, drift: float, cfg: SimConfig, path_index: int
) -> GbmPath:
    """Simulate one GBM path with the exact per-step lognormal update.

    Each log-increment is Gaussian with mean (drift - sigma^2/2) h and
    variance sigma^2 h; the draw comes from this path's Wiener substream,
    so the result is deterministic given (seed, path_index).
    """
    n = n_steps(market, cfg)
    rng = substream(cfg.seed, path_index, WIENER)
    xi = rng.normal(0.0, math.sqrt(cfg.h), n)
    log_incr = (drift - 0.5 * market.sigma**2) * cfg.h + market.sigma * xi
    prices = np.empty(n + 1)
    prices[0] = market.s0
    prices[1:] = market.s0 * np.exp(np.cumsum(log_incr))
    return GbmPath(times=np.linspace(0.0, market.maturity, n + 1), prices=prices)


def sample_interjump(
    state: PDifMPState,
    params: PDifMPParams,
    delta: float,
    regime_drift: float,
    market: MarketParams,
    h: float,
    xi: np.ndarray,
    u: float,
):
    """Advance one drift regime on the fine grid until the jump clock fires.

    The flow runs forward with the fixed regime drift while the intensity is
    accumulated as a left-point Riemann sum; the jump is declared at the
    first grid time where the accumulated integral reaches -ln(u). This
    realises the generalised inverse of the inter-jump survival function
    with a piecewise-constant rate on the grid.

    Parameters
    ----------
    xi:
        Wiener increments (N(0, h) each) for the remaining grid steps.
    u:
        Uniform draw feeding the exponential clock.

    Returns
    -------
    (tau, prices):
        tau is the waiting time (a multiple of h), or None when no jump
        occurs before the provided horizon. prices are the grid prices
        after each step taken, up to and including the jump step.
    """
    sigma = market.sigma
    log_incr = (regime_drift - 0.5 * sigma * sigma) * h + sigma * xi
    prices = state.s * np.exp(np.cumsum(log_incr))
    left = np.empty_like(prices)
    left[0] = state.s
    left[1:] = prices[:-1]
    acc = np.cumsum(rate_from_price(left, params, delta) * h)
    threshold = math.inf if u == 0.0 else -math.log(u)
    k = int(np.searchsorted(acc, threshold, side="left"))
    if k == len(acc):
        return None, prices
    return (k + 1) * h, prices[: k + 1]


def simulate_pdifmp_path(
    market: MarketParams, params: PDifMPParams, cfg: SimConfig, path_index: int
) -> PDifMPPath:
    """Simulate one jump-modulated path by concatenating drift regimes.

    Within each regime the flow is GBM with that regime's drift; at each
    jump time the price carries over continuously and a new drift is drawn
    from the Laplace kernel located at the current price. Maturity is
    appended as the final recorded time. A clock crossing landing exactly
    on the last grid point is treated as beyond the horizon (there is
    nothing left to modulate). Deterministic given (seed, path_index).
    """
    n = n_steps(market, cfg)
    h = cfg.h
    delta = resolve_delta(params, market)
    wiener = substream(cfg.seed, path_index, WIENER)
    clock = substream(cfg.seed, path_index, CLOCK)
    kernel = substream(cfg.seed, path_index, KERNEL)
    xi = wiener.normal(0.0, math.sqrt(h), n)

    prices = np.empty(n + 1)
    prices[0] = market.s0
    drifts = [params.mu0]
    jump_idx: list[int] = []
    k0 = 0
    s = market.s0
    mu = params.mu0
    while k0 < n:
        tau, seg = sample_interjump(
            PDifMPState(s, mu), params, delta, mu, market, h, xi[k0:], clock.random()
        )
        k1 = k0 + len(seg)
        prices[k0 + 1 : k1 + 1] = seg
        s = float(seg[-1])
        if tau is None or k1 >= n:
            break
        jump_idx.append(k1)
        mu = sample_drift(s, params, delta, positive_uniform(kernel))
        drifts.append(mu)
        k0 = k1

    times = np.linspace(0.0, market.maturity, n + 1)
    indices = np.array(jump_idx + [n], dtype=np.int64)
    return PDifMPPath(
        times=times,
        prices=prices,
        jump_times=times[indices],
        jump_indices=indices,
        drifts=np.asarray(drifts),
        n_jumps=len(jump_idx),
    )


def sample_on_grid(paths: Iterable[GbmPath | PDifMPPath], n_exercise: int) -> PathMatrix:
    """Extract the exercise-date columns from fine-grid paths.

    Every path's grid must contain all n_exercise dates. Paths whose running
    maximum exceeded 3x their initial price are flagged.
    """
    rows: list[np.ndarray] = []
    flags: list[bool] = []
    exercise_times = None
    for path in paths:
        n = len(path.prices) - 1
        idx = exercise_indices(n, n_exercise)
        if exercise_times is None:
            exercise_times = path.times[idx].copy()
        rows.append(path.prices[idx])
        flags.append(bool(path.prices.max() > 3.0 * path.prices[0]))
    if exercise_times is None:
        raise ValueError("empty path collection")
    return PathMatrix(
        n_paths=len(rows),
        exercise_times=exercise_times,
        values=np.vstack(rows),
        flags=np.asarray(flags),
    )


def map_paths(n_paths: int, fn: Callable[[int], object], n_workers: int = 1) -> list:
    """Apply fn to every path index, returning results in index order.

    fn must be a pure function of the index (the RNG substream discipline
    guarantees this for the simulators), which makes the reduction
    independent of the worker count.
    """
    if n_workers <= 1:
        return [fn(i) for i in range(n_paths)]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, range(n_paths)))
