"""Independent reference pricers used for validation.

Closed-form European Black-Scholes, a CRR binomial American pricer, and a
tiny-fixture dynamic-programming evaluator that must agree with ls_price to
1e-12 on small matrices. The DP evaluator derives the same exercise policy
(same regression fits, same strict-inequality rule, same loop bounds) but
keeps per-path stopping-time state in plain Python instead of zeroing a
cash-flow matrix, so it catches indexing, zeroing and discounting mistakes
in the vectorised pricer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lsm import regress_quadratic
from .model import MarketParams, OptionKind, OptionSpec, intrinsic
from .paths import PathMatrix


@dataclass(frozen=True)
class OraclePrice:
    value: float
    method: str

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"oracle price must be non-negative, got {self.value}")


def _norm_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def bs_european(market: MarketParams, spec: OptionSpec) -> OraclePrice:
    """Closed-form Black-Scholes European price.

    sigma = 0 is handled as the deterministic limit.
    """
    s0, k, r, sigma, t = market.s0, spec.strike, market.r, market.sigma, market.maturity
    disc_k = k * math.exp(-r * t)
    if sigma == 0.0:
        call = max(s0 - disc_k, 0.0)
        put = max(disc_k - s0, 0.0)
    else:
        srt = sigma * math.sqrt(t)
        d1 = (math.log(s0 / k) + (r + 0.5 * sigma * sigma) * t) / srt
        d2 = d1 - srt
        call = s0 * _norm_cdf(d1) - disc_k * _norm_cdf(d2)
        put = disc_k * _norm_cdf(-d2) - s0 * _norm_cdf(-d1)
    value = call if spec.kind is OptionKind.CALL else put
    return OraclePrice(max(value, 0.0), "bs-closed-form")


def crr_american(market: MarketParams, spec: OptionSpec, steps: int) -> OraclePrice:
    """American price on a Cox-Ross-Rubinstein tree with early exercise.

    u = e^{sigma sqrt(dt)}, d = 1/u, risk-neutral probability
    (e^{r dt} - d) / (u - d); converges O(1/steps).
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    s0, r, sigma, t = market.s0, market.r, market.sigma, market.maturity
    dt = t / steps
    grid = np.arange(steps + 1) * dt
    if sigma == 0.0:
        # deterministic path: best exercise over the grid times
        spots = s0 * np.exp(r * grid)
        value = float(np.max(np.exp(-r * grid) * intrinsic(spec, spots)))
        return OraclePrice(value, f"crr-binomial-{steps}")
    srdt = sigma * math.sqrt(dt)
    u = math.exp(srdt)
    d = 1.0 / u
    p = (math.exp(r * dt) - d) / (u - d)
    disc = math.exp(-r * dt)

    def level_spots(i: int) -> np.ndarray:
        return s0 * np.exp(srdt * (2.0 * np.arange(i + 1) - i))

    values = intrinsic(spec, level_spots(steps))
    for i in range(steps - 1, -1, -1):
        values = disc * (p * values[1 : i + 2] + (1.0 - p) * values[: i + 1])
        values = np.maximum(values, intrinsic(spec, level_spots(i)))
    return OraclePrice(float(values[0]), f"crr-binomial-{steps}")


def fixture_dp(matrix: PathMatrix, spec: OptionSpec, r: float) -> OraclePrice:
    """Stopping-time evaluation of the LS policy on a tiny path matrix.

    Restricted to at most 16 paths and 4 exercise dates; everything runs in
    plain Python floats.
    """
    m, me = matrix.values.shape
    if m > 16 or me > 4:
        raise ValueError(f"fixture oracle is for tiny matrices, got {m}x{me}")
    maturity = float(matrix.exercise_times[-1])
    dt = maturity / me
    rows = matrix.values.tolist()

    def inner_value(s: float) -> float:
        return float(intrinsic(spec, s))

    # per-path exercise state: date (1-based) and payoff received there
    stop = [me] * m
    pay = [inner_value(row[-1]) for row in rows]

    for date in range(me - 1, 1, -1):
        col = date - 1
        itm = [i for i in range(m) if inner_value(rows[i][col]) > 0.0]
        if not itm:
            continue
        xs = [rows[i][col] for i in itm]
        ys = [math.exp(-r * (stop[i] - date) * dt) * pay[i] for i in itm]
        fit = regress_quadratic(xs, ys)
        for i, x in zip(itm, xs):
            inner = inner_value(x)
            if inner > fit.continuation(x):
                stop[i] = date
                pay[i] = inner
    total = sum(math.exp(-r * stop[i] * dt) * pay[i] for i in range(m))
    return OraclePrice(total / m, "fixture-dp")
