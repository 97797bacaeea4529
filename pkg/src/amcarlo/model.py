"""Core market/model types and closed-form model functions.

Everything here is a pure function of its arguments (thread-safe by
construction). The simulation engines and pricers build on these.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class ConfigError(ValueError):
    """Inconsistent simulation configuration (grids, presets, overrides)."""


class OptionKind(enum.Enum):
    PUT = "put"
    CALL = "call"


class DeltaMode(enum.Enum):
    """How the moneyness reference delta is resolved for a pricing run."""

    STRIKE = "strike"
    INITIAL = "initial"


@dataclass(frozen=True)
class MarketParams:
    """Contract and market inputs.

    s0 and strike are in currency units, r is a continuously compounded
    annual rate, sigma an annualised diffusion coefficient, maturity in years.
    """

    s0: float
    strike: float
    r: float
    sigma: float
    maturity: float

    def __post_init__(self):
        if self.s0 <= 0:
            raise ValueError(f"s0 must be positive, got {self.s0}")
        if self.strike <= 0:
            raise ValueError(f"strike must be positive, got {self.strike}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if self.maturity <= 0:
            raise ValueError(f"maturity must be positive, got {self.maturity}")
        if self.r < 0:
            raise ValueError(f"r must be non-negative, got {self.r}")


@dataclass(frozen=True)
class PDifMPParams:
    """Jump-mechanism inputs: state-dependent rate and drift-redraw kernel.

    The rate is lambda0 + eta * max(0, |S - delta| - beta); the post-jump
    drift is Laplace(mu0 + alpha * (S - delta), b). delta_mode picks the
    reference point: the strike, the initial price, or a custom level
    (pass a plain float).
    """

    mu0: float
    lambda0: float
    eta: float
    beta: float
    alpha: float
    b: float
    delta_mode: DeltaMode | float = DeltaMode.INITIAL

    def __post_init__(self):
        if self.lambda0 < 0:
            raise ValueError(f"lambda0 must be non-negative, got {self.lambda0}")
        if self.eta < 0:
            raise ValueError(f"eta must be non-negative, got {self.eta}")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        if self.b <= 0:
            raise ValueError(f"b must be positive, got {self.b}")


@dataclass(frozen=True)
class PDifMPState:
    """Current (price, drift-regime) pair of the hybrid process."""

    s: float
    mu: float

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError(f"price must stay positive, got {self.s}")


@dataclass(frozen=True)
class OptionSpec:
    kind: OptionKind
    strike: float

    def __post_init__(self):
        if self.strike <= 0:
            raise ValueError(f"strike must be positive, got {self.strike}")


@dataclass(frozen=True)
class SimConfig:
    """Simulation grid and batch size.

    h is the fine step (years), n_paths the Monte Carlo batch size,
    n_exercise the number of equally spaced exercise dates, seed the
    64-bit master seed for the whole run.
    """

    h: float
    n_paths: int
    n_exercise: int
    seed: int

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError(f"h must be positive, got {self.h}")
        if self.n_paths < 1:
            raise ValueError(f"n_paths must be >= 1, got {self.n_paths}")
        if self.n_exercise < 2:
            raise ValueError(f"n_exercise must be >= 2, got {self.n_exercise}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


def resolve_delta(params: PDifMPParams, market: MarketParams) -> float:
    """Resolve the delta_mode of `params` to a concrete reference price."""
    mode = params.delta_mode
    if mode is DeltaMode.STRIKE:
        return market.strike
    if mode is DeltaMode.INITIAL:
        return market.s0
    return float(mode)


def rate_from_price(s, params: PDifMPParams, delta: float):
    """Jump intensity lambda0 + eta * max(0, |s - delta| - beta).

    Vectorised over `s`; always >= lambda0.
    """
    return params.lambda0 + params.eta * np.maximum(0.0, np.abs(s - delta) - params.beta)


def jump_rate(state: PDifMPState, params: PDifMPParams, delta: float) -> float:
    """State-dependent jump intensity at the current price (per year)."""
    return float(rate_from_price(state.s, params, delta))


def laplace_location(s: float, params: PDifMPParams, delta: float) -> float:
    """Location of the drift-redraw kernel: mu0 + alpha * (s - delta)."""
    return params.mu0 + params.alpha * (s - delta)


def laplace_quantile(a: float, b: float, u: float) -> float:
    """Inverse CDF of Laplace(a, b) at u in (0, 1)."""
    if not 0.0 < u < 1.0:
        raise ValueError(f"u must lie strictly inside (0, 1), got {u}")
    d = u - 0.5
    if d == 0.0:
        return a
    return a - b * math.copysign(1.0, d) * math.log1p(-2.0 * abs(d))


def sample_drift(s: float, params: PDifMPParams, delta: float, u: float) -> float:
    """Draw the post-jump drift: Laplace quantile at u, located at a(s).

    One uniform per jump; u = 0.5 returns the location itself.
    """
    return laplace_quantile(laplace_location(s, params, delta), params.b, u)


def discount(t: float, r: float) -> float:
    """Present-value factor e^{-r t} for t >= 0."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    return math.exp(-r * t)


def intrinsic(spec: OptionSpec, s):
    """Immediate exercise payoff; vectorised over `s`.

    Put: max(K - s, 0). Call: max(s - K, 0).
    """
    if spec.kind is OptionKind.PUT:
        return np.maximum(spec.strike - s, 0.0)
    return np.maximum(s - spec.strike, 0.0)
