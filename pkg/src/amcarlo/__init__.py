"""Monte Carlo pricing of American options on jump-modulated drift dynamics.

Three pricers share one simulation core: classic Longstaff-Schwartz on GBM
paths, Longstaff-Schwartz on paths whose drift is redrawn from a Laplace
kernel at state-dependent Poisson jump times, and a direct method that
treats those jump times as the exercise opportunities.
"""

from .direct import PathPayoff, path_best_discounted_payoff, price_pdifmp
from .lsm import (
    RegressionFit,
    backward_cash_flows,
    ls_price,
    price_ls_classic,
    price_ls_pdifmp,
    regress_quadratic,
)
from .model import (
    ConfigError,
    DeltaMode,
    MarketParams,
    OptionKind,
    OptionSpec,
    PDifMPParams,
    PDifMPState,
    SimConfig,
    discount,
    intrinsic,
    jump_rate,
    laplace_location,
    laplace_quantile,
    rate_from_price,
    resolve_delta,
    sample_drift,
)
from .oracles import OraclePrice, bs_european, crr_american, fixture_dp
from .paths import (
    GbmPath,
    PathMatrix,
    PDifMPPath,
    map_paths,
    sample_interjump,
    sample_on_grid,
    simulate_gbm_path,
    simulate_pdifmp_path,
)
from .results import Method, PricingResult

__all__ = [name for name in dir() if not name.startswith("_")]
