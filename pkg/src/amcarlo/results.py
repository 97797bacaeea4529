"""Pricing-run result record shared by all three pricers."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Method(enum.Enum):
    LS_CLASSIC = "ls"
    LS_PDIFMP = "ls-pdifmp"
    PDIFMP_DIRECT = "pdifmp"


@dataclass(frozen=True)
class PricingResult:
    price: float
    std_error: float
    n_paths: int
    runtime: float
    flagged_paths: int
    seed: int
    method: Method

    def __post_init__(self):
        if self.price < 0:
            raise ValueError(f"price must be non-negative, got {self.price}")
        if self.std_error < 0:
            raise ValueError(f"std_error must be non-negative, got {self.std_error}")
