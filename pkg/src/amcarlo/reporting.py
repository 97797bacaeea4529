"""Result rows and CSV emission.

CSV files are UTF-8, comma-separated, header row, LF line endings. Prices
and standard errors are serialised with 17 significant digits and every
other float with Python's shortest round-tripping repr, so parsing a file
reproduces the in-memory rows exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable

import numpy as np

from .model import ConfigError, MarketParams, PDifMPParams, SimConfig
from .paths import PDifMPPath, map_paths, simulate_pdifmp_path


@dataclass(frozen=True)
class ResultRow:
    """One pricing run: full parameter combination plus its result."""

    method: str
    option: str
    s0: float
    strike: float
    r: float
    sigma: float
    maturity: float
    lambda0: float
    eta: float
    alpha: float
    b: float
    beta: float
    delta: float
    n_paths: int
    n_exercise: int
    step: float
    seed: int
    price: float
    std_error: float
    runtime_s: float
    flagged_paths: int


@dataclass(frozen=True)
class BenchRow:
    """One timed trial of one method on one parameter cell."""

    method: str
    option: str
    s0: float
    lambda0: float
    eta: float
    alpha: float
    n_paths: int
    seed: int
    trial: int
    seconds: float


_FULL_PRECISION = {"price", "std_error"}


def _format(name: str, value) -> str:
    if isinstance(value, float):
        if name in _FULL_PRECISION:
            return format(value, ".17g")
        return repr(value)
    return str(value)


def write_rows(path: str | Path, rows: Iterable[ResultRow | BenchRow], row_type=None):
    """Write dataclass rows as CSV; the header comes from the field names."""
    rows = list(rows)
    if row_type is None:
        if not rows:
            raise ValueError("cannot infer a header from an empty row list")
        row_type = type(rows[0])
    names = [f.name for f in fields(row_type)]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        for row in rows:
            writer.writerow([_format(n, getattr(row, n)) for n in names])


def read_result_rows(path: str | Path) -> list[ResultRow]:
    """Parse a CSV written by write_rows back into ResultRow records."""
    converters = {f.name: (int if f.type == "int" else float) for f in fields(ResultRow)}
    converters["method"] = str
    converters["option"] = str
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for record in csv.DictReader(fh):
            out.append(ResultRow(**{k: converters[k](v) for k, v in record.items()}))
    return out


def path_records(path: PDifMPPath, record_every: int = 1):
    """(time, price, drift, jump) columns of one path, decimated for output.

    The grid is thinned to every record_every-th point, but jump rows and
    the maturity row are always kept, so jump markers and counts survive
    any decimation. The drift column holds the regime drift in effect at
    each time (the redrawn value at a jump time itself).
    """
    if record_every < 1:
        raise ConfigError(f"record_every must be >= 1, got {record_every}")
    n = len(path.prices) - 1
    base = np.arange(0, n + 1, record_every)
    idx = np.union1d(np.append(base, n), path.jump_indices)
    step_drift = np.repeat(
        path.drifts, np.diff(np.concatenate(([0], path.jump_indices)))
    )
    drift_at = np.append(step_drift, path.drifts[-1])
    jump_flag = np.zeros(n + 1, dtype=int)
    jump_flag[path.jump_indices[:-1]] = 1
    return path.times[idx], path.prices[idx], drift_at[idx], jump_flag[idx]


def write_paths_csv(
    out_path: str | Path,
    market: MarketParams,
    params: PDifMPParams,
    n_paths: int,
    h: float,
    seed: int,
    record_every: int = 1,
    n_workers: int = 1,
):
    """Emit fine-grid (t, S) pairs with jump markers for external plotting.

    Columns: path, time, price, drift, jump. n_paths = 0 writes just the
    header. All randomness is controlled by the seed.
    """
    cfg = SimConfig(h=h, n_paths=max(n_paths, 1), n_exercise=2, seed=seed)

    def one(i: int):
        return path_records(simulate_pdifmp_path(market, params, cfg, i), record_every)

    records = map_paths(n_paths, one, n_workers)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["path", "time", "price", "drift", "jump"])
        for i, (times, prices, drifts, jumps) in enumerate(records):
            for t, s, mu, j in zip(times, prices, drifts, jumps):
                writer.writerow([i, repr(float(t)), repr(float(s)), repr(float(mu)), int(j)])
