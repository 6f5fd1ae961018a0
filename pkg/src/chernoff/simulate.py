"""Monte Carlo oracle: direct simulation of argmax(W(t) - gamma t^2).

Two-sided Brownian paths on a symmetric grid t = i h, |i| <= N, built from
per-path counter-based generators (Philox keyed by (seed, path_index)), so
path p is bit-identical no matter how paths are batched or distributed.
The argmax is taken over the grid with ties resolved toward the smallest
|t| (then the smaller t); the sampling error is what `estimate` reports,
while the O(h^{1/2})-to-O(h) discretization bias is measured, not assumed,
by `discretization_probe`, which re-extracts the argmax of the same paths
on the twice-coarser subgrid.
"""
from __future__ import annotations

import dataclasses
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import UnknownStatistic
from .moments import CANONICAL_GAMMA

_CHUNK = 256
_BOUNDARY_MARGIN = 0.5
_BOUNDARY_FRACTION = 1e-4


@dataclass(frozen=True)
class SimConfig:
    gamma: float = CANONICAL_GAMMA
    horizon: float = 4.0
    step: float = 1e-3
    num_paths: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not (isinstance(self.gamma, (int, float)) and math.isfinite(self.gamma)
                and self.gamma > 0):
            raise ValueError("gamma must be a positive real")
        if not (isinstance(self.horizon, (int, float)) and math.isfinite(self.horizon)
                and self.horizon > 0):
            raise ValueError("horizon must be a positive real")
        if not (isinstance(self.step, (int, float)) and math.isfinite(self.step)
                and 0 < self.step <= self.horizon):
            raise ValueError("step must lie in (0, horizon]")
        if isinstance(self.num_paths, bool) or not isinstance(self.num_paths, int) \
                or self.num_paths < 1:
            raise ValueError("num_paths must be a positive integer")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) \
                or not 0 <= self.seed < 2**63:
            raise ValueError("seed must be an integer in [0, 2^63)")
        if self.steps_per_side < 2:
            raise ValueError("horizon/step must give at least 2 grid steps per side")

    @property
    def steps_per_side(self) -> int:
        return int(round(self.horizon / self.step))


@dataclass(frozen=True)
class SampleSet:
    """Per-path (V, M, W at the argmax) triples plus the generating config."""

    v: np.ndarray
    m: np.ndarray
    w_at_argmax: np.ndarray
    config: SimConfig

    @property
    def num_paths(self) -> int:
        return self.v.shape[0]


@dataclass(frozen=True)
class EstimateResult:
    value: float
    stderr: float
    num_paths: int


def _path_normals(seed: int, first: int, count: int, n_incr: int) -> np.ndarray:
    """Increment matrix for paths [first, first+count); row i is the full
    increment stream of path first+i, drawn from its own keyed generator."""
    out = np.empty((count, n_incr))
    for i in range(count):
        gen = np.random.Generator(np.random.Philox(key=[seed, first + i]))
        out[i] = gen.standard_normal(n_incr)
    return out


def _tie_break_order(t: np.ndarray) -> np.ndarray:
    # column visit order: smallest |t| first, negative before positive
    return np.lexsort((t, np.abs(t)))


def _pick_argmax(y: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Row-wise argmax with ties resolved by the given column order."""
    mx = y.max(axis=1)
    hits = y[:, order] == mx[:, None]
    return order[np.argmax(hits, axis=1)]


def simulate(cfg: SimConfig) -> SampleSet:
    """Simulate argmax samples; emits a warning if a non-negligible fraction
    of paths attains the maximum within 0.5 of the horizon boundary."""
    n = cfg.steps_per_side
    h = cfg.step
    sq = math.sqrt(h)
    t = h * np.arange(-n, n + 1)
    drift = cfg.gamma * t * t
    order = _tie_break_order(t)

    v = np.empty(cfg.num_paths)
    m = np.empty(cfg.num_paths)
    w_at = np.empty(cfg.num_paths)

    for lo in range(0, cfg.num_paths, _CHUNK):
        count = min(_CHUNK, cfg.num_paths - lo)
        incr = _path_normals(cfg.seed, lo, count, 2 * n)
        w = np.empty((count, 2 * n + 1))
        w[:, n] = 0.0
        np.cumsum(incr[:, :n], axis=1, out=w[:, n + 1:])
        w[:, n + 1:] *= sq
        np.cumsum(incr[:, n:], axis=1, out=w[:, :n][:, ::-1])
        w[:, :n] *= sq
        y = w - drift
        pick = _pick_argmax(y, order)
        rows = np.arange(count)
        v[lo:lo + count] = t[pick]
        m[lo:lo + count] = y[rows, pick]
        w_at[lo:lo + count] = w[rows, pick]

    frac = float(np.mean(np.abs(v) >= cfg.horizon - _BOUNDARY_MARGIN))
    if frac >= _BOUNDARY_FRACTION:
        warnings.warn(
            f"{frac:.2e} of paths peaked within {_BOUNDARY_MARGIN} of the "
            f"horizon; increase horizon for unbiased samples", RuntimeWarning)
    return SampleSet(v=v, m=m, w_at_argmax=w_at, config=cfg)


def estimate(s: SampleSet, statistic: str, order: Optional[int] = None,
             t: Optional[float] = None) -> EstimateResult:
    """Sample mean and standard error of one statistic.

    Statistics: "v_moment" (needs `order`), "m_mean", "w_at_argmax_mean",
    "cos_v" (needs `t`).
    """
    if s.num_paths < 2:
        raise ValueError("need at least 2 paths for a standard error")
    if statistic == "v_moment":
        if order is None or isinstance(order, bool) or not isinstance(order, int) \
                or order < 0:
            raise ValueError("v_moment requires a nonnegative integer order")
        x = s.v ** order
    elif statistic == "m_mean":
        x = s.m
    elif statistic == "w_at_argmax_mean":
        x = s.w_at_argmax
    elif statistic == "cos_v":
        if t is None or isinstance(t, bool) or not isinstance(t, (int, float)) \
                or not math.isfinite(t):
            raise ValueError("cos_v requires a finite real t")
        x = np.cos(t * s.v)
    else:
        raise UnknownStatistic(f"unknown statistic {statistic!r}")
    n = x.shape[0]
    return EstimateResult(value=float(x.mean()),
                          stderr=float(x.std(ddof=1) / math.sqrt(n)),
                          num_paths=n)


def discretization_probe(cfg: SimConfig) -> tuple[SampleSet, SampleSet]:
    """Re-extract the argmax of the same Brownian paths on the 2h subgrid.

    Returns (fine, coarse).  The fine set is bit-identical to simulate(cfg);
    the coarse one shares every path, so the difference of a statistic
    between the two isolates the discretization effect with almost all the
    Monte Carlo noise cancelling.  Requires an even number of steps per
    side so the coarse grid contains t = 0 and both endpoints.
    """
    n = cfg.steps_per_side
    if n % 2:
        raise ValueError("discretization_probe needs an even steps_per_side")
    h = cfg.step
    sq = math.sqrt(h)
    t = h * np.arange(-n, n + 1)
    drift = cfg.gamma * t * t
    order_f = _tie_break_order(t)
    t_c = t[::2]
    order_c = _tie_break_order(t_c)

    out = {}
    for tag in ("f", "c"):
        out[tag] = (np.empty(cfg.num_paths), np.empty(cfg.num_paths),
                    np.empty(cfg.num_paths))

    for lo in range(0, cfg.num_paths, _CHUNK):
        count = min(_CHUNK, cfg.num_paths - lo)
        incr = _path_normals(cfg.seed, lo, count, 2 * n)
        w = np.empty((count, 2 * n + 1))
        w[:, n] = 0.0
        np.cumsum(incr[:, :n], axis=1, out=w[:, n + 1:])
        w[:, n + 1:] *= sq
        np.cumsum(incr[:, n:], axis=1, out=w[:, :n][:, ::-1])
        w[:, :n] *= sq
        y = w - drift
        rows = np.arange(count)

        pick = _pick_argmax(y, order_f)
        out["f"][0][lo:lo + count] = t[pick]
        out["f"][1][lo:lo + count] = y[rows, pick]
        out["f"][2][lo:lo + count] = w[rows, pick]

        pick_c = _pick_argmax(y[:, ::2], order_c)
        out["c"][0][lo:lo + count] = t_c[pick_c]
        out["c"][1][lo:lo + count] = y[:, ::2][rows, pick_c]
        out["c"][2][lo:lo + count] = w[:, ::2][rows, pick_c]

    fine = SampleSet(v=out["f"][0], m=out["f"][1], w_at_argmax=out["f"][2],
                     config=cfg)
    coarse_cfg = dataclasses.replace(cfg, step=2.0 * h)
    coarse = SampleSet(v=out["c"][0], m=out["c"][1], w_at_argmax=out["c"][2],
                       config=coarse_cfg)
    return fine, coarse


def save_sample_set(s: SampleSet, csv_path: Union[str, Path]) -> None:
    """CSV with header v,m,w_at_argmax plus a .json sidecar with the config."""
    csv_path = Path(csv_path)
    with csv_path.open("w") as fh:
        fh.write("v,m,w_at_argmax\n")
        for i in range(s.num_paths):
            fh.write(f"{s.v[i]:.17g},{s.m[i]:.17g},{s.w_at_argmax[i]:.17g}\n")
    sidecar = csv_path.with_suffix(csv_path.suffix + ".json")
    with sidecar.open("w") as fh:
        json.dump(dataclasses.asdict(s.config), fh, indent=2)
        fh.write("\n")


def load_sample_set(csv_path: Union[str, Path]) -> SampleSet:
    csv_path = Path(csv_path)
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1, ndmin=2)
    sidecar = csv_path.with_suffix(csv_path.suffix + ".json")
    with sidecar.open() as fh:
        cfg = SimConfig(**json.load(fh))
    return SampleSet(v=data[:, 0], m=data[:, 1], w_at_argmax=data[:, 2],
                     config=cfg)
