"""Monte Carlo cost of the set-based recycling strategy.

States are kept in size-bucketed sets.  Each step either fires a fusion in a
set that holds enough states (three for the three-state scheme, two for the
two-state schemes) or, if none is ready, buys a fresh ``W_3`` for set 0.  The
outcome of a fusion is drawn from the exact analytic distribution and every
surviving W block of size >= 3 is filed back by size; ``W_2`` goes to the
optional Bell bin or is dropped, everything else is dropped.  A run ends as
soon as a state lands in the target set (or beyond), and its cost is the
number of ``W_3`` states bought.

Run ``r`` draws from ``numpy.random.default_rng([master_seed, r])``, i.e. a
PCG64 stream whose seed is the ``SeedSequence`` hash of the pair.  Runs are
independent, so they can be spread over processes without changing the
result.
"""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .analytic import fused_size, outcomes
from .core import SchemeId, W

Interval = tuple[int, Optional[int]]  # [lo, hi), hi=None is unbounded

THREE_STATE_SETS: tuple[Interval, ...] = ((3, 4), (4, 7), (7, 16), (16, 43), (43, 124), (124, None))

SEED_MASK = (1 << 64) - 1


def default_sets(scheme: SchemeId | str, count: int = 12) -> tuple[Interval, ...]:
    """Set boundaries used for each scheme.

    Two-state schemes bucket size N into S_l with ``2**(l-1) + 2 < N <= 2**l + 2``
    (so S_0 = {3}); ``count`` sets are produced, the last one open-ended.
    """
    scheme = SchemeId.parse(scheme)
    if scheme is SchemeId.THREE_STATE:
        return THREE_STATE_SETS
    if count < 2:
        raise ValueError("need at least two sets")
    sets = [(3, 4)]
    for level in range(1, count):
        lo = 2 ** (level - 1) + 3
        hi = 2**level + 3
        sets.append((lo, hi if level < count - 1 else None))
    return tuple(sets)


def sets_from_bounds(lower_bounds: Sequence[int]) -> tuple[Interval, ...]:
    """``[3, 4, 7]`` -> ``((3, 4), (4, 7), (7, None))``."""
    bounds = [int(b) for b in lower_bounds]
    return tuple((lo, hi) for lo, hi in zip(bounds, bounds[1:] + [None]))


def validate_sets(sets: Sequence[Interval]) -> None:
    if not sets:
        raise ValueError("no sets given")
    if sets[0][0] != 3:
        raise ValueError("set 0 must start at size 3")
    for i, (lo, hi) in enumerate(sets):
        last = i == len(sets) - 1
        if last and hi is not None:
            raise ValueError("last set must be open-ended")
        if not last:
            if hi is None or hi <= lo:
                raise ValueError(f"set {i} = [{lo}, {hi}) is empty or unbounded")
            if sets[i + 1][0] != hi:
                raise ValueError(f"sets {i} and {i + 1} are not contiguous")


def set_index(sets: Sequence[Interval], size: int) -> int:
    """Index of the set holding ``size``, or -1 for sizes below set 0."""
    lows = [lo for lo, _ in sets]
    return bisect.bisect_right(lows, size) - 1


@dataclass(frozen=True)
class StrategyConfig:
    scheme: SchemeId
    set_boundaries: tuple[Interval, ...]
    target_set: int
    runs: int = 1000
    master_seed: int = 0
    bell_bin_enabled: bool = False
    policy: str = "lowest"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", SchemeId.parse(self.scheme))
        object.__setattr__(self, "set_boundaries", tuple((int(lo), None if hi is None else int(hi)) for lo, hi in self.set_boundaries))
        validate_sets(self.set_boundaries)
        if not 1 <= self.target_set < len(self.set_boundaries):
            raise ValueError(
                f"target set {self.target_set} unreachable: valid targets are 1..{len(self.set_boundaries) - 1}"
            )
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.policy not in ("lowest", "highest"):
            raise ValueError(f"unknown scheduling policy {self.policy!r}")

    @classmethod
    def default(cls, scheme: SchemeId | str, target_set: int, **kwargs) -> "StrategyConfig":
        scheme = SchemeId.parse(scheme)
        return cls(scheme, default_sets(scheme), target_set, **kwargs)


@dataclass(frozen=True)
class CostRecord:
    scheme: SchemeId
    target_size_or_set: int
    runs: int
    seed: int
    mean_cost: float
    std_dev: float
    mean_size: float

    @property
    def std_error(self) -> float:
        return self.std_dev / math.sqrt(self.runs)


@lru_cache(maxsize=None)
def _draw_table(scheme: SchemeId, sizes: tuple[int, ...]) -> tuple[tuple[float, ...], tuple[tuple[int, ...], ...]]:
    records = outcomes(scheme, *sizes)
    cumulative, products = [], []
    acc = 0
    for rec in records:
        acc += rec.probability
        cumulative.append(float(acc))
        products.append(tuple(b.size for b in rec.result_blocks if isinstance(b, W)))
    return tuple(cumulative), tuple(products)


def simulate_run(config: StrategyConfig, run_index: int) -> tuple[int, int]:
    """One run of the strategy; returns (cost, size of the state that hit the target set)."""
    rng = np.random.default_rng([config.master_seed & SEED_MASK, run_index])
    sets = config.set_boundaries
    lows = [lo for lo, _ in sets]
    target = config.target_set
    arity = config.scheme.arity
    bins: list[list[int]] = [[] for _ in range(target)]
    bell: list[int] = []
    order = range(target) if config.policy == "lowest" else range(target - 1, -1, -1)
    cost = 0
    while True:
        pool = None
        if config.bell_bin_enabled and config.policy == "lowest" and len(bell) >= arity:
            pool = bell
        else:
            for l in order:
                if len(bins[l]) >= arity:
                    pool = bins[l]
                    break
            if pool is None and config.bell_bin_enabled and len(bell) >= arity:
                pool = bell
        if pool is None:
            bins[0].append(3)
            cost += 1
            continue
        group = tuple(pool[:arity])
        del pool[:arity]
        cumulative, products = _draw_table(config.scheme, group)
        u = rng.random()
        pick = min(bisect.bisect_right(cumulative, u), len(products) - 1)
        for size in products[pick]:
            if size >= 3:
                l = bisect.bisect_right(lows, size) - 1
                if l >= target:
                    return cost, size
                bins[l].append(size)
            elif size == 2 and config.bell_bin_enabled:
                bell.append(size)


def _run_chunk(args: tuple[StrategyConfig, int, int]) -> list[tuple[int, int]]:
    config, start, stop = args
    return [simulate_run(config, r) for r in range(start, stop)]


def mc_recycle(config: StrategyConfig, workers: int = 1) -> CostRecord:
    if workers > 1 and config.runs > 1:
        step = math.ceil(config.runs / workers)
        chunks = [(config, s, min(s + step, config.runs)) for s in range(0, config.runs, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    else:
        results = _run_chunk((config, 0, config.runs))
    costs = [c for c, _ in results]
    # fsum is exactly rounded, so the aggregate does not depend on run order
    mean = math.fsum(costs) / len(costs)
    var = math.fsum((c - mean) ** 2 for c in costs) / (len(costs) - 1) if len(costs) > 1 else 0.0
    return CostRecord(
        scheme=config.scheme,
        target_size_or_set=config.target_set,
        runs=config.runs,
        seed=config.master_seed,
        mean_cost=mean,
        std_dev=math.sqrt(var),
        mean_size=math.fsum(s for _, s in results) / len(results),
    )


def set_min_reachable(config: StrategyConfig, reachable: Sequence[int]) -> int:
    """Smallest size in ``reachable`` that would end a run at the target set."""
    lo = config.set_boundaries[config.target_set][0]
    for s in sorted(reachable):
        if s >= lo:
            return s
    raise ValueError(f"no reachable size at or above set {config.target_set} (lower bound {lo})")


def equal_growth_size(config: StrategyConfig) -> int:
    """First size of the equal-size fusion sequence that ends a run at the target set.

    This is the state the set strategy produces when every fusion succeeds.
    """
    sets = config.set_boundaries
    size = 3
    while set_index(sets, size) < config.target_set:
        size = fused_size(config.scheme, *[size] * config.scheme.arity)
    return size
