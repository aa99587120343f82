"""No-recycle resource planning.

The cost of a W state is the expected number of primary ``W_3`` states
consumed to make it when every failed attempt throws all inputs away::

    R[W_out] = (R[W_in1] + ... + R[W_ink]) / P_success(W_in1, ..., W_ink)

with ``R[W_3] = 1``.  :func:`dp_norecycle` minimises this exactly over all
fusion trees built from ``W_3`` leaves.  Ancilla photons are free.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .analytic import fused_size, success_probability
from .core import SchemeId

BASE_SIZE = 3


@dataclass(frozen=True)
class PlanNode:
    size: int
    cost: Fraction
    children: tuple["PlanNode", ...] = ()
    success_prob: Fraction = Fraction(1)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def split(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.children)

    def nodes(self) -> Iterator["PlanNode"]:
        yield self
        for child in self.children:
            yield from child.nodes()

    def verify(self) -> bool:
        """Recompute every node's cost identity exactly."""
        for node in self.nodes():
            if node.is_leaf:
                if node.size != BASE_SIZE or node.cost != 1:
                    return False
            elif node.cost != sum((c.cost for c in node.children), Fraction(0)) / node.success_prob:
                return False
        return True

    def pretty(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.is_leaf:
            return f"{pad}W{self.size}  cost 1"
        lines = [f"{pad}W{self.size}  cost {self.cost} (~{float(self.cost):.4g})  P_s={self.success_prob}"]
        lines += [c.pretty(indent + 1) for c in self.children]
        return "\n".join(lines)


class _Table:
    """Growing bottom-up DP table for one scheme: size -> (cost, split)."""

    def __init__(self, scheme: SchemeId) -> None:
        self.scheme = scheme
        self.entries: dict[int, tuple[Fraction, tuple[int, ...]]] = {BASE_SIZE: (Fraction(1), ())}
        self.upto = BASE_SIZE
        self.lock = threading.Lock()

    def _splits(self, s: int) -> Iterator[tuple[int, ...]]:
        have = self.entries
        if self.scheme is SchemeId.THREE_STATE:
            total = s + 3
            for n in range(BASE_SIZE, total // 3 + 1):
                if n not in have:
                    continue
                for m in range(n, (total - n) // 2 + 1):
                    t = total - n - m
                    if m in have and t in have:
                        yield (n, m, t)
        else:
            total = s + (2 if self.scheme is SchemeId.TWO_BASIC else 1)
            for n in range(BASE_SIZE, total // 2 + 1):
                m = total - n
                if n in have and m in have:
                    yield (n, m)

    def extend(self, target: int) -> None:
        with self.lock:
            for s in range(self.upto + 1, target + 1):
                best: Optional[tuple[Fraction, tuple[int, ...]]] = None
                for split in self._splits(s):
                    cost = sum((self.entries[x][0] for x in split), Fraction(0))
                    cost /= success_probability(self.scheme, *split)
                    if best is None or cost < best[0]:
                        best = (cost, split)
                if best is not None:
                    self.entries[s] = best
            self.upto = max(self.upto, target)


_TABLES = {scheme: _Table(scheme) for scheme in SchemeId}


def reachable_sizes(scheme: SchemeId | str, upto: int) -> list[int]:
    """Sizes obtainable from ``W_3`` leaves, up to and including ``upto``."""
    table = _TABLES[SchemeId.parse(scheme)]
    table.extend(upto)
    return sorted(s for s in table.entries if s <= upto)


def _node(table: _Table, size: int) -> PlanNode:
    cost, split = table.entries[size]
    if not split:
        return PlanNode(size, cost)
    children = tuple(_node(table, s) for s in split)
    return PlanNode(size, cost, children, success_probability(table.scheme, *split))


def dp_norecycle(scheme: SchemeId | str, target: int) -> PlanNode:
    scheme = SchemeId.parse(scheme)
    table = _TABLES[scheme]
    if target < BASE_SIZE:
        raise ValueError(f"target {target} is below the primary size {BASE_SIZE}")
    table.extend(target)
    if target not in table.entries:
        below = max(s for s in table.entries if s < target)
        table.extend(target + 2 * BASE_SIZE)
        above = min(s for s in table.entries if s > target)
        raise ValueError(f"size {target} is unreachable for {scheme}; nearest reachable sizes are {below} and {above}")
    return _node(table, target)


def equal_size_sequence(scheme: SchemeId | str, steps: int) -> list[int]:
    """Sizes after repeatedly fusing copies of the current state with each other."""
    scheme = SchemeId.parse(scheme)
    sizes = [BASE_SIZE]
    for _ in range(steps):
        sizes.append(fused_size(scheme, *[sizes[-1]] * scheme.arity))
    return sizes


@dataclass(frozen=True)
class ExponentFit:
    """``cost(N) ~ c * sqrt(N) * N**(log2(N) / k)``."""

    k: float
    c: float
    residual: float

    def predict(self, size: float) -> float:
        return self.c * math.sqrt(size) * size ** (math.log2(size) / self.k)


def fit_exponent(points: Sequence[tuple[float, float]]) -> ExponentFit:
    """Least-squares fit of ``log c`` and ``1/k`` in log space.

    ``residual`` is the root-mean-square misfit of ``log(cost)``.
    """
    if len(points) < 3:
        raise ValueError("need at least 3 (size, cost) points")
    sizes = np.array([float(p[0]) for p in points])
    costs = np.array([float(p[1]) for p in points])
    if np.any(np.diff(sizes) <= 0):
        raise ValueError("sizes must be strictly increasing")
    if np.any(sizes <= 0) or np.any(costs <= 0):
        raise ValueError("sizes and costs must be positive")
    x = np.log(sizes) * np.log2(sizes)
    y = np.log(costs) - 0.5 * np.log(sizes)
    design = np.column_stack([np.ones_like(x), x])
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 2 or coef[1] == 0:
        raise ValueError("degenerate data: cannot separate the constant from the exponent")
    misfit = y - design @ coef
    return ExponentFit(k=float(1.0 / coef[1]), c=float(np.exp(coef[0])), residual=float(np.sqrt(np.mean(misfit**2))))


def norecycle_curve(scheme: SchemeId | str, sizes: Sequence[int]) -> list[tuple[int, Fraction]]:
    return [(s, dp_norecycle(scheme, s).cost) for s in sizes]
