"""Neighbourhood traces N_A(v), representative sets, shatter function, VC-dimension."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import InputError, ResourceLimitError
from .graph import Graph

EXHAUSTIVE_CAP = 16


@dataclass(frozen=True)
class NeighborhoodFamily:
    A: tuple[int, ...]
    traces: frozenset[frozenset[int]]
    has_empty: bool

    @property
    def size(self) -> int:
        return len(self.traces)

    def report(self) -> dict:
        return {"size": self.size, "hasEmpty": self.has_empty, "ratio": self.size / len(self.A)}


def _check_set(g: Graph, A) -> list[int]:
    A = sorted(set(int(a) for a in A))
    if not A:
        raise InputError("vertex set A must be non-empty")
    if A[0] < 0 or A[-1] >= g.n:
        raise InputError(f"A has ids outside 0..{g.n - 1}")
    return A


def trace_rows(g: Graph, A) -> np.ndarray:
    """Row v is the 0/1 indicator of N_A(v) over A (sorted by id)."""
    return g.adj[:, A]


def neighborhoods_in(g: Graph, A) -> NeighborhoodFamily:
    A = _check_set(g, A)
    rows = trace_rows(g, A)
    uniq = np.unique(rows, axis=0)
    traces = frozenset(frozenset(A[i] for i in np.flatnonzero(r)) for r in uniq)
    return NeighborhoodFamily(tuple(A), traces, frozenset() in traces)


def distinct_neighborhoods(g: Graph, A) -> int:
    """|N_G(A)|, counting the empty trace."""
    A = _check_set(g, A)
    return int(np.unique(np.packbits(trace_rows(g, A), axis=1), axis=0).shape[0])


def representative_set(g: Graph, A) -> list[int]:
    """Smallest-id vertex for each non-empty trace."""
    A = _check_set(g, A)
    rows = trace_rows(g, A)
    seen: set[bytes] = set()
    reps = []
    for v in range(g.n):
        r = rows[v]
        if not r.any():
            continue
        key = r.tobytes()
        if key not in seen:
            seen.add(key)
            reps.append(v)
    return reps


def _subset_trace_counts(g: Graph, max_size: int):
    """Yield (|A|, A mask, |N_G(A)|) for every A with |A| <= max_size."""
    masks = g.masks
    for k in range(max_size + 1):
        for A in combinations(range(g.n), k):
            am = 0
            for a in A:
                am |= 1 << a
            yield k, am, len({m & am for m in masks})


def _check_cap(g: Graph):
    if g.n > EXHAUSTIVE_CAP:
        raise ResourceLimitError(f"exhaustive enumeration is capped at {EXHAUSTIVE_CAP} vertices")


def shatter_function(g: Graph, k: int) -> int:
    """max |N_G(A)| over |A| <= k (A = {} gives 1)."""
    if k < 0:
        raise InputError("k must be non-negative")
    _check_cap(g)
    if g.n == 0:
        return 0
    return max(cnt for _, _, cnt in _subset_trace_counts(g, min(k, g.n)))


def shatter_table(g: Graph) -> list[int]:
    """[pi_G(0), ..., pi_G(n)] from a single enumeration."""
    _check_cap(g)
    best = [0] * (g.n + 1)
    for k, _, cnt in _subset_trace_counts(g, g.n):
        best[k] = max(best[k], cnt)
    for k in range(1, g.n + 1):
        best[k] = max(best[k], best[k - 1])
    return best


def vc_dimension(g: Graph) -> int:
    _check_cap(g)
    masks = g.masks
    for k in range(g.n, 0, -1):
        for A in combinations(range(g.n), k):
            am = sum(1 << a for a in A)
            if len({m & am for m in masks}) == 1 << k:
                return k
    return 0


def sauer_shelah_bound(k: int, d: int) -> int:
    return sum(comb(k, i) for i in range(d + 1))
