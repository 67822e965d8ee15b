"""Cuttings and 0-1 regularity partitions, built by sample-then-verify.

Both builders are Las Vegas: they sample, build neighbourhood cells over the
sample, run the exact verifier, and double the sample on failure. The last
round uses the whole ground set, where the verifier passes by construction,
so every returned partition is verified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .cells import cell_partition
from .errors import InputError, VerificationError
from .graph import Graph, VertexOrder

SAMPLE_CONSTANT = 8


def _labels(n: int, parts) -> np.ndarray:
    lab = np.full(n, -1, dtype=np.int64)
    for i, part in enumerate(parts):
        if len(part) == 0:
            raise InputError(f"part {i} is empty")
        for v in part:
            if not 0 <= v < n:
                raise InputError(f"vertex {v} out of range")
            if lab[v] != -1:
                raise InputError(f"vertex {v} appears in two parts")
            lab[v] = i
    if (lab == -1).any():
        raise InputError(f"vertex {int(np.flatnonzero(lab == -1)[0])} is in no part")
    return lab


def _indicator(n: int, parts) -> np.ndarray:
    lab = _labels(n, parts)
    L = np.zeros((n, len(parts)), dtype=np.int64)
    L[np.arange(n), lab] = 1
    return L


# --------------------------------------------------------------- cutting ---

class CuttingCheck(NamedTuple):
    ok: bool
    counts: list[int]


def verify_cutting(g: Graph, A, parts, r: float) -> CuttingCheck:
    """Per part, how many a in A have both a neighbour and a non-neighbour in it."""
    A = sorted(set(A))
    L = _indicator(g.n, parts)
    inside = g.adj[A].astype(np.int64) @ L  # |A| x K neighbour counts
    sizes = L.sum(axis=0)
    crossing = (inside > 0) & (inside < sizes)
    counts = [int(c) for c in crossing.sum(axis=0)]
    limit = Fraction(len(A)) / Fraction(r)
    return CuttingCheck(all(c <= limit for c in counts), counts)


@dataclass(frozen=True)
class CuttingPartition:
    parts: tuple[tuple[int, ...], ...]
    r: float
    crossing_counts: tuple[int, ...]
    sample_size: int
    retries: int

    def report(self) -> dict:
        return {"r": self.r, "parts": len(self.parts), "maxCrossing": max(self.crossing_counts),
                "retries": self.retries, "sampleSize": self.sample_size}


def cutting_sample_size(r: float, size_A: int, c0: float = SAMPLE_CONSTANT) -> int:
    if r <= 1:
        return 0
    return min(size_A, math.ceil(c0 * r * math.log(r + 2)))


def cutting(g: Graph, order: VertexOrder, A, r: float, seed: int, theta: int = 2,
            c0: float = SAMPLE_CONSTANT) -> CuttingPartition:
    """Partition V(G) so that each part is crossed by at most |A|/r vertices of A."""
    A = sorted(set(int(a) for a in A))
    if not A:
        raise InputError("A must be non-empty")
    if not 1 <= r <= len(A):
        raise InputError(f"r must lie in [1, |A|] = [1, {len(A)}], got {r}")
    rng = random.Random(seed)
    size = cutting_sample_size(r, len(A), c0)
    retries = 0
    while True:
        if size == 0:
            parts = (tuple(range(g.n)),)
        else:
            S = sorted(rng.sample(A, size))
            parts = tuple(c.members for c in cell_partition(g, order, S, theta).cells)
        check = verify_cutting(g, A, parts, r)
        if check.ok:
            return CuttingPartition(parts, r, tuple(check.counts), size, retries)
        if size == len(A):
            raise VerificationError("full-sample cutting failed verification")
        retries += 1
        size = min(len(A), max(1, 2 * size))


# ------------------------------------------------------------ regularity ---

class RegularityCheck(NamedTuple):
    ok: bool
    defect: int
    homogeneous: frozenset[tuple[int, int]]


def verify_regularity(g: Graph, parts, eps: float) -> RegularityCheck:
    """Exact homogeneous ordered pairs (diagonal included) and the defect mass.

    A part paired with itself is homogeneous only when it spans no edge.
    """
    L = _indicator(g.n, parts)
    sizes = L.sum(axis=0)
    between = L.T @ g.adj.astype(np.int64) @ L  # ordered-pair edge counts
    full = np.outer(sizes, sizes)
    homog = (between == 0) | (between == full)
    np.fill_diagonal(homog, np.diag(between) == 0)
    defect = int(full[~homog].sum())
    pairs = frozenset((int(i), int(j)) for i, j in zip(*np.nonzero(homog)))
    return RegularityCheck(Fraction(defect) <= Fraction(eps) * g.n * g.n, defect, pairs)


@dataclass(frozen=True)
class RegularityPartition:
    parts: tuple[tuple[int, ...], ...]
    epsilon: float
    good_pairs: frozenset[tuple[int, int]]
    defect: int
    sample_size: int
    retries: int

    @property
    def K(self) -> int:
        return len(self.parts)

    def report(self, n: int) -> dict:
        return {"epsilon": self.epsilon, "K": self.K, "defectRatio": self.defect / (n * n),
                "sampleSize": self.sample_size, "retries": self.retries}


def regularity(g: Graph, eps: float, seed: int, order: VertexOrder | None = None,
               theta: int = 2) -> RegularityPartition:
    """Partition with non-homogeneous pair mass at most eps * |V|^2."""
    if not eps > 0:
        raise InputError("epsilon must be positive")
    if g.n == 0:
        raise InputError("graph has no vertices")
    order = order or VertexOrder.identity(g.n)
    rng = random.Random(seed)
    V = list(range(g.n))
    size = 0 if eps >= 1 else min(g.n, math.ceil(1 / eps))
    retries = 0
    while True:
        if size == 0:
            parts = (tuple(V),)
        else:
            S = sorted(rng.sample(V, size))
            parts = tuple(c.members for c in cell_partition(g, order, S, theta).cells)
        check = verify_regularity(g, parts, eps)
        if check.ok:
            return RegularityPartition(parts, eps, check.homogeneous, check.defect, size, retries)
        if size == g.n:
            raise VerificationError("full-sample regularity partition failed verification")
        retries += 1
        size = min(g.n, max(1, 2 * size))


def equal_parts(n: int, k: int) -> list[list[int]]:
    """0..n-1 cut into k consecutive parts of sizes differing by at most one."""
    bounds = [round(i * n / k) for i in range(k + 1)]
    return [list(range(bounds[i], bounds[i + 1])) for i in range(k)]
