"""Corner-profiles, the threshold sweep, and decodable neighbourhood cells.

Setting: an ordered graph (G, order) and a non-empty A. The reduced matrix
has one row per vertex of A (sorted by the order) and one column per vertex
of G (in order). Row i of the corner matrix pairs A-row i with its successor
in A, so a corner row is named by two vertices of A.

A cell is a set of vertices with equal N_A. Each cell carries a descriptor
that can be decoded back into the cell from (G, order, A) alone:

boundary-extremal
    the first or last vertex of the order; no anchors.
boundary-by-profile
    anchors are corner rows P given as (a, A-successor of a) pairs.
    ``kth``: the index-th column u with P inside prof(u).
    ``sweep``: cut the order greedily into segments whose profile covers P;
    the vertex is the last column of segment ``index``.
interior
    the vertices strictly between two boundary vertices (or the ends of the
    order) whose adjacency to the anchor vertices equals ``pattern``.

Anchors of an interior cell are the rows of every corner in the gap together
with their A-successors. On a column range whose corners sit in rows R, the
rows split into |R| + 1 corner-free bands each touching an anchor row, and a
corner-free band is vertical or horizontal; agreeing on the anchors therefore
forces equal columns on all of A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import InputError, VerificationError
from .graph import Graph, VertexOrder
from .matrix import BitMatrix

EXTREMAL = "boundary-extremal"
BY_PROFILE = "boundary-by-profile"
INTERIOR = "interior"


# -------------------------------------------------------------- matrices ---

@dataclass(frozen=True)
class ReducedMatrix:
    rows: tuple[int, ...]  # vertices of A in order
    cols: tuple[int, ...]  # all vertices in order
    bits: BitMatrix


def reduced_matrix(g: Graph, order: VertexOrder, A) -> ReducedMatrix:
    A = _check_set(g, A)
    rows = tuple(order.sort(A))
    cols = tuple(order.perm)
    return ReducedMatrix(rows, cols, BitMatrix(g.adj[np.ix_(rows, cols)]))


def _check_set(g: Graph, A) -> list[int]:
    A = sorted(set(int(a) for a in A))
    if not A:
        raise InputError("vertex set A must be non-empty")
    if A[0] < 0 or A[-1] >= g.n:
        raise InputError(f"A has ids outside 0..{g.n - 1}")
    return A


def _corner_table(bits: np.ndarray) -> np.ndarray:
    """(|A|-1) x n boolean table; column j holds prof(j), last column empty."""
    k, n = bits.shape
    table = np.zeros((max(k - 1, 0), n), dtype=bool)
    if k >= 2 and n >= 2:
        table[:, :-1] = kernels.corner_matrix(bits).astype(bool)
    return table


@dataclass(frozen=True)
class CornerProfile:
    column: int
    rows: frozenset[int]


def corner_profile(M: ReducedMatrix, j: int) -> CornerProfile:
    """Rows i with a corner on rows i, i+1 and columns j, j+1.

    The last column and single-row matrices have empty profiles.
    """
    m, n = M.bits.shape
    if not 0 <= j < n:
        raise InputError(f"column {j} out of range")
    if m < 2 or j == n - 1:
        return CornerProfile(M.cols[j], frozenset())
    window = M.bits.bits[:, j:j + 2]
    hits = kernels.corner_matrix(np.ascontiguousarray(window))[:, 0]
    return CornerProfile(M.cols[j], frozenset(int(i) for i in np.flatnonzero(hits)))


# ----------------------------------------------------------------- sweep ---

@dataclass(frozen=True)
class SweepBlock:
    vj: int  # start vertex
    rj: int  # extent: the block is S^rj(vj)
    start: int  # order position of vj
    columns: tuple[int, ...]
    profile_size: int
    reached: bool  # False only for a tail block that never met the threshold


def _sweep(table: np.ndarray, theta: int) -> list[tuple[int, int, int, bool]]:
    n = table.shape[1]
    out = []
    start = 0
    while start < n:
        covered = np.zeros(table.shape[0], dtype=bool)
        end = start
        reached = False
        while end < n:
            covered |= table[:, end]
            if covered.sum() >= theta:
                reached = True
                break
            end += 1
        end = min(end, n - 1)
        out.append((start, end, int(covered.sum()), reached))
        start = end + 1
    return out


def sweep_blocks(g: Graph, order: VertexOrder, A, theta: int) -> list[SweepBlock]:
    """Greedy minimal blocks of consecutive columns with profile size >= theta."""
    if theta < 1:
        raise InputError("theta must be at least 1")
    M = reduced_matrix(g, order, A)
    table = _corner_table(M.bits.bits)
    perm = order.perm
    return [SweepBlock(perm[s], e - s, s, tuple(perm[s:e + 1]), size, reached)
            for s, e, size, reached in _sweep(table, theta)]


# ----------------------------------------------------------- descriptors ---

@dataclass(frozen=True)
class CellDescriptor:
    kind: str
    anchors: tuple[int, ...] = ()
    pattern: str = ""
    mode: str | None = None
    index: int | None = None
    left: "CellDescriptor | None" = None
    right: "CellDescriptor | None" = None

    def parameters(self) -> tuple[int, ...]:
        """Every vertex of A the definition uses, bounds included."""
        out: tuple[int, ...] = ()
        if self.left is not None:
            out += self.left.parameters()
        if self.right is not None:
            out += self.right.parameters()
        return out + self.anchors

    def shape(self) -> tuple:
        """The parameter-free part: which decoding rule, with which sizes."""
        return (self.kind, self.mode, self.index, len(self.anchors), len(self.pattern),
                None if self.left is None else self.left.shape(),
                None if self.right is None else self.right.shape())

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "anchors": list(self.anchors), "pattern": self.pattern}
        if self.mode is not None:
            out["mode"] = self.mode
        if self.index is not None:
            out["index"] = self.index
        if self.kind == INTERIOR:
            out["bounds"] = [None if b is None else b.to_json() for b in (self.left, self.right)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CellDescriptor":
        try:
            bounds = data.get("bounds") or [None, None]
            left, right = (None if b is None else cls.from_json(b) for b in bounds)
            return cls(str(data["kind"]), tuple(int(a) for a in data.get("anchors", [])),
                       str(data.get("pattern", "")), data.get("mode"),
                       None if data.get("index") is None else int(data["index"]), left, right)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed descriptor: {exc}") from None


class Cell(NamedTuple):
    members: tuple[int, ...]
    descriptor: CellDescriptor


@dataclass(frozen=True)
class CellPartition:
    cells: tuple[Cell, ...]
    theta: int
    tau: int
    blocks: tuple[SweepBlock, ...] = field(repr=False)

    def to_json(self) -> dict:
        return {"theta": self.theta,
                "cells": [{"members": list(c.members), "descriptor": c.descriptor.to_json()}
                          for c in self.cells]}

    def max_parameters(self) -> int:
        return max((len(c.descriptor.parameters()) for c in self.cells), default=0)

    def anchor_tuples(self) -> set[tuple[int, ...]]:
        return {c.descriptor.parameters() for c in self.cells}

    def shapes(self) -> set[tuple]:
        return {c.descriptor.shape() for c in self.cells}


def parameter_budget(theta: int, tau: int) -> int:
    """Upper bound on ``len(descriptor.parameters())`` for a partition.

    Two boundary definitions use 2*tau anchors each; a gap holds corners in at
    most 2*theta - 2 rows, each contributing at most two anchor rows.
    """
    return 4 * tau + max(4 * theta - 4, 1)


# -------------------------------------------------------- decoding rules ---

class _Frame:
    """What a decoder may look at: the graph, the order and A."""

    def __init__(self, g: Graph, order: VertexOrder, A):
        if len(order) != g.n:
            raise InputError(f"order covers {len(order)} vertices, graph has {g.n}")
        self.g = g
        self.order = order
        self.A = _check_set(g, A)
        self.in_A = np.zeros(g.n, dtype=bool)
        self.in_A[self.A] = True
        rows = order.sort(self.A)
        self.rows = rows
        self.a_succ = {a: b for a, b in zip(rows, rows[1:])}
        self.perm = np.asarray(order.perm, dtype=np.int64)
        self.n = g.n

    def check_anchor(self, a: int) -> None:
        if not (0 <= a < self.n) or not self.in_A[a]:
            raise InputError(f"anchor {a} is not a vertex of A")

    def corner_hits(self, a: int, b: int) -> np.ndarray:
        """Boolean per order position j: rows (a, b) and columns j, j+1 form a corner."""
        self.check_anchor(a)
        self.check_anchor(b)
        if self.a_succ.get(a) != b:
            raise InputError(f"anchor pair ({a}, {b}) is not consecutive in A")
        out = np.zeros(self.n, dtype=bool)
        if self.n >= 2:
            ra = self.g.adj[a, self.perm]
            rb = self.g.adj[b, self.perm]
            x, y, z, w = ra[:-1], ra[1:], rb[:-1], rb[1:]
            out[:-1] = ((x != z) | (y != w)) & ((x != y) | (z != w))
        return out

    def pair_hits(self, anchors) -> list[np.ndarray]:
        if len(anchors) == 0 or len(anchors) % 2:
            raise InputError("profile anchors must be a non-empty list of pairs")
        return [self.corner_hits(anchors[i], anchors[i + 1]) for i in range(0, len(anchors), 2)]


def _segments(hits: list[np.ndarray], n: int) -> list[tuple[int, int]]:
    """Greedy segments of the order, each minimal with every row of P covered."""
    nxt = []
    for h in hits:
        # nearest hit at or after each position; n marks "none"
        idx = np.where(h, np.arange(n), n)
        nxt.append(np.minimum.accumulate(idx[::-1])[::-1])
    segs = []
    start = 0
    while start < n:
        end = max(int(a[start]) for a in nxt)
        if end >= n:
            break
        segs.append((start, end))
        start = end + 1
    return segs


def _decode_position(frame: _Frame, d: CellDescriptor) -> int:
    """Order position of the single vertex defined by a boundary descriptor."""
    if d.kind == EXTREMAL:
        if d.anchors or d.pattern:
            raise InputError("extremal descriptors take no anchors")
        if d.mode == "min":
            return 0
        if d.mode == "max":
            return frame.n - 1
        raise InputError(f"unknown extremal mode {d.mode!r}")
    if d.kind != BY_PROFILE:
        raise InputError(f"a bound must be a boundary descriptor, got {d.kind!r}")
    if d.index is None or d.index < 0:
        raise InputError("profile descriptor needs a non-negative index")
    hits = frame.pair_hits(d.anchors)
    if d.mode == "kth":
        support = np.flatnonzero(np.logical_and.reduce(hits))
        if d.index >= len(support):
            raise InputError(f"index {d.index} exceeds the {len(support)} columns carrying the profile")
        return int(support[d.index])
    if d.mode == "sweep":
        segs = _segments(hits, frame.n)
        if d.index >= len(segs):
            raise InputError(f"index {d.index} exceeds the {len(segs)} sweep segments")
        return segs[d.index][1]
    raise InputError(f"unknown profile mode {d.mode!r}")


def _decode(frame: _Frame, d: CellDescriptor) -> list[int]:
    if d.kind in (EXTREMAL, BY_PROFILE):
        return [int(frame.perm[_decode_position(frame, d)])]
    if d.kind != INTERIOR:
        raise InputError(f"unknown descriptor kind {d.kind!r}")
    if not d.anchors or len(d.pattern) != len(d.anchors) or set(d.pattern) - {"0", "1"}:
        raise InputError("interior pattern must be a 0/1 string with one bit per anchor")
    for a in d.anchors:
        frame.check_anchor(a)
    lo = -1 if d.left is None else _decode_position(frame, d.left)
    hi = frame.n if d.right is None else _decode_position(frame, d.right)
    if hi <= lo:
        return []
    inside = frame.perm[lo + 1:hi]
    want = np.array([c == "1" for c in d.pattern], dtype=np.uint8)
    block = frame.g.adj[np.ix_(inside, np.asarray(d.anchors, dtype=np.int64))]
    keep = (block == want).all(axis=1)
    return sorted(int(v) for v in inside[keep])


def decode_cell(g: Graph, order: VertexOrder, A, d: CellDescriptor) -> list[int]:
    """Vertex set defined by ``d``; uses only G, the order, A and the descriptor."""
    return _decode(_Frame(g, order, A), d)


# -------------------------------------------------------------- encoding ---

def _spread_rows(rows, limit: int) -> list[int]:
    """Up to ``limit`` rows, pairwise at distance >= 2, smallest first."""
    out: list[int] = []
    for r in sorted(rows):
        if len(out) == limit:
            break
        if not out or r - out[-1] >= 2:
            out.append(int(r))
    return out


def _pair_anchors(rows_A: list[int], P: list[int]) -> tuple[int, ...]:
    out: list[int] = []
    for i in P:
        out += [rows_A[i], rows_A[i + 1]]
    return tuple(out)


class DefinedVertex(NamedTuple):
    vertex: int
    descriptor: CellDescriptor
    support: int  # |{u : P inside prof(u)}|
    segments: int  # number of P-sweep segments


def _define(frame: _Frame, table: np.ndarray, span: tuple[int, int], tau: int,
            need: int) -> DefinedVertex | None:
    s, e = span
    prof_rows = np.flatnonzero(table[:, s:e + 1].any(axis=1))
    if len(prof_rows) < max(need, 1):
        return None
    P = _spread_rows(prof_rows, tau)
    anchors = _pair_anchors(frame.rows, P)
    hits = [table[i] for i in P]
    support = np.flatnonzero(np.logical_and.reduce(hits))
    segs = _segments(hits, frame.n)
    if s == e:
        index = int(np.searchsorted(support, s))
        d = CellDescriptor(BY_PROFILE, anchors, mode="kth", index=index)
        return DefinedVertex(int(frame.perm[s]), d, len(support), len(segs))
    for p, (a, b) in enumerate(segs):
        if a <= s <= b:
            if not s <= b <= e:  # cannot happen: P lies inside prof of the span
                raise VerificationError(f"sweep endpoint {b} left the span {span}")
            d = CellDescriptor(BY_PROFILE, anchors, mode="sweep", index=p)
            return DefinedVertex(int(frame.perm[b]), d, len(support), len(segs))
    raise VerificationError(f"span {span} is not covered by the P-sweep")


def define_vertex(g: Graph, order: VertexOrder, v: int, l: int, t: int, A=None) -> DefinedVertex | None:
    """A vertex of S^l(v) defined from t corner rows of prof(S^l(v)).

    Returns None when the profile has fewer than 2t rows. ``A`` defaults to
    all of V(G).
    """
    if t < 1 or l < 0:
        raise InputError("need t >= 1 and l >= 0")
    frame = _Frame(g, order, range(g.n) if A is None else A)
    table = _corner_table(g.adj[np.ix_(frame.rows, frame.perm)])
    s = order.position[v]
    e = min(s + l, g.n - 1)
    return _define(frame, table, (s, e), t, 2 * t)


def _extremal_or(frame: _Frame, pos: int, d: CellDescriptor) -> CellDescriptor:
    if pos == 0:
        return CellDescriptor(EXTREMAL, mode="min")
    if pos == frame.n - 1:
        return CellDescriptor(EXTREMAL, mode="max")
    return d


def cell_partition(g: Graph, order: VertexOrder, A, theta: int, t: int | None = None) -> CellPartition:
    """Partition V(G) into N_A-pure cells, each with a decodable descriptor.

    ``theta`` is the sweep threshold; ``t`` (default max(1, theta // 2)) is the
    number of corner rows used to define a boundary vertex.
    """
    if theta < 1:
        raise InputError("theta must be at least 1")
    tau = max(1, theta // 2) if t is None else t
    if tau < 1:
        raise InputError("t must be at least 1")
    frame = _Frame(g, order, A)
    bits = g.adj[np.ix_(frame.rows, frame.perm)]
    table = _corner_table(bits)
    n = g.n
    raw_blocks = _sweep(table, theta)

    defined: dict[int, CellDescriptor] = {}
    for s, e, _, reached in raw_blocks:
        if not reached:
            continue
        dv = _define(frame, table, (s, e), tau, 1)
        pos = frame.order.position[dv.vertex]
        defined.setdefault(pos, _extremal_or(frame, pos, dv.descriptor))
        if e not in defined and table[:, e].any():
            last = _define(frame, table, (e, e), tau, 1)
            defined[e] = _extremal_or(frame, e, last.descriptor)

    cells: list[Cell] = []
    bounds = sorted(defined)
    edges = [None] + bounds + [None]
    for w, w2 in zip(edges, edges[1:]):
        x = 0 if w is None else w + 1
        y = n - 1 if w2 is None else w2 - 1
        if x <= y:
            cells += _interior_cells(frame, bits, table, x, y,
                                     None if w is None else defined[w],
                                     None if w2 is None else defined[w2])
        if w2 is not None:
            cells.append(Cell((int(frame.perm[w2]),), defined[w2]))

    cells.sort(key=lambda c: min(frame.order.position[v] for v in c.members))
    _check_pure(g, frame.A, cells)
    perm = order.perm
    blocks = tuple(SweepBlock(perm[s], e - s, s, tuple(perm[s:e + 1]), size, reached)
                   for s, e, size, reached in raw_blocks)
    return CellPartition(tuple(cells), theta, tau, blocks)


def _interior_cells(frame: _Frame, bits, table, x: int, y: int, left, right) -> list[Cell]:
    R = np.flatnonzero(table[:, x:y].any(axis=1)) if y > x else np.zeros(0, dtype=np.int64)
    if len(R):
        rows = sorted({int(i) for i in R} | {int(i) + 1 for i in R})
    else:
        rows = [0]
    anchors = tuple(frame.rows[i] for i in rows)
    groups: dict[str, list[int]] = {}
    sub = bits[np.ix_(rows, np.arange(x, y + 1))]
    for off in range(y - x + 1):
        key = "".join("1" if b else "0" for b in sub[:, off])
        groups.setdefault(key, []).append(int(frame.perm[x + off]))
    return [Cell(tuple(sorted(members)),
                 CellDescriptor(INTERIOR, anchors, key, left=left, right=right))
            for key, members in groups.items()]


def _check_pure(g: Graph, A: list[int], cells: list[Cell]) -> None:
    rows = g.adj[:, A]
    for c in cells:
        first = c.members[0]
        for v in c.members[1:]:
            if not np.array_equal(rows[first], rows[v]):
                raise VerificationError(f"cell mixes neighbourhoods: vertices {first} and {v}")


def oracle_partition(g: Graph, A) -> list[list[int]]:
    """Classes of equal N_A by direct comparison, ordered by smallest member."""
    A = _check_set(g, A)
    classes: dict[frozenset, list[int]] = {}
    for v in range(g.n):
        key = frozenset(a for a in A if a != v and (min(a, v), max(a, v)) in g.edges)
        classes.setdefault(key, []).append(v)
    return sorted(classes.values(), key=lambda c: c[0])
