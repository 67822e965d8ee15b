"""Trigraphs, contractions, sequence checking and exact twin-width.

Merging u and v keeps the smaller id for the merged vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InputError, InvalidSequenceError, ResourceLimitError
from .graph import Graph, VertexOrder


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Trigraph:
    vertices: frozenset[int]
    black: frozenset[tuple[int, int]]
    red: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.black & self.red:
            raise InputError("black and red edge sets must be disjoint")
        for u, v in self.black | self.red:
            if u >= v or u not in self.vertices or v not in self.vertices:
                raise InputError(f"edge {(u, v)} is not a normalised pair of live vertices")

    @classmethod
    def from_graph(cls, g: Graph) -> "Trigraph":
        return cls(frozenset(range(g.n)), g.edges, frozenset())

    def red_degree(self, v: int) -> int:
        return sum(1 for e in self.red if v in e)


def contract(tg: Trigraph, u: int, v: int) -> Trigraph:
    """Identify u and v into w = min(u, v)."""
    if u == v:
        raise InputError(f"cannot contract vertex {u} with itself")
    for x in (u, v):
        if x not in tg.vertices:
            raise InputError(f"vertex {x} is not live")
    w = min(u, v)

    def status(a, x):
        e = _pair(a, x)
        if e in tg.black:
            return "b"
        if e in tg.red:
            return "r"
        return "n"

    black = {e for e in tg.black if u not in e and v not in e}
    red = {e for e in tg.red if u not in e and v not in e}
    for x in tg.vertices - {u, v}:
        su, sv = status(u, x), status(v, x)
        if su == sv == "b":
            black.add(_pair(w, x))
        elif su == sv == "n":
            pass
        else:
            red.add(_pair(w, x))
    return Trigraph(tg.vertices - {max(u, v)}, frozenset(black), frozenset(red))


def max_red_degree(tg: Trigraph) -> int:
    deg: dict[int, int] = {}
    for a, b in tg.red:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return max(deg.values(), default=0)


@dataclass(frozen=True)
class ContractionSequence:
    merges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, merges: Iterable) -> "ContractionSequence":
        out = []
        for m in merges:
            if len(m) < 2:
                raise InputError(f"merge {m!r} needs two vertices")
            out.append((int(m[0]), int(m[1])))
        return cls(tuple(out))

    def __len__(self):
        return len(self.merges)

    def to_json(self) -> list[list[int]]:
        return [list(m) for m in self.merges]


class StepRecord(NamedTuple):
    step: int
    merged: tuple[int, int]
    max_red: int

    def to_json(self) -> dict:
        return {"step": self.step, "merged": list(self.merged), "maxRed": self.max_red}


class SequenceCheck(NamedTuple):
    ok: bool
    trace: list[StepRecord]
    width: int  # largest red degree seen


class _MaskTrigraph:
    """Mutable bitmask trigraph used when replaying long sequences."""

    __slots__ = ("live", "black", "red")

    def __init__(self, g: Graph):
        self.live = (1 << g.n) - 1
        self.black = list(g.masks)
        self.red = [0] * g.n

    def contract(self, u: int, v: int) -> None:
        w, z = min(u, v), max(u, v)
        others = self.live & ~(1 << u) & ~(1 << v)
        bu, bv = self.black[u] & others, self.black[v] & others
        au, av = bu | self.red[u] & others, bv | self.red[v] & others
        new_black = bu & bv
        new_red = (au | av) & ~new_black
        touched = au | av
        x = touched
        while x:
            low = x & -x
            y = low.bit_length() - 1
            x ^= low
            clear = ~((1 << u) | (1 << v))
            self.black[y] &= clear
            self.red[y] &= clear
            if new_black >> y & 1:
                self.black[y] |= 1 << w
            else:
                self.red[y] |= 1 << w
        self.black[w], self.red[w] = new_black, new_red
        self.black[z] = self.red[z] = 0
        self.live &= ~(1 << z)

    def max_red(self) -> int:
        return max((bin(r).count("1") for r in self.red), default=0)


def verify_sequence(g: Graph, seq: ContractionSequence, d: int) -> SequenceCheck:
    """Replay ``seq`` on ``g``; ok iff every trigraph along the way has red degree <= d.

    Structural problems (dead or repeated vertices, not ending at one vertex)
    raise InvalidSequenceError instead of returning ok=False.
    """
    if g.n == 0:
        raise InvalidSequenceError("graph has no vertices")
    if len(seq) != g.n - 1:
        raise InvalidSequenceError(f"sequence has {len(seq)} merges, a {g.n}-vertex graph needs {g.n - 1}")
    state = _MaskTrigraph(g)
    trace: list[StepRecord] = []
    width = 0
    for i, (u, v) in enumerate(seq.merges):
        if u == v:
            raise InvalidSequenceError(f"step {i}: merge of a vertex with itself ({u})")
        for x in (u, v):
            if not (0 <= x < g.n) or not state.live >> x & 1:
                raise InvalidSequenceError(f"step {i}: vertex {x} is not live")
        state.contract(u, v)
        r = state.max_red()
        width = max(width, r)
        trace.append(StepRecord(i, (u, v), r))
    return SequenceCheck(width <= d, trace, width)


def order_from_sequence(g: Graph, seq: ContractionSequence) -> VertexOrder:
    """Left-to-right leaf order of the contraction tree.

    Each merge concatenates the leaf lists of its two arguments, first
    argument on the left, so every subtree is an interval of the order.
    """
    if len(seq) != g.n - 1:
        raise InvalidSequenceError(f"sequence has {len(seq)} merges, expected {g.n - 1}")
    leaves: dict[int, list[int]] = {v: [v] for v in range(g.n)}
    for i, (u, v) in enumerate(seq.merges):
        if u == v or u not in leaves or v not in leaves:
            raise InvalidSequenceError(f"step {i}: merge ({u}, {v}) uses a dead vertex")
        merged = leaves.pop(u) + leaves.pop(v)
        leaves[min(u, v)] = merged
    (only,) = leaves.values()
    return VertexOrder(tuple(only))


# ------------------------------------------------------------ exact solver --
#
# After any contractions the trigraph depends only on the partition of the
# original vertices into merged parts: two parts are black-joined iff fully
# adjacent, non-adjacent iff no edge runs between them, red otherwise. States
# are therefore tuples of part bitmasks.

class _PartitionSearch:
    def __init__(self, g: Graph):
        self.masks = g.masks
        self.failed: set[frozenset[int]] = set()

    def relation(self, p: int, q: int) -> int:
        """0 = none, 1 = black, 2 = red between disjoint parts p and q."""
        every = -1
        some = 0
        x = p
        while x:
            low = x & -x
            m = self.masks[low.bit_length() - 1]
            every &= m
            some |= m
            x ^= low
        if some & q == 0:
            return 0
        if every & q == q:
            return 1
        return 2

    def red_table(self, parts):
        k = len(parts)
        red = [[False] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if self.relation(parts[i], parts[j]) == 2:
                    red[i][j] = red[j][i] = True
        return red

    def moves(self, parts, d):
        """Merges that keep red degree <= d, fewest new red edges first."""
        red = self.red_table(parts)
        deg = [sum(row) for row in red]
        k = len(parts)
        out = []
        for i in range(k):
            for j in range(i + 1, k):
                merged = parts[i] | parts[j]
                new_deg = 0
                ok = True
                for x in range(k):
                    if x == i or x == j:
                        continue
                    r = self.relation(merged, parts[x]) == 2
                    new_deg += r
                    dx = deg[x] - red[x][i] - red[x][j] + r
                    if dx > d:
                        ok = False
                        break
                if ok and new_deg <= d:
                    out.append((new_deg, i, j))
        out.sort()
        return out

    def solve(self, parts: tuple[int, ...], d: int, path: list) -> bool:
        if len(parts) == 1:
            return True
        key = frozenset(parts)
        if key in self.failed:
            return False
        for _, i, j in self.moves(parts, d):
            merged = parts[i] | parts[j]
            rest = tuple(p for x, p in enumerate(parts) if x != i and x != j)
            path.append((parts[i], parts[j]))
            if self.solve(rest + (merged,), d, path):
                return True
            path.pop()
        self.failed.add(key)
        return False


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def collapsible(g: Graph, d: int, limit: int = 10) -> ContractionSequence | None:
    """A d-contraction sequence for g, or None if none exists."""
    if g.n > limit:
        raise ResourceLimitError(f"exact search is capped at {limit} vertices, graph has {g.n}")
    if g.n == 0:
        raise InputError("graph has no vertices")
    search = _PartitionSearch(g)
    path: list[tuple[int, int]] = []
    if not search.solve(tuple(1 << v for v in range(g.n)), d, path):
        return None
    return ContractionSequence(tuple((_lowest(p), _lowest(q)) for p, q in path))


class TwinWidth(NamedTuple):
    tww: int
    sequence: ContractionSequence


def exact_twinwidth(g: Graph, limit: int = 10) -> TwinWidth:
    """Exact twin-width by iterative deepening on the red-degree bound."""
    if g.n > limit:
        raise ResourceLimitError(f"exact search is capped at {limit} vertices, graph has {g.n}")
    for d in range(max(g.n - 1, 1)):
        seq = collapsible(g, d, limit)
        if seq is not None:
            return TwinWidth(d, seq)
    raise AssertionError("unreachable: every graph is (n-2)-collapsible")
