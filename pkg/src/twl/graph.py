"""Simple undirected graphs on vertices 0..n-1, vertex orders, file formats."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import InputError
from .matrix import BitMatrix


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InputError(f"edge {(u, v)} is not a normalised pair u < v < n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {(u, v)} references a vertex outside 0..{n - 1}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    @classmethod
    def from_adjacency(cls, adj) -> "Graph":
        adj = np.asarray(adj)
        iu, ju = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], frozenset(zip(iu.tolist(), ju.tolist())))

    @cached_property
    def adj(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        if self.edges:
            e = np.array(sorted(self.edges), dtype=np.int64)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as int bitsets."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def relabel(self, perm) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        return Graph(self.n, frozenset((min(perm[u], perm[v]), max(perm[u], perm[v]))
                                       for u, v in self.edges))

    def induced(self, vertices) -> "Graph":
        vs = list(vertices)
        return Graph.from_adjacency(self.adj[np.ix_(vs, vs)])


@dataclass(frozen=True)
class VertexOrder:
    """A total order; ``perm[i]`` is the i-th smallest vertex."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise InputError("order must be a permutation of 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "VertexOrder":
        return cls(tuple(range(n)))

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            pos[v] = i
        return tuple(pos)

    def __len__(self):
        return len(self.perm)

    def successor(self, v: int) -> int | None:
        i = self.position[v] + 1
        return self.perm[i] if i < len(self.perm) else None

    def window(self, v: int, k: int) -> list[int]:
        """S^k(v): v and the next k vertices, truncated at the end of the order."""
        i = self.position[v]
        return list(self.perm[i:i + k + 1])

    def sort(self, vertices) -> list[int]:
        return sorted(vertices, key=self.position.__getitem__)


# ------------------------------------------------------------------ files ---

def parse_graph(text: str) -> Graph:
    """Parse "n m" followed by m lines "u v" (0-indexed)."""
    lines = text.splitlines()
    body = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise InputError("line 1: empty graph file")
    lineno, head = body[0]
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise InputError(f"line {lineno}: expected 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(body) - 1 != m:
        raise InputError(f"header announces {m} edges, found {len(body) - 1}")
    seen = set()
    for lineno, parts in body[1:]:
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise InputError(f"line {lineno}: expected 'u v'")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise InputError(f"line {lineno}: vertex id out of range (n={n})")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
    return Graph(n, frozenset(seen))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_order(text: str, n: int | None = None) -> VertexOrder:
    try:
        perm = tuple(int(x) for x in text.split())
    except ValueError as exc:
        raise InputError(f"line 1: order must be integers ({exc})") from None
    if n is not None and len(perm) != n:
        raise InputError(f"order has {len(perm)} entries, graph has {n} vertices")
    return VertexOrder(perm)


def format_order(order: VertexOrder) -> str:
    return " ".join(map(str, order.perm)) + "\n"


def parse_vertex_set(text: str, n: int | None = None) -> list[int]:
    """Comma-separated ids, as used on the command line."""
    try:
        ids = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad vertex set {text!r}") from None
    if n is not None and any(not 0 <= v < n for v in ids):
        raise InputError(f"vertex set {text!r} has ids outside 0..{n - 1}")
    return sorted(set(ids))


def adjacency_matrix(g: Graph, order: VertexOrder) -> BitMatrix:
    if len(order) != g.n:
        raise InputError(f"order covers {len(order)} vertices, graph has {g.n}")
    if g.n == 0:
        raise InputError("empty graph has no adjacency matrix")
    p = np.asarray(order.perm, dtype=np.int64)
    return BitMatrix(g.adj[np.ix_(p, p)])


# ---------------------------------------------------------- small families --

def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def gen_matching(k: int) -> tuple[Graph, list[int]]:
    """k disjoint edges (2i, 2i+1) and the set of their odd endpoints."""
    if k < 1:
        raise InputError("k must be positive")
    g = Graph(2 * k, frozenset((2 * i, 2 * i + 1) for i in range(k)))
    return g, [2 * i + 1 for i in range(k)]
