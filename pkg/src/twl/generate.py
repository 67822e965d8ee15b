"""Random graphs that come with a certified contraction sequence.

The generator runs contraction backwards. It starts from a single vertex and
repeatedly splits a live vertex x into x and a fresh vertex y:

* a black edge xz becomes black edges xz and yz;
* a red edge xz becomes any pair of statuses other than (black, black) and
  (none, none), which is exactly what contracting x and y turns back into red;
* the status of xy is free.

Red degree is kept <= t after every split, and red edges are driven out
before the target size is reached. Read in reverse, the splits are a
t-contraction sequence of the final (red-free) graph.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError
from .graph import Graph, VertexOrder
from .trigraph import ContractionSequence, order_from_sequence, verify_sequence

_B, _N, _R = "b", "n", "r"
_RED_SPLITS = [(_B, _N), (_N, _B), (_B, _R), (_R, _B), (_N, _R), (_R, _N), (_R, _R)]
_RESOLVING = [(_B, _N), (_N, _B)]


@dataclass(frozen=True)
class CertifiedInstance:
    graph: Graph
    sequence: ContractionSequence
    order: VertexOrder
    t: int

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in sorted(self.graph.edges)],
            "sequence": self.sequence.to_json(),
            "order": list(self.order.perm),
            "t": self.t,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> "CertifiedInstance":
        try:
            g = Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
            seq = ContractionSequence.of(data["sequence"])
            order = VertexOrder(tuple(int(v) for v in data["order"]))
            t = int(data["t"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed instance JSON: {exc}") from None
        inst = cls(g, seq, order, t)
        if check:
            if not verify_sequence(g, seq, t).ok:
                raise InputError("instance sequence is not a valid t-contraction sequence")
        return inst


class _SplitState:
    def __init__(self):
        self.status: list[dict[int, str]] = [{}]  # status[x][z] for z != x, absent = none

    @property
    def size(self) -> int:
        return len(self.status)

    def red_neighbors(self, x: int) -> list[int]:
        return [z for z, s in self.status[x].items() if s == _R]

    def red_degree(self, x: int) -> int:
        return sum(1 for s in self.status[x].values() if s == _R)

    def red_edge_count(self) -> int:
        return sum(self.red_degree(x) for x in range(self.size)) // 2

    def set(self, a: int, b: int, s: str) -> None:
        if s == _N:
            self.status[a].pop(b, None)
            self.status[b].pop(a, None)
        else:
            self.status[a][b] = s
            self.status[b][a] = s

    def split(self, x: int, red_choice: dict[int, tuple[str, str]], xy: str) -> int:
        y = self.size
        self.status.append({})
        for z, s in list(self.status[x].items()):
            if s == _B:
                self.set(y, z, _B)
            else:
                sx, sy = red_choice[z]
                self.set(x, z, sx)
                self.set(y, z, sy)
        self.set(x, y, xy)
        return y


def _try_generate(t: int, n: int, rng: random.Random):
    st = _SplitState()
    splits: list[tuple[int, int]] = []
    while st.size < n:
        remaining = n - st.size
        reds = st.red_edge_count()
        resolve = t == 0 or remaining <= reds + t + 2
        if resolve and reds:
            x = max(range(st.size), key=lambda v: (st.red_degree(v), -v))
        else:
            x = rng.randrange(st.size)
        for _attempt in range(20):
            choice = {}
            for z in st.red_neighbors(x):
                pool = _RESOLVING if resolve or rng.random() < 0.5 else _RED_SPLITS
                choice[z] = rng.choice(pool)
            if resolve or t == 0:
                xy = rng.choice((_B, _N))
            else:
                xy = rng.choices((_B, _N, _R), weights=(2, 2, 1))[0]
            trial = _SplitState()
            trial.status = [dict(d) for d in st.status]
            trial.split(x, choice, xy)
            if all(trial.red_degree(v) <= t for v in range(trial.size)):
                st = trial
                splits.append((x, trial.size - 1))
                break
        else:
            return None
    if st.red_edge_count():
        return None
    edges = [(a, b) for a in range(st.size) for b, s in st.status[a].items() if s == _B and a < b]
    return edges, splits


def gen_certified(t: int, n: int, seed: int, retries: int = 200,
                  relabel: bool = True) -> CertifiedInstance:
    """Random graph on n vertices with a verified t-contraction sequence."""
    if t < 0 or n < 1:
        raise InputError("need t >= 0 and n >= 1")
    rng = random.Random(seed)
    for _ in range(retries):
        out = _try_generate(t, n, rng)
        if out is not None:
            break
    else:
        raise ResourceLimitError(f"could not generate a red-free instance after {retries} attempts")
    edges, splits = out
    perm = list(range(n))
    if relabel:
        rng.shuffle(perm)
    g = Graph.from_edges(n, [(perm[a], perm[b]) for a, b in edges])
    seq = _forward_sequence(splits, perm, n)
    check = verify_sequence(g, seq, t)
    if not check.ok:  # pragma: no cover - guarded by construction
        raise AssertionError(f"generator produced width {check.width} > {t}")
    return CertifiedInstance(g, seq, order_from_sequence(g, seq), t)


def _forward_sequence(splits, perm, n) -> ContractionSequence:
    """Reverse the splits and rename into the relabelled ids.

    Merged vertices keep the smaller (relabelled) id, so the live name of each
    generator vertex is tracked while replaying.
    """
    name = {v: perm[v] for v in range(n)}  # generator id -> current live id
    merges = []
    for x, y in reversed(splits):
        a, b = name[x], name[y]
        merges.append((a, b))
        name[x] = min(a, b)
        del name[y]
    return ContractionSequence(tuple(merges))
