import itertools
import random

import pytest
from hypothesis import settings

from twl.generate import gen_certified
from twl.graph import Graph

# first calls pay for numba compilation, so wall-clock deadlines are meaningless
settings.register_profile("twl", deadline=None)
settings.load_profile("twl")


def all_graphs(n):
    """Every labelled simple graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if code >> i & 1))


def random_graph(n, p, rng):
    return Graph(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


@pytest.fixture(scope="session")
def certified_suite():
    """A fixed spread of certified instances shared by several test modules."""
    out = []
    for t in (0, 1, 2):
        for n, seed in ((12, 0), (60, 1), (200, 2)):
            out.append(gen_certified(t, n, seed))
    return out


@pytest.fixture
def rng():
    return random.Random(12345)
