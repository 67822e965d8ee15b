
import pytest

from conftest import all_graphs, random_graph
from twl.errors import InputError, InvalidSequenceError, ResourceLimitError
from twl.generate import gen_certified
from twl.graph import Graph, complete_graph, cycle_graph, empty_graph, path_graph
from twl.trigraph import (ContractionSequence, Trigraph, collapsible, contract, exact_twinwidth,
                          max_red_degree, order_from_sequence, verify_sequence)


def test_contract_complete_twins():
    tg = contract(Trigraph.from_graph(complete_graph(3)), 0, 1)
    assert tg.vertices == {0, 2} and tg.black == {(0, 2)} and not tg.red


def test_contract_path():
    tg = contract(Trigraph.from_graph(path_graph(4)), 0, 1)
    assert tg.red == {(0, 2)} and tg.black == {(2, 3)}
    assert max_red_degree(tg) == 1


def test_contract_edgeless():
    tg = contract(Trigraph.from_graph(empty_graph(2)), 0, 1)
    assert tg.vertices == {0} and not tg.black and not tg.red


def test_red_red_stays_red():
    # two red edges into x merge into a red edge, not an absent one
    tg = Trigraph(frozenset({0, 1, 2}), frozenset(), frozenset({(0, 2), (1, 2)}))
    assert contract(tg, 0, 1).red == {(0, 2)}


def test_red_star_and_plain():
    star = Trigraph(frozenset(range(4)), frozenset(), frozenset({(0, 1), (0, 2), (0, 3)}))
    assert max_red_degree(star) == 3
    assert max_red_degree(Trigraph.from_graph(cycle_graph(5))) == 0


def test_contract_errors():
    tg = Trigraph.from_graph(path_graph(3))
    with pytest.raises(InputError):
        contract(tg, 1, 1)
    with pytest.raises(InputError):
        contract(contract(tg, 0, 1), 1, 2)
    with pytest.raises(InputError):
        Trigraph(frozenset({0, 1}), frozenset({(0, 1)}), frozenset({(0, 1)}))


def test_contract_commutes(rng):
    for _ in range(50):
        g = random_graph(7, 0.5, rng)
        u, v = rng.sample(range(7), 2)
        assert contract(Trigraph.from_graph(g), u, v) == contract(Trigraph.from_graph(g), v, u)


def test_verify_examples():
    K3 = complete_graph(3)
    assert verify_sequence(K3, ContractionSequence(((0, 1), (0, 2))), 0).ok
    P4 = path_graph(4)
    seq = ContractionSequence(((0, 1), (0, 2), (0, 3)))
    check = verify_sequence(P4, seq, 1)
    assert check.ok and [s.max_red for s in check.trace] == [1, 1, 0]
    assert check.trace[0].to_json() == {"step": 0, "merged": [0, 1], "maxRed": 1}
    assert not verify_sequence(P4, seq, 0).ok


def test_p4_no_zero_sequence():
    P4 = path_graph(4)
    for u in range(4):
        for v in range(u + 1, 4):
            assert max_red_degree(contract(Trigraph.from_graph(P4), u, v)) >= 1


def test_verify_structural_errors():
    P4 = path_graph(4)
    with pytest.raises(InvalidSequenceError, match="not live"):
        verify_sequence(P4, ContractionSequence(((0, 1), (1, 2), (0, 3))), 3)
    with pytest.raises(InvalidSequenceError, match="needs 3"):
        verify_sequence(P4, ContractionSequence(((0, 1),)), 3)
    with pytest.raises(InvalidSequenceError, match="itself"):
        verify_sequence(P4, ContractionSequence(((0, 0), (1, 2), (1, 3))), 3)


def replay_widths(g, seq):
    tg = Trigraph.from_graph(g)
    out = []
    for u, v in seq.merges:
        tg = contract(tg, u, v)
        out.append(max_red_degree(tg))
    return out


def test_replay_matches_trace(certified_suite):
    for inst in certified_suite:
        if inst.graph.n > 60:
            continue
        check = verify_sequence(inst.graph, inst.sequence, inst.t)
        assert check.ok
        assert [s.max_red for s in check.trace] == replay_widths(inst.graph, inst.sequence)


def test_exact_table():
    for n in range(1, 9):
        assert exact_twinwidth(complete_graph(n)).tww == 0
        assert exact_twinwidth(empty_graph(n)).tww == 0
    assert exact_twinwidth(path_graph(4)).tww == 1
    assert exact_twinwidth(cycle_graph(5)).tww == 2


def test_exact_witness_verifies(rng):
    for _ in range(30):
        g = random_graph(rng.randint(2, 8), rng.random(), rng)
        res = exact_twinwidth(g)
        assert verify_sequence(g, res.sequence, res.tww).ok
        if res.tww > 0:
            assert collapsible(g, res.tww - 1) is None


def test_exact_limit():
    with pytest.raises(ResourceLimitError):
        exact_twinwidth(path_graph(11))


def brute_width(g):
    """Exhaustive over every contraction order using the plain contract rule."""
    best = {}

    def go(tg):
        if len(tg.vertices) == 1:
            return 0
        key = (tg.black, tg.red)
        if key in best:
            return best[key]
        vs = sorted(tg.vertices)
        res = min(max(max_red_degree(nxt), go(nxt))
                  for i, u in enumerate(vs) for v in vs[i + 1:]
                  for nxt in [contract(tg, u, v)])
        best[key] = res
        return res

    return go(Trigraph.from_graph(g))


def test_exact_matches_exhaustive_oracle(rng):
    assert brute_width(path_graph(4)) == 1
    assert brute_width(cycle_graph(5)) == 2
    for _ in range(25):
        g = random_graph(rng.randint(2, 6), rng.random(), rng)
        assert exact_twinwidth(g).tww == brute_width(g)


def twin_reducible(g):
    """Independent oracle: delete one of a twin pair until stuck."""
    live = set(range(g.n))
    masks = list(g.masks)
    while len(live) > 1:
        for u in live:
            for v in live:
                if u < v and (masks[u] & ~(1 << v)) == (masks[v] & ~(1 << u)):
                    live.remove(v)
                    for x in range(g.n):
                        masks[x] &= ~(1 << v)
                    break
            else:
                continue
            break
        else:
            return False
    return True


@pytest.mark.parametrize("n", range(1, 7))
def test_zero_width_iff_twin_reducible(n):
    for g in all_graphs(n):
        assert (collapsible(g, 0) is not None) == twin_reducible(g)


def test_relabel_invariance(rng):
    for _ in range(25):
        n = rng.randint(2, 8)
        g = random_graph(n, rng.random(), rng)
        perm = list(range(n))
        rng.shuffle(perm)
        assert exact_twinwidth(g).tww == exact_twinwidth(g.relabel(perm)).tww


def test_order_from_sequence():
    K3 = complete_graph(3)
    assert order_from_sequence(K3, ContractionSequence(((0, 1), (0, 2)))).perm == (0, 1, 2)
    assert order_from_sequence(Graph(1, frozenset()), ContractionSequence(())).perm == (0,)
    seq = ContractionSequence(((2, 3), (1, 0), (2, 0)))
    assert order_from_sequence(path_graph(4), seq).perm == (2, 3, 1, 0)
    with pytest.raises(InvalidSequenceError):
        order_from_sequence(K3, ContractionSequence(((0, 1), (1, 2))))


def test_order_subtrees_are_intervals():
    inst = gen_certified(2, 50, 7)
    pos = inst.order.position
    leaves = {v: {v} for v in range(inst.graph.n)}
    for u, v in inst.sequence.merges:
        merged = leaves.pop(u) | leaves.pop(v)
        leaves[min(u, v)] = merged
        ps = sorted(pos[x] for x in merged)
        assert ps == list(range(ps[0], ps[0] + len(ps)))
