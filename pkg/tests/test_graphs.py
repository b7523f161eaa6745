from collections import Counter
from fractions import Fraction

from eqdesign.graphs import (bfs_path, eulerian_circuit, max_cycle_mean, one_player_values,
                             reachable, tarjan_scc)


def test_tarjan_sinks_first():
    succ = {0: [1], 1: [0, 2], 2: [3], 3: [2], 4: [4]}
    comps = tarjan_scc(list(succ), succ.__getitem__)
    assert sorted(map(sorted, comps)) == [[0, 1], [2, 3], [4]]
    order = [frozenset(c) for c in comps]
    assert order.index(frozenset({2, 3})) < order.index(frozenset({0, 1}))


def test_tarjan_deep_chain():
    n = 5000
    comps = tarjan_scc(range(n), lambda v: [v + 1] if v + 1 < n else [0])
    assert len(comps) == 1 and len(comps[0]) == n


def test_karp():
    succ = [[1], [0, 2], [2]]
    assert max_cycle_mean([0, 1], succ, [3, 0]) == Fraction(3, 2)
    assert max_cycle_mean([0, 1, 2], [[1], [2, 0], [0]], [1, 0, -3]) == Fraction(1, 2)


def test_one_player_values():
    succ = [[1, 2], [1], [2]]
    assert one_player_values(succ, [0, -1, 2], maximize=True) == [2, -1, 2]
    assert one_player_values(succ, [0, -1, 2], maximize=False) == [-1, -1, 2]


def test_bfs_and_reachable():
    out = {"a": [("ab", "b")], "b": [("bc", "c")], "c": []}
    assert bfs_path("a", {"c"}, lambda v: out[v]) == ["ab", "bc"]
    assert bfs_path("a", {"a"}, lambda v: out[v]) == []
    assert bfs_path("c", {"a"}, lambda v: out[v]) is None
    assert reachable("b", lambda v: [t for _, t in out[v]]) == {"b", "c"}


def test_euler_uses_every_copy():
    edges = [("x", "y"), ("y", "x"), ("x", "z"), ("z", "x"), ("x", "y"), ("y", "x")]
    circuit = eulerian_circuit("x", edges, lambda e: e[0], lambda e: e[1])
    assert Counter(circuit) == Counter(edges)
    assert circuit[0][0] == "x" and circuit[-1][1] == "x"
    for a, b in zip(circuit, circuit[1:]):
        assert a[1] == b[0]
