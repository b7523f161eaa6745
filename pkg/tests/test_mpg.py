import random
from fractions import Fraction

import pytest

from eqdesign.errors import ResourceLimitExceeded
from eqdesign.generate import random_game, random_turn_based
from eqdesign.mpg import (MAX, MIN, TurnBasedMPG, _certify, build_punishment_game, is_z_secure,
                          prune, punishment_table, solve_mpg)
from eqdesign.oracle import brute_force_mpg, brute_force_punishment


def test_g1_punishment(g1):
    table = punishment_table(g1)
    assert [table.value("1", s) for s in g1.states] == [1, 0, 1]
    assert table.grid_values("1") == [0, 1]
    assert table.grid_size() == 2
    assert table.max_vector() == (1,)


def test_punishment_game_shape(g1):
    tb = build_punishment_game(g1, "1")
    # three state nodes then one response node per state (no opponents)
    assert len(tb) == 6
    assert tb.owner[:3] == (MIN,) * 3 and tb.owner[3:] == (MAX,) * 3
    assert tb.labels[3] == ("response", "s0", ())


def test_tie_trap():
    # greedy tie-breaking once picked MAX's self-loop at node 0 (mean -1)
    g = TurnBasedMPG(tuple(range(6)), (MAX, MAX, MIN, MIN, MAX, MIN), (-1, -1, 1, 0, -2, 1),
                     ((0, 1, 5), (0, 2, 5), (2, 3, 4), (1, 2, 5), (3, 4), (0, 3, 4)))
    sol = solve_mpg(g)
    assert sol.values == (Fraction(-1, 2),) * 6
    assert sol.max_strategy[0] != 0
    assert _certify(g, sol.values, sol.max_strategy, sol.min_strategy)


def test_strategies_are_optimal():
    rng = random.Random(5)
    for _ in range(40):
        g = random_turn_based(rng)
        sol = solve_mpg(g)
        assert set(sol.max_strategy) == {v for v in range(len(g)) if g.owner[v] == MAX}
        assert all(sol.max_strategy[v] in g.successors[v] for v in sol.max_strategy)
        assert _certify(g, sol.values, sol.max_strategy, sol.min_strategy)


def test_matches_brute_force():
    rng = random.Random(9)
    for _ in range(60):
        g = random_turn_based(rng)
        assert list(solve_mpg(g).values) == brute_force_mpg(g)


def test_without_early_stop():
    rng = random.Random(2)
    for _ in range(10):
        g = random_turn_based(rng, max_nodes=4)
        assert solve_mpg(g, early_stop=False).values == solve_mpg(g).values


def test_horizon_cap():
    g = TurnBasedMPG((0, 1), (MAX, MIN), (5, -5), ((1,), (0,)))
    with pytest.raises(ResourceLimitExceeded):
        solve_mpg(g, horizon_cap=10)


def test_constant_weights():
    g = TurnBasedMPG((0, 1, 2), (MAX, MIN, MAX), (2, 2, 2), ((1, 2), (0,), (2, 0)))
    assert solve_mpg(g).values == (2, 2, 2)


def test_punishment_matches_oracle():
    rng = random.Random(4)
    for _ in range(40):
        game = random_game(rng)
        table = punishment_table(game)
        for i in game.players:
            assert brute_force_punishment(game, i) == {s: table.value(i, s) for s in game.states}


def test_z_security(g1):
    table = punishment_table(g1)
    # from s0 the player can always deviate to b, worth 1
    assert not is_z_secure(g1, table, "s0", ("go_a",), (0,))
    assert is_z_secure(g1, table, "s0", ("go_a",), (1,))
    assert is_z_secure(g1, table, "a", ("stay",), (0,))


def test_prune_g1(g1):
    table = punishment_table(g1)
    at_zero = prune(g1, table, (0,))
    assert at_zero.empty
    at_one = prune(g1, table, (1,))
    # nothing is cut at z = 1; the a-loop is excluded later by the payoff rows
    assert at_one.states == ("s0", "a", "b")
    assert len(at_one.edges) == 4


def test_prune_is_antitone():
    rng = random.Random(8)
    for _ in range(30):
        game = random_game(rng)
        table = punishment_table(game)
        grid = sorted(table.grid())
        for lo in grid:
            for hi in grid:
                if all(a <= b for a, b in zip(lo, hi)):
                    assert set(prune(game, table, lo).edges) <= set(prune(game, table, hi).edges)


def test_two_player_node_count():
    rng = random.Random(0)
    while True:
        game = random_game(rng, max_states=2, max_players=2, max_actions=2)
        if (len(game.states) == 2 and len(game.players) == 2 and
                all(len(a) == 2 for a in game.arena.actions.values())):
            break
    tb = build_punishment_game(game, "1")
    assert tb.owner.count(MIN) == 2 and tb.owner.count(MAX) == 4


def test_forced_and_chosen_loops():
    assert solve_mpg(TurnBasedMPG((0,), (MAX,), (5,), ((0,),))).values == (5,)
    g = TurnBasedMPG((0, 1, 2), (MAX, MAX, MAX), (0, 0, 1), ((1, 2), (1,), (2,)))
    assert solve_mpg(g).values[0] == 1
