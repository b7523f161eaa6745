"""Randomized properties driven by hypothesis."""

import random
from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from eqdesign.game import (LassoPath, SubsidyScheme, apply_subsidy, count_schemes,
                           mean_payoff, parse_game, serialize_game)
from eqdesign.generate import random_formula, random_game, random_turn_based
from eqdesign.mpg import TurnBasedMPG, prune, punishment_table, solve_mpg
from eqdesign.oracle import brute_force_lp_feasible
from eqdesign.simplex import find_feasible_point
from eqdesign.solver import Designer

from conftest import graph_game

seeds = st.integers(0, 2**32 - 1)
fast = settings(max_examples=40, deadline=None)


@fast
@given(seeds)
def test_serialize_round_trip(seed):
    game = random_game(random.Random(seed))
    assert parse_game(serialize_game(game)) == game


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4))
def test_count_equals_enumeration(m, budget):
    assert count_schemes(m, budget) == sum(
        1 for v in product(range(budget + 1), repeat=m) if sum(v) <= budget)


@fast
@given(seeds, st.integers(0, 5))
def test_mean_payoff_ignores_prefix_and_rotation(seed, k):
    rng = random.Random(seed)
    states = tuple(f"s{j}" for j in range(rng.randint(1, 4)))
    succ = {s: [states[(j + 1) % len(states)]] for j, s in enumerate(states)}
    g = graph_game(succ, {s: rng.randint(-3, 3) for s in states})
    prof = tuple((f"to_{succ[s][0]}",) for s in states)
    base = LassoPath((), states, prof)
    r = k % len(states)
    turned = LassoPath(states[:r], states[r:] + states[:r], prof[:r] + prof[r:] + prof[:r])
    assert mean_payoff(base, g, "1") == mean_payoff(turned, g, "1")


@fast
@given(seeds, st.integers(-3, 3))
def test_solve_mpg_shift(seed, c):
    g = random_turn_based(random.Random(seed), max_nodes=5)
    shifted = TurnBasedMPG(g.labels, g.owner, tuple(w + c for w in g.weights), g.successors)
    assert solve_mpg(shifted).values == tuple(v + c for v in solve_mpg(g).values)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_subsidy_monotone(seed):
    rng = random.Random(seed)
    game = random_game(rng, max_states=3)
    f = random_formula(rng)
    with Designer(game, f) as d:
        verdicts = [d.weak(b) is not None for b in range(3)]
    assert verdicts == sorted(verdicts)


@fast
@given(seeds)
def test_subsidy_never_lowers_punishment(seed):
    rng = random.Random(seed)
    game = random_game(rng)
    cell = rng.choice(game.cells())
    richer = apply_subsidy(game, SubsidyScheme.from_mapping({cell: rng.randint(1, 2)}))
    before, after = punishment_table(game), punishment_table(richer)
    assert all(after.values[k] >= v for k, v in before.values.items())


@fast
@given(seeds)
def test_prune_antitone(seed):
    game = random_game(random.Random(seed))
    table = punishment_table(game)
    grid = list(table.grid())
    lo, hi = min(grid), max(grid)
    if all(a <= b for a, b in zip(lo, hi)):
        assert set(prune(game, table, lo).edges) <= set(prune(game, table, hi).edges)


rows = st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=3, max_size=3),
                          st.sampled_from([">=", "<=", "="]), st.integers(-2, 2)),
                min_size=1, max_size=4)


@settings(max_examples=100, deadline=None)
@given(rows)
def test_simplex_vs_basis_enumeration(rs):
    x = find_feasible_point(rs, 3)
    assert (x is not None) == brute_force_lp_feasible(rs, 3)
    if x is not None:
        for coeffs, rel, rhs in rs:
            lhs = sum(Fraction(a) * b for a, b in zip(coeffs, x))
            assert {">=": lhs >= rhs, "<=": lhs <= rhs, "=": lhs == rhs}[rel]
