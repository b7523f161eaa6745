import random

import pytest

from eqdesign.errors import ResourceLimitExceeded
from eqdesign.game import SubsidyScheme, apply_subsidy, enumerate_schemes
from eqdesign.generate import random_formula, random_game
from eqdesign.gr1 import TOP, parse_formula
from eqdesign.oracle import brute_force_strong, brute_force_weak
from eqdesign.solver import (Designer, Limits, budget_upper_bound, covering_budget,
                             covering_scheme, exact_strong, exact_weak, opt_strong, opt_weak,
                             strong_implementation, unique_opt_strong, unique_opt_weak,
                             weak_implementation)

from conftest import graph_game

GF_P = parse_formula("true -> GF p")


@pytest.mark.parametrize("budget, weak, strong", [(0, False, False), (1, True, False),
                                                  (2, True, True)])
def test_g1_ladder(g1, budget, weak, strong):
    assert (weak_implementation(g1, GF_P, budget) is not None) == weak
    assert (strong_implementation(g1, GF_P, budget) is not None) == strong
    assert brute_force_weak(g1, GF_P, budget) == weak
    assert brute_force_strong(g1, GF_P, budget) == strong


def test_g1_witness(g1):
    w = weak_implementation(g1, GF_P, 1)
    assert w.scheme == SubsidyScheme.from_mapping({("1", "a"): 1})
    assert w.z == (1,)
    assert (w.path.prefix, w.path.cycle) == (("s0",), ("a",))
    w.path.validate(g1)


def test_g1_optimisation(g1):
    assert opt_weak(g1, GF_P)[0] == 1
    assert opt_strong(g1, GF_P)[0] == 2
    assert opt_weak(g1, GF_P, linear_scan=True)[0] == 1
    assert opt_strong(g1, GF_P, linear_scan=True)[0] == 2
    assert exact_weak(g1, GF_P, 1) and not exact_weak(g1, GF_P, 0)
    assert not exact_weak(g1, GF_P, 2)
    assert exact_strong(g1, GF_P, 2) and not exact_strong(g1, GF_P, 1)
    assert unique_opt_weak(g1, GF_P) is True
    assert unique_opt_strong(g1, GF_P) is True
    assert budget_upper_bound(g1) == 2


def test_twin_not_unique(twin):
    assert opt_weak(twin, GF_P)[0] == 1
    hits = [k for k in enumerate_schemes(twin, 1, exact_cost=True)
            if brute_force_weak(apply_subsidy(twin, k), GF_P, 0)]
    assert [k.entries for k in hits] == [((("1", "a"), 1),), ((("1", "c"), 1),)]
    assert unique_opt_weak(twin, GF_P) is False


def test_no_optimum():
    # q labels nothing, so GF q can never hold
    g = graph_game({"x": ["x"]}, {"x": 0}, {"x": {"p"}})
    f = parse_formula("GF q")
    assert opt_weak(g, f) is None and opt_strong(g, f) is None
    assert unique_opt_weak(g, f) is None


def test_optimum_can_exceed_punishment_bound():
    # the p-state is a sink worth -2 while the alternative sink is worth 0:
    # lifting it to 0 costs 2, yet every punishment value is at most 0
    g = graph_game({"s": ["a", "b"], "a": ["a"], "b": ["b"]}, {"s": 0, "a": -2, "b": 0},
                   {"a": {"p"}})
    f = parse_formula("GF p")
    assert budget_upper_bound(g) == 0
    assert opt_weak(g, f)[0] == 2
    assert brute_force_weak(g, f, 2) and not brute_force_weak(g, f, 1)


def test_covering_scheme(g1):
    k = covering_scheme(g1)
    assert k.as_dict() == {("1", "s0"): 1, ("1", "a"): 1}
    assert covering_budget(g1) == 2


def test_top_at_zero_is_ne_existence(g1):
    assert weak_implementation(g1, TOP, 0) is not None


def test_strong_implies_weak_and_monotone():
    rng = random.Random(17)
    for _ in range(25):
        game = random_game(rng, max_states=3)
        f = random_formula(rng)
        with Designer(game, f) as d:
            weak = [d.weak(b) is not None for b in range(3)]
            strong = [d.strong(b) is not None for b in range(3)]
        assert weak == sorted(weak) and strong == sorted(strong)
        assert all(w or not s for w, s in zip(weak, strong))


def test_parallel_matches_serial():
    rng = random.Random(23)
    for _ in range(4):
        game = random_game(rng, max_states=3)
        f = random_formula(rng)
        with Designer(game, f, workers=1) as a, Designer(game, f, workers=3) as b:
            assert a.weak(2) == b.weak(2)
            assert a.strong(2) == b.strong(2)


def test_scheme_cap(g1):
    with pytest.raises(ResourceLimitExceeded):
        weak_implementation(g1, GF_P, 4, limits=Limits(schemes=5))


def test_memo_and_counters(g1):
    with Designer(g1, GF_P) as d:
        d.weak(1)
        seen = d.counters.schemes
        d.weak(1)
        assert d.counters.schemes == seen
        assert d.counters.lps > 0
