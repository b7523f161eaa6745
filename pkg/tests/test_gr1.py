import pytest

from eqdesign.errors import FormulaSyntaxError, UnknownPropositionError
from eqdesign.game import LassoPath
from eqdesign.gr1 import (TOP, And, Not, Or, Prop, eval_on_lasso, holds_on_cycle,
                          negation_holds_on_cycle, parse_formula, satisfying_states)


@pytest.mark.parametrize("text, lhs, rhs", [
    ("GF p", (), (Prop("p"),)),
    ("true -> GF p", (), (Prop("p"),)),
    ("GF p -> GF q", (Prop("p"),), (Prop("q"),)),
    ("GF p & GF !q -> GF (p | q) & GF p & q",
     (Prop("p"), Not(Prop("q"))), (Or((Prop("p"), Prop("q"))), And((Prop("p"), Prop("q"))))),
])
def test_parse(text, lhs, rhs):
    f = parse_formula(text)
    assert (f.antecedents, f.consequents) == (lhs, rhs)
    assert parse_formula(str(f)) == f


def test_true_is_top():
    assert parse_formula("true") == TOP
    assert parse_formula("true -> true") == TOP
    assert TOP.is_trivial


@pytest.mark.parametrize("text", ["GF GF p", "GF (p", "GF p ->", "p", "GF p $ q", ""])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("GF p & GF GF q")
    assert info.value.position == 10


def test_unknown_proposition(g1):
    with pytest.raises(UnknownPropositionError):
        satisfying_states(g1, Prop("zz"))


def test_satisfying_states(g1):
    assert satisfying_states(g1, Prop("p")) == {"a"}
    assert satisfying_states(g1, Not(Prop("p"))) == {"s0", "b"}


def test_cycle_semantics():
    P, Q = frozenset({"x"}), frozenset({"y"})
    assert holds_on_cycle([], [P], {"x"})
    assert not holds_on_cycle([], [P], {"y"})
    # a failed antecedent makes the implication vacuous
    assert holds_on_cycle([Q], [P], {"z"})
    assert not holds_on_cycle([Q], [P], {"y"})
    assert holds_on_cycle([], [], set())
    for cycle in ({"x"}, {"y"}, {"x", "y"}, set()):
        assert negation_holds_on_cycle([Q], [P], cycle) == (not holds_on_cycle([Q], [P], cycle))


def test_eval_on_lasso(g1):
    f = parse_formula("GF p")
    to_a = LassoPath(("s0",), ("a",), (("go_a",), ("stay",)))
    to_b = LassoPath(("s0",), ("b",), (("go_b",), ("stay",)))
    assert eval_on_lasso(f, g1, to_a) and not eval_on_lasso(f, g1, to_b)
    # the prefix visits nothing relevant but must not count either way
    assert eval_on_lasso(parse_formula("GF !p"), g1, to_b)
