"""GR(1) formulas ``GF a1 & ... & GF am -> GF g1 & ... & GF gn``.

Boolean parts use ``!`` (or ``~``), ``&``, ``|``, parentheses and the
constants ``true``/``false``; negation binds tightest, then ``&``, then ``|``.
Either side of ``->`` may be ``true``; a bare conjunction of ``GF`` terms is
read as ``true -> ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import FormulaSyntaxError, UnknownPropositionError
from .game import Game, LassoPath


class BoolCombo:
    def holds(self, label: frozenset) -> bool:
        raise NotImplementedError

    def atoms(self) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(BoolCombo):
    value: bool

    def holds(self, label):
        return self.value

    def atoms(self):
        return frozenset()

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Prop(BoolCombo):
    name: str

    def holds(self, label):
        return self.name in label

    def atoms(self):
        return frozenset([self.name])

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(BoolCombo):
    arg: BoolCombo

    def holds(self, label):
        return not self.arg.holds(label)

    def atoms(self):
        return self.arg.atoms()

    def __str__(self):
        return f"!{_wrap(self.arg)}"


@dataclass(frozen=True)
class And(BoolCombo):
    args: tuple

    def holds(self, label):
        return all(a.holds(label) for a in self.args)

    def atoms(self):
        return frozenset().union(*(a.atoms() for a in self.args))

    def __str__(self):
        return " & ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Or(BoolCombo):
    args: tuple

    def holds(self, label):
        return any(a.holds(label) for a in self.args)

    def atoms(self):
        return frozenset().union(*(a.atoms() for a in self.args))

    def __str__(self):
        return " | ".join(_wrap(a) for a in self.args)


def _wrap(c: BoolCombo) -> str:
    return str(c) if isinstance(c, (Const, Prop, Not)) else f"({c})"


TRUE = Const(True)


@dataclass(frozen=True)
class GR1Formula:
    antecedents: tuple = ()
    consequents: tuple = ()

    def __str__(self):
        lhs = " & ".join(f"GF {_wrap(c)}" for c in self.antecedents) or "true"
        rhs = " & ".join(f"GF {_wrap(c)}" for c in self.consequents) or "true"
        return f"{lhs} -> {rhs}"

    @property
    def is_trivial(self) -> bool:
        return not self.consequents

    def atoms(self) -> frozenset:
        return frozenset().union(*(c.atoms() for c in self.antecedents + self.consequents))


TOP = GR1Formula()

_TOKEN = re.compile(r"\s*(?:(->)|(GF)\b|(true|false)\b|([A-Za-z_][A-Za-z0-9_.]*)|([!~&|()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                                     len(text) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        kind = ("arrow", "gf", "const", "ident", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self, offset=0):
        return self.tokens[min(self.k + offset, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise FormulaSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def formula(self) -> GR1Formula:
        lhs = self.side()
        if self.peek()[0] == "arrow":
            self.take()
            rhs = self.side()
        else:
            lhs, rhs = [], lhs
        kind, val, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {val!r}", pos)
        return GR1Formula(tuple(lhs), tuple(rhs))

    def side(self) -> list:
        kind, val, pos = self.peek()
        if kind == "const" and val == "true" and self.peek(1)[0] in ("arrow", "end"):
            self.take()
            return []
        terms = [self.gf_term()]
        while self.peek()[1] == "&" and self.peek(1)[0] == "gf":
            self.take()
            terms.append(self.gf_term())
        return terms

    def gf_term(self) -> BoolCombo:
        kind, val, pos = self.take()
        if kind != "gf":
            raise FormulaSyntaxError(f"expected 'GF', found {val or 'end of input'!r}", pos)
        return self.disjunction()

    def disjunction(self) -> BoolCombo:
        args = [self.conjunction()]
        while self.peek()[1] == "|":
            self.take()
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self) -> BoolCombo:
        args = [self.unary()]
        # "& GF" starts the next temporal conjunct, not a Boolean one
        while self.peek()[1] == "&" and self.peek(1)[0] != "gf":
            self.take()
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> BoolCombo:
        kind, val, pos = self.take()
        if val in ("!", "~"):
            return Not(self.unary())
        if val == "(":
            inner = self.disjunction()
            self.expect(")")
            return inner
        if kind == "const":
            return Const(val == "true")
        if kind == "ident":
            return Prop(val)
        if kind == "gf":
            raise FormulaSyntaxError("nested temporal operator; not a GR(1) formula", pos)
        raise FormulaSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_formula(text: str) -> GR1Formula:
    return _Parser(text).formula()


def satisfying_states(game: Game, combo: BoolCombo) -> frozenset:
    arena = game.arena
    unknown = combo.atoms() - arena.propositions
    if unknown:
        raise UnknownPropositionError(f"propositions {sorted(unknown)} do not occur in the game")
    return frozenset(s for s in arena.states if combo.holds(arena.label(s)))


def state_sets(game: Game, formula: GR1Formula) -> tuple[list, list]:
    """``(V(psi_1..psi_m), V(theta_1..theta_n))``."""
    return ([satisfying_states(game, c) for c in formula.antecedents],
            [satisfying_states(game, c) for c in formula.consequents])


def holds_on_cycle(psi_sets: Iterable[frozenset], theta_sets: Iterable[frozenset],
                   cycle_states: Iterable[str]) -> bool:
    visited = frozenset(cycle_states)
    if all(visited & v for v in theta_sets):
        return True
    return any(not (visited & v) for v in psi_sets)


def eval_on_lasso(formula: GR1Formula, game: Game, path: LassoPath) -> bool:
    psi_sets, theta_sets = state_sets(game, formula)
    return holds_on_cycle(psi_sets, theta_sets, path.cycle)


def negation_holds_on_cycle(psi_sets, theta_sets, cycle_states) -> bool:
    """All antecedents recur and some consequent does not."""
    visited = frozenset(cycle_states)
    return all(visited & v for v in psi_sets) and any(not (visited & v) for v in theta_sets)
