"""Cycle-flow linear programs over a pruned game and lasso extraction.

One variable ``x_e`` per retained edge. Constraint families:

* ``nonneg``        ``x_e >= 0``
* ``total``         ``sum x_e >= 1``
* ``payoff``        per player, ``sum (q*w'(src e) - p) x_e >= 0`` where ``z = p/q``
* ``goal``          visit (``>= 1``) or avoid (``= 0``) rows over edges leaving a state set
* ``conservation``  inflow equals outflow at every state

A solution is a circulation; a lasso is read off only from solutions whose
support is connected, because disjoint cycles cannot be followed by one path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .game import Edge, LassoPath
from .graphs import bfs_path, eulerian_circuit, tarjan_scc
from .mpg import PrunedGame
from .simplex import DEFAULT_PIVOT_CAP, find_feasible_point


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple  # one integer/Fraction per variable
    relation: str  # ">=" or "="
    rhs: int
    family: str


@dataclass(frozen=True)
class FlowLP:
    edges: tuple[Edge, ...]
    constraints: tuple[Constraint, ...]

    def with_rows(self, rows: Iterable[Constraint]) -> "FlowLP":
        return FlowLP(self.edges, self.constraints + tuple(rows))

    def dump(self) -> str:
        lines = ["# variables: " + " ".join(f"{e.src}-{'.'.join(e.profile)}->{e.dst}"
                                            for e in self.edges)]
        for c in self.constraints:
            coeffs = " ".join(str(x) for x in c.coeffs)
            lines.append(f"{coeffs} {c.relation} {c.rhs}  # {c.family}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FlowSolution:
    values: tuple[Fraction, ...]

    def support(self) -> list[int]:
        return [k for k, x in enumerate(self.values) if x]


# -- modes --------------------------------------------------------------------

@dataclass(frozen=True)
class NEOnly:
    pass


@dataclass(frozen=True)
class VisitAll:
    sets: tuple = ()


@dataclass(frozen=True)
class Avoid:
    states: frozenset = frozenset()


@dataclass(frozen=True)
class NegGR1:
    """All antecedent sets recur while one consequent set is avoided."""

    psi_sets: tuple = ()
    theta_set: frozenset = frozenset()


@dataclass
class LPStats:
    solved: int = 0
    dump_dir: str | None = None
    _serial: int = field(default=0, repr=False)

    def record(self, lp: FlowLP):
        self.solved += 1
        if self.dump_dir:
            os.makedirs(self.dump_dir, exist_ok=True)
            self._serial += 1
            with open(os.path.join(self.dump_dir, f"lp_{self._serial:06d}.txt"), "w") as fh:
                fh.write(lp.dump())


# -- construction -------------------------------------------------------------

def _row(edges, chosen, value=1):
    return tuple(value if chosen(e) else 0 for e in edges)


def build_base_lp(pg: PrunedGame, edges: Sequence[Edge] | None = None) -> FlowLP:
    edges = tuple(pg.edges if edges is None else edges)
    n = len(edges)
    rows = [Constraint(tuple(1 if k == j else 0 for k in range(n)), ">=", 0, "nonneg")
            for j in range(n)]
    rows.append(Constraint((1,) * n, ">=", 1, "total"))
    game = pg.base
    for i, z in zip(game.players, pg.z):
        w = game.weights[i]
        rows.append(Constraint(tuple(z.denominator * w[e.src] - z.numerator for e in edges),
                               ">=", 0, "payoff"))
    states = []
    for e in edges:
        for s in (e.src, e.dst):
            if s not in states:
                states.append(s)
    for v in states:
        coeffs = tuple((e.src == v) - (e.dst == v) for e in edges)
        if any(coeffs):
            rows.append(Constraint(coeffs, "=", 0, "conservation"))
    return FlowLP(edges, tuple(rows))


def add_avoid_constraint(lp: FlowLP, states: Iterable[str]) -> FlowLP:
    states = frozenset(states)
    return lp.with_rows([Constraint(_row(lp.edges, lambda e: e.src in states), "=", 0, "goal")])


def add_visit_constraints(lp: FlowLP, state_sets: Sequence[Iterable[str]]) -> FlowLP:
    rows = []
    for v in state_sets:
        v = frozenset(v)
        rows.append(Constraint(_row(lp.edges, lambda e: e.src in v), ">=", 1, "goal"))
    return lp.with_rows(rows)


def mode_lp(pg: PrunedGame, mode, edges: Sequence[Edge] | None = None) -> FlowLP:
    lp = build_base_lp(pg, edges)
    if isinstance(mode, VisitAll):
        return add_visit_constraints(lp, mode.sets)
    if isinstance(mode, Avoid):
        return add_avoid_constraint(lp, mode.states)
    if isinstance(mode, NegGR1):
        return add_avoid_constraint(add_visit_constraints(lp, mode.psi_sets), mode.theta_set)
    if isinstance(mode, NEOnly):
        return lp
    raise TypeError(f"unknown mode {mode!r}")


def feasible(lp: FlowLP, max_pivots: int = DEFAULT_PIVOT_CAP) -> FlowSolution | None:
    rows = [(c.coeffs, c.relation, c.rhs) for c in lp.constraints
            # non-negativity is implicit in the simplex's x >= 0
            if c.family != "nonneg"]
    x = find_feasible_point(rows, len(lp.edges), max_pivots)
    return None if x is None else FlowSolution(tuple(x))


# -- path extraction ----------------------------------------------------------

def _weak_components(edges: Sequence[Edge]) -> list[list[Edge]]:
    parent = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        parent[find(e.src)] = find(e.dst)
    groups: dict = {}
    for e in edges:
        groups.setdefault(find(e.src), []).append(e)
    return list(groups.values())


def _connected_flow(pg, mode, edges, stats, max_pivots) -> tuple | None:
    """A feasible circulation on ``edges`` with connected support, if any.

    Feasible circulations are closed under addition, so the union of all
    their supports (the maximal support) is attained by one of them. If that
    support is connected we are done; otherwise any connected solution lives
    inside one of its components, which are searched in turn.
    """
    lp = mode_lp(pg, mode, edges)
    stats.record(lp)
    sol = feasible(lp, max_pivots)
    if sol is None:
        return None
    total = list(sol.values)
    support = set(sol.support())
    while len(support) < len(edges):
        rest = [k for k in range(len(edges)) if k not in support]
        grow = lp.with_rows([Constraint(_row(range(len(edges)), lambda k: k in rest),
                                        ">=", 1, "support")])
        stats.record(grow)
        more = feasible(grow, max_pivots)
        if more is None:
            break
        total = [a + b for a, b in zip(total, more.values)]
        support |= set(more.support())
    used = [edges[k] for k in sorted(support)]
    parts = _weak_components(used)
    if len(parts) == 1:
        return tuple(edges), tuple(total)
    for part in parts:
        found = _connected_flow(pg, mode, part, stats, max_pivots)
        if found:
            return found
    return None


def _lasso_from_flow(pg: PrunedGame, edges, values) -> LassoPath:
    scale = lcm(*(x.denominator for x in values if x))
    copies = []
    for e, x in zip(edges, values):
        copies.extend([e] * int(x * scale))
    out = {}
    for e in pg.edges:
        out.setdefault(e.src, []).append((e, e.dst))
    on_cycle = {e.src for e in copies}
    prefix_edges = bfs_path(pg.base.arena.initial, on_cycle, lambda v: out.get(v, ()))
    entry = prefix_edges[-1].dst if prefix_edges else pg.base.arena.initial
    circuit = eulerian_circuit(entry, copies, lambda e: e.src, lambda e: e.dst)
    return LassoPath(tuple(e.src for e in prefix_edges),
                     tuple(e.src for e in circuit),
                     tuple(e.profile for e in prefix_edges) + tuple(e.profile for e in circuit))


def check_path_exists(pg: PrunedGame, mode, stats: LPStats | None = None,
                      max_pivots: int = DEFAULT_PIVOT_CAP) -> LassoPath | None:
    """A lasso inside ``pg`` meeting every ``z`` threshold and the mode's demand."""
    if pg.empty:
        return None
    stats = stats or LPStats()
    out = {}
    for e in pg.edges:
        out.setdefault(e.src, []).append(e.dst)
    order = {s: k for k, s in enumerate(pg.states)}
    comps = tarjan_scc(pg.states, lambda v: out.get(v, ()))
    comps.sort(key=lambda c: min(order[s] for s in c))
    for comp in comps:
        members = set(comp)
        inner = [e for e in pg.edges if e.src in members and e.dst in members]
        if not inner:
            continue
        found = _connected_flow(pg, mode, inner, stats, max_pivots)
        if found:
            return _lasso_from_flow(pg, *found)
    return None
