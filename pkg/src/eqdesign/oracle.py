"""Brute-force reference implementations for validating the solver.

Nothing here shares code with the fast path beyond the data model and the
GR(1) cycle semantics: punishment values come from enumerating positional
strategies, lassos from explicit path search, schemes from a filtered
Cartesian product, and LP feasibility from basis enumeration.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import ResourceLimitExceeded
from .game import Game, LassoPath, SubsidyScheme, apply_subsidy, mean_payoff
from .gr1 import GR1Formula, holds_on_cycle, negation_holds_on_cycle, state_sets
from .mpg import TurnBasedMPG


@dataclass(frozen=True)
class OracleConfig:
    max_prefix_length: int | None = None  # default |St|
    max_cycle_length: int | None = None   # default |St| * (n + m + 1)
    max_states: int = 8
    max_strategies: int = 10**6

    def __post_init__(self):
        for name in ("max_prefix_length", "max_cycle_length"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.max_states < 1 or self.max_strategies < 1:
            raise ValueError("caps must be at least 1")

    def cycle_cap(self, game: Game, formula: GR1Formula | None = None) -> int:
        if self.max_cycle_length is not None:
            return self.max_cycle_length
        extra = 0 if formula is None else len(formula.antecedents) + len(formula.consequents)
        return len(game.states) * (extra + 1)


def _check_size(game: Game, cfg: OracleConfig):
    if len(game.states) > cfg.max_states:
        raise ResourceLimitExceeded(f"{len(game.states)} states exceed the oracle cap")


# -- lassos ---------------------------------------------------------------------

def enumerate_lassos(game: Game, cfg: OracleConfig = OracleConfig()) -> Iterator[LassoPath]:
    """Every lasso whose prefix and cycle together visit distinct states."""
    _check_size(game, cfg)
    arena = game.arena
    prefix_cap = cfg.max_prefix_length or len(game.states)
    cycle_cap = cfg.max_cycle_length or len(game.states)
    moves = {s: [(p, arena.transitions[(s, p)]) for p in arena.profiles(s)] for s in arena.states}

    def extend(seq, profs):
        here = seq[-1]
        for prof, nxt in moves[here]:
            if nxt in seq:
                j = seq.index(nxt)
                if j <= prefix_cap and len(seq) - j <= cycle_cap:
                    yield LassoPath(tuple(seq[:j]), tuple(seq[j:]), tuple(profs) + (prof,))
            else:
                yield from extend(seq + [nxt], profs + [prof])

    yield from extend([arena.initial], [])


# -- mean-payoff values -----------------------------------------------------------

def _forced_mean(start, step: Callable, weight: Callable) -> Fraction:
    seen, seq = {}, []
    v = start
    while v not in seen:
        seen[v] = len(seq)
        seq.append(v)
        v = step(v)
    cycle = seq[seen[v]:]
    return Fraction(sum(weight(u) for u in cycle), len(cycle))


def brute_force_mpg(g: TurnBasedMPG, max_pairs: int = 10**6) -> list[Fraction]:
    """min over MIN positional strategies of max over MAX ones, per node."""
    max_nodes = [v for v in range(len(g)) if g.owner[v]]
    min_nodes = [v for v in range(len(g)) if not g.owner[v]]
    pairs = 1
    for v in range(len(g)):
        pairs *= len(g.successors[v])
    if pairs > max_pairs:
        raise ResourceLimitExceeded(f"{pairs} strategy pairs exceed the oracle cap")
    best = [None] * len(g)
    for mins in itertools.product(*(g.successors[v] for v in min_nodes)):
        choice = dict(zip(min_nodes, mins))
        reply = [None] * len(g)
        for maxs in itertools.product(*(g.successors[v] for v in max_nodes)):
            choice.update(zip(max_nodes, maxs))
            for v in range(len(g)):
                m = _forced_mean(v, choice.__getitem__, g.weights.__getitem__)
                if reply[v] is None or m > reply[v]:
                    reply[v] = m
        for v in range(len(g)):
            if best[v] is None or reply[v] < best[v]:
                best[v] = reply[v]
    return best


def brute_force_punishment(game: Game, player: str,
                           cfg: OracleConfig = OracleConfig()) -> dict[str, Fraction]:
    """pun_player(s) by enumerating positional coalition and deviator strategies."""
    _check_size(game, cfg)
    arena = game.arena
    me = arena.player_index[player]
    others = [j for j in arena.players if j != player]
    states = arena.states
    coalition_opts = [list(itertools.product(*(arena.actions[(j, s)] for j in others)))
                      for s in states]
    own_opts = [arena.actions[(player, s)] for s in states]
    count = 1
    for a, b in zip(coalition_opts, own_opts):
        count *= len(a) * len(b)
    if count > cfg.max_strategies:
        raise ResourceLimitExceeded(f"{count} strategy pairs exceed the oracle cap")
    w = game.weights[player]
    result = {}
    for coalition in itertools.product(*coalition_opts):
        reply = {s: None for s in states}
        for own in itertools.product(*own_opts):
            nxt = {}
            for k, s in enumerate(states):
                part = coalition[k]
                nxt[s] = arena.transitions[(s, part[:me] + (own[k],) + part[me:])]
            for s in states:
                m = _forced_mean(s, nxt.__getitem__, w.__getitem__)
                if reply[s] is None or m > reply[s]:
                    reply[s] = m
        for s in states:
            if s not in result or reply[s] < result[s]:
                result[s] = reply[s]
    return result


def _all_punishments(game, cfg):
    return {i: brute_force_punishment(game, i, cfg) for i in game.players}


def _secure(game, pun, state, profile, z) -> bool:
    arena = game.arena
    for k, i in enumerate(arena.players):
        for alt in arena.actions[(i, state)]:
            t = arena.transitions[(state, profile[:k] + (alt,) + profile[k + 1:])]
            if pun[i][t] > z[k]:
                return False
    return True


def _grid(game, pun):
    return itertools.product(*(sorted(set(pun[i].values())) for i in game.players))


# -- equilibria ---------------------------------------------------------------------

def is_ne_lasso(game: Game, path: LassoPath, pun: dict) -> bool:
    """Some grid value per player makes every step secure and stays below the payoff."""
    for k, i in enumerate(game.players):
        pay = mean_payoff(path, game, i)
        ok = False
        for z_i in sorted(set(pun[i].values())):
            if z_i > pay:
                break
            if all(_secure_for(game, pun, i, k, s, prof, z_i) for s, prof, _ in path.steps()):
                ok = True
                break
        if not ok:
            return False
    return True


def _secure_for(game, pun, player, k, state, profile, z_i) -> bool:
    arena = game.arena
    for alt in arena.actions[(player, state)]:
        t = arena.transitions[(state, profile[:k] + (alt,) + profile[k + 1:])]
        if pun[player][t] > z_i:
            return False
    return True


def brute_force_ne_lassos(game: Game, cfg: OracleConfig = OracleConfig()) -> list[LassoPath]:
    pun = _all_punishments(game, cfg)
    return [p for p in enumerate_lassos(game, cfg) if is_ne_lasso(game, p, pun)]


# -- exhaustive lasso search -----------------------------------------------------------

def search_lasso(game: Game, pun: dict, z: Sequence[Fraction], accept: Callable,
                 max_cycle: int) -> LassoPath | None:
    """A lasso of z-secure steps, paying at least ``z``, whose cycle passes ``accept``.

    Closed walks of up to ``max_cycle`` steps are explored breadth first from
    every reachable cycle start. Two partial walks agreeing on position,
    visited set and accumulated surplus over ``z`` are interchangeable, so
    only the first is kept. ``accept`` receives the set of cycle states.
    """
    arena = game.arena
    players = arena.players
    z = [Fraction(x) for x in z]
    surplus = {s: tuple(x.denominator * game.weights[i][s] - x.numerator
                        for i, x in zip(players, z)) for s in arena.states}
    moves = {s: [] for s in arena.states}
    for s in arena.states:
        for prof in arena.profiles(s):
            if _secure(game, pun, s, prof, z):
                moves[s].append((prof, arena.transitions[(s, prof)]))

    parent = {arena.initial: None}
    queue = deque([arena.initial])
    while queue:
        v = queue.popleft()
        for prof, w in moves[v]:
            if w not in parent:
                parent[w] = (v, prof)
                queue.append(w)

    for start in arena.states:
        if start not in parent:
            continue
        cycle = _closed_walk(start, moves, surplus, accept, max_cycle)
        if cycle is None:
            continue
        states, profs = cycle
        prefix, prefix_profs = [], []
        v = start
        while parent[v] is not None:
            u, prof = parent[v]
            prefix.append(u)
            prefix_profs.append(prof)
            v = u
        prefix.reverse()
        prefix_profs.reverse()
        return LassoPath(tuple(prefix), tuple(states), tuple(prefix_profs) + tuple(profs))
    return None


def _closed_walk(start, moves, surplus, accept, max_cycle):
    first = (start, frozenset([start]), surplus[start])
    parent = {first: None}
    frontier = [first]
    for _ in range(max_cycle):
        nxt_frontier = []
        for key in frontier:
            here, visited, sums = key
            for prof, nxt in moves[here]:
                if nxt == start and all(x >= 0 for x in sums) and accept(visited):
                    return _unwind(parent, key, prof)
                new = (nxt, visited | {nxt}, tuple(a + b for a, b in zip(sums, surplus[nxt])))
                if new not in parent:
                    parent[new] = (key, prof)
                    nxt_frontier.append(new)
        frontier = nxt_frontier
    return None


def _unwind(parent, key, last_prof):
    states, profs = [], [last_prof]
    while key is not None:
        states.append(key[0])
        step = parent[key]
        if step is None:
            break
        key, prof = step
        profs.append(prof)
    states.reverse()
    profs.reverse()
    return states, profs


def _scheme_product(game: Game, budget: int) -> Iterator[SubsidyScheme]:
    cells = game.cells()
    for values in itertools.product(range(budget + 1), repeat=len(cells)):
        if sum(values) <= budget:
            yield SubsidyScheme.from_mapping(dict(zip(cells, values)))


def weak_holds(game: Game, formula: GR1Formula, cfg: OracleConfig = OracleConfig(),
               pun: dict | None = None) -> LassoPath | None:
    """An NE lasso of ``game`` satisfying ``formula``, by exhaustive search."""
    pun = pun or _all_punishments(game, cfg)
    psi, theta = state_sets(game, formula)
    cap = cfg.cycle_cap(game, formula)
    for z in _grid(game, pun):
        path = search_lasso(game, pun, z, lambda v: holds_on_cycle(psi, theta, v), cap)
        if path is not None:
            return path
    return None


def strong_holds(game: Game, formula: GR1Formula, cfg: OracleConfig = OracleConfig()) -> bool:
    pun = _all_punishments(game, cfg)
    cap = cfg.cycle_cap(game, formula)
    if not any(search_lasso(game, pun, z, lambda v: True, cap) for z in _grid(game, pun)):
        return False
    psi, theta = state_sets(game, formula)
    bad = lambda v: negation_holds_on_cycle(psi, theta, v)  # noqa: E731
    return not any(search_lasso(game, pun, z, bad, cap) for z in _grid(game, pun))


def brute_force_weak(game: Game, formula: GR1Formula, budget: int,
                     cfg: OracleConfig = OracleConfig()) -> bool:
    _check_size(game, cfg)
    return any(weak_holds(apply_subsidy(game, k), formula, cfg) is not None
               for k in _scheme_product(game, budget))


def brute_force_strong(game: Game, formula: GR1Formula, budget: int,
                       cfg: OracleConfig = OracleConfig()) -> bool:
    _check_size(game, cfg)
    return any(strong_holds(apply_subsidy(game, k), formula, cfg)
               for k in _scheme_product(game, budget))


# -- linear programs ---------------------------------------------------------------------

def _solve_square(matrix, rhs):
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] / a[r][r] for r in range(n)]


def brute_force_lp_feasible(rows, nvars: int) -> bool:
    """Feasibility of ``x >= 0`` under ``(coeffs, rel, rhs)`` rows by basis enumeration.

    Rows become equalities with one slack per inequality. A nonempty
    polyhedron in the non-negative orthant has a vertex, i.e. a basic
    feasible solution, so trying every column subset decides feasibility.
    """
    eqs, extra = [], 0
    for coeffs, rel, rhs in rows:
        if rel != "=":
            extra += 1
    width = nvars + extra
    k = 0
    for coeffs, rel, rhs in rows:
        row = list(coeffs) + [0] * extra
        if rel == ">=":
            row[nvars + k] = -1
            k += 1
        elif rel == "<=":
            row[nvars + k] = 1
            k += 1
        eqs.append((row, rhs))
    # drop linearly dependent rows so a basis has exactly rank-many columns
    independent = []
    for row, rhs in eqs:
        trial = independent + [(row, rhs)]
        if _rank([r for r, _ in trial]) == len(trial):
            independent = trial
        elif _rank([r + [b] for r, b in trial]) > _rank([r for r, _ in trial]):
            return False  # inconsistent system
    if not independent:
        return True
    m = len(independent)
    for cols in itertools.combinations(range(width), m):
        sub = [[row[c] for c in cols] for row, _ in independent]
        sol = _solve_square(sub, [b for _, b in independent])
        if sol is not None and all(x >= 0 for x in sol):
            return True
    return False


def _rank(matrix) -> int:
    a = [list(map(Fraction, row)) for row in matrix]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        col += 1
    return rank
