"""Punishment values via two-player zero-sum mean-payoff games, z-security and pruning.

The punishment game for player ``i`` alternates two kinds of node:

* a *state node* ``s`` where the coalition of all other players (the
  minimizer) commits to a partial profile ``a_-i``;
* a *response node* ``(s, a_-i)`` where ``i`` (the maximizer) answers with
  ``a_i`` and the play moves to ``tr(s, (a_-i, a_i))``.

Both carry weight ``w_i(s)`` so one round of the concurrent game costs two
steps of equal weight and means are preserved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

from .errors import ResourceLimitExceeded
from .game import Edge, Game
from .graphs import one_player_values, reachable

MAX, MIN = True, False
DEFAULT_HORIZON_CAP = 10**9


@dataclass(frozen=True)
class TurnBasedMPG:
    """Node-weighted two-player game graph, indexed by position."""

    labels: tuple[Hashable, ...]
    owner: tuple[bool, ...]  # MAX or MIN
    weights: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if not (len(self.owner) == len(self.weights) == len(self.successors) == n):
            raise ValueError("labels, owner, weights and successors must align")
        for v, succ in enumerate(self.successors):
            if not succ:
                raise ValueError(f"node {self.labels[v]!r} has no successor")
            if any(not 0 <= u < n for u in succ):
                raise ValueError(f"node {self.labels[v]!r} has an out-of-range successor")

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class MPGSolution:
    values: tuple[Fraction, ...]
    max_strategy: dict  # node -> chosen successor, MAX nodes only
    min_strategy: dict


def build_punishment_game(game: Game, player: str) -> TurnBasedMPG:
    arena = game.arena
    me = arena.player_index[player]
    others = [i for i in arena.players if i != player]
    w = game.weights[player]
    labels = [("state", s) for s in arena.states]
    owner = [MIN] * len(labels)
    weights = [w[s] for s in arena.states]
    succ: list = [[] for _ in labels]
    state_pos = {s: k for k, s in enumerate(arena.states)}
    for s in arena.states:
        for partial in itertools.product(*(arena.actions[(j, s)] for j in others)):
            node = len(labels)
            labels.append(("response", s, partial))
            owner.append(MAX)
            weights.append(w[s])
            targets = []
            for mine in arena.actions[(player, s)]:
                prof = partial[:me] + (mine,) + partial[me:]
                t = state_pos[arena.transitions[(s, prof)]]
                if t not in targets:
                    targets.append(t)
            succ.append(targets)
            succ[state_pos[s]].append(node)
    return TurnBasedMPG(tuple(labels), tuple(owner), tuple(weights),
                        tuple(tuple(x) for x in succ))


def _fix(g: TurnBasedMPG, strategy: dict) -> list:
    return [(strategy[v],) if v in strategy else g.successors[v] for v in range(len(g))]


def _certify(g: TurnBasedMPG, values, max_strategy, min_strategy) -> bool:
    """True iff both positional strategies secure ``values`` exactly."""
    upper = one_player_values(_fix(g, min_strategy), g.weights, maximize=True)
    if any(a != b for a, b in zip(upper, values)):
        return False
    lower = one_player_values(_fix(g, max_strategy), g.weights, maximize=False)
    return all(a == b for a, b in zip(lower, values))


def _energy_strategy(g: TurnBasedMPG, values, side: bool) -> dict | None:
    """Positional strategy for ``side`` that secures ``values``, if they are right.

    Within a value class ``c = p/q`` the side must keep every cycle's sum of
    ``q*w - p`` (or its negation, for MIN) non-negative: an energy game. The
    least progress measure is computed by lifting; the side then moves to a
    successor of least measure. Returns None when some node cannot be won,
    which means ``values`` were not the game's values.
    """
    n = len(g)
    strategy = {}
    for c in set(values):
        nodes = [v for v in range(n) if values[v] == c]
        sign = 1 if side == MAX else -1
        wt = {v: sign * (c.denominator * g.weights[v] - c.numerator) for v in nodes}
        top = sum(max(0, -x) for x in wt.values()) + 1
        inside = {v: [u for u in g.successors[v] if values[u] == c] for v in nodes}
        f = dict.fromkeys(nodes, 0)

        def need(u, v):
            return top if f[u] >= top else min(top, max(0, f[u] - wt[v]))

        changed = True
        while changed:
            changed = False
            for v in nodes:
                opts = [need(u, v) for u in inside[v]]
                if g.owner[v] == side:
                    new = min(opts) if opts else top
                else:
                    # the opponent leaving the class only helps the side
                    exits = len(inside[v]) < len(g.successors[v])
                    new = max(opts + ([max(0, -wt[v])] if exits else []))
                if new > f[v]:
                    f[v] = new
                    changed = True
        if any(f[v] >= top for v in nodes):
            return None
        for v in nodes:
            if g.owner[v] == side:
                strategy[v] = min(inside[v], key=lambda u: need(u, v))
    return strategy


def solve_mpg(g: TurnBasedMPG, horizon_cap: int = DEFAULT_HORIZON_CAP,
              early_stop: bool = True) -> MPGSolution:
    """Exact values and optimal positional strategies by value iteration.

    ``nu_k(v)`` is the optimal total weight of the first ``k`` nodes from
    ``v``. After ``k = 4 n^3 W`` steps ``nu_k / k`` lies within ``1/(2n^2)`` of
    the value, which pins it down as the nearest fraction with denominator at
    most ``n``. At power-of-two horizons the rounded estimate is tried early:
    strategies securing it are derived for both sides and checked against
    one-player best responses, and if both hold the estimate is exact.
    """
    n = len(g)
    W = max(1, max(abs(x) for x in g.weights))
    if n ** 3 * W > horizon_cap:
        raise ResourceLimitExceeded(f"value-iteration horizon n^3*W = {n ** 3 * W} exceeds cap")
    horizon = 4 * n ** 3 * W
    weights = g.weights
    max_nodes = [(v, g.successors[v]) for v in range(n) if g.owner[v] == MAX]
    min_nodes = [(v, g.successors[v]) for v in range(n) if g.owner[v] == MIN]
    nu = [0] * n
    checkpoint = 4
    for k in range(1, horizon + 1):
        nxt = list(weights)
        for v, succ in max_nodes:
            nxt[v] += max([nu[u] for u in succ])
        for v, succ in min_nodes:
            nxt[v] += min([nu[u] for u in succ])
        nu = nxt
        if (early_stop and k == checkpoint) or k == horizon:
            checkpoint *= 2
            values = tuple(Fraction(x, k).limit_denominator(n) for x in nu)
            smax = _energy_strategy(g, values, MAX)
            smin = _energy_strategy(g, values, MIN) if smax is not None else None
            if smin is not None and _certify(g, values, smax, smin):
                return MPGSolution(values, smax, smin)
    raise AssertionError("value iteration failed to certify its own limit")


@dataclass(frozen=True)
class PunishmentTable:
    players: tuple[str, ...]
    values: dict  # (player, state) -> Fraction
    strategies: dict = field(default_factory=dict)  # player -> state -> partial profile

    def value(self, player: str, state: str) -> Fraction:
        return self.values[(player, state)]

    def grid_values(self, player: str) -> list[Fraction]:
        return sorted({v for (i, _), v in self.values.items() if i == player})

    def grid(self):
        """All ``z`` in the product of per-player punishment-value sets."""
        return itertools.product(*(self.grid_values(i) for i in self.players))

    def grid_size(self) -> int:
        size = 1
        for i in self.players:
            size *= len(self.grid_values(i))
        return size

    def max_vector(self) -> tuple[Fraction, ...]:
        return tuple(max(self.grid_values(i)) for i in self.players)


def punishment_table(game: Game, horizon_cap: int = DEFAULT_HORIZON_CAP) -> PunishmentTable:
    values, strategies = {}, {}
    for i in game.players:
        tb = build_punishment_game(game, i)
        sol = solve_mpg(tb, horizon_cap)
        strat = {}
        for k, s in enumerate(game.states):
            values[(i, s)] = sol.values[k]
            strat[s] = tb.labels[sol.min_strategy[k]][2]
        strategies[i] = strat
    return PunishmentTable(game.players, values, strategies)


def _deviation_targets(game: Game, state: str, profile, k: int):
    arena = game.arena
    player = arena.players[k]
    for alt in arena.actions[(player, state)]:
        yield arena.transitions[(state, profile[:k] + (alt,) + profile[k + 1:])]


def is_z_secure(game: Game, table: PunishmentTable, state: str, profile,
                z: Sequence[Fraction]) -> bool:
    profile = tuple(profile)
    for k, i in enumerate(game.players):
        for t in _deviation_targets(game, state, profile, k):
            if table.values[(i, t)] > z[k]:
                return False
    return True


@dataclass(frozen=True)
class PrunedGame:
    """``game`` restricted to z-secure, non-blocked transitions reachable from s0."""

    base: Game
    z: tuple[Fraction, ...]
    states: tuple[str, ...]
    edges: tuple[Edge, ...]

    @property
    def empty(self) -> bool:
        return not self.states

    def out_edges(self, state: str):
        return [e for e in self.edges if e.src == state]


def prune(game: Game, table: PunishmentTable, z: Sequence[Fraction]) -> PrunedGame:
    z = tuple(Fraction(x) for x in z)
    edges = [e for e in game.arena.edges() if is_z_secure(game, table, e.src, e.profile, z)]
    alive = set(game.states)
    while True:
        has_out = {e.src for e in edges if e.dst in alive}
        dead = alive - has_out
        if not dead:
            break
        alive -= dead
        edges = [e for e in edges if e.src in alive and e.dst in alive]
    edges = [e for e in edges if e.src in alive and e.dst in alive]
    s0 = game.arena.initial
    if s0 not in alive:
        return PrunedGame(game, z, (), ())
    out = {}
    for e in edges:
        out.setdefault(e.src, []).append(e.dst)
    keep = reachable(s0, lambda v: out.get(v, ()))
    return PrunedGame(game, z,
                      tuple(s for s in game.states if s in keep),
                      tuple(e for e in edges if e.src in keep))
