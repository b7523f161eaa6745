"""Arenas, mean-payoff games, subsidy schemes and lasso paths.

Everything here is immutable after construction. Payoffs are exact
:class:`fractions.Fraction` values; weights and subsidies are Python ints.

Game documents are JSON::

    {
      "players": ["1", "2"],
      "states": [{"id": "s0", "label": ["p"], "weights": {"1": 0, "2": 1}}, ...],
      "initial": "s0",
      "actions": {"s0": {"1": ["a", "b"], "2": ["c"]}, ...},
      "transitions": [{"from": "s0", "profile": {"1": "a", "2": "c"}, "to": "s1"}, ...]
    }

An optional ``propositions`` list declares the atomic-proposition alphabet;
when omitted the alphabet is the union of all labels.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterator, Mapping, NamedTuple

from .errors import GameSemanticError, GameSyntaxError, ResourceLimitExceeded

Profile = tuple  # one action per player, in player order

DEFAULT_SCHEME_CAP = 10**7


class Edge(NamedTuple):
    src: str
    profile: Profile
    dst: str


@dataclass(frozen=True, eq=True)
class Arena:
    players: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    actions: Mapping[tuple[str, str], tuple[str, ...]]
    transitions: Mapping[tuple[str, Profile], str]
    labels: Mapping[str, frozenset]
    propositions: frozenset = frozenset()

    def __post_init__(self):
        if not self.players:
            raise GameSemanticError("a game needs at least one player")
        if not self.states:
            raise GameSemanticError("a game needs at least one state")
        for what, seq in (("player", self.players), ("state", self.states)):
            if len(set(seq)) != len(seq):
                raise GameSemanticError(f"duplicate {what} id")
        if self.initial not in self.states:
            raise GameSemanticError(f"initial state {self.initial!r} is not a declared state")
        if not self.propositions:
            alphabet = frozenset().union(*self.labels.values()) if self.labels else frozenset()
            object.__setattr__(self, "propositions", alphabet)
        for s in self.states:
            extra = set(self.labels.get(s, ())) - self.propositions
            if extra:
                raise GameSemanticError(f"state {s!r} uses undeclared propositions {sorted(extra)}")
            for i in self.players:
                if not self.actions.get((i, s)):
                    raise GameSemanticError(f"empty action set for player {i!r} at state {s!r}")
            for prof in self.profiles(s):
                dst = self.transitions.get((s, prof))
                if dst is None:
                    raise GameSemanticError(
                        f"missing transition from state {s!r} under profile {self.profile_dict(prof)}")
                if dst not in self.state_index:
                    raise GameSemanticError(f"transition from {s!r} targets undefined state {dst!r}")

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {s: k for k, s in enumerate(self.states)}

    @cached_property
    def player_index(self) -> dict[str, int]:
        return {i: k for k, i in enumerate(self.players)}

    @cached_property
    def _profiles(self) -> dict[str, tuple[Profile, ...]]:
        return {s: tuple(itertools.product(*(self.actions[(i, s)] for i in self.players)))
                for s in self.states}

    def profiles(self, state: str) -> tuple[Profile, ...]:
        """All action profiles at ``state``, in lexicographic declaration order."""
        return self._profiles[state]

    def successor(self, state: str, profile: Profile) -> str:
        return self.transitions[(state, tuple(profile))]

    def edges(self) -> Iterator[Edge]:
        for s in self.states:
            for prof in self.profiles(s):
                yield Edge(s, prof, self.transitions[(s, prof)])

    def profile_dict(self, profile: Profile) -> dict[str, str]:
        return dict(zip(self.players, profile))

    def label(self, state: str) -> frozenset:
        return self.labels.get(state, frozenset())


@dataclass(frozen=True, eq=True)
class Game:
    arena: Arena
    weights: Mapping[str, Mapping[str, int]]

    def __post_init__(self):
        for i in self.arena.players:
            row = self.weights.get(i)
            for s in self.arena.states:
                if row is None or s not in row:
                    raise GameSemanticError(f"missing weight for player {i!r} at state {s!r}")
                if not isinstance(row[s], int) or isinstance(row[s], bool):
                    raise GameSemanticError(f"weight of player {i!r} at {s!r} must be an integer")

    @property
    def players(self):
        return self.arena.players

    @property
    def states(self):
        return self.arena.states

    def weight(self, player: str, state: str) -> int:
        return self.weights[player][state]

    def cells(self) -> list[tuple[str, str]]:
        """The canonical (player, state) ordering used for subsidy schemes."""
        return [(i, s) for i in self.arena.players for s in self.arena.states]


@dataclass(frozen=True)
class SubsidyScheme:
    """Natural-number subsidies per (player, state); absent cells are zero."""

    entries: tuple = ()

    def __post_init__(self):
        for _, amount in self.entries:
            if not isinstance(amount, int) or amount < 0:
                raise ValueError(f"subsidies must be natural numbers, got {amount!r}")

    @classmethod
    def from_mapping(cls, mapping: Mapping[tuple[str, str], int]) -> "SubsidyScheme":
        return cls(tuple(sorted((cell, v) for cell, v in mapping.items() if v)))

    def get(self, player: str, state: str) -> int:
        return dict(self.entries).get((player, state), 0)

    def as_dict(self) -> dict[tuple[str, str], int]:
        return dict(self.entries)

    @property
    def cost(self) -> int:
        return scheme_cost(self)


ZERO_SCHEME = SubsidyScheme()


@dataclass(frozen=True)
class LassoPath:
    """``prefix`` then ``cycle`` repeated forever.

    ``profiles[k]`` is the action profile taken at the k-th state of
    ``prefix + cycle``; the last one leads back to ``cycle[0]``.
    """

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]
    profiles: tuple[Profile, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("a lasso needs a nonempty cycle")
        if len(self.profiles) != len(self.prefix) + len(self.cycle):
            raise ValueError("one action profile is needed per prefix and cycle state")

    @property
    def states(self) -> tuple[str, ...]:
        return self.prefix + self.cycle

    def steps(self) -> Iterator[tuple[str, Profile, str]]:
        seq = self.states
        for k, (s, prof) in enumerate(zip(seq, self.profiles)):
            nxt = seq[k + 1] if k + 1 < len(seq) else self.cycle[0]
            yield s, prof, nxt

    def validate(self, game: Game) -> None:
        arena = game.arena
        if self.states[0] != arena.initial:
            raise ValueError(f"lasso starts at {self.states[0]!r}, not at {arena.initial!r}")
        for s, prof, nxt in self.steps():
            if s not in arena.state_index or prof not in arena.profiles(s):
                raise ValueError(f"profile {prof} is not available at {s!r}")
            if arena.successor(s, prof) != nxt:
                raise ValueError(f"profile {prof} at {s!r} does not lead to {nxt!r}")

    def is_valid(self, game: Game) -> bool:
        try:
            self.validate(game)
        except (ValueError, KeyError):
            return False
        return True


# -- operations ----------------------------------------------------------------

def mean_payoff(path: LassoPath, game: Game, player: str) -> Fraction:
    w = game.weights[player]
    return Fraction(sum(w[s] for s in path.cycle), len(path.cycle))


def apply_subsidy(game: Game, scheme: SubsidyScheme) -> Game:
    if not scheme.entries:
        return game
    bonus = scheme.as_dict()
    weights = {i: {s: w + bonus.get((i, s), 0) for s, w in row.items()}
               for i, row in game.weights.items()}
    return Game(game.arena, weights)


def scheme_cost(scheme: SubsidyScheme) -> int:
    return sum(v for _, v in scheme.entries)


def count_schemes(m: int, budget: int) -> int:
    """Number of schemes of cost at most ``budget`` over ``m`` cells."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if budget < 0:
        return 0
    numerator = (budget + 1) * comb(budget + m, budget + 1)
    assert numerator % m == 0
    return numerator // m


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # lexicographically decreasing: earlier cells take the subsidy first
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def enumerate_schemes(game: Game, budget: int, cap: int = DEFAULT_SCHEME_CAP,
                      exact_cost: bool = False) -> Iterator[SubsidyScheme]:
    """Every admissible scheme once, cheapest first.

    With ``exact_cost`` only schemes costing exactly ``budget`` are produced.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    cells = game.cells()
    total = count_schemes(len(cells), budget)
    if exact_cost:
        total -= count_schemes(len(cells), budget - 1)
    if total > cap:
        raise ResourceLimitExceeded(
            f"{total} subsidy schemes for budget {budget} exceed the cap of {cap}")
    for cost in range(budget if exact_cost else 0, budget + 1):
        for parts in _compositions(cost, len(cells)):
            yield SubsidyScheme(tuple((c, v) for c, v in zip(cells, parts) if v))


# -- documents -----------------------------------------------------------------

def parse_game(text: str) -> Game:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return game_from_document(doc)


def _require(doc, key, kind):
    if key not in doc:
        raise GameSyntaxError(f"missing top-level key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise GameSyntaxError(f"key {key!r} must be a {kind.__name__}")
    return value


def game_from_document(doc) -> Game:
    if not isinstance(doc, dict):
        raise GameSyntaxError("a game document must be a JSON object")
    players = tuple(str(p) for p in _require(doc, "players", list))
    raw_states = _require(doc, "states", list)
    initial = str(_require(doc, "initial", str))
    raw_actions = _require(doc, "actions", dict)
    raw_transitions = _require(doc, "transitions", list)

    states, labels, weights = [], {}, {i: {} for i in players}
    for entry in raw_states:
        if not isinstance(entry, dict) or "id" not in entry:
            raise GameSyntaxError("each state needs an 'id'")
        sid = str(entry["id"])
        states.append(sid)
        labels[sid] = frozenset(str(p) for p in entry.get("label", []))
        for i, w in dict(entry.get("weights", {})).items():
            if str(i) not in weights:
                raise GameSemanticError(f"state {sid!r} has a weight for unknown player {i!r}")
            weights[str(i)][sid] = w
    known = set(states)

    actions = {}
    for s, per_player in raw_actions.items():
        if s not in known:
            raise GameSemanticError(f"actions declared for undefined state {s!r}")
        for i, acts in per_player.items():
            if i not in weights:
                raise GameSemanticError(f"actions declared for unknown player {i!r}")
            actions[(i, s)] = tuple(str(a) for a in acts)

    transitions = {}
    for t in raw_transitions:
        try:
            src, prof, dst = str(t["from"]), t["profile"], str(t["to"])
        except (KeyError, TypeError):
            raise GameSyntaxError("each transition needs 'from', 'profile' and 'to'") from None
        if src not in known:
            raise GameSemanticError(f"transition from undefined state {src!r}")
        if dst not in known:
            raise GameSemanticError(f"transition from {src!r} targets undefined state {dst!r}")
        missing = [i for i in players if i not in prof]
        if missing:
            raise GameSemanticError(f"transition from {src!r} lacks actions for players {missing}")
        key = (src, tuple(str(prof[i]) for i in players))
        for i, a in zip(players, key[1]):
            if a not in actions.get((i, src), ()):
                raise GameSemanticError(f"action {a!r} is not available to player {i!r} at {src!r}")
        if key in transitions and transitions[key] != dst:
            raise GameSemanticError(f"conflicting transitions from {src!r} under {dict(prof)}")
        transitions[key] = dst

    props = frozenset(str(p) for p in doc.get("propositions", []))
    arena = Arena(players, tuple(states), initial, actions, transitions, labels, props)
    return Game(arena, weights)


def game_to_document(game: Game) -> dict:
    a = game.arena
    return {
        "players": list(a.players),
        "propositions": sorted(a.propositions),
        "states": [{"id": s, "label": sorted(a.label(s)),
                    "weights": {i: game.weights[i][s] for i in a.players}}
                   for s in a.states],
        "initial": a.initial,
        "actions": {s: {i: list(a.actions[(i, s)]) for i in a.players} for s in a.states},
        "transitions": [{"from": e.src, "profile": a.profile_dict(e.profile), "to": e.dst}
                        for e in a.edges()],
    }


def serialize_game(game: Game) -> str:
    return json.dumps(game_to_document(game), sort_keys=True, indent=2)


def lasso_to_document(game: Game, path: LassoPath) -> dict:
    return {
        "prefix": list(path.prefix),
        "cycle": list(path.cycle),
        "profiles": [game.arena.profile_dict(p) for p in path.profiles],
    }
