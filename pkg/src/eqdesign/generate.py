"""Seeded random games, formulas and turn-based graphs for cross-validation."""

from __future__ import annotations

import random

from .game import Arena, Game
from .gr1 import GR1Formula, Not, Prop
from .mpg import MAX, MIN, TurnBasedMPG


def random_game(rng: random.Random, max_states=4, max_players=2, max_actions=2,
                weights=(-2, 2), propositions=("p", "q")) -> Game:
    n_states = rng.randint(1, max_states)
    n_players = rng.randint(1, max_players)
    players = tuple(str(k + 1) for k in range(n_players))
    states = tuple(f"s{k}" for k in range(n_states))
    actions = {(i, s): tuple(f"a{j}" for j in range(rng.randint(1, max_actions)))
               for i in players for s in states}
    labels = {s: frozenset(p for p in propositions if rng.random() < 0.5) for s in states}
    transitions = {}
    for s in states:
        profiles = [()]
        for i in players:
            profiles = [p + (a,) for p in profiles for a in actions[(i, s)]]
        for prof in profiles:
            transitions[(s, prof)] = rng.choice(states)
    arena = Arena(players, states, states[0], actions, transitions, labels, frozenset(propositions))
    w = {i: {s: rng.randint(*weights) for s in states} for i in players}
    return Game(arena, w)


def random_formula(rng: random.Random, propositions=("p", "q"), max_side=2) -> GR1Formula:
    def combo():
        c = Prop(rng.choice(propositions))
        return Not(c) if rng.random() < 0.25 else c

    m = rng.randint(0, max_side)
    n = rng.randint(0, max_side)
    return GR1Formula(tuple(combo() for _ in range(m)), tuple(combo() for _ in range(n)))


def random_turn_based(rng: random.Random, max_nodes=6, weights=(-2, 2), max_out=3) -> TurnBasedMPG:
    n = rng.randint(1, max_nodes)
    owner = tuple(rng.choice((MAX, MIN)) for _ in range(n))
    w = tuple(rng.randint(*weights) for _ in range(n))
    succ = tuple(tuple(sorted(rng.sample(range(n), rng.randint(1, min(max_out, n)))))
                 for _ in range(n))
    return TurnBasedMPG(tuple(range(n)), owner, w, succ)
