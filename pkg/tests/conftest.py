import os
import sys

import pytest

from eqdesign.game import Arena, Game, parse_game

GAMES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "games")


def load(name):
    with open(os.path.join(GAMES, name)) as fh:
        return parse_game(fh.read())


def graph_game(succ, weights, labels=None, initial=None, props=("p", "q")):
    """One-player game where the single player picks the next state.

    ``succ`` maps state -> list of successors, ``weights`` state -> int.
    """
    states = tuple(succ)
    labels = labels or {}
    actions, transitions = {}, {}
    for s, targets in succ.items():
        acts = tuple(f"to_{t}" for t in targets)
        actions[("1", s)] = acts
        for a, t in zip(acts, targets):
            transitions[(s, (a,))] = t
    arena = Arena(("1",), states, initial or states[0], actions, transitions,
                  {s: frozenset(labels.get(s, ())) for s in states}, frozenset(props))
    return Game(arena, {"1": dict(weights)})


@pytest.fixture
def g1():
    return load("g1.json")


@pytest.fixture
def twin():
    """G1 with a second p-state ``c`` interchangeable with ``a``."""
    return graph_game({"s0": ["a", "b", "c"], "a": ["a"], "b": ["b"], "c": ["c"]},
                      {"s0": 0, "a": 0, "b": 1, "c": 0}, {"a": {"p"}, "c": {"p"}})


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.LINES, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
