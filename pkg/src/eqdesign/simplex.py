"""Exact rational feasibility via phase-one simplex with Bland's rule."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ResourceLimitExceeded

DEFAULT_PIVOT_CAP = 100_000


def find_feasible_point(rows: Sequence[tuple[Sequence, str, object]], nvars: int,
                        max_pivots: int = DEFAULT_PIVOT_CAP) -> list[Fraction] | None:
    """A point ``x >= 0`` satisfying every ``(coeffs, rel, rhs)`` row, or None.

    ``rel`` is ``">="``, ``"<="`` or ``"="``. Coefficients may be ints or
    Fractions; arithmetic is exact throughout.
    """
    # Standard form: one surplus/slack column per inequality, one artificial
    # per row, right-hand sides made non-negative.
    slack_of = {}
    for r, (_, rel, _) in enumerate(rows):
        if rel in (">=", "<="):
            slack_of[r] = nvars + len(slack_of)
        elif rel != "=":
            raise ValueError(f"unknown relation {rel!r}")
    nart = len(rows)
    first_art = nvars + len(slack_of)
    width = first_art + nart
    tableau, basis = [], []
    for r, (coeffs, rel, rhs) in enumerate(rows):
        row = [Fraction(0)] * (width + 1)
        for j, c in enumerate(coeffs):
            if c:
                row[j] = Fraction(c)
        if rel == ">=":
            row[slack_of[r]] = Fraction(-1)
        elif rel == "<=":
            row[slack_of[r]] = Fraction(1)
        row[-1] = Fraction(rhs)
        if row[-1] < 0:
            row = [-x for x in row]
        row[first_art + r] = Fraction(1)
        tableau.append(row)
        basis.append(first_art + r)

    # reduced costs of "minimize the sum of artificials"
    cost = [Fraction(0)] * (width + 1)
    for row in tableau:
        for j in range(first_art):
            cost[j] -= row[j]
        cost[-1] -= row[-1]

    pivots = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leave, best = None, None
        for r, row in enumerate(tableau):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    leave, best = r, ratio
        if leave is None:
            break  # cannot happen for a bounded phase-one objective
        pivots += 1
        if pivots > max_pivots:
            raise ResourceLimitExceeded(f"simplex exceeded {max_pivots} pivots")
        _pivot(tableau, cost, leave, entering)
        basis[leave] = entering

    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * nvars
    for r, b in enumerate(basis):
        if b < nvars:
            x[b] = tableau[r][-1]
    return x


def _pivot(tableau, cost, r, c):
    prow = tableau[r]
    inv = 1 / prow[c]
    if inv != 1:
        tableau[r] = prow = [x * inv for x in prow]
    nz = [j for j, x in enumerate(prow) if x]
    for k, row in enumerate(tableau):
        if k != r and row[c]:
            f = row[c]
            for j in nz:
                row[j] -= f * prow[j]
    if cost[c]:
        f = cost[c]
        for j in nz:
            cost[j] -= f * prow[j]
