"""Weak and Strong Implementation and their optimisation variants.

Every decision procedure walks admissible subsidy schemes cheapest first and
stops at the first scheme that works, so witnesses are order-minimal and
reproducible. Per-scheme verdicts are memoised on a :class:`Designer`, which
lets the budget binary search reuse work across probes.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import ResourceLimitExceeded
from .flow import Avoid, LPStats, NegGR1, NEOnly, VisitAll, check_path_exists
from .game import (DEFAULT_SCHEME_CAP, Game, LassoPath, SubsidyScheme, apply_subsidy,
                   enumerate_schemes)
from .gr1 import GR1Formula, state_sets
from .mpg import DEFAULT_HORIZON_CAP, PunishmentTable, prune, punishment_table
from .simplex import DEFAULT_PIVOT_CAP

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Limits:
    schemes: int = DEFAULT_SCHEME_CAP
    grid: int = 100_000
    horizon: int = DEFAULT_HORIZON_CAP
    pivots: int = DEFAULT_PIVOT_CAP


@dataclass(frozen=True)
class WeakWitness:
    scheme: SubsidyScheme
    z: tuple[Fraction, ...]
    path: LassoPath


@dataclass(frozen=True)
class StrongWitness:
    scheme: SubsidyScheme
    z: tuple[Fraction, ...]
    path: LassoPath
    # every grid point searched for a counterexample to the formula
    certificate: tuple[tuple[Fraction, ...], ...]


@dataclass
class Counters:
    schemes: int = 0
    lps: int = 0

    def merge(self, other: "Counters"):
        self.schemes += other.schemes
        self.lps += other.lps


def _table(game: Game, limits: Limits) -> PunishmentTable:
    table = punishment_table(game, limits.horizon)
    if table.grid_size() > limits.grid:
        raise ResourceLimitExceeded(f"punishment grid of size {table.grid_size()} exceeds cap")
    return table


def weak_for_scheme(game: Game, formula: GR1Formula, scheme: SubsidyScheme,
                    limits: Limits = Limits(), stats: LPStats | None = None) -> WeakWitness | None:
    """Weak-implementation check for one fixed scheme."""
    stats = stats or LPStats()
    g = apply_subsidy(game, scheme)
    table = _table(g, limits)
    psi_sets, theta_sets = state_sets(g, formula)
    routes = [VisitAll(tuple(theta_sets))] + [Avoid(v) for v in psi_sets]
    for z in table.grid():
        pg = prune(g, table, z)
        if pg.empty:
            continue
        for mode in routes:
            path = check_path_exists(pg, mode, stats, limits.pivots)
            if path is not None:
                return WeakWitness(scheme, pg.z, path)
    return None


def strong_for_scheme(game: Game, formula: GR1Formula, scheme: SubsidyScheme,
                      limits: Limits = Limits(), stats: LPStats | None = None) -> StrongWitness | None:
    """Strong-implementation check for one fixed scheme."""
    stats = stats or LPStats()
    g = apply_subsidy(game, scheme)
    table = _table(g, limits)
    psi_sets, theta_sets = state_sets(g, formula)
    pruned = {}
    ne = None
    for z in table.grid():
        pg = pruned[z] = prune(g, table, z)
        path = check_path_exists(pg, NEOnly(), stats, limits.pivots)
        if path is not None:
            ne = (pg.z, path)
            break
    if ne is None:
        return None
    checked = []
    for z in table.grid():
        pg = pruned.get(z) or prune(g, table, z)
        for theta in theta_sets:
            if check_path_exists(pg, NegGR1(tuple(psi_sets), theta), stats, limits.pivots):
                return None
        checked.append(pg.z)
    return StrongWitness(scheme, ne[0], ne[1], tuple(checked))


def _evaluate(args):
    kind, game, formula, scheme, limits = args
    stats = LPStats()
    check = weak_for_scheme if kind == "weak" else strong_for_scheme
    return check(game, formula, scheme, limits, stats), stats.solved


class Designer:
    """Equilibrium-design queries for one game and formula.

    ``workers > 1`` evaluates schemes in batches on a process pool; the
    reported witness is still the first one in enumeration order.
    """

    def __init__(self, game: Game, formula: GR1Formula, limits: Limits = Limits(),
                 workers: int = 1, dump_dir: str | None = None):
        self.game = game
        self.formula = formula
        self.limits = limits
        self.workers = max(1, workers)
        self.counters = Counters()
        self._stats = LPStats(dump_dir=dump_dir)
        self._memo: dict = {}
        self._pool = None

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    # -- single schemes -------------------------------------------------------

    def verdict(self, kind: str, scheme: SubsidyScheme):
        key = (kind, scheme)
        if key not in self._memo:
            self._memo[key] = self._run([(kind, scheme)])[0]
        return self._memo[key]

    def _run(self, jobs):
        if self.workers == 1 or len(jobs) == 1 or self._stats.dump_dir:
            out = []
            for kind, scheme in jobs:
                before = self._stats.solved
                check = weak_for_scheme if kind == "weak" else strong_for_scheme
                out.append(check(self.game, self.formula, scheme, self.limits, self._stats))
                self.counters.lps += self._stats.solved - before
                self.counters.schemes += 1
            return out
        if self._pool is None:
            self._pool = ProcessPoolExecutor(self.workers)
        args = [(kind, self.game, self.formula, scheme, self.limits) for kind, scheme in jobs]
        out = []
        for witness, lps in self._pool.map(_evaluate, args):
            out.append(witness)
            self.counters.lps += lps
            self.counters.schemes += 1
        return out

    def _first(self, kind: str, schemes):
        batch_size = 1 if self.workers == 1 else 4 * self.workers
        batch = []

        def flush():
            todo = [s for s in batch if (kind, s) not in self._memo]
            for s, w in zip(todo, self._run([(kind, s) for s in todo])):
                self._memo[(kind, s)] = w
            for s in batch:
                if self._memo[(kind, s)] is not None:
                    return self._memo[(kind, s)]
            batch.clear()
            return None

        for scheme in schemes:
            batch.append(scheme)
            if len(batch) >= batch_size:
                found = flush()
                if found is not None:
                    return found
        return flush() if batch else None

    # -- decision problems ----------------------------------------------------

    def weak(self, budget: int) -> WeakWitness | None:
        return self._first("weak", enumerate_schemes(self.game, budget, self.limits.schemes))

    def strong(self, budget: int) -> StrongWitness | None:
        return self._first("strong", enumerate_schemes(self.game, budget, self.limits.schemes))

    def implements(self, kind: str, budget: int):
        return self.weak(budget) if kind == "weak" else self.strong(budget)

    # -- optimisation ---------------------------------------------------------

    def search_ceiling(self) -> int:
        """Upper end of the budget search interval."""
        return max(budget_upper_bound(self.game, self.limits), covering_budget(self.game))

    def optimum(self, kind: str, linear_scan: bool = False):
        """``(beta*, witness)`` for the least workable budget, or None.

        The covering scheme (every weight lifted to its player's maximum)
        decides up front whether any budget works for the weak problem, and
        bounds its optimum when one does. A strong implementation is also a
        weak one, so the weak optimum is a floor for the strong search and its
        absence rules a strong optimum out.
        """
        hi = self.search_ceiling()
        if kind == "weak":
            if self.verdict("weak", covering_scheme(self.game)) is None:
                return None
            lo = 0
        else:
            weak = self.optimum("weak")
            if weak is None:
                return None
            lo = weak[0]
            hi = max(hi, lo)
            if self.implements(kind, hi) is None:
                return None
        if linear_scan:
            for beta in range(lo, hi + 1):
                w = self._first(kind, enumerate_schemes(self.game, beta, self.limits.schemes,
                                                        exact_cost=True))
                if w is not None:
                    return beta, w
            return None
        while lo < hi:
            mid = (lo + hi) // 2
            if self.implements(kind, mid) is not None:
                hi = mid
            else:
                lo = mid + 1
        return lo, self.implements(kind, lo)

    def exact(self, kind: str, b: int) -> bool:
        if b < 0 or self.implements(kind, b) is None:
            return False
        return b == 0 or self.implements(kind, b - 1) is None

    def unique_optimum(self, kind: str) -> bool | None:
        found = self.optimum(kind)
        if found is None:
            return None
        beta = found[0]
        hits = 0
        for scheme in enumerate_schemes(self.game, beta, self.limits.schemes, exact_cost=True):
            if self.verdict(kind, scheme) is not None:
                hits += 1
                if hits > 1:
                    return False
        return hits == 1


# -- budget bounds --------------------------------------------------------------

def budget_upper_bound(game: Game, limits: Limits = Limits()) -> int:
    """``ceil(sum_i max(0, max_s pun_i(s)) * (|St| - 1))`` on the unsubsidised game."""
    table = punishment_table(game, limits.horizon)
    total = sum(max(Fraction(0), max(table.grid_values(i))) for i in game.players)
    return ceil(total * (len(game.states) - 1))


def covering_scheme(game: Game) -> SubsidyScheme:
    """Lift every weight to its player's maximum; all paths then pay the max."""
    entries = {}
    for i in game.players:
        top = max(game.weights[i].values())
        for s in game.states:
            entries[(i, s)] = top - game.weights[i][s]
    return SubsidyScheme.from_mapping(entries)


def covering_budget(game: Game) -> int:
    return covering_scheme(game).cost


# -- functional front door ------------------------------------------------------

def weak_implementation(game, formula, budget, **kw) -> WeakWitness | None:
    with Designer(game, formula, **kw) as d:
        return d.weak(budget)


def strong_implementation(game, formula, budget, **kw) -> StrongWitness | None:
    with Designer(game, formula, **kw) as d:
        return d.strong(budget)


def opt_weak(game, formula, linear_scan=False, **kw):
    with Designer(game, formula, **kw) as d:
        return d.optimum("weak", linear_scan)


def opt_strong(game, formula, linear_scan=False, **kw):
    with Designer(game, formula, **kw) as d:
        return d.optimum("strong", linear_scan)


def exact_weak(game, formula, b, **kw) -> bool:
    with Designer(game, formula, **kw) as d:
        return d.exact("weak", b)


def exact_strong(game, formula, b, **kw) -> bool:
    with Designer(game, formula, **kw) as d:
        return d.exact("strong", b)


def unique_opt_weak(game, formula, **kw) -> bool | None:
    with Designer(game, formula, **kw) as d:
        return d.unique_optimum("weak")


def unique_opt_strong(game, formula, **kw) -> bool | None:
    with Designer(game, formula, **kw) as d:
        return d.unique_optimum("strong")
