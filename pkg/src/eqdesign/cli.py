"""Command-line front end.

Exit codes: 0 yes/found, 1 no, 2 input error, 3 resource limit.
With ``--json`` the structured result goes to stdout and the human summary
(including timings) to stderr, so the document is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import EqDesignError, InputError, ResourceLimitExceeded
from .game import Game, count_schemes, lasso_to_document, parse_game
from .generate import random_formula, random_game
from .gr1 import GR1Formula, parse_formula, state_sets
from .mpg import punishment_table
from . import oracle
from .solver import Designer, Limits, StrongWitness

SCHEMA = 1
EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

DECISION = ("check-weak", "check-strong", "opt-weak", "opt-strong", "exact-weak",
            "exact-strong", "unique-weak", "unique-strong")
ORACLE_COMMANDS = ("check-weak", "check-strong", "punish", "lassos", "ne-lassos")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _ratio(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _scheme_doc(scheme):
    return [{"player": i, "state": s, "amount": v} for (i, s), v in scheme.entries]


def _witness_doc(game: Game, w) -> dict | None:
    if w is None:
        return None
    doc = {"scheme": _scheme_doc(w.scheme), "cost": w.scheme.cost,
           "z": [_ratio(x) for x in w.z], "lasso": lasso_to_document(game, w.path)}
    if isinstance(w, StrongWitness):
        doc["certificate"] = [[_ratio(x) for x in z] for z in w.certificate]
    return doc


# -- argument handling -------------------------------------------------------------

def _common(p: argparse.ArgumentParser, budget=False):
    p.add_argument("--game", help="game document (JSON)")
    p.add_argument("--spec", help='GR(1) formula, e.g. "GF p -> GF q"; default true')
    p.add_argument("--job", help="job file with 'game', 'spec' and 'budget' fields")
    p.add_argument("--json", action="store_true", help="print the structured result document")
    if budget:
        p.add_argument("--budget", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eqdesign", description="Subsidy design for mean-payoff games.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in DECISION:
        p = sub.add_parser(name)
        _common(p, budget=name.split("-")[0] in ("check", "exact"))
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--dump-lp", metavar="DIR", help="write every LP solved to DIR")
        if name.startswith("opt"):
            p.add_argument("--linear-scan", action="store_true",
                           help="scan budgets upward instead of binary search")
    p = sub.add_parser("count", help="number of schemes with cost at most the budget")
    _common(p, budget=True)
    p = sub.add_parser("punish", help="punishment value of every player at every state")
    _common(p)
    p = sub.add_parser("selftest", help="randomized solver-vs-oracle agreement")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("oracle", help="brute-force reference answers")
    p.add_argument("oracle_command", choices=ORACLE_COMMANDS)
    _common(p, budget=True)
    p.add_argument("--max-cycle", type=int, help="longest cycle explored")
    p.add_argument("--max-prefix", type=int, help="longest prefix explored")
    return parser


def _load(args, need_budget=False) -> tuple[Game, GR1Formula, int | None]:
    job = {}
    base = "."
    if args.job:
        try:
            with open(args.job) as fh:
                job = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read job file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"job file is not valid JSON: {exc}") from None
        if not isinstance(job, dict):
            raise InputError("job file must hold a JSON object")
        base = os.path.dirname(os.path.abspath(args.job))
    source = args.game if args.game is not None else job.get("game")
    if source is None:
        raise InputError("no game given (use --game or a job file)")
    if isinstance(source, dict):
        game = parse_game(json.dumps(source))
    else:
        path = source if args.game is not None else os.path.join(base, source)
        try:
            with open(path) as fh:
                game = parse_game(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read game file: {exc}") from None
    spec = args.spec if args.spec is not None else job.get("spec", "true")
    formula = parse_formula(spec)
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = job.get("budget")
    if need_budget:
        if not isinstance(budget, int) or isinstance(budget, bool):
            raise InputError("a non-negative integer --budget is required")
        if budget < 0:
            raise InputError("budget must be non-negative")
    # unknown propositions are reported before any solving starts
    state_sets(game, formula)
    return game, formula, budget


# -- commands -----------------------------------------------------------------------

def _decision(args, timings):
    kind = "weak" if args.command.endswith("weak") else "strong"
    action = args.command.split("-")[0]
    t = time.perf_counter()
    game, formula, budget = _load(args, need_budget=action in ("check", "exact"))
    timings["load"] = time.perf_counter() - t
    doc = {"command": args.command, "spec": str(formula)}
    t = time.perf_counter()
    with Designer(game, formula, Limits(), workers=args.threads, dump_dir=args.dump_lp) as d:
        if action == "check":
            w = d.implements(kind, budget)
            doc.update(budget=budget, verdict="yes" if w else "no", witness=_witness_doc(game, w))
        elif action == "opt":
            found = d.optimum(kind, linear_scan=args.linear_scan)
            doc.update(verdict="yes" if found else "no",
                       optimum=found[0] if found else None,
                       witness=_witness_doc(game, found[1]) if found else None)
        elif action == "exact":
            ok = d.exact(kind, budget)
            doc.update(budget=budget, verdict="yes" if ok else "no")
        else:
            unique = d.unique_optimum(kind)
            found = d.optimum(kind) if unique is not None else None
            doc.update(verdict="yes" if unique else "no", unique=unique,
                       optimum=found[0] if found else None)
        doc["counters"] = {"schemes": d.counters.schemes, "lps": d.counters.lps}
    timings["solve"] = time.perf_counter() - t
    return doc


def _count(args, timings):
    game, _, budget = _load(args, need_budget=True)
    m = len(game.cells())
    return {"command": "count", "verdict": "yes", "cells": m, "budget": budget,
            "count": count_schemes(m, budget)}


def _punish(args, timings):
    game, _, _ = _load(args)
    t = time.perf_counter()
    table = punishment_table(game)
    timings["solve"] = time.perf_counter() - t
    values = {i: {s: _ratio(table.value(i, s)) for s in game.states} for i in game.players}
    return {"command": "punish", "verdict": "yes", "values": values}


def _oracle(args, timings):
    game, formula, budget = _load(args, need_budget=args.oracle_command.startswith("check"))
    cfg = oracle.OracleConfig(max_prefix_length=args.max_prefix, max_cycle_length=args.max_cycle)
    t = time.perf_counter()
    doc = {"command": f"oracle {args.oracle_command}"}
    cmd = args.oracle_command
    if cmd == "check-weak":
        ok = oracle.brute_force_weak(game, formula, budget, cfg)
        doc.update(budget=budget, spec=str(formula), verdict="yes" if ok else "no")
    elif cmd == "check-strong":
        ok = oracle.brute_force_strong(game, formula, budget, cfg)
        doc.update(budget=budget, spec=str(formula), verdict="yes" if ok else "no")
    elif cmd == "punish":
        values = {i: {s: _ratio(v) for s, v in oracle.brute_force_punishment(game, i, cfg).items()}
                  for i in game.players}
        doc.update(verdict="yes", values=values)
    else:
        paths = (oracle.enumerate_lassos(game, cfg) if cmd == "lassos"
                 else oracle.brute_force_ne_lassos(game, cfg))
        found = [lasso_to_document(game, p) for p in paths]
        doc.update(verdict="yes" if found else "no", lassos=found)
    timings["solve"] = time.perf_counter() - t
    return doc


def selftest_case(seed: int, case: int) -> dict:
    """One randomized solver-vs-oracle comparison; a pure function of its arguments."""
    rng = random.Random(seed * 1_000_003 + case)
    game = random_game(rng, max_states=3)
    formula = random_formula(rng)
    budget = rng.randint(0, 1)
    with Designer(game, formula) as d:
        weak = d.weak(budget) is not None
        strong = d.strong(budget) is not None
    o_weak = oracle.brute_force_weak(game, formula, budget)
    o_strong = oracle.brute_force_strong(game, formula, budget)
    table = punishment_table(game)
    pun_ok = all(oracle.brute_force_punishment(game, i) ==
                 {s: table.value(i, s) for s in game.states} for i in game.players)
    return {"case": case, "states": len(game.states), "players": len(game.players),
            "spec": str(formula), "budget": budget,
            "weak": weak, "strong": strong, "oracle_weak": o_weak, "oracle_strong": o_strong,
            "punishment_agrees": pun_ok,
            "agree": weak == o_weak and strong == o_strong and pun_ok}


def _selftest_star(args):
    return selftest_case(*args)


def _selftest(args, timings):
    if args.cases < 0:
        raise InputError("--cases must be non-negative")
    jobs = [(args.seed, k) for k in range(args.cases)]
    t = time.perf_counter()
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            results = list(pool.map(_selftest_star, jobs))
    else:
        results = [_selftest_star(j) for j in jobs]
    timings["solve"] = time.perf_counter() - t
    bad = sum(not r["agree"] for r in results)
    return {"command": "selftest", "seed": args.seed, "cases": args.cases,
            "disagreements": bad, "verdict": "yes" if bad == 0 else "no", "results": results}


HANDLERS = {"count": _count, "punish": _punish, "selftest": _selftest, "oracle": _oracle}


# -- output ---------------------------------------------------------------------------

def _human(doc: dict) -> str:
    cmd = doc["command"]
    if cmd == "count":
        return str(doc["count"])
    if cmd.endswith("punish"):
        lines = []
        for i, row in doc["values"].items():
            lines.append(f"player {i}: " + ", ".join(f"{s}={v}" for s, v in row.items()))
        return "\n".join(lines)
    if cmd == "selftest":
        lines = [f"case {r['case']}: weak {r['weak']}/{r['oracle_weak']} "
                 f"strong {r['strong']}/{r['oracle_strong']} "
                 f"{'ok' if r['agree'] else 'DISAGREE'}" for r in doc["results"]]
        lines.append(f"{doc['cases'] - doc['disagreements']}/{doc['cases']} cases agree")
        return "\n".join(lines)
    lines = [f"{cmd}: {doc['verdict']}"]
    if "optimum" in doc and doc["optimum"] is not None:
        lines.append(f"optimum budget: {doc['optimum']}")
    if "unique" in doc:
        lines.append(f"unique optimum: {doc['unique']}")
    w = doc.get("witness")
    if w:
        scheme = ", ".join(f"{e['player']}@{e['state']}+{e['amount']}" for e in w["scheme"])
        lines.append(f"scheme (cost {w['cost']}): {scheme or 'none'}")
        lines.append("z: (" + ", ".join(w["z"]) + ")")
        lasso = w["lasso"]
        lines.append("path: " + " ".join(lasso["prefix"]) + " (" + " ".join(lasso["cycle"]) + ")^w")
    if "lassos" in doc:
        for lasso in doc["lassos"]:
            lines.append("  " + " ".join(lasso["prefix"]) + " (" + " ".join(lasso["cycle"]) + ")^w")
    if "counters" in doc:
        c = doc["counters"]
        lines.append(f"schemes examined: {c['schemes']}, LPs solved: {c['lps']}")
    return "\n".join(lines)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    timings: dict = {}
    handler = HANDLERS.get(args.command, _decision)
    try:
        doc = handler(args, timings)
    except InputError as exc:
        print(f"eqdesign: input error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    except ResourceLimitExceeded as exc:
        doc = {"command": args.command, "verdict": "resource-limit", "reason": str(exc)}
        print(f"eqdesign: resource limit: {exc}", file=sys.stderr)
    except EqDesignError as exc:
        print(f"eqdesign: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc = {"schema": SCHEMA, **doc}
    human = _human(doc) if doc["verdict"] != "resource-limit" else "resource limit reached"
    if timings:
        human += "\n" + "time: " + ", ".join(f"{k} {v:.3f}s" for k, v in timings.items())
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
        print(human, file=sys.stderr)
    else:
        print(human)
    return {"yes": EXIT_YES, "no": EXIT_NO}.get(doc["verdict"], EXIT_LIMIT)


def main():
    sys.exit(run())
