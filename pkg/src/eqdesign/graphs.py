"""Small graph routines over integer-indexed or hashable-node digraphs."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence


def tarjan_scc(nodes: Iterable[Hashable], successors: Callable) -> list[list]:
    """Strongly connected components, sinks first (reverse topological order).

    Iterative, so deep graphs do not hit the recursion limit. Node order inside
    each component follows discovery order.
    """
    index, low, on_stack = {}, {}, set()
    stack, result = [], []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comp.reverse()
                result.append(comp)
    return result


def max_cycle_mean(nodes: Sequence[int], succ: Sequence[Sequence[int]],
                   weight: Sequence[int]) -> Fraction:
    """Karp's maximum mean cycle of a strongly connected node set.

    ``weight`` is attached to nodes; a cycle's mean is the average weight of
    the nodes it visits. ``nodes`` must contain at least one cycle.
    """
    members = set(nodes)
    k = len(nodes)
    neg = None
    # d[j][v]: heaviest walk with j edges ending at v, any start
    d = [{v: 0 for v in nodes}]
    preds = {v: [] for v in nodes}
    for u in nodes:
        for v in succ[u]:
            if v in members:
                preds[v].append(u)
    for _ in range(k):
        prev, cur = d[-1], {}
        for v in nodes:
            best = neg
            for u in preds[v]:
                if prev[u] is not None:
                    cand = prev[u] + weight[u]
                    if best is None or cand > best:
                        best = cand
            cur[v] = best
        d.append(cur)
    best_mean = None
    for v in nodes:
        if d[k][v] is None:
            continue
        worst = None
        for j in range(k):
            if d[j][v] is None:
                continue
            ratio = Fraction(d[k][v] - d[j][v], k - j)
            if worst is None or ratio < worst:
                worst = ratio
        if worst is not None and (best_mean is None or worst > best_mean):
            best_mean = worst
    assert best_mean is not None, "component has no cycle"
    return best_mean


def one_player_values(succ: Sequence[Sequence[int]], weight: Sequence[int],
                      maximize: bool = True) -> list[Fraction]:
    """Optimal mean payoff from every node when one agent picks all moves."""
    n = len(succ)
    w = list(weight) if maximize else [-x for x in weight]
    values: list = [None] * n
    for comp in tarjan_scc(range(n), lambda v: succ[v]):
        members = set(comp)
        cyclic = len(comp) > 1 or comp[0] in succ[comp[0]]
        best = max_cycle_mean(comp, succ, w) if cyclic else None
        for v in comp:
            for u in succ[v]:
                if u not in members and (best is None or values[u] > best):
                    best = values[u]
        for v in comp:
            values[v] = best
    return values if maximize else [-v for v in values]


def bfs_path(start, targets, out_edges: Callable) -> list | None:
    """Shortest edge list from ``start`` to any node in ``targets``.

    ``out_edges(v)`` yields ``(edge, successor)`` pairs; exploration order
    follows it, so the result is deterministic.
    """
    if start in targets:
        return []
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for edge, w in out_edges(v):
            if w in parent:
                continue
            parent[w] = (v, edge)
            if w in targets:
                path = []
                while parent[w] is not None:
                    v, e = parent[w]
                    path.append(e)
                    w = v
                path.reverse()
                return path
            queue.append(w)
    return None


def reachable(start, successors: Callable) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in successors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def eulerian_circuit(start, multiedges: Sequence, src: Callable, dst: Callable) -> list:
    """Hierholzer's algorithm on a connected balanced multigraph.

    ``multiedges`` lists every edge copy; the circuit uses each exactly once
    and begins at ``start``.
    """
    outgoing: dict = {}
    for e in multiedges:
        outgoing.setdefault(src(e), []).append(e)
    for lst in outgoing.values():
        lst.reverse()  # pop() then consumes edges in list order
    stack, circuit = [(start, None)], []
    while stack:
        v, via = stack[-1]
        if outgoing.get(v):
            e = outgoing[v].pop()
            stack.append((dst(e), e))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    circuit.reverse()
    if len(circuit) != len(multiedges):
        raise ValueError("multigraph is not connected or not balanced")
    return circuit
