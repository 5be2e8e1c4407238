"""Shared helpers for the test suite: tiny fixtures and independent oracles.

Everything in here is deliberately naive; these functions exist to
cross-check the library, so they must not share code with it.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from redicolouring.digraph import Digraph, Graph


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def digon() -> Digraph:
    return Digraph(2, [(0, 1), (1, 0)])


def complete_bidirected(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    arcs = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                arcs.append((u, v))
    return Digraph(n, arcs)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph(n, edges)


def has_cycle_through(D: Digraph, v: int, allowed: set[int]) -> bool:
    """Naive check: some directed cycle inside `allowed` passes through v."""
    if v not in allowed:
        return False
    # DFS for a path from each successor back to v
    for start in D.successors(v):
        if start not in allowed:
            continue
        seen = {start}
        todo = [start]
        while todo:
            u = todo.pop()
            if u == v:
                break
            for w in D.successors(u):
                if w in allowed and w not in seen:
                    seen.add(w)
                    todo.append(w)
        else:
            continue
        return True
    return False


def naive_is_acyclic(D: Digraph, allowed: set[int]) -> bool:
    return not any(has_cycle_through(D, v, allowed) for v in allowed)


def all_dicolourings(D: Digraph, k: int) -> list[tuple[int, ...]]:
    """Every valid k-dicolouring, by full enumeration (no pruning tricks)."""
    result = []
    for assignment in product(range(1, k + 1), repeat=D.n):
        if all(
            naive_is_acyclic(D, {v for v in range(D.n) if assignment[v] == c})
            for c in range(1, k + 1)
        ):
            result.append(assignment)
    return result


def undirected_proper_colourings(G: Graph, k: int) -> list[tuple[int, ...]]:
    result = []
    for assignment in product(range(1, k + 1), repeat=G.n):
        if all(assignment[u] != assignment[v] for u, v in G.edges()):
            result.append(assignment)
    return result


def undirected_degeneracy(G: Graph) -> int:
    """Peel minimum degree; independent of the library's directed peeling."""
    active = set(range(G.n))
    best = 0
    while active:
        v = min(active, key=lambda u: (sum(1 for w in G.neighbours(u) if w in active), u))
        best = max(best, sum(1 for w in G.neighbours(v) if w in active))
        active.remove(v)
    return best


def chromatic_number(G: Graph) -> int:
    for k in range(1, G.n + 1):
        if undirected_proper_colourings(G, k):
            return k
    return max(1, G.n)


def treewidth_bruteforce(G: Graph) -> int:
    """Exact treewidth via the elimination-ordering subset DP (fine for n <= 7)."""
    n = G.n
    if n == 0:
        return 0
    adj = [set(G.neighbours(v)) for v in range(n)]
    full = (1 << n) - 1
    best = {0: -1}  # width of eliminating the empty set
    for mask in range(1, full + 1):
        cur = None
        for v in range(n):
            if not mask & (1 << v):
                continue
            prev = mask ^ (1 << v)
            if prev not in best:
                continue
            # degree of v in the fill-in graph after eliminating `prev`:
            # neighbours reachable through eliminated vertices
            seen = {v}
            todo = [v]
            deg = 0
            while todo:
                u = todo.pop()
                for w in adj[u]:
                    if w in seen:
                        continue
                    seen.add(w)
                    if prev & (1 << w):
                        todo.append(w)
                    else:
                        deg += 1
            cand = max(best[prev], deg)
            if cur is None or cand < cur:
                cur = cand
        if cur is not None:
            best[mask] = cur
    return best[full]


def small_subsets(n: int, max_size: int):
    for size in range(1, max_size + 1):
        yield from combinations(range(n), size)
