"""Cycle-degrees, degeneracy orderings, and average cycle-degree measures.

The cycle-degree of v is the size of a smallest vertex set S (not containing
v) meeting every directed cycle through v.  By Menger's theorem this equals a
max flow in the vertex-split network of D - v, which is how ``cycle_degree``
computes it; ``cycle_degree_bruteforce`` checks subsets by increasing size and
exists as an independent oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .digraph import Digraph, induced_subdigraph, lies_on_cycle
from .errors import CapExceededError, PreconditionError

FLAVOURS = ("c", "min", "max")


# -- max-flow computation of the cycle-degree --------------------------------


class _FlowNet:
    """Tiny deterministic Edmonds-Karp; node ids are ints, arcs unit or 'infinite'."""

    def __init__(self):
        self.adj: dict[int, list[int]] = {}
        self.cap: dict[tuple[int, int], int] = {}

    def add(self, a: int, b: int, c: int):
        if (a, b) not in self.cap:
            self.adj.setdefault(a, []).append(b)
            self.adj.setdefault(b, []).append(a)
            self.cap[(a, b)] = 0
            self.cap[(b, a)] = self.cap.get((b, a), 0)
        self.cap[(a, b)] += c

    def finalize(self):
        for a in self.adj:
            self.adj[a] = sorted(set(self.adj[a]))

    def max_flow(self, s: int, t: int) -> int:
        self.finalize()
        total = 0
        while True:
            parent = {s: s}
            queue = deque([s])
            while queue and t not in parent:
                u = queue.popleft()
                for w in self.adj.get(u, ()):
                    if w not in parent and self.cap[(u, w)] > 0:
                        parent[w] = u
                        queue.append(w)
            if t not in parent:
                return total
            # bottleneck along the path (always 1 here, but stay general)
            path = []
            x = t
            while x != s:
                path.append((parent[x], x))
                x = parent[x]
            aug = min(self.cap[e] for e in path)
            for a, b in path:
                self.cap[(a, b)] -= aug
                self.cap[(b, a)] += aug
            total += aug

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.adj.get(u, ()):
                if w not in seen and self.cap[(u, w)] > 0:
                    seen.add(w)
                    queue.append(w)
        return seen


def cycle_degree(
    D: Digraph, v: int, restrict: Iterable[int] | None = None
) -> tuple[int, frozenset[int]]:
    """Cycle-degree of v and a minimum hitting set for the cycles through v.

    Every vertex u != v is split into u_in -> u_out with capacity 1; arcs of
    D - v run between the split halves, out-neighbours of v are fed by the
    source and in-neighbours drain to the sink.  The min cut read off the
    final residual graph is the witness.
    """
    allowed = set(restrict) if restrict is not None else set(range(D.n))
    if v not in allowed:
        raise ValueError(f"vertex {v} outside the restriction")
    others = sorted(allowed - {v})
    inf = len(others) + 1
    SRC = -1
    SNK = -2
    net = _FlowNet()

    def vin(u):
        return 2 * u

    def vout(u):
        return 2 * u + 1

    for u in others:
        net.add(vin(u), vout(u), 1)
    for a, b in D.arcs():
        if a in allowed and b in allowed and a != v and b != v:
            net.add(vout(a), vin(b), inf)
    for b in D.successors(v):
        if b in allowed:
            net.add(SRC, vin(b), inf)
    for a in D.predecessors(v):
        if a in allowed:
            net.add(vout(a), SNK, inf)

    value = net.max_flow(SRC, SNK)
    reach = net.residual_reachable(SRC)
    witness = frozenset(
        u for u in others if vin(u) in reach and vout(u) not in reach
    )
    if len(witness) != value:
        raise AssertionError(
            f"min-cut size {len(witness)} disagrees with flow value {value} at vertex {v}"
        )
    # the witness must actually kill every cycle through v
    if lies_on_cycle(D, v, allowed - witness):
        raise AssertionError(f"residual cut {sorted(witness)} misses a cycle through {v}")
    return value, witness


def cycle_degree_bruteforce(
    D: Digraph, v: int, restrict: Iterable[int] | None = None, cap: int = 12
) -> tuple[int, frozenset[int]]:
    """Independent oracle: try hitting sets by increasing size, ascending order."""
    allowed = set(restrict) if restrict is not None else set(range(D.n))
    if v not in allowed:
        raise ValueError(f"vertex {v} outside the restriction")
    if len(allowed) > cap + 1:
        raise CapExceededError(f"brute force limited to {cap + 1} vertices, got {len(allowed)}")
    others = sorted(allowed - {v})
    for size in range(len(others) + 1):
        for S in combinations(others, size):
            if not lies_on_cycle(D, v, allowed - set(S)):
                return size, frozenset(S)
    raise AssertionError("removing all other vertices always breaks every cycle")


def min_degree(D: Digraph, v: int) -> int:
    return min(D.out_degree(v), D.in_degree(v))


def max_degree_both(D: Digraph, v: int) -> int:
    return max(D.out_degree(v), D.in_degree(v))


def max_cycle_degree(D: Digraph) -> int:
    """Largest cycle-degree over all vertices (0 on the empty digraph)."""
    if D.n == 0:
        return 0
    return max(cycle_degree(D, v)[0] for v in range(D.n))


# -- degeneracy orderings -----------------------------------------------------


@dataclass(frozen=True)
class EliminationOrdering:
    """A peeling order v_1..v_n with per-position hitting sets.

    ``witnesses[i]`` is contained in the suffix after position i and meets
    every directed cycle through ``order[i]`` inside the suffix digraph.
    ``degeneracy`` is the largest degree seen at removal time.
    """

    flavour: str
    order: tuple[int, ...]
    witnesses: tuple[frozenset[int], ...]
    degeneracy: int

    def suffix(self, i: int) -> frozenset[int]:
        return frozenset(self.order[i:])


def _flavour_degree(D: Digraph, v: int, active: set[int], flavour: str) -> tuple[int, frozenset[int]]:
    """Degree of the given flavour inside D[active], plus a cycle-hitting witness."""
    outs = frozenset(w for w in D.successors(v) if w in active)
    ins = frozenset(w for w in D.predecessors(v) if w in active)
    if flavour == "c":
        return cycle_degree(D, v, active)
    if flavour == "min":
        if len(outs) <= len(ins):
            return len(outs), outs
        return len(ins), ins
    if flavour == "max":
        # the witness only needs to hit cycles; the smaller side still works
        value = max(len(outs), len(ins))
        return value, (outs if len(outs) <= len(ins) else ins)
    raise ValueError(f"unknown flavour {flavour!r}, expected one of {FLAVOURS}")


def degeneracy_ordering(D: Digraph, flavour: str = "c") -> EliminationOrdering:
    """Greedy peeling: repeatedly delete a vertex of minimum flavour-degree.

    Ties break to the lowest vertex id.  The peeling is exact for the
    corresponding degeneracy because all three degree flavours are monotone
    under taking induced subdigraphs.
    """
    if flavour not in FLAVOURS:
        raise ValueError(f"unknown flavour {flavour!r}, expected one of {FLAVOURS}")
    active = set(range(D.n))
    order: list[int] = []
    witnesses: list[frozenset[int]] = []
    degeneracy = 0
    while active:
        best_v, best_val, best_wit = -1, None, frozenset()
        for v in sorted(active):
            val, wit = _flavour_degree(D, v, active, flavour)
            if best_val is None or val < best_val:
                best_v, best_val, best_wit = v, val, wit
        order.append(best_v)
        witnesses.append(best_wit)
        degeneracy = max(degeneracy, best_val)
        active.remove(best_v)
    return EliminationOrdering(flavour, tuple(order), tuple(witnesses), degeneracy)


def check_elimination_ordering(D: Digraph, ordering: EliminationOrdering) -> None:
    """Verify the witness invariant; raises AssertionError on violation."""
    seen = sorted(ordering.order)
    if seen != list(range(D.n)):
        raise AssertionError("ordering is not a permutation of the vertices")
    for i, v in enumerate(ordering.order):
        suffix = set(ordering.order[i:])
        X = ordering.witnesses[i]
        if not X <= suffix - {v}:
            raise AssertionError(f"witness at position {i} leaves the suffix")
        if lies_on_cycle(D, v, suffix - X):
            raise AssertionError(f"witness at position {i} misses a cycle through {v}")


def degeneracy_bruteforce(D: Digraph, flavour: str = "c", cap: int = 10) -> int:
    """Max over vertex subsets W of the minimum flavour-degree inside D[W]."""
    if D.n > cap:
        raise CapExceededError(f"degeneracy brute force limited to {cap} vertices")
    if D.n == 0:
        return 0
    best = 0
    verts = list(range(D.n))
    for size in range(1, D.n + 1):
        for W in combinations(verts, size):
            active = set(W)
            inner = min(_flavour_degree(D, v, active, flavour)[0] for v in W)
            best = max(best, inner)
    return best


# -- average cycle-degree -----------------------------------------------------


def avg_cycle_degree(D: Digraph) -> Fraction:
    """Exact average of the cycle-degrees (Fraction; 0 on the empty digraph)."""
    if D.n == 0:
        return Fraction(0)
    return Fraction(sum(cycle_degree(D, v)[0] for v in range(D.n)), D.n)


def max_avg_cycle_degree_bruteforce(D: Digraph, cap: int = 10) -> Fraction:
    """Maximum of avg_cycle_degree over non-empty induced subdigraphs.

    Induced subsets suffice: deleting arcs only destroys cycles, so it can
    never raise any cycle-degree (the arc-subgraph check lives in the tests).
    """
    if D.n > cap:
        raise CapExceededError(f"Mad brute force limited to {cap} vertices")
    if D.n == 0:
        return Fraction(0)
    best = Fraction(0)
    verts = list(range(D.n))
    for size in range(1, D.n + 1):
        for W in combinations(verts, size):
            sub, _ = induced_subdigraph(D, W)
            best = max(best, avg_cycle_degree(sub))
    return best
