"""Immutable simple digraphs and the handful of structural ops everything else builds on.

Vertices are the integers 0..n-1.  Arcs are ordered pairs without self-loops;
a digon is the pair of opposite arcs (u,v),(v,u).  All traversals iterate
neighbours in ascending vertex order so that every derived object
(cycles, cuts, orderings) is deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Cycle:
    """A directed cycle given by its vertex sequence (length >= 2, digons allowed)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("a directed cycle has at least 2 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("cycle vertices must be distinct")

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def arcs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


class Digraph:
    """A simple digraph on vertices 0..n-1, immutable after construction.

    Self-loops are rejected; duplicate arcs are collapsed with a warning.
    """

    __slots__ = ("n", "_succ", "_pred", "_arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        seen: set[tuple[int, int]] = set()
        dupes = 0
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} not allowed")
            if (u, v) in seen:
                dupes += 1
            else:
                seen.add((u, v))
        if dupes:
            warnings.warn(f"collapsed {dupes} duplicate arc(s)", stacklevel=2)
        succ: list[list[int]] = [[] for _ in range(n)]
        pred: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(seen):
            succ[u].append(v)
            pred[v].append(u)
        self._succ = tuple(tuple(s) for s in succ)
        self._pred = tuple(tuple(sorted(p)) for p in pred)
        self._arcs = frozenset(seen)

    # -- basic accessors ----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._arcs)

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs in sorted order."""
        return sorted(self._arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def out_degree(self, v: int) -> int:
        return len(self._succ[v])

    def in_degree(self, v: int) -> int:
        return len(self._pred[v])

    def vertices(self) -> range:
        return range(self.n)

    def digons(self) -> list[tuple[int, int]]:
        """All digons as pairs (u, v) with u < v."""
        return sorted(
            (u, v) for (u, v) in self._arcs if u < v and (v, u) in self._arcs
        )

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self._arcs == other._arcs
        )

    def __hash__(self):
        return hash((self.n, self._arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


class Graph:
    """A simple undirected graph on 0..n-1 (support type for the underlying graph)."""

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        es: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            es.add((min(u, v), max(u, v)))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._edges = frozenset(es)

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- structural operations --------------------------------------------------


def induced_subdigraph(D: Digraph, S: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Induced subdigraph on S, relabelled to 0..|S|-1.

    Returns the subdigraph together with the list mapping new ids back to the
    original vertex ids (new id i corresponds to original ``mapping[i]``).
    Vertices keep their relative order.
    """
    keep = sorted(set(S))
    index = {v: i for i, v in enumerate(keep)}
    arcs = [
        (index[u], index[v])
        for (u, v) in D.arcs()
        if u in index and v in index
    ]
    return Digraph(len(keep), arcs), keep


def underlying_graph(D: Digraph) -> Graph:
    """Forget orientations (digons collapse to a single edge)."""
    return Graph(D.n, D.arcs())


def bidirect(G: Graph) -> Digraph:
    """Replace every edge by a digon."""
    arcs = []
    for u, v in G.edges():
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(G.n, arcs)


def is_acyclic_with_witness(D: Digraph, restrict: Iterable[int] | None = None) -> Cycle | None:
    """Return None when D (restricted to ``restrict``) is acyclic, else a cycle.

    Deterministic: DFS roots and neighbours are taken in ascending order, so
    the same digraph always yields the same witness cycle.
    """
    allowed = set(restrict) if restrict is not None else None

    def ok(v):
        return allowed is None or v in allowed

    WHITE, GRAY, BLACK = 0, 1, 2
    state = [WHITE] * D.n
    on_path: list[int] = []

    for root in range(D.n):
        if not ok(root) or state[root] != WHITE:
            continue
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(D.successors(root)))]
        state[root] = GRAY
        on_path.append(root)
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if not ok(w):
                    continue
                if state[w] == GRAY:
                    i = on_path.index(w)
                    return Cycle(tuple(on_path[i:]))
                if state[w] == WHITE:
                    state[w] = GRAY
                    on_path.append(w)
                    stack.append((w, iter(D.successors(w))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                on_path.pop()
                state[v] = BLACK
    return None


def strongly_connected_components(D: Digraph, restrict: Iterable[int] | None = None) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components listed in a deterministic order."""
    allowed = set(restrict) if restrict is not None else set(range(D.n))
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    comps: list[list[int]] = []

    for root in sorted(allowed):
        if root in index:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, iter(D.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in allowed:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(D.successors(w))))
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
                comps.append(sorted(comp))
    return comps


def scc_of(D: Digraph, v: int, restrict: Iterable[int] | None = None) -> list[int]:
    """The strongly connected component containing v (within ``restrict``)."""
    allowed = set(restrict) if restrict is not None else set(range(D.n))
    if v not in allowed:
        raise ValueError(f"vertex {v} outside the restriction")
    # forward/backward reachability meet
    fwd = _reach(D, v, allowed, forward=True)
    bwd = _reach(D, v, allowed, forward=False)
    return sorted(fwd & bwd)


def _reach(D: Digraph, v: int, allowed: set[int], forward: bool) -> set[int]:
    seen = {v}
    todo = [v]
    while todo:
        u = todo.pop()
        nbrs = D.successors(u) if forward else D.predecessors(u)
        for w in nbrs:
            if w in allowed and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def lies_on_cycle(D: Digraph, v: int, restrict: Iterable[int] | None = None) -> bool:
    """True when some directed cycle of D (within ``restrict``) passes through v."""
    return len(scc_of(D, v, restrict)) >= 2


def cycle_through(D: Digraph, v: int, restrict: Iterable[int] | None = None) -> Cycle | None:
    """A shortest directed cycle through v within ``restrict``, or None.

    BFS from v over the restriction; the first predecessor of v reached closes
    the cycle, so the result is deterministic.
    """
    allowed = set(restrict) if restrict is not None else set(range(D.n))
    if v not in allowed:
        return None
    parent: dict[int, int] = {v: -1}
    queue = [v]
    qi = 0
    back = set(w for w in D.predecessors(v) if w in allowed)
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        if u != v and u in back:
            path = []
            x = u
            while x != -1:
                path.append(x)
                x = parent[x]
            return Cycle(tuple(reversed(path)))
        for w in D.successors(u):
            if w in allowed and w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def verify_cycle(D: Digraph, cycle: Cycle) -> bool:
    """Check that every consecutive pair (cyclically) is an arc of D."""
    return all(D.has_arc(u, v) for (u, v) in cycle.arcs())
