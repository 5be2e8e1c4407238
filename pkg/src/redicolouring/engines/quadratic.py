"""Quadratic-diameter recolouring via a derived undirected graph.

Along a cycle-degeneracy ordering v_1, ..., v_n with witnesses X_i, the
derived graph G joins v_i to its witness vertices.  Every vertex's later
G-neighbourhood is exactly its witness, so prefixes of the ordering admit
generous list assignments.  Each leg marches a block of ceil(k/3)
vertices at a time into a proper colouring of G, shuffling the prefix
with avoid_colours so the block's colours are free; the two proper
colourings are then joined by an undirected walk on G and the second leg
is replayed backwards.
"""

from __future__ import annotations

from math import ceil

from ..colouring import Colouring, require_dicolouring
from ..degrees import degeneracy_ordering
from ..digraph import Digraph, Graph, bidirect
from ..errors import InternalInvariantError, PreconditionError
from ..oracle import RecolouringSequence
from .lists import ListAssignment, avoid_colours
from .mixing import mix_simple
from .recorder import MoveRecorder


def _derived_graph(D: Digraph, ordering) -> Graph:
    edges = []
    for i, v in enumerate(ordering.order):
        for x in ordering.witnesses[i]:
            edges.append((v, x))
    return Graph(D.n, edges)


def _is_proper(G: Graph, colours) -> bool:
    return all(colours[u] != colours[v] for u, v in G.edges())


def _prefix_avoid(
    rec: MoveRecorder,
    G: Graph,
    order: tuple[int, ...],
    witnesses,
    boundary: int,
    k: int,
    m: int,
    S_prime: set[int],
    mode: str,
) -> None:
    """Recolour the first ``boundary`` ordering positions away from S_prime.

    Lists exclude only the current colours of witness vertices at or
    beyond the boundary, which leaves them ceil(k/3)-feasible; the moves
    returned by avoid_colours are replayed on the full digraph.
    """
    if boundary == 0:
        return
    pos = {v: j for j, v in enumerate(order)}
    edges = [
        (j, pos[x])
        for j in range(boundary)
        for x in witnesses[j]
        if pos[x] < boundary
    ]
    H = Graph(boundary, edges)
    lists = []
    for j in range(boundary):
        tail_cols = {rec.colours[x] for x in witnesses[j] if pos[x] >= boundary}
        lists.append(frozenset(range(1, k + 1)) - tail_cols)
    L = ListAssignment(H, k, tuple(lists), m, tuple(range(boundary)))
    alpha_H = Colouring(tuple(rec.colours[order[j]] for j in range(boundary)), k)
    seq = avoid_colours(H, L, alpha_H, S_prime, mode)
    for local_v, c in seq.moves:
        rec.move(order[local_v], c, "prefix shuffle")


def _leg(
    D: Digraph,
    k: int,
    G: Graph,
    ordering,
    start: Colouring,
    m: int,
    mode: str,
) -> MoveRecorder:
    """March ``start`` into a proper colouring of the derived graph."""
    rec = MoveRecorder(D, start)
    n = D.n
    if n == 0 or _is_proper(G, rec.colours):
        return rec
    order = ordering.order
    witnesses = ordering.witnesses

    def choose_block(lo: int, hi: int) -> list[int]:
        chosen: list[int] = []
        used: set[int] = set()
        for j in range(lo, hi):
            wit_cols = {rec.colours[x] for x in witnesses[j]}
            c = next(
                (col for col in range(1, k + 1) if col not in wit_cols and col not in used),
                None,
            )
            if c is None:
                raise InternalInvariantError(
                    f"no free colour for ordering position {j}"
                )
            chosen.append(c)
            used.add(c)
        return chosen

    first = choose_block(0, min(m, n))
    for j, c in enumerate(first):
        rec.move_if_needed(order[j], c, "initial block")
    i = min(m, n)
    while i < n:
        step = min(m, n - i)
        chosen = choose_block(i, i + step)
        S_prime = set(chosen)
        for c in range(1, k + 1):
            if len(S_prime) == m:
                break
            S_prime.add(c)
        _prefix_avoid(rec, G, order, witnesses, i, k, m, S_prime, mode)
        for idx in range(step):
            rec.move_if_needed(order[i + idx], chosen[idx], "block advance")
        S_second = set()
        for c in range(1, k + 1):
            if len(S_second) == m:
                break
            if c not in S_prime:
                S_second.add(c)
        _prefix_avoid(rec, G, order, witnesses, i, k, m, S_second, mode)
        i += step
    if not _is_proper(G, rec.colours):
        raise InternalInvariantError("leg did not reach a proper colouring of G")
    return rec


def mix_quadratic(
    D: Digraph, k: int, alpha: Colouring, beta: Colouring, avoid_mode: str = "oracle"
) -> RecolouringSequence:
    """Recolouring sequence from alpha to beta, k >= ceil(3(d*+1)/2).

    d* is the cycle degeneracy.  Both endpoints are walked to proper
    colourings of the derived graph, which are then connected by an
    undirected walk; total length is quadratic in n with a constant
    measured by the caller rather than asserted.
    """
    dstar = degeneracy_ordering(D, "c").degeneracy
    need = (3 * (dstar + 1) + 1) // 2
    if k < need:
        raise PreconditionError(
            f"mix_quadratic needs k >= {need} (ceil of 3(cycle degeneracy + 1)/2), "
            f"got k = {k}"
        )
    require_dicolouring(D, alpha, k, "alpha")
    require_dicolouring(D, beta, k, "beta")

    ordering = degeneracy_ordering(D, "c")
    G = _derived_graph(D, ordering)
    m = ceil(k / 3)
    rec = _leg(D, k, G, ordering, alpha, m, avoid_mode)
    rec_back = _leg(D, k, G, ordering, beta, m, avoid_mode)

    middle = mix_simple(
        bidirect(G),
        k,
        Colouring(tuple(rec.colours), k),
        Colouring(tuple(rec_back.colours), k),
    )
    for v, c in middle.moves:
        rec.move(v, c, "derived graph walk")
    rec.append_reversed(rec_back)
    if tuple(rec.colours) != beta.colours:
        raise InternalInvariantError("sequence does not end at beta")
    return rec.sequence()
