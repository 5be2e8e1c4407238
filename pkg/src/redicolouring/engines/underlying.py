"""Recolouring a digraph through a reduced underlying graph.

Keeping only the arcs whose endpoints alpha colours differently yields an
undirected graph G_alpha on which alpha is proper, and every proper
k-colouring of G_alpha is automatically a dicolouring of D.  Any
undirected recolouring strategy on G_alpha therefore transfers to D move
for move.
"""

from __future__ import annotations

from ..colouring import Colouring, require_dicolouring
from ..digraph import Digraph, Graph, bidirect, underlying_graph
from ..errors import InternalInvariantError, PreconditionError, StrategyError
from ..oracle import RecolouringSequence, shortest_sequence
from .mixing import mix_bounded, mix_simple
from .recorder import MoveRecorder


def reduced_graph(D: Digraph, alpha: Colouring) -> Graph:
    """The underlying graph restricted to arcs alpha colours with two colours."""
    edges = [
        (u, v)
        for u in range(D.n)
        for v in D.successors(u)
        if alpha[u] != alpha[v]
    ]
    return Graph(D.n, edges)


def ug_reduction_sequence(
    D: Digraph,
    k: int,
    alpha: Colouring,
    gamma: Colouring,
    strategy="oracle",
) -> RecolouringSequence:
    """Walk alpha to gamma inside the proper colourings of the reduced graph.

    gamma must be proper on the full underlying graph.  strategy is
    "oracle" (breadth-first search, exact), "simple" or "bounded" (the
    mixing engines run on the bidirected reduced graph), or a callable
    with the same signature as those engines.
    """
    require_dicolouring(D, alpha, k, "alpha")
    if gamma.n != D.n or gamma.k != k:
        raise PreconditionError("gamma does not match the digraph and palette")
    UG = underlying_graph(D)
    for u, v in UG.edges():
        if gamma[u] == gamma[v]:
            raise PreconditionError(
                f"gamma is not proper on the underlying graph: edge ({u},{v})"
            )
    H = bidirect(reduced_graph(D, alpha))

    if strategy == "oracle":
        walk = shortest_sequence(H, k, alpha, gamma)
        if walk is None:
            raise StrategyError(
                f"gamma is unreachable from alpha on the reduced graph with {k} colours"
            )
    elif strategy == "simple":
        walk = mix_simple(H, k, alpha, gamma)
    elif strategy == "bounded":
        walk = mix_bounded(H, k, alpha, gamma)
    elif callable(strategy):
        walk = strategy(H, k, alpha, gamma)
    else:
        raise PreconditionError(f"unknown strategy {strategy!r}")

    rec = MoveRecorder(D, alpha)
    for v, c in walk.moves:
        rec.move(v, c, "reduced graph walk")
    if tuple(rec.colours) != gamma.colours:
        raise InternalInvariantError("sequence does not end at gamma")
    return rec.sequence()
