"""Ground truth for small instances.

Enumerates every k-dicolouring of a digraph, builds the reconfiguration graph
(states adjacent when they differ on a single vertex), and answers
connectivity, distance and diameter queries exactly.  Also replays and checks
recolouring sequences produced by the constructive engines.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .colouring import Colouring, blocking_cycle, require_dicolouring
from .digraph import Digraph
from .errors import (
    CapExceededError,
    InvalidMoveError,
    NoChangeMoveError,
    PreconditionError,
)

DEFAULT_STATE_CAP = 20_000_000
DIAMETER_STATE_CAP = 20_000


def state_cap() -> int:
    """Candidate-state budget; override with the REDICO_STATE_CAP variable."""
    raw = os.environ.get("REDICO_STATE_CAP")
    if raw is None:
        return DEFAULT_STATE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"REDICO_STATE_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError("REDICO_STATE_CAP must be positive")
    return cap


def _check_cap(D: Digraph, k: int):
    cap = state_cap()
    if k**D.n > cap:
        raise CapExceededError(
            f"{k}^{D.n} candidate colourings exceed the state cap of {cap}"
        )


@dataclass(frozen=True)
class RecolouringSequence:
    """A start colouring plus ordered single-vertex moves (vertex, new colour)."""

    start: Colouring
    moves: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.moves)

    def final(self) -> Colouring:
        """The end colouring, computed without validity checks."""
        colours = list(self.start.colours)
        for v, c in self.moves:
            colours[v] = c
        return Colouring(tuple(colours), self.start.k)

    def reversed(self) -> "RecolouringSequence":
        """The same walk from the other end."""
        colours = list(self.start.colours)
        undo = []
        for v, c in self.moves:
            undo.append((v, colours[v]))
            colours[v] = c
        return RecolouringSequence(
            Colouring(tuple(colours), self.start.k), tuple(reversed(undo))
        )


@dataclass(frozen=True)
class ReconfReport:
    """Summary of the k-dicolouring reconfiguration graph."""

    k: int
    count: int
    connected: bool
    diameter: int | None
    frozen: int
    n_components: int
    component_diameters: tuple[int, ...] = field(default_factory=tuple)


def enumerate_dicolourings(D: Digraph, k: int) -> list[Colouring]:
    """All k-dicolourings in lexicographic order of their colour vectors."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _check_cap(D, k)
    out: list[Colouring] = []
    colours = [0] * D.n

    def extend(v: int):
        if v == D.n:
            out.append(Colouring(tuple(colours), k))
            return
        for c in range(1, k + 1):
            colours[v] = c
            if blocking_cycle(D, colours, v, c, restrict=range(v + 1)) is None:
                extend(v + 1)
        colours[v] = 0

    if D.n == 0:
        return [Colouring((), k)]
    extend(0)
    return out


def dicolouring_graph(
    D: Digraph, k: int
) -> tuple[list[Colouring], list[list[int]]]:
    """States plus sorted adjacency lists of the reconfiguration graph."""
    states = enumerate_dicolourings(D, k)
    index = {alpha.colours: i for i, alpha in enumerate(states)}
    adj: list[list[int]] = [[] for _ in states]
    for i, alpha in enumerate(states):
        base = list(alpha.colours)
        for v in range(D.n):
            old = base[v]
            for c in range(1, k + 1):
                if c == old:
                    continue
                base[v] = c
                j = index.get(tuple(base))
                if j is not None and j > i:
                    adj[i].append(j)
                    adj[j].append(i)
            base[v] = old
    for row in adj:
        row.sort()
    return states, adj


def _component_labels(adj: list[list[int]]) -> list[int]:
    labels = [-1] * len(adj)
    next_label = 0
    for s in range(len(adj)):
        if labels[s] != -1:
            continue
        labels[s] = next_label
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if labels[w] == -1:
                    labels[w] = next_label
                    queue.append(w)
        next_label += 1
    return labels


def reconf_report(
    D: Digraph,
    k: int,
    compute_diameter: bool = True,
    diameter_cap: int | None = DIAMETER_STATE_CAP,
) -> ReconfReport:
    """Connectivity, frozen states and (optionally) exact diameters of 𝒟_k(D).

    Diameters need an all-pairs breadth-first sweep, which dwarfs the rest
    of the report, so they are only computed up to diameter_cap states
    (pass None to force the sweep).  Beyond the cap, and with
    ``compute_diameter`` false, the diameter fields are left as None /
    empty; counts and connectivity are always filled in.
    """
    states, adj = dicolouring_graph(D, k)
    count = len(states)
    if count == 0:
        return ReconfReport(k, 0, True, 0 if compute_diameter else None, 0, 0, ())
    labels = _component_labels(adj)
    n_components = max(labels) + 1
    connected = n_components == 1
    frozen = sum(1 for row in adj if not row)
    if not compute_diameter or (diameter_cap is not None and count > diameter_cap):
        return ReconfReport(k, count, connected, None, frozen, n_components, ())

    comp_diam = [0] * n_components
    if count > 1 and any(adj):
        indptr = np.cumsum([0] + [len(row) for row in adj])
        indices = np.fromiter(
            (j for row in adj for j in row), dtype=np.int64, count=int(indptr[-1])
        )
        data = np.ones(len(indices), dtype=np.int8)
        graph = csr_matrix((data, indices, indptr), shape=(count, count))
        label_arr = np.asarray(labels)
        # each sweep materialises a chunk x count float64 block; keep it
        # around a quarter gigabyte however many states there are
        chunk = max(1, min(1024, (32 << 20) // count))
        for lo in range(0, count, chunk):
            srcs = np.arange(lo, min(lo + chunk, count))
            dist = dijkstra(graph, directed=False, unweighted=True, indices=srcs)
            dist[np.isinf(dist)] = -1.0
            ecc = dist.max(axis=1).astype(np.int64)
            for s, e in zip(srcs, ecc):
                lab = label_arr[s]
                if e > comp_diam[lab]:
                    comp_diam[lab] = int(e)
    diameter = comp_diam[0] if connected else None
    return ReconfReport(
        k, count, connected, diameter, frozen, n_components, tuple(comp_diam)
    )


def _require_valid(D: Digraph, alpha: Colouring, k: int, name: str):
    require_dicolouring(D, alpha, k, name)


def shortest_sequence(
    D: Digraph, k: int, alpha: Colouring, beta: Colouring
) -> RecolouringSequence | None:
    """A shortest recolouring walk from alpha to beta, or None if unreachable.

    Breadth-first search over the implicit reconfiguration graph; neighbours
    are generated vertex by vertex, colour by colour, so ties break towards
    lexicographically small moves.
    """
    _check_cap(D, k)
    _require_valid(D, alpha, k, "alpha")
    _require_valid(D, beta, k, "beta")
    if alpha.colours == beta.colours:
        return RecolouringSequence(alpha, ())
    prev: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, int]] | None]
    prev = {alpha.colours: None}
    queue = deque([alpha.colours])
    target = beta.colours
    while queue:
        cur = queue.popleft()
        base = list(cur)
        for v in range(D.n):
            old = base[v]
            for c in range(1, k + 1):
                if c == old:
                    continue
                base[v] = c
                key = tuple(base)
                if key not in prev and blocking_cycle(D, base, v, c) is None:
                    prev[key] = (cur, (v, c))
                    if key == target:
                        moves = []
                        node = key
                        while prev[node] is not None:
                            node, move = prev[node]
                            moves.append(move)
                        moves.reverse()
                        return RecolouringSequence(alpha, tuple(moves))
                    queue.append(key)
            base[v] = old
    return None


def validate_sequence(
    D: Digraph, k: int, seq: RecolouringSequence
) -> tuple[Colouring, dict[int, int]]:
    """Replay a sequence move by move, checking validity at every step.

    Returns the final colouring together with how often each vertex was
    recoloured.  Raises InvalidMoveError (with the monochromatic cycle) or
    NoChangeMoveError on the first offending step.
    """
    _require_valid(D, seq.start, k, "start colouring")
    colours = list(seq.start.colours)
    counts = {v: 0 for v in range(D.n)}
    for step, (v, c) in enumerate(seq.moves):
        if not 0 <= v < D.n:
            raise InvalidMoveError(step, None, f"move {step} names vertex {v}")
        if not 1 <= c <= k:
            raise InvalidMoveError(step, None, f"move {step} uses colour {c} outside 1..{k}")
        if colours[v] == c:
            raise NoChangeMoveError(step)
        cyc = blocking_cycle(D, colours, v, c)
        if cyc is not None:
            raise InvalidMoveError(step, cyc)
        colours[v] = c
        counts[v] += 1
    return Colouring(tuple(colours), k), counts
