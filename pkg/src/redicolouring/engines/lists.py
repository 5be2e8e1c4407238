"""List recolouring on undirected graphs.

A list assignment is a-feasible when some vertex ordering certifies that
every list exceeds the forward degree by a + 1.  avoid_colours walks a
proper list colouring to one that dodges a prescribed set of colours,
either exactly (breadth-first search over all list colourings, small
graphs only) or by a best-effort greedy that retargets offending
vertices until stable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import ceil, prod

from ..colouring import Colouring
from ..digraph import Graph
from ..errors import (
    CapExceededError,
    InternalInvariantError,
    PreconditionError,
    StrategyError,
)
from ..oracle import RecolouringSequence, state_cap


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex colour lists over 1..k with an a-feasibility certificate.

    The certificate is an ordering v_1, ..., v_n such that
    |L(v_i)| >= |N(v_i) ∩ {v_{i+1}, ...}| + 1 + a for every i.
    """

    G: Graph
    k: int
    lists: tuple[frozenset[int], ...]
    a: int
    order: tuple[int, ...]

    def __post_init__(self):
        n = self.G.n
        if len(self.lists) != n:
            raise PreconditionError(f"{len(self.lists)} lists for {n} vertices")
        if sorted(self.order) != list(range(n)):
            raise PreconditionError("certificate order is not a permutation")
        if self.a < 0:
            raise PreconditionError("feasibility parameter a must be >= 0")
        for v, L in enumerate(self.lists):
            if not L or any(not 1 <= c <= self.k for c in L):
                raise PreconditionError(
                    f"list of vertex {v} is empty or leaves 1..{self.k}"
                )
        position = {v: i for i, v in enumerate(self.order)}
        for i, v in enumerate(self.order):
            forward = sum(1 for w in self.G.neighbours(v) if position[w] > i)
            if len(self.lists[v]) < forward + 1 + self.a:
                raise PreconditionError(
                    f"list of vertex {v} has size {len(self.lists[v])}, "
                    f"needs {forward + 1 + self.a} to certify a = {self.a}"
                )


def _require_list_colouring(L: ListAssignment, alpha: Colouring, name: str):
    if alpha.n != L.G.n or alpha.k != L.k:
        raise PreconditionError(f"{name} does not match the list assignment")
    for v in range(L.G.n):
        if alpha[v] not in L.lists[v]:
            raise PreconditionError(f"{name} colours vertex {v} outside its list")
    for u, v in L.G.edges():
        if alpha[u] == alpha[v]:
            raise PreconditionError(f"{name} is not proper on edge ({u},{v})")


def avoid_colours(
    G: Graph,
    L: ListAssignment,
    alpha: Colouring,
    S_prime,
    mode: str = "oracle",
) -> RecolouringSequence:
    """Walk alpha to a proper list colouring of G avoiding S_prime.

    Needs L to be ceil(k/3)-feasible, alpha to avoid at least ceil(k/3)
    colours, and |S_prime| = ceil(k/3).  The oracle mode searches the
    full list-colouring reconfiguration graph and is exact; the heuristic
    mode greedily retargets offenders in reverse certificate order and
    raises StrategyError when it stalls.
    """
    if L.G != G:
        raise PreconditionError("list assignment was built for a different graph")
    m = ceil(L.k / 3)
    if L.a < m:
        raise PreconditionError(
            f"list assignment certifies a = {L.a}, need at least ceil(k/3) = {m}"
        )
    forbidden = frozenset(S_prime)
    if len(forbidden) != m or any(not 1 <= c <= L.k for c in forbidden):
        raise PreconditionError(
            f"S' must be {m} colours within 1..{L.k}, got {sorted(forbidden)}"
        )
    _require_list_colouring(L, alpha, "alpha")
    avoided = set(range(1, L.k + 1)) - set(alpha.colours)
    if len(avoided) < m:
        raise PreconditionError(
            f"alpha avoids only {len(avoided)} colours, needs {m}"
        )
    if mode == "oracle":
        seq = _avoid_oracle(G, L, alpha, forbidden)
    elif mode == "heuristic":
        seq = _avoid_heuristic(G, L, alpha, forbidden)
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    final = seq.final()
    if any(final[v] in forbidden for v in range(G.n)):
        raise InternalInvariantError("final colouring still uses avoided colours")
    return seq


def _proper_retarget(G: Graph, colours: list[int], v: int, c: int) -> bool:
    return all(colours[w] != c for w in G.neighbours(v))


def _avoid_oracle(
    G: Graph, L: ListAssignment, alpha: Colouring, forbidden: frozenset[int]
) -> RecolouringSequence:
    space = prod(len(Lv) for Lv in L.lists) if G.n else 1
    cap = state_cap()
    if space > cap:
        raise CapExceededError(
            f"list colouring space has up to {space} states, cap is {cap}"
        )
    start = alpha.colours
    if all(c not in forbidden for c in start):
        return RecolouringSequence(alpha, ())
    prev: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, int]] | None]
    prev = {start: None}
    queue = deque([start])
    goal = None
    while queue and goal is None:
        cur = queue.popleft()
        base = list(cur)
        for v in range(G.n):
            old = base[v]
            for c in sorted(L.lists[v]):
                if c == old or not _proper_retarget(G, base, v, c):
                    continue
                base[v] = c
                nxt = tuple(base)
                base[v] = old
                if nxt in prev:
                    continue
                prev[nxt] = (cur, (v, c))
                if all(col not in forbidden for col in nxt):
                    goal = nxt
                    break
                queue.append(nxt)
            if goal is not None:
                break
    if goal is None:
        raise StrategyError(
            f"no reachable list colouring avoids {sorted(forbidden)}"
        )
    moves: list[tuple[int, int]] = []
    state = goal
    while prev[state] is not None:
        state, move = prev[state]
        moves.append(move)
    moves.reverse()
    return RecolouringSequence(alpha, tuple(moves))


def _avoid_heuristic(
    G: Graph, L: ListAssignment, alpha: Colouring, forbidden: frozenset[int]
) -> RecolouringSequence:
    colours = list(alpha.colours)
    moves: list[tuple[int, int]] = []
    scan = list(reversed(L.order))
    while True:
        offenders = [v for v in scan if colours[v] in forbidden]
        if not offenders:
            break
        progressed = False
        for v in offenders:
            options = sorted(set(L.lists[v]) - forbidden)
            for c in options:
                if _proper_retarget(G, colours, v, c):
                    colours[v] = c
                    moves.append((v, c))
                    progressed = True
                    break
        if not progressed:
            raise StrategyError(
                f"greedy retargeting stalled with {len(offenders)} vertices "
                f"still coloured in {sorted(forbidden)}"
            )
    return RecolouringSequence(alpha, tuple(moves))
