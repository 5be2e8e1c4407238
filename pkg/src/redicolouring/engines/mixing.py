"""Recolouring by recursion on a vertex of minimum cycle degree.

Both engines peel a vertex u whose cycle degree in the current induced
sub-digraph is minimum, recolour the rest recursively, then replay that
sequence with u present.  A replayed move can only be blocked by a cycle
through u that the move would make monochromatic; u is then shifted to a
colour avoiding its cycle witness X and the move is retried.

mix_simple needs k >= cycle degeneracy + 2 and bounds nothing but
validity.  mix_bounded needs k >= 2 (cycle degeneracy + 1); by also
forbidding the colours of the next few moves scheduled on X it recolours
every vertex at most cycle degeneracy + 1 times.
"""

from __future__ import annotations

from ..colouring import Colouring, blocking_cycle, require_dicolouring
from ..degrees import cycle_degree, degeneracy_ordering
from ..digraph import Digraph
from ..errors import InternalInvariantError, PreconditionError
from ..oracle import RecolouringSequence
from .recorder import MoveRecorder


def _pick_min_cycle_degree(D: Digraph, active: tuple[int, ...]):
    """Lowest-id vertex of minimum cycle degree in D[active], with witness."""
    best_v = best_wit = None
    best_d = None
    for v in active:
        d, wit = cycle_degree(D, v, restrict=active)
        if best_d is None or d < best_d:
            best_d, best_v, best_wit = d, v, wit
    return best_v, best_wit


def _mix_rec(
    D: Digraph,
    k: int,
    active: tuple[int, ...],
    colours: list[int],
    beta: tuple[int, ...],
    window: int | None,
) -> list[tuple[int, int]]:
    """Emit moves turning colours into beta on active, mutating colours.

    Every move is checked against D[active]; at the top level this is the
    whole digraph.  window is None for the unbounded engine, otherwise the
    lookahead used when repairing a blocked move.
    """
    if not active:
        return []
    u, X = _pick_min_cycle_degree(D, active)
    child = tuple(v for v in active if v != u)
    child_cols = list(colours)
    child_moves = _mix_rec(D, k, child, child_cols, beta, window)
    out: list[tuple[int, int]] = []

    def emit(v: int, c: int) -> None:
        cyc = blocking_cycle(D, colours, v, c, restrict=active)
        if cyc is not None:
            raise InternalInvariantError(
                f"repaired move v={v} -> {c} still blocked by {cyc.vertices}"
            )
        colours[v] = c
        out.append((v, c))

    for idx, (v, c) in enumerate(child_moves):
        cyc = blocking_cycle(D, colours, v, c, restrict=active)
        if cyc is None:
            emit(v, c)
            continue
        # The child sequence was valid without u, so the blocker runs
        # through u and u currently wears the move's colour.
        if u not in cyc:
            raise InternalInvariantError(
                f"blocking cycle {cyc.vertices} avoids the peeled vertex {u}"
            )
        if colours[u] != c:
            raise InternalInvariantError(
                f"peeled vertex {u} has colour {colours[u]}, blocked move wants {c}"
            )
        forbidden = {colours[x] for x in X} | {c}
        if window is not None:
            upcoming = [cc for vv, cc in child_moves[idx:] if vv in X]
            forbidden.update(upcoming[:window])
        shift = next((cc for cc in range(1, k + 1) if cc not in forbidden), None)
        if shift is None:
            raise InternalInvariantError(
                f"no colour left to shift vertex {u} away from {sorted(forbidden)}"
            )
        emit(u, shift)
        emit(v, c)
    if colours[u] != beta[u]:
        emit(u, beta[u])
    if window is not None:
        moved = sum(1 for v, _ in out if v == u)
        if moved > window:
            raise InternalInvariantError(
                f"peeled vertex {u} recoloured {moved} times, window is {window}"
            )
    return out


def _drive(
    D: Digraph, k: int, alpha: Colouring, beta: Colouring, window: int | None
) -> RecolouringSequence:
    require_dicolouring(D, alpha, k, "alpha")
    require_dicolouring(D, beta, k, "beta")
    moves = _mix_rec(
        D, k, tuple(range(D.n)), list(alpha.colours), beta.colours, window
    )
    rec = MoveRecorder(D, alpha)
    for v, c in moves:
        rec.move(v, c)
    if tuple(rec.colours) != beta.colours:
        raise InternalInvariantError("sequence does not end at beta")
    return rec.sequence()


def mix_simple(
    D: Digraph, k: int, alpha: Colouring, beta: Colouring
) -> RecolouringSequence:
    """Recolouring sequence from alpha to beta, k >= cycle degeneracy + 2."""
    dstar = degeneracy_ordering(D, "c").degeneracy
    if k < dstar + 2:
        raise PreconditionError(
            f"mix_simple needs k >= {dstar + 2} (cycle degeneracy {dstar} plus 2), "
            f"got k = {k}"
        )
    return _drive(D, k, alpha, beta, window=None)


def mix_bounded(
    D: Digraph, k: int, alpha: Colouring, beta: Colouring
) -> RecolouringSequence:
    """Like mix_simple but with k >= 2 (cycle degeneracy + 1) colours,
    recolouring each vertex at most cycle degeneracy + 1 times."""
    dstar = degeneracy_ordering(D, "c").degeneracy
    if k < 2 * (dstar + 1):
        raise PreconditionError(
            f"mix_bounded needs k >= {2 * (dstar + 1)} (twice cycle degeneracy "
            f"{dstar} plus one), got k = {k}"
        )
    seq = _drive(D, k, alpha, beta, window=dstar + 1)
    counts: dict[int, int] = {}
    for v, _ in seq.moves:
        counts[v] = counts.get(v, 0) + 1
    worst = max(counts.values(), default=0)
    if worst > dstar + 1:
        raise InternalInvariantError(
            f"a vertex was recoloured {worst} times, bound is {dstar + 1}"
        )
    return seq
