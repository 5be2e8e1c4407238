"""Recolouring through cascades when the palette beats the greedy number.

The greedy (Grundy-style) dichromatic number is the largest colour count
a greedy dicolouring can be forced to use.  With one colour more than
that, sweeping colours from the top down ("whenever a vertex can be
recoloured with the stage colour, do it") provably empties the lowest
colour; the freed colour then receives one class of a route colouring
and the process recurses on the rest.  Routing both endpoints through a
single optimal dicolouring keeps the walk within 4 * chi * n moves.
"""

from __future__ import annotations

from ..colouring import (
    Colouring,
    dichromatic_number_bruteforce,
    digrundy_bruteforce,
    require_dicolouring,
)
from ..digraph import Digraph
from ..errors import CapExceededError, InternalInvariantError, PreconditionError
from ..oracle import RecolouringSequence
from .recorder import MoveRecorder


def _cascade(rec: MoveRecorder, active: set[int], lo: int) -> None:
    """Sweep colours k..lo+1 over the active vertices until colour lo is free.

    Each stage repeatedly claims vertices already wearing the stage colour
    and recolours eligible ones to it, until stable.  If afterwards some
    active vertex still wears colour lo, the palette cannot dominate the
    greedy number and the caller's precondition was false.
    """
    placed: set[int] = set()
    scan = sorted(active)
    for c in range(rec.k, lo, -1):
        while True:
            changed = False
            for v in scan:
                if v in placed:
                    continue
                if rec.colour(v) == c:
                    placed.add(v)
                    changed = True
                elif rec.can_move(v, c):
                    rec.move(v, c, "cascade stage")
                    placed.add(v)
                    changed = True
            if not changed:
                break
    stuck = [v for v in scan if v not in placed]
    if stuck:
        raise PreconditionError(
            f"colour {lo} still used after the cascade (vertices {stuck}); "
            f"k = {rec.k} does not exceed the greedy dichromatic number"
        )


def grundy_cascade(D: Digraph, k: int, alpha: Colouring) -> Colouring:
    """The colouring produced by one full top-level cascade from alpha.

    Exposed so the greedy structure of the intermediate colouring can be
    checked directly: sorted by decreasing colour, it is what top-down
    greedy would produce, and colour 1 is unused.
    """
    require_dicolouring(D, alpha, k, "alpha")
    rec = MoveRecorder(D, alpha)
    _cascade(rec, set(range(D.n)), 1)
    return rec.snapshot()


def _descend(rec: MoveRecorder, active: set[int], lo: int, route) -> None:
    if not active:
        return
    classes = sorted({route[v] for v in active})
    if classes[0] != lo:
        raise InternalInvariantError(
            f"route classes on the active set start at {classes[0]}, not {lo}"
        )
    if len(classes) == 1:
        for v in sorted(active):
            rec.move_if_needed(v, lo, "single class settles")
        return
    _cascade(rec, active, lo)
    settled = sorted(v for v in active if route[v] == lo)
    for v in settled:
        rec.move_if_needed(v, lo, "class settles")
    _descend(rec, active - set(settled), lo + 1, route)


def _require_route(D: Digraph, route: Colouring, k: int, name: str) -> int:
    require_dicolouring(D, route, k, name)
    used = set(route.colours)
    r = len(used)
    if used != set(range(1, r + 1)):
        raise PreconditionError(
            f"{name} must use the contiguous colours 1..{r}, got {sorted(used)}"
        )
    return r


def digrundy_sequence(
    D: Digraph,
    k: int,
    alpha: Colouring,
    beta: Colouring,
    one_sided: bool = False,
    optimal: Colouring | None = None,
    grundy_certificate: int | None = None,
) -> RecolouringSequence:
    """Walk alpha to beta with k exceeding the greedy dichromatic number.

    Two-sided by default: both endpoints are cascaded down onto one
    optimal dicolouring (supplied as ``optimal`` or brute-forced), for at
    most 4 * chi * n moves.  With one_sided=True, beta itself must be an
    optimal dicolouring on colours 1..chi and the walk stays below
    2 * chi * n.  ``grundy_certificate`` skips the greedy-number brute
    force at larger sizes.
    """
    require_dicolouring(D, alpha, k, "alpha")
    require_dicolouring(D, beta, k, "beta")
    if grundy_certificate is not None:
        gamma_number = grundy_certificate
    else:
        try:
            gamma_number = digrundy_bruteforce(D)
        except CapExceededError as exc:
            raise CapExceededError(
                f"{exc}; pass grundy_certificate= to skip the brute force"
            ) from None
    if k < gamma_number + 1:
        raise PreconditionError(
            f"need k >= {gamma_number + 1} (greedy dichromatic number "
            f"{gamma_number} plus one), got k = {k}"
        )

    if one_sided:
        r = _require_route(D, beta, k, "beta (one-sided route)")
        rec = MoveRecorder(D, alpha)
        _descend(rec, set(range(D.n)), 1, beta.colours)
        if tuple(rec.colours) != beta.colours:
            raise InternalInvariantError("one-sided walk does not end at beta")
        if len(rec.moves) > 2 * r * D.n:
            raise InternalInvariantError(
                f"one-sided walk has {len(rec.moves)} moves, "
                f"bound is {2 * r * D.n}"
            )
        return rec.sequence()

    if optimal is None:
        try:
            _, optimal = dichromatic_number_bruteforce(D)
        except CapExceededError as exc:
            raise CapExceededError(
                f"{exc}; pass optimal= to skip the brute force"
            ) from None
        optimal = Colouring(optimal.colours, k)
    r = _require_route(D, optimal, k, "optimal")
    rec = MoveRecorder(D, alpha)
    _descend(rec, set(range(D.n)), 1, optimal.colours)
    rec_back = MoveRecorder(D, beta)
    _descend(rec_back, set(range(D.n)), 1, optimal.colours)
    rec.append_reversed(rec_back)
    if tuple(rec.colours) != beta.colours:
        raise InternalInvariantError("two-sided walk does not end at beta")
    if len(rec.moves) > 4 * r * D.n:
        raise InternalInvariantError(
            f"two-sided walk has {len(rec.moves)} moves, bound is {4 * r * D.n}"
        )
    return rec.sequence()
