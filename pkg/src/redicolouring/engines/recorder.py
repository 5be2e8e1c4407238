"""Move recorder shared by the engines.

Engines plan moves against restricted vertex sets, but every emitted move
must be a legal recolouring step of the full digraph.  The recorder keeps
the live colour vector, validates each move against the whole digraph,
counts per-vertex recolourings and finally packages the walk as a
RecolouringSequence.
"""

from __future__ import annotations

from ..colouring import Colouring, blocking_cycle
from ..digraph import Digraph
from ..errors import InternalInvariantError
from ..oracle import RecolouringSequence


class MoveRecorder:
    __slots__ = ("D", "k", "start", "colours", "moves", "counts")

    def __init__(self, D: Digraph, start: Colouring):
        if start.n != D.n:
            raise InternalInvariantError(
                f"start colours {start.n} vertices, digraph has {D.n}"
            )
        self.D = D
        self.k = start.k
        self.start = start
        self.colours = list(start.colours)
        self.moves: list[tuple[int, int]] = []
        self.counts = [0] * D.n

    def colour(self, v: int) -> int:
        return self.colours[v]

    def can_move(self, v: int, c: int) -> bool:
        """True when recolouring v with c keeps the colouring valid."""
        if self.colours[v] == c:
            return True
        return blocking_cycle(self.D, self.colours, v, c) is None

    def move(self, v: int, c: int, reason: str = "") -> None:
        """Recolour v with c, asserting validity on the full digraph."""
        if not 1 <= c <= self.k:
            raise InternalInvariantError(
                f"engine produced colour {c} outside 1..{self.k}"
                + (f" ({reason})" if reason else "")
            )
        if self.colours[v] == c:
            raise InternalInvariantError(
                f"engine produced a no-change move on vertex {v}"
                + (f" ({reason})" if reason else "")
            )
        cyc = blocking_cycle(self.D, self.colours, v, c)
        if cyc is not None:
            raise InternalInvariantError(
                f"engine move v={v} -> {c} closes the monochromatic cycle "
                f"{cyc.vertices}" + (f" ({reason})" if reason else "")
            )
        self.colours[v] = c
        self.moves.append((v, c))
        self.counts[v] += 1

    def move_if_needed(self, v: int, c: int, reason: str = "") -> bool:
        if self.colours[v] == c:
            return False
        self.move(v, c, reason)
        return True

    def append_reversed(self, other: "MoveRecorder") -> None:
        """Replay the inverse of another recorder's walk onto this one.

        The other walk must end exactly where this recorder currently
        stands; afterwards this recorder ends at the other walk's start.
        """
        if self.colours != other.colours:
            raise InternalInvariantError(
                "reversed walk does not start at the current colouring"
            )
        before = list(other.start.colours)
        history = []
        for v, c in other.moves:
            history.append((v, before[v]))
            before[v] = c
        for v, prev in reversed(history):
            self.move(v, prev, "reversed leg")

    def snapshot(self) -> Colouring:
        return Colouring(tuple(self.colours), self.k)

    def sequence(self) -> RecolouringSequence:
        return RecolouringSequence(self.start, tuple(self.moves))
