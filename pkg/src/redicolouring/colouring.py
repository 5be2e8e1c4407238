"""Dicolourings: validity, single-move recolourability, greedy constructions,
and small brute forces for the dichromatic and digrundy numbers.

A k-dicolouring assigns colours 1..k so that every colour class induces an
acyclic subdigraph.  Digons therefore behave exactly like undirected edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .digraph import Cycle, Digraph, cycle_through, is_acyclic_with_witness
from .errors import CapExceededError, PreconditionError


@dataclass(frozen=True)
class Colouring:
    """Colours 1..k for vertices 0..n-1 (``colours[v]`` is v's colour)."""

    colours: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("palette size must be at least 1")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ValueError(f"colour {c} of vertex {v} outside 1..{self.k}")

    @property
    def n(self) -> int:
        return len(self.colours)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def colour_class(self, c: int) -> frozenset[int]:
        return frozenset(v for v, col in enumerate(self.colours) if col == c)

    def with_colour(self, v: int, c: int) -> "Colouring":
        new = list(self.colours)
        new[v] = c
        return Colouring(tuple(new), self.k)

    def used_colours(self) -> frozenset[int]:
        return frozenset(self.colours)


def is_dicolouring(D: Digraph, colouring: Colouring) -> tuple[int, Cycle] | None:
    """None when every colour class is acyclic, else (colour, witness cycle)."""
    if colouring.n != D.n:
        raise ValueError("colouring length does not match the digraph")
    for c in sorted(colouring.used_colours()):
        cyc = is_acyclic_with_witness(D, colouring.colour_class(c))
        if cyc is not None:
            return c, cyc
    return None


def blocking_cycle(
    D: Digraph,
    colours: tuple[int, ...] | list[int],
    v: int,
    c: int,
    restrict: Iterable[int] | None = None,
) -> Cycle | None:
    """The cycle (if any) that recolouring v to c would make monochromatic.

    Only class c needs checking, and only cycles through v can be new.
    ``colours`` is a raw colour sequence so engine inner loops stay cheap.
    """
    allowed = set(restrict) if restrict is not None else set(range(D.n))
    cls = {u for u in allowed if colours[u] == c and u != v}
    cls.add(v)
    return cycle_through(D, v, cls)


def is_recolourable(
    D: Digraph, colouring: Colouring, v: int, c: int
) -> tuple[bool, Cycle | None]:
    """Can v move to colour c in a single step?  Returns (ok, blocking cycle)."""
    if not 1 <= c <= colouring.k:
        raise ValueError(f"colour {c} outside 1..{colouring.k}")
    cyc = blocking_cycle(D, colouring.colours, v, c)
    return cyc is None, cyc


def require_dicolouring(D: Digraph, colouring: Colouring, k: int, name: str):
    """Raise PreconditionError unless ``colouring`` is a valid k-dicolouring."""
    if colouring.k != k:
        raise PreconditionError(f"{name} uses palette size {colouring.k}, expected {k}")
    if colouring.n != D.n:
        raise PreconditionError(
            f"{name} colours {colouring.n} vertices, digraph has {D.n}"
        )
    bad = is_dicolouring(D, colouring)
    if bad is not None:
        raise PreconditionError(
            f"{name} is not a dicolouring: class {bad[0]} contains the cycle "
            f"{bad[1].vertices}"
        )


def greedy_dicolouring(D: Digraph, ordering) -> Colouring:
    """Colour along an elimination ordering, back to front.

    Position i receives the smallest colour absent from its witness set, which
    at that point is fully coloured.  Uses at most degeneracy+1 colours and the
    result is validated before being returned.
    """
    order, witnesses = ordering.order, ordering.witnesses
    if sorted(order) != list(range(D.n)):
        raise PreconditionError("ordering is not a permutation of the vertices")
    colours = [0] * D.n
    for i in range(D.n - 1, -1, -1):
        v = order[i]
        X = witnesses[i]
        if not X <= set(order[i + 1 :]):
            raise PreconditionError(f"witness at position {i} is not inside the suffix")
        taken = {colours[u] for u in X}
        c = 1
        while c in taken:
            c += 1
        colours[v] = c
    k = max(colours, default=1)
    result = Colouring(tuple(colours), max(k, 1))
    bad = is_dicolouring(D, result)
    if bad is not None:
        raise PreconditionError(
            f"greedy colouring is not a dicolouring (class {bad[0]} has cycle "
            f"{bad[1].vertices}); the ordering's witnesses are invalid"
        )
    return result


def dichromatic_number_bruteforce(D: Digraph, cap: int = 12) -> tuple[int, Colouring]:
    """Smallest k admitting a dicolouring, with a witness colouring.

    Backtracking over vertices in id order; vertex v only tries colours up to
    one above the largest colour used so far (symmetry breaking).
    """
    if D.n > cap:
        raise CapExceededError(f"dichromatic brute force limited to {cap} vertices")
    if D.n == 0:
        return 1, Colouring((), 1)

    def try_k(k: int) -> tuple[int, ...] | None:
        colours = [0] * D.n

        def place(v: int, used: int) -> bool:
            if v == D.n:
                return True
            for c in range(1, min(used + 1, k) + 1):
                colours[v] = c
                if blocking_cycle(D, colours, v, c, restrict=range(v + 1)) is None:
                    if place(v + 1, max(used, c)):
                        return True
            colours[v] = 0
            return False

        return tuple(colours) if place(0, 0) else None

    for k in range(1, D.n + 1):
        witness = try_k(k)
        if witness is not None:
            return k, Colouring(witness, k)
    raise AssertionError("n colours always suffice")


def greedy_colour_of(D: Digraph, classes: list[set[int]], v: int) -> int:
    """Smallest colour whose class stays acyclic after adding v (1-based)."""
    for c, cls in enumerate(classes, start=1):
        if cycle_through(D, v, cls | {v}) is None:
            return c
    return len(classes) + 1


def digrundy_bruteforce(D: Digraph, cap: int = 9) -> int:
    """Worst number of colours a greedy dicolouring can use, over all orderings.

    The greedy rule gives each vertex the smallest colour whose class-so-far
    stays acyclic, so the search state is the colour-class profile; profiles
    are memoised because many orderings share them.
    """
    if D.n > cap:
        raise CapExceededError(f"digrundy brute force limited to {cap} vertices")
    if D.n == 0:
        return 0
    seen: set[tuple[frozenset[int], ...]] = set()
    best = 0
    start: tuple[frozenset[int], ...] = ()
    stack = [start]
    seen.add(start)
    while stack:
        profile = stack.pop()
        used = set().union(*profile) if profile else set()
        if len(used) == D.n:
            best = max(best, len(profile))
            continue
        for v in range(D.n):
            if v in used:
                continue
            classes = [set(cls) for cls in profile]
            c = greedy_colour_of(D, classes, v)
            if c > len(classes):
                classes.append(set())
            classes[c - 1].add(v)
            nxt = tuple(frozenset(cls) for cls in classes)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return best
