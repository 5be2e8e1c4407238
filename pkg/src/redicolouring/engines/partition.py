"""Partitions with cycle witnesses, colour elimination and retargeting.

A Partition splits the vertices into ordered parts so that every vertex u
owns a small witness X_u of later vertices hitting all cycles through u
once the earlier parts are deleted.  eliminate_colours frees a colour on
a prefix of the parts while recolouring each vertex at most f(s, h)
times; partition_recolour walks between two dicolourings with at most
g(s, t) recolourings per vertex; mad_partition builds such a partition by
repeatedly peeling an independent set of low-cycle-degree vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..colouring import Colouring, require_dicolouring
from ..degrees import EliminationOrdering, cycle_degree, degeneracy_ordering
from ..digraph import Digraph, is_acyclic_with_witness, lies_on_cycle
from ..errors import InternalInvariantError, PreconditionError
from ..oracle import RecolouringSequence
from .bounds import f, g
from .recorder import MoveRecorder


@dataclass(frozen=True)
class Partition:
    """Ordered parts (V_1, ..., V_t) with per-vertex witnesses X_u.

    witnesses is indexed by vertex id; s bounds every |X_u|.  Structural
    invariants are checked on construction, the cycle-hitting property by
    check_partition (it needs the digraph).
    """

    parts: tuple[tuple[int, ...], ...]
    witnesses: tuple[frozenset[int], ...]
    s: int

    def __post_init__(self):
        n = len(self.witnesses)
        seen: dict[int, int] = {}
        for p, part in enumerate(self.parts):
            if not part:
                raise PreconditionError(f"part {p} is empty")
            if tuple(sorted(part)) != tuple(part):
                raise PreconditionError(f"part {p} is not sorted")
            for v in part:
                if v in seen:
                    raise PreconditionError(f"vertex {v} appears in two parts")
                seen[v] = p
        if len(seen) != n or any(v not in seen for v in range(n)):
            raise PreconditionError("parts do not cover the vertex set")
        if self.s < 0:
            raise PreconditionError("witness bound s must be non-negative")
        for u in range(n):
            X = self.witnesses[u]
            if len(X) > self.s:
                raise PreconditionError(
                    f"witness of vertex {u} has size {len(X)} > s = {self.s}"
                )
            for x in X:
                if x not in seen or seen[x] <= seen[u]:
                    raise PreconditionError(
                        f"witness of vertex {u} is not contained in later parts"
                    )

    @property
    def n(self) -> int:
        return len(self.witnesses)

    @property
    def t(self) -> int:
        return len(self.parts)

    def part_of(self, v: int) -> int:
        for p, part in enumerate(self.parts):
            if v in part:
                return p
        raise KeyError(v)


def check_partition(D: Digraph, P: Partition) -> bool:
    """Verify the cycle-hitting invariant exactly.

    For u in part p, X_u must hit every cycle through u once parts
    1..p-1 are removed; equivalently u lies on no cycle of the suffix
    digraph with X_u deleted.
    """
    if P.n != D.n:
        raise PreconditionError(
            f"partition covers {P.n} vertices, digraph has {D.n}"
        )
    suffix: set[int] = set()
    for p in range(P.t - 1, -1, -1):
        suffix |= set(P.parts[p])
        for u in P.parts[p]:
            allowed = suffix - P.witnesses[u]
            if lies_on_cycle(D, u, restrict=allowed):
                raise PreconditionError(
                    f"witness of vertex {u} misses a cycle through it in the "
                    f"digraph induced by parts {p + 1}..{P.t}"
                )
    return True


def singleton_partition(
    D: Digraph, ordering: EliminationOrdering | None = None
) -> Partition:
    """One part per vertex along a cycle-degeneracy ordering."""
    if ordering is None:
        ordering = degeneracy_ordering(D, "c")
    wits = [frozenset()] * D.n
    for i, v in enumerate(ordering.order):
        wits[v] = ordering.witnesses[i]
    parts = tuple((v,) for v in ordering.order)
    return Partition(parts, tuple(wits), ordering.degeneracy)


def _restrict_parts(parts, removed: set[int]) -> list[list[int]]:
    return [[v for v in part if v not in removed] for part in parts]


def _flat_prefix(parts, h: int) -> list[int]:
    return [v for part in parts[:h] for v in part]


def _check_invariant(D, active, parts, wits, h, s, context):
    """Assert the partition invariant for the first h parts of an instance."""
    removed: set[int] = set()
    for p in range(min(h, len(parts))):
        allowed_base = set(active) - removed
        for u in parts[p]:
            X = wits[u]
            if len(X) > s:
                raise InternalInvariantError(
                    f"{context}: witness of {u} has size {len(X)} > {s}"
                )
            if lies_on_cycle(D, u, restrict=allowed_base - X):
                raise InternalInvariantError(
                    f"{context}: witness of {u} misses a cycle through it"
                )
        removed |= set(parts[p])


def _eliminate(
    rec: MoveRecorder,
    active: set[int],
    parts: list[list[int]],
    wits: dict[int, frozenset[int]],
    h: int,
    s: int,
    palette: tuple[int, ...],
    c: int,
) -> None:
    """Remove colour c (and everything outside the palette) from the first
    h parts, recolouring each vertex at most f(s, h) times."""
    pal = set(palette)
    if len(palette) != s + 2:
        raise InternalInvariantError(
            f"palette {palette} has size {len(palette)}, expected {s + 2}"
        )
    if s == 0:
        other = next(a for a in palette if a != c)
        prefix = _flat_prefix(parts, h)
        for v in prefix:
            if lies_on_cycle(rec.D, v, restrict=active):
                raise InternalInvariantError(
                    f"s=0 elimination but vertex {v} lies on a cycle"
                )
        for v in prefix:
            rec.move_if_needed(v, other, "acyclic prefix retarget")
        return

    last_q = -1
    while True:
        offending = [
            v
            for part in parts[:h]
            for v in part
            if rec.colour(v) == c or rec.colour(v) not in pal
        ]
        if not offending:
            return
        bad = set(offending)
        q = next(i for i, part in enumerate(parts[:h]) if any(v in bad for v in part))
        if q <= last_q:
            raise InternalInvariantError(
                f"elimination round index did not advance ({q} after {last_q})"
            )
        last_q = q
        U_order = [u for p in range(q - 1, -1, -1) for u in sorted(parts[p])]
        W_q = [v for v in parts[q] if v in bad]
        # Assign each offender to the smallest spare colour missing from
        # its witness at the start of the round.
        snapshot = list(rec.colours)
        groups: dict[int, list[int]] = {}
        for u in W_q:
            witness_cols = {snapshot[x] for x in wits[u]}
            a = next(
                (col for col in sorted(pal - {c}) if col not in witness_cols), None
            )
            if a is None:
                raise InternalInvariantError(
                    f"witness of {u} uses all {s + 1} spare colours"
                )
            groups.setdefault(a, []).append(u)

        for a in sorted(groups):
            for u in U_order:
                if rec.colour(u) == c or rec.colour(u) not in pal:
                    raise InternalInvariantError(
                        f"vertex {u} of an earlier part wears {rec.colour(u)} "
                        f"at the start of a round"
                    )
            # First sweep: push colour c as far into the earlier parts as
            # it goes, so the recursion below can free colour a there.
            for u in U_order:
                if rec.colour(u) != c and rec.can_move(u, c):
                    rec.move(u, c, "sweep towards c")
            S = {v for v in active if rec.colour(v) == c}
            sub_active = active - S
            sub_parts = _restrict_parts(parts, S)
            sub_wits = {v: wits[v] - S for v in sub_active}
            if q >= 1:
                _check_invariant(
                    rec.D, sub_active, sub_parts, sub_wits, q, s - 1,
                    "first elimination recursion",
                )
                _eliminate(
                    rec, sub_active, sub_parts, sub_wits, q, s - 1,
                    tuple(x for x in palette if x != c), a,
                )
            for u in sorted(groups[a]):
                if rec.colour(u) != c and rec.colour(u) in pal:
                    raise InternalInvariantError(
                        f"offender {u} was touched before its retarget"
                    )
                rec.move(u, a, "retarget offender")
            # Second sweep, roles of c and a swapped: clear the colour c
            # we just spread over the earlier parts.
            for u in U_order:
                if rec.colour(u) == a:
                    raise InternalInvariantError(
                        f"vertex {u} already wears {a} before the second sweep"
                    )
            for u in U_order:
                if rec.colour(u) != a and rec.can_move(u, a):
                    rec.move(u, a, "sweep towards a")
            R = {v for v in active if rec.colour(v) == a}
            sub_active = active - R
            sub_parts = _restrict_parts(parts, R)
            sub_wits = {v: wits[v] - R for v in sub_active}
            if q >= 1:
                _check_invariant(
                    rec.D, sub_active, sub_parts, sub_wits, q, s - 1,
                    "second elimination recursion",
                )
                _eliminate(
                    rec, sub_active, sub_parts, sub_wits, q, s - 1,
                    tuple(x for x in palette if x != a), c,
                )
            for u in U_order:
                if rec.colour(u) == c or rec.colour(u) not in pal:
                    raise InternalInvariantError(
                        f"vertex {u} still wears {rec.colour(u)} after a claim"
                    )


def eliminate_colours(
    D: Digraph,
    P: Partition,
    h: int,
    s: int,
    k: int,
    alpha: Colouring,
    c: int,
    palette: tuple[int, ...] | None = None,
) -> RecolouringSequence:
    """Free colour c (and all colours above s+2) on parts 1..h.

    The final colouring uses only palette colours other than c on the
    first h parts, touches nothing beyond them, and recolours each vertex
    at most f(s, h) times; all three are asserted before returning.
    """
    require_dicolouring(D, alpha, k, "alpha")
    if not 1 <= h <= P.t:
        raise PreconditionError(f"h = {h} is not a part index (1..{P.t})")
    if P.s > s:
        raise PreconditionError(
            f"partition witnesses have size up to {P.s}, but s = {s}"
        )
    if k < s + 2:
        raise PreconditionError(f"need k >= s + 2 = {s + 2}, got {k}")
    if palette is None:
        palette = tuple(range(1, s + 3))
    if len(set(palette)) != s + 2 or any(not 1 <= x <= k for x in palette):
        raise PreconditionError(f"palette {palette} must be s + 2 distinct colours")
    if c not in palette:
        raise PreconditionError(f"colour {c} is not in the palette {palette}")
    check_partition(D, P)

    rec = MoveRecorder(D, alpha)
    active = set(range(D.n))
    parts = [list(p) for p in P.parts]
    wits = {v: P.witnesses[v] for v in range(D.n)}
    _eliminate(rec, active, parts, wits, h, s, palette, c)

    prefix = set(_flat_prefix(parts, h))
    bound = f(s, h)
    for v in range(D.n):
        if v in prefix:
            if rec.colour(v) == c or rec.colour(v) not in set(palette):
                raise InternalInvariantError(
                    f"vertex {v} still wears colour {rec.colour(v)}"
                )
            if rec.counts[v] > bound:
                raise InternalInvariantError(
                    f"vertex {v} recoloured {rec.counts[v]} times, f(s,h) = {bound}"
                )
        elif rec.counts[v] != 0:
            raise InternalInvariantError(
                f"vertex {v} outside parts 1..{h} was recoloured"
            )
    return rec.sequence()


def _promote(rec: MoveRecorder, active: set[int], parts, target: int) -> set[int]:
    """Greedy, colouring-independent promotion to the top palette colour.

    Scans the parts back to front (ids ascending inside a part) and
    recolours with ``target`` whenever valid.  Because nothing wears
    ``target`` beforehand, the promoted set depends only on the digraph
    and the scan order.
    """
    for v in active:
        if rec.colour(v) == target:
            raise InternalInvariantError(
                f"vertex {v} wears {target} before promotion"
            )
    for p in range(len(parts) - 1, -1, -1):
        for v in sorted(parts[p]):
            if rec.can_move(v, target):
                rec.move(v, target, "promotion")
    return {v for v in active if rec.colour(v) == target}


def _retarget(
    rec: MoveRecorder,
    active: set[int],
    parts: list[list[int]],
    wits: dict[int, frozenset[int]],
    s: int,
    target: dict[int, int],
) -> None:
    """Recursive core of partition_recolour, acting on one instance."""
    if not active:
        return
    if s == 0:
        cyc = is_acyclic_with_witness(rec.D, restrict=active)
        if cyc is not None:
            raise InternalInvariantError(
                f"s=0 instance contains the cycle {cyc.vertices}"
            )
        for v in sorted(active):
            rec.move_if_needed(v, target[v], "acyclic retarget")
        return
    m = s + 2
    palette = tuple(range(1, m + 1))
    h = len(parts)

    _eliminate(rec, active, parts, wits, h, s, palette, m)
    start_b = list(rec.colours)
    for v in active:
        start_b[v] = target[v]
    rec_b = MoveRecorder(rec.D, Colouring(tuple(start_b), rec.k))
    _eliminate(rec_b, active, parts, wits, h, s, palette, m)

    S = _promote(rec, active, parts, m)
    S_b = _promote(rec_b, active, parts, m)
    if S != S_b:
        raise InternalInvariantError(
            "promoted sets differ between the two sides: "
            f"{sorted(S)} vs {sorted(S_b)}"
        )

    sub_active = active - S
    sub_parts = _restrict_parts(parts, S)
    sub_wits = {v: wits[v] - S for v in sub_active}
    _check_invariant(
        rec.D, sub_active, sub_parts, sub_wits, len(sub_parts), s - 1,
        "retarget recursion",
    )
    sub_target = {v: rec_b.colours[v] for v in sub_active}
    _retarget(rec, sub_active, sub_parts, sub_wits, s - 1, sub_target)
    rec.append_reversed(rec_b)


def partition_recolour(
    D: Digraph, P: Partition, s: int, k: int, alpha: Colouring, beta: Colouring
) -> RecolouringSequence:
    """Walk from alpha to beta recolouring each vertex at most g(s, t) times."""
    require_dicolouring(D, alpha, k, "alpha")
    require_dicolouring(D, beta, k, "beta")
    if P.s > s:
        raise PreconditionError(
            f"partition witnesses have size up to {P.s}, but s = {s}"
        )
    if k < s + 2:
        raise PreconditionError(f"need k >= s + 2 = {s + 2}, got {k}")
    check_partition(D, P)

    rec = MoveRecorder(D, alpha)
    active = set(range(D.n))
    parts = [list(p) for p in P.parts]
    wits = {v: P.witnesses[v] for v in range(D.n)}
    target = {v: beta.colours[v] for v in range(D.n)}
    _retarget(rec, active, parts, wits, s, target)

    if tuple(rec.colours) != beta.colours:
        raise InternalInvariantError("sequence does not end at beta")
    bound = g(s, P.t)
    worst = max(rec.counts, default=0)
    if worst > bound:
        raise InternalInvariantError(
            f"a vertex was recoloured {worst} times, g(s,t) = {bound}"
        )
    return rec.sequence()


def _smallest_last_colouring(adj: dict[int, set[int]]) -> dict[int, int]:
    """Greedy colouring along a smallest-last ordering; 1-based colours."""
    degrees = {v: len(nb) for v, nb in adj.items()}
    removed: set[int] = set()
    order: list[int] = []
    while len(order) < len(adj):
        v = min(
            (x for x in adj if x not in removed),
            key=lambda x: (degrees[x], x),
        )
        order.append(v)
        removed.add(v)
        for w in adj[v]:
            if w not in removed:
                degrees[w] -= 1
    colour: dict[int, int] = {}
    for v in reversed(order):
        used = {colour[w] for w in adj[v] if w in colour}
        colour[v] = next(c for c in range(1, len(adj) + 2) if c not in used)
    return colour


def mad_partition(D: Digraph, d: int, epsilon) -> Partition:
    """Partition witnessing maximum average cycle degree at most d - epsilon.

    Peels independent sets of vertices with cycle degree below d; if some
    round finds too few such vertices the precondition is false, and the
    offending vertex set is attached to the raised error.
    """
    if d < 1:
        raise PreconditionError("d must be at least 1")
    eps = Fraction(epsilon)
    if not 0 < eps <= d:
        raise PreconditionError(f"epsilon = {eps} must lie in (0, d]")

    active = list(range(D.n))
    parts: list[tuple[int, ...]] = []
    wits: list[frozenset[int]] = [frozenset()] * D.n
    while active:
        n_h = len(active)
        witness = {u: cycle_degree(D, u, restrict=active)[1] for u in active}
        S = [u for u in active if len(witness[u]) <= d - 1]
        if Fraction(len(S)) * d < eps * n_h:
            err = PreconditionError(
                f"only {len(S)} of {n_h} vertices have cycle degree below {d}; "
                f"the maximum average cycle degree exceeds {d} - {eps}"
            )
            err.offending = tuple(active)
            raise err
        in_S = set(S)
        adj: dict[int, set[int]] = {u: set() for u in S}
        for u in S:
            for v in witness[u]:
                if v in in_S:
                    adj[u].add(v)
                    adj[v].add(u)
        colour = _smallest_last_colouring(adj)
        if colour and max(colour.values()) > 2 * d - 1:
            raise InternalInvariantError(
                f"witness graph needed {max(colour.values())} colours, "
                f"bound is {2 * d - 1}"
            )
        classes: dict[int, list[int]] = {}
        for v, cv in colour.items():
            classes.setdefault(cv, []).append(v)
        best = min(classes, key=lambda cv: (-len(classes[cv]), cv))
        chosen = set(classes[best])
        for u in chosen:
            if witness[u] & chosen:
                raise InternalInvariantError(
                    f"chosen class is not independent at vertex {u}"
                )
            wits[u] = witness[u]
        parts.append(tuple(sorted(chosen)))
        active = [v for v in active if v not in chosen]

    if D.n > 0:
        shrink = eps / ((2 * d - 1) * d)
        if shrink >= 1:
            t0 = 1  # a single round already peels every vertex
        else:
            b = 1 / (1 - shrink)
            acc, t0 = Fraction(1), 0
            while acc < D.n:
                acc *= b
                t0 += 1
        if len(parts) > t0 + 1:
            raise InternalInvariantError(
                f"{len(parts)} parts produced, bound is {t0 + 1}"
            )
    return Partition(tuple(parts), tuple(wits), d - 1)
