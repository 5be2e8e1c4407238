"""Tree decompositions driven by strongly connected sets.

A decomposition here is an undirected tree of bags such that the support
of every strongly connected vertex set (the bag nodes meeting it, joined
by the tree edges whose shared bag vertices meet it) is a non-empty
subtree.  The module validates that property under caps, normalises
decompositions to the valid one-in-one-out form, extracts the vertex
classes that valid decompositions induce, and walks between any two
dicolourings in at most 2(n^2 + n) moves once the palette exceeds the
width by two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .colouring import Colouring, require_dicolouring
from .digraph import (
    Digraph,
    Graph,
    is_acyclic_with_witness,
    strongly_connected_components,
)
from .errors import CapExceededError, InternalInvariantError, PreconditionError
from .oracle import RecolouringSequence
from .engines.recorder import MoveRecorder

FULL_VALIDATION_CAP = 14
PARTIAL_CYCLE_LENGTH = 6
BRUTEFORCE_CAP = 7


@dataclass(frozen=True)
class DDecomposition:
    """An undirected tree of bags over the vertices of a host digraph."""

    tree: Graph
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        t = self.tree.n
        if t == 0:
            raise PreconditionError("decomposition tree has no nodes")
        if len(self.bags) != t:
            raise PreconditionError(f"{len(self.bags)} bags for {t} tree nodes")
        if self.tree.m != t - 1 or not _is_connected(self.tree):
            raise PreconditionError("decomposition tree is not a tree")
        for i, bag in enumerate(self.bags):
            if not bag:
                raise PreconditionError(f"bag {i} is empty")
            if any(v < 0 for v in bag):
                raise PreconditionError(f"bag {i} holds a negative vertex id")

    @cached_property
    def width(self) -> int:
        return max(len(bag) for bag in self.bags) - 1

    @cached_property
    def is_reduced(self) -> bool:
        return all(
            not self.bags[t] <= self.bags[u] and not self.bags[u] <= self.bags[t]
            for t, u in self.tree.edges()
        )

    @cached_property
    def is_full(self) -> bool:
        size = self.width + 1
        return all(len(bag) == size for bag in self.bags)

    @cached_property
    def is_valid(self) -> bool:
        """One vertex swapped out and one swapped in across every edge."""
        return all(
            len(self.bags[t] - self.bags[u]) == 1
            and len(self.bags[u] - self.bags[t]) == 1
            for t, u in self.tree.edges()
        )

    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for bag in self.bags:
            out |= bag
        return frozenset(out)

    def support(self, S) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
        """Nodes whose bag meets S, and tree edges sharing a vertex of S."""
        S = frozenset(S)
        nodes = frozenset(t for t in range(self.tree.n) if self.bags[t] & S)
        edges = frozenset(
            (t, u) for t, u in self.tree.edges() if self.bags[t] & self.bags[u] & S
        )
        return nodes, edges


@dataclass(frozen=True)
class ValidationReport:
    level: str
    ok: bool
    violations: tuple[tuple[int, ...], ...]
    sets_checked: int


@dataclass(frozen=True)
class EquivClasses:
    """Vertex classes of a valid decomposition, one per bag slot."""

    classes: tuple[tuple[int, ...], ...]
    supports: tuple[frozenset[int], ...]

    def class_of(self, v: int) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise KeyError(v)


def _is_connected(G: Graph) -> bool:
    if G.n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in G.neighbours(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


def _support_is_subtree(dec: DDecomposition, S) -> bool:
    nodes, edges = dec.support(S)
    if not nodes:
        return False
    adj: dict[int, list[int]] = {t: [] for t in nodes}
    for t, u in edges:
        adj[t].append(u)
        adj[u].append(t)
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


def _is_strong(D: Digraph, S) -> bool:
    return len(strongly_connected_components(D, S)) == 1


def _check_bags(D: Digraph, dec: DDecomposition) -> None:
    for i, bag in enumerate(dec.bags):
        bad = sorted(v for v in bag if v >= D.n)
        if bad:
            raise PreconditionError(
                f"bag {i} references vertices {bad} outside the digraph"
            )


def _short_cycles(D: Digraph, max_len: int) -> list[tuple[int, ...]]:
    """Vertex sets of simple directed cycles up to the given length."""
    found: set[tuple[int, ...]] = set()

    def extend(path: list[int], on_path: set[int]) -> None:
        v = path[-1]
        for w in D.successors(v):
            if w == path[0] and len(path) > 1:
                found.add(tuple(sorted(path)))
            elif w not in on_path and w > path[0] and len(path) < max_len:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.remove(w)
                path.pop()

    for s in range(D.n):
        extend([s], {s})
    return sorted(found)


def validate(
    D: Digraph,
    dec: DDecomposition,
    level: str = "full",
    cap: int = FULL_VALIDATION_CAP,
    cycle_length: int = PARTIAL_CYCLE_LENGTH,
) -> ValidationReport:
    """Check the subtree-support property against the strong sets of D.

    The full level enumerates every strongly connected vertex subset and
    is exact; it refuses digraphs above the cap.  The partial level only
    checks singletons and directed cycles up to cycle_length, so a
    passing report is explicit about being incomplete.
    """
    _check_bags(D, dec)
    violations: list[tuple[int, ...]] = []
    checked = 0
    if level == "full":
        if D.n > cap:
            raise CapExceededError(
                f"full validation enumerates subsets of {D.n} vertices, cap is {cap}"
            )
        verts = range(D.n)
        for size in range(1, D.n + 1):
            for S in combinations(verts, size):
                if size > 1 and not _is_strong(D, S):
                    continue
                checked += 1
                if not _support_is_subtree(dec, S):
                    violations.append(S)
    elif level == "partial":
        for v in range(D.n):
            checked += 1
            if not _support_is_subtree(dec, (v,)):
                violations.append((v,))
        for S in _short_cycles(D, cycle_length):
            checked += 1
            if not _support_is_subtree(dec, S):
                violations.append(S)
    else:
        raise PreconditionError(f"unknown validation level {level!r}")
    return ValidationReport(level, not violations, tuple(violations), checked)


def _contract_edge(adj: dict[int, set[int]], keep: int, drop: int) -> None:
    adj[keep].discard(drop)
    for w in adj.pop(drop):
        if w != keep:
            adj[w].discard(drop)
            adj[w].add(keep)
            adj[keep].add(w)


def _rebuild(adj: dict[int, set[int]], bags: dict[int, frozenset[int]]) -> DDecomposition:
    order = sorted(adj)
    index = {t: i for i, t in enumerate(order)}
    edges = [(index[t], index[u]) for t in order for u in adj[t] if t < u]
    return DDecomposition(Graph(len(order), edges), tuple(bags[t] for t in order))


def make_valid(D: Digraph, dec: DDecomposition) -> DDecomposition:
    """Normalise a decomposition to the one-in-one-out form, same width.

    Bags contained in a neighbour are contracted away, small bags grow
    one vertex at a time from a larger neighbour, and edges whose bags
    differ in two or more vertices are subdivided.  The subdivision
    measure (largest difference over the tree edges, then the number of
    edges attaining it) must strictly decrease, and the width must stay
    put; both are asserted.
    """
    _check_bags(D, dec)
    if dec.is_valid:
        return dec
    width = dec.width
    adj: dict[int, set[int]] = {
        t: set(dec.tree.neighbours(t)) for t in range(dec.tree.n)
    }
    bags: dict[int, frozenset[int]] = dict(enumerate(dec.bags))

    def contract_containments() -> None:
        again = True
        while again:
            again = False
            for t in sorted(adj):
                hit = next(
                    (
                        u
                        for u in sorted(adj[t])
                        if bags[t] <= bags[u] or bags[u] <= bags[t]
                    ),
                    None,
                )
                if hit is None:
                    continue
                if bags[t] <= bags[hit]:
                    _contract_edge(adj, hit, t)
                    del bags[t]
                else:
                    _contract_edge(adj, t, hit)
                    del bags[hit]
                again = True
                break

    while True:
        contract_containments()
        small = sorted(
            (t, u) for t in adj for u in adj[t] if len(bags[t]) < len(bags[u])
        )
        if not small:
            break
        t, u = small[0]
        bags[t] = bags[t] | {min(bags[u] - bags[t])}
    if any(len(b) != width + 1 for b in bags.values()):
        raise InternalInvariantError("bag growth did not end on uniform sizes")

    def measure() -> tuple[int, int]:
        diffs = [len(bags[t] - bags[u]) for t in adj for u in adj[t]]
        if not diffs:
            return (0, 0)
        worst = max(diffs)
        return (worst, diffs.count(worst) // 2)

    fresh = max(adj, default=0) + 1
    guard = measure()
    while guard[0] >= 2:
        t, u = min(
            (t, u) for t in adj for u in adj[t] if len(bags[t] - bags[u]) >= 2
        )
        x = min(bags[t] - bags[u])
        v = min(bags[u] - bags[t])
        mid = fresh
        fresh += 1
        bags[mid] = (bags[u] - {v}) | {x}
        adj[t].remove(u)
        adj[u].remove(t)
        adj[mid] = {t, u}
        adj[t].add(mid)
        adj[u].add(mid)
        now = measure()
        if now >= guard:
            raise InternalInvariantError(
                f"subdivision measure did not decrease: {guard} -> {now}"
            )
        guard = now

    out = _rebuild(adj, bags)
    if out.width != width:
        raise InternalInvariantError(
            f"normalisation changed the width from {width} to {out.width}"
        )
    if not out.is_valid:
        raise InternalInvariantError("normalisation did not reach the valid form")
    return out


def _require_valid(dec: DDecomposition, name: str = "decomposition") -> None:
    if not dec.is_valid:
        raise PreconditionError(f"{name} is not valid (one-in-one-out per edge)")


def _parent_pairs(node_ids, adj, bags):
    """Directly related pairs: disjoint supports joined by a tree edge."""
    verts = sorted(set().union(*[bags[t] for t in node_ids]))
    support = {v: frozenset(t for t in node_ids if v in bags[t]) for v in verts}
    pairs = set()
    for t in node_ids:
        for u in adj[t]:
            if u <= t or u not in node_ids:
                continue
            for a in bags[t]:
                for b in bags[u]:
                    if a != b and not (support[a] & support[b]):
                        pairs.add((min(a, b), max(a, b)))
    return verts, support, sorted(pairs)


def _classes_from_pairs(verts, pairs) -> list[tuple[int, ...]]:
    parent = {v: v for v in verts}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    return [tuple(sorted(g)) for g in sorted(groups.values())]


def equivalence_classes(D: Digraph, dec: DDecomposition) -> EquivClasses:
    """Classes of the direct-pair closure; width+1 of them, each acyclic."""
    _check_bags(D, dec)
    _require_valid(dec)
    nodes = list(range(dec.tree.n))
    adj = {t: set(dec.tree.neighbours(t)) for t in nodes}
    bags = dict(enumerate(dec.bags))
    verts, _, pairs = _parent_pairs(nodes, adj, bags)
    for v in verts:
        if not _support_is_subtree(dec, (v,)):
            raise PreconditionError(
                f"support of vertex {v} is not a subtree, so the "
                "decomposition fails the subtree-support property"
            )
    classes = _classes_from_pairs(verts, pairs)
    if len(classes) != dec.width + 1:
        raise PreconditionError(
            f"{len(classes)} classes on a width {dec.width} decomposition; "
            "expected width + 1, so it fails the subtree-support property"
        )
    for cls in classes:
        if is_acyclic_with_witness(D, cls) is not None:
            raise PreconditionError(
                f"class {cls} induces a directed cycle, so the decomposition "
                "fails the subtree-support property"
            )
        members = set(cls)
        for i, bag in enumerate(dec.bags):
            if len(bag & members) != 1:
                raise InternalInvariantError(
                    f"class {cls} meets bag {i} {len(bag & members)} times"
                )
    supports = tuple(
        frozenset(t for t in nodes if v in dec.bags[t]) for v in range(D.n)
    )
    return EquivClasses(tuple(classes), supports)


def coherent_colouring(
    D: Digraph, dec: DDecomposition, k: int | None = None
) -> Colouring:
    """Colour each class with its own index; coherent by construction."""
    eq = equivalence_classes(D, dec)
    if k is None:
        k = dec.width + 1
    if k < dec.width + 1:
        raise PreconditionError(
            f"palette {k} cannot keep {dec.width + 1} classes apart"
        )
    colours = [0] * D.n
    for i, cls in enumerate(eq.classes, start=1):
        for v in cls:
            colours[v] = i
    alpha = Colouring(tuple(colours), k)
    require_dicolouring(D, alpha, k, "coherent colouring")
    return alpha


def coherence_failure(D: Digraph, dec: DDecomposition, alpha, X=None) -> str | None:
    """Why alpha is not X-coherent, or None when it is.

    Directly related pairs inside X must share a colour, and each of the
    two vertices must be the only one wearing that colour in every bag
    of its support.
    """
    _require_valid(dec)
    nodes = list(range(dec.tree.n))
    adj = {t: set(dec.tree.neighbours(t)) for t in nodes}
    bags = dict(enumerate(dec.bags))
    verts, support, pairs = _parent_pairs(nodes, adj, bags)
    inside = set(verts) if X is None else set(X)
    for a, b in pairs:
        if a not in inside or b not in inside:
            continue
        if alpha[a] != alpha[b]:
            return f"pair {a},{b} wears colours {alpha[a]} != {alpha[b]}"
        for v in (a, b):
            for t in support[v]:
                twins = sorted(
                    w for w in bags[t] if w != v and alpha[w] == alpha[v]
                )
                if twins:
                    return (
                        f"vertex {v} shares colour {alpha[v]} with {twins} "
                        f"in bag {t}"
                    )
    return None


def is_coherent(D: Digraph, dec: DDecomposition, alpha, X=None) -> bool:
    return coherence_failure(D, dec, alpha, X) is None


def _class_colours(eq: EquivClasses, alpha, name: str) -> list[int]:
    out = []
    for cls in eq.classes:
        worn = {alpha[v] for v in cls}
        if len(worn) != 1:
            raise PreconditionError(
                f"{name} colours class {cls} with {sorted(worn)}; "
                "renaming needs monochromatic classes"
            )
        out.append(worn.pop())
    if len(set(out)) != len(out):
        raise PreconditionError(
            f"{name} repeats a colour across classes ({out}); "
            "renaming needs class colours to be pairwise distinct"
        )
    return out


def rename_coherent(
    D: Digraph, dec: DDecomposition, alpha: Colouring, beta: Colouring
) -> RecolouringSequence:
    """Walk between coherent colourings by renaming whole classes.

    A mismatched class moves straight to its target whenever no other
    class wears that colour; otherwise the smallest mismatched class
    parks on the globally unused colour, which exists because there are
    only width+1 classes.  Each class is renamed at most twice.
    """
    k = alpha.k
    if beta.k != k:
        raise PreconditionError("endpoints use different palettes")
    if k < dec.width + 2:
        raise PreconditionError(
            f"palette must be at least {dec.width + 2}, got {k}"
        )
    require_dicolouring(D, alpha, k, "alpha")
    require_dicolouring(D, beta, k, "beta")
    for name, col in (("alpha", alpha), ("beta", beta)):
        reason = coherence_failure(D, dec, col)
        if reason is not None:
            raise PreconditionError(f"{name} is not coherent: {reason}")
    eq = equivalence_classes(D, dec)
    cur = _class_colours(eq, alpha, "alpha")
    target = _class_colours(eq, beta, "beta")
    rec = MoveRecorder(D, alpha)
    renames = [0] * len(cur)

    def retarget(i: int, colour: int) -> None:
        for v in eq.classes[i]:
            rec.move(v, colour, "class rename")
        cur[i] = colour
        renames[i] += 1
        if renames[i] > 2:
            raise InternalInvariantError(
                f"class {i} renamed {renames[i]} times, bound is 2"
            )

    spins = 0
    while cur != target:
        spins += 1
        if spins > 2 * len(cur) + 1:
            raise InternalInvariantError("class renaming failed to converge")
        direct = [
            i
            for i in range(len(cur))
            if cur[i] != target[i]
            and all(cur[j] != target[i] for j in range(len(cur)) if j != i)
        ]
        if direct:
            retarget(direct[0], target[direct[0]])
            continue
        i = next(j for j in range(len(cur)) if cur[j] != target[j])
        free = next(c for c in range(1, k + 1) if c not in cur)
        retarget(i, free)

    if tuple(rec.colours) != beta.colours:
        raise InternalInvariantError("class renaming does not end at beta")
    if len(rec.moves) > 2 * D.n:
        raise InternalInvariantError(
            f"class renaming used {len(rec.moves)} moves, bound is {2 * D.n}"
        )
    return rec.sequence()


def _move_with_freshness(
    rec: MoveRecorder,
    dec: DDecomposition,
    groups: dict[int, frozenset[int]],
    counted: dict[int, int] | None,
    rep: int,
    colour: int,
    reason: str,
) -> None:
    """Recolour a vertex, dragging along everything identified with it.

    Before each individual move the target colour must be absent from
    every original bag holding the moved vertex.  This is the side
    condition that keeps the move safe in the full digraph, and it is
    checked against the untouched input decomposition on purpose.
    """
    for member in sorted(groups.get(rep, frozenset({rep}))):
        for t in range(dec.tree.n):
            if member not in dec.bags[t]:
                continue
            clash = sorted(
                z for z in dec.bags[t] if z != member and rec.colour(z) == colour
            )
            if clash:
                raise InternalInvariantError(
                    f"recolouring {member} with {colour} clashes with {clash} "
                    f"in bag {t}"
                )
        rec.move(member, colour, reason)
        if counted is not None:
            counted[member] = counted.get(member, 0) + 1
            if counted[member] > 1:
                raise InternalInvariantError(
                    f"vertex {member} recoloured twice while removing a colour"
                )


def _live_vertices(nodes, bags) -> set[int]:
    out: set[int] = set()
    for t in nodes:
        out |= bags[t]
    return out


def _subtree_nodes(adj, root: int, avoid: int | None) -> set[int]:
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w != avoid and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _contract_equal_bags(nodes, adj, bags, root: int):
    """Merge adjacent instance nodes whose bag views became equal."""
    nodes = set(nodes)
    adj = {t: set(adj[t]) & nodes for t in nodes}
    changed = True
    while changed:
        changed = False
        for t in sorted(adj):
            hit = next((u for u in sorted(adj[t]) if bags[t] == bags[u]), None)
            if hit is None:
                continue
            keep, drop = (t, hit) if hit != root else (hit, t)
            _contract_edge(adj, keep, drop)
            changed = True
            break
    return set(adj), adj, root


def _remove_rec(
    rec: MoveRecorder,
    dec: DDecomposition,
    nodes: set[int],
    adj: dict[int, set[int]],
    root: int,
    bags: dict[int, frozenset[int]],
    palette: frozenset[int],
    c: int,
    groups: dict[int, frozenset[int]],
    counted: dict[int, int],
) -> None:
    offenders = sorted(v for v in bags[root] if rec.colour(v) == c)
    if offenders:
        raise InternalInvariantError(
            f"colour {c} sits on {offenders} in the root bag of an instance"
        )
    live = _live_vertices(nodes, bags)
    if all(rec.colour(v) != c for v in live):
        return
    width = max(len(bags[t]) for t in nodes) - 1
    if width == 0:
        other = min(palette - {c})
        for x in sorted(live):
            if rec.colour(x) == c:
                _move_with_freshness(
                    rec, dec, groups, counted, x, other, "flush acyclic layer"
                )
        return

    for child in sorted(adj[root]):
        sub_nodes = _subtree_nodes(adj, child, avoid=root)
        sub_live = _live_vertices(sub_nodes, bags)
        if all(rec.colour(v) != c for v in sub_live):
            continue
        extra = bags[child] - bags[root]
        if len(extra) != 1:
            raise InternalInvariantError(
                "removal instance lost the one-in-one-out shape"
            )
        (y,) = extra

        if rec.colour(y) != c:
            verts, _, pairs = _parent_pairs(sub_nodes, adj, bags)
            cls = next(cl for cl in _classes_from_pairs(verts, pairs) if y in cl)
            sub_bags = dict(bags)
            saved = groups.get(y)
            if len(cls) > 1:
                worn = sorted({rec.colour(m) for m in cls})
                if len(worn) != 1:
                    raise InternalInvariantError(
                        f"identified class {cls} wears several colours {worn}"
                    )
                groups[y] = frozenset().union(
                    *[groups.get(m, frozenset({m})) for m in cls]
                )
                drop = set(cls) - {y}
                for t in sub_nodes:
                    if sub_bags[t] & drop:
                        sub_bags[t] = (sub_bags[t] - drop) | {y}
            live_nodes, sub_adj, sub_root = _contract_equal_bags(
                sub_nodes, adj, sub_bags, child
            )
            _remove_rec(
                rec, dec, live_nodes, sub_adj, sub_root, sub_bags,
                palette, c, groups, counted,
            )
            if len(cls) > 1:
                if saved is None:
                    groups.pop(y, None)
                else:
                    groups[y] = saved
        else:
            worn_c: list[int] = []
            for t in sorted(sub_nodes):
                hits = [v for v in bags[t] if rec.colour(v) == c]
                if len(hits) != 1:
                    raise InternalInvariantError(
                        f"bag {t} holds {len(hits)} vertices of colour {c}, "
                        "expected exactly one below a coherent instance root"
                    )
                worn_c.extend(hits)
            Y = frozenset(worn_c)
            sub_bags = {t: bags[t] - Y if t in sub_nodes else bags[t] for t in bags}
            taken = {rec.colour(v) for v in bags[child] - {y}}
            c_prime = min(palette - {c} - taken)
            live_nodes, sub_adj, sub_root = _contract_equal_bags(
                sub_nodes, adj, sub_bags, child
            )
            _remove_rec(
                rec, dec, live_nodes, sub_adj, sub_root, sub_bags,
                palette - {c}, c_prime, groups, counted,
            )
            for w in sorted(Y):
                _move_with_freshness(
                    rec, dec, groups, counted, w, c_prime, "retire colour class"
                )

    leftovers = sorted(v for v in live if rec.colour(v) == c)
    if leftovers:
        raise InternalInvariantError(
            f"colour {c} survived a removal instance on {leftovers}"
        )


def remove_colour(
    D: Digraph,
    dec: DDecomposition,
    alpha: Colouring,
    c: int,
    root: int = 0,
) -> tuple[RecolouringSequence, Colouring]:
    """Free colour c everywhere below the root bag, one move per vertex.

    alpha must be coherent away from the root bag and keep the root bag
    clear of c.  The walk never touches the root bag, recolours every
    other vertex at most once, keeps every intermediate step a
    dicolouring, and lands on a colouring that is again coherent away
    from the root bag.
    """
    _check_bags(D, dec)
    _require_valid(dec)
    k = alpha.k
    if k < dec.width + 2:
        raise PreconditionError(f"palette must be at least {dec.width + 2}, got {k}")
    require_dicolouring(D, alpha, k, "alpha")
    if not 1 <= c <= k:
        raise PreconditionError(f"colour {c} is outside the palette 1..{k}")
    if not 0 <= root < dec.tree.n:
        raise PreconditionError(f"root {root} is not a tree node")
    offenders = sorted(v for v in dec.bags[root] if alpha[v] == c)
    if offenders:
        raise PreconditionError(
            f"colour {c} appears in the root bag on vertices {offenders}"
        )
    outside = dec.vertices() - dec.bags[root]
    reason = coherence_failure(D, dec, alpha, outside)
    if reason is not None:
        raise PreconditionError(f"alpha is not coherent beyond the root: {reason}")

    rec = MoveRecorder(D, alpha)
    nodes = set(range(dec.tree.n))
    adj = {t: set(dec.tree.neighbours(t)) for t in nodes}
    bags = dict(enumerate(dec.bags))
    counted: dict[int, int] = {}
    _remove_rec(
        rec, dec, nodes, adj, root, bags,
        frozenset(range(1, k + 1)), c, {}, counted,
    )
    beta = rec.snapshot()
    stragglers = sorted(v for v in dec.vertices() if beta[v] == c)
    if stragglers:
        raise InternalInvariantError(f"colour {c} survived on {stragglers}")
    if set(counted) & dec.bags[root]:
        raise InternalInvariantError("a root bag vertex was recoloured")
    after = coherence_failure(D, dec, beta, outside)
    if after is not None:
        raise InternalInvariantError(f"removal broke coherence: {after}")
    return rec.sequence(), beta


def _postorder(adj, root: int) -> list[int]:
    order: list[int] = []
    stack: list[tuple[int, int | None, bool]] = [(root, None, False)]
    while stack:
        node, parent, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        stack.append((node, parent, True))
        for child in sorted(adj[node], reverse=True):
            if child != parent:
                stack.append((child, node, False))
    return order


def make_coherent(
    D: Digraph, dec: DDecomposition, alpha: Colouring
) -> tuple[RecolouringSequence, Colouring]:
    """Walk alpha to a coherent colouring in at most n^2 moves.

    Every vertex is handled at the highest node of its support, nodes in
    post-order, so that everything strictly below is already settled.  A
    step first frees a colour missing from that bag throughout the
    subtree under it, then hands the freed colour to the vertex's whole
    class there.  Settled vertices move at most twice per later step,
    which telescopes to n^2.
    """
    _check_bags(D, dec)
    _require_valid(dec)
    k = alpha.k
    if k < dec.width + 2:
        raise PreconditionError(f"palette must be at least {dec.width + 2}, got {k}")
    require_dicolouring(D, alpha, k, "alpha")
    if dec.vertices() != frozenset(range(D.n)):
        raise PreconditionError("the bags do not cover the digraph")

    nodes = list(range(dec.tree.n))
    adj = {t: set(dec.tree.neighbours(t)) for t in nodes}
    bags = dict(enumerate(dec.bags))
    root = 0
    order = _postorder(adj, root)
    parent_of: dict[int, int | None] = {root: None}
    depth = {root: 0}
    for t in reversed(order):
        for w in adj[t]:
            if w not in depth:
                depth[w] = depth[t] + 1
                parent_of[w] = t

    eq = equivalence_classes(D, dec)
    top = {
        v: min(eq.supports[v], key=lambda t: (depth[t], t)) for v in range(D.n)
    }

    rec = MoveRecorder(D, alpha)
    done: set[int] = set()
    for t in order:
        sub_nodes = _subtree_nodes(adj, t, avoid=parent_of[t])
        sub_adj = {s: set(adj[s]) & sub_nodes for s in sub_nodes}
        for v in sorted(bags[t]):
            if top[v] != t or v in done:
                continue
            before = len(rec.moves)
            c = min(
                col
                for col in range(1, k + 1)
                if all(rec.colour(u) != col for u in bags[t])
            )
            counted: dict[int, int] = {}
            _remove_rec(
                rec, dec, set(sub_nodes), sub_adj, t, bags,
                frozenset(range(1, k + 1)), c, {}, counted,
            )
            sub_live = _live_vertices(sub_nodes, bags)
            for w in sorted(set(eq.classes[eq.class_of(v)]) & sub_live):
                if rec.colour(w) != c:
                    _move_with_freshness(
                        rec, dec, {}, None, w, c, "settle class colour"
                    )
            step = len(rec.moves) - before
            if step > 2 * len(done) + 1:
                raise InternalInvariantError(
                    f"step for vertex {v} took {step} moves, "
                    f"bound is {2 * len(done) + 1}"
                )
            done.add(v)

    beta = rec.snapshot()
    reason = coherence_failure(D, dec, beta)
    if reason is not None:
        raise InternalInvariantError(f"endpoint is not coherent: {reason}")
    if len(rec.moves) > D.n * D.n:
        raise InternalInvariantError(
            f"coherence walk used {len(rec.moves)} moves, bound {D.n * D.n}"
        )
    return rec.sequence(), beta


def dwidth_sequence(
    D: Digraph,
    dec: DDecomposition | None,
    alpha: Colouring,
    beta: Colouring,
) -> RecolouringSequence:
    """Walk alpha to beta through coherent colourings, within 2(n^2 + n).

    Without a decomposition, one is brute-forced when the digraph is
    small enough; when the palette has more colours than vertices, a
    single bag over everything does the job at any size.
    """
    k = alpha.k
    if beta.k != k:
        raise PreconditionError("endpoints use different palettes")
    require_dicolouring(D, alpha, k, "alpha")
    require_dicolouring(D, beta, k, "beta")
    if alpha.colours == beta.colours:
        return RecolouringSequence(alpha, ())
    n = D.n

    if dec is None:
        if k >= n + 1:
            dec = DDecomposition(Graph(1, []), (frozenset(range(n)),))
        elif n <= BRUTEFORCE_CAP:
            _, dec = dwidth_bruteforce(D)
        else:
            raise PreconditionError(
                "no decomposition given and the digraph is too large to search"
            )
    level = "full" if n <= FULL_VALIDATION_CAP else "partial"
    report = validate(D, dec, level=level)
    if not report.ok:
        raise PreconditionError(
            f"decomposition fails the subtree-support property, "
            f"for example on {report.violations[0]}"
        )
    if dec.vertices() != frozenset(range(n)):
        raise PreconditionError("the bags do not cover the digraph")
    dec = make_valid(D, dec)
    if k < dec.width + 2:
        raise PreconditionError(
            f"palette {k} is too small for width {dec.width}, "
            f"need at least {dec.width + 2}"
        )

    seq_a, _ = make_coherent(D, dec, alpha)
    seq_b, coherent_b = make_coherent(D, dec, beta)
    rec = MoveRecorder(D, alpha)
    for v, colour in seq_a.moves:
        rec.move(v, colour, "coherence leg")
    middle = rename_coherent(D, dec, rec.snapshot(), coherent_b)
    for v, colour in middle.moves:
        rec.move(v, colour, "renaming leg")
    back = MoveRecorder(D, beta)
    for v, colour in seq_b.moves:
        back.move(v, colour, "coherence leg")
    rec.append_reversed(back)
    if tuple(rec.colours) != beta.colours:
        raise InternalInvariantError("decomposition walk does not end at beta")
    bound = 2 * (n * n + n)
    if len(rec.moves) > bound:
        raise InternalInvariantError(
            f"decomposition walk used {len(rec.moves)} moves, bound {bound}"
        )
    return rec.sequence()


def dwidth_bruteforce(D: Digraph, cap: int = BRUTEFORCE_CAP) -> tuple[int, DDecomposition]:
    """Smallest decomposition width, found by exhausting valid shapes.

    In a valid decomposition whose vertex supports are subtrees, every
    tree edge swaps in a globally fresh vertex, so there are exactly
    n - width nodes.  The search therefore walks over rooted tree
    shapes, root bags and swap choices, prunes digon endpoints that can
    no longer share a bag, and checks the surviving candidates against
    every strongly connected set.
    """
    n = D.n
    if n == 0:
        raise PreconditionError("the empty digraph has no decomposition")
    if n > cap:
        raise CapExceededError(f"decomposition search capped at {cap}, got {n}")
    if is_acyclic_with_witness(D) is None:
        edges = [(i, i + 1) for i in range(n - 1)]
        return 0, DDecomposition(
            Graph(n, edges), tuple(frozenset({v}) for v in range(n))
        )

    strong_sets = [
        S
        for size in range(2, n + 1)
        for S in combinations(range(n), size)
        if _is_strong(D, S)
    ]
    digons = [tuple(sorted(d)) for d in D.digons()]

    for width in range(1, n):
        t = n - width
        if t == 1:
            return width, DDecomposition(Graph(1, []), (frozenset(range(n)),))
        found = _search_valid(n, t, width + 1, strong_sets, digons)
        if found is not None:
            return width, found
    raise InternalInvariantError("the single-bag decomposition was not reached")


def _search_valid(n, t, size, strong_sets, digons):
    def digon_ok(bag: frozenset[int], fresh: int, introduced: set[int]) -> bool:
        for a, b in digons:
            if fresh == a and b in introduced and b not in bag:
                return False
            if fresh == b and a in introduced and a not in bag:
                return False
        return True

    def complete(bags, parents) -> DDecomposition | None:
        dec = DDecomposition(
            Graph(t, [(parents[i], i) for i in range(1, t)]), tuple(bags)
        )
        for S in strong_sets:
            if not _support_is_subtree(dec, S):
                return None
        return dec

    def grow(bags, parents, introduced):
        if len(bags) == t:
            return complete(bags, parents)
        remaining = [v for v in range(n) if v not in introduced]
        for parent in range(len(bags)):
            for out in sorted(bags[parent]):
                base = bags[parent] - {out}
                for fresh in remaining:
                    bag = base | {fresh}
                    if not digon_ok(bag, fresh, introduced):
                        continue
                    bags.append(bag)
                    parents.append(parent)
                    introduced.add(fresh)
                    hit = grow(bags, parents, introduced)
                    if hit is not None:
                        return hit
                    introduced.remove(fresh)
                    parents.pop()
                    bags.pop()
        return None

    for root in combinations(range(n), size):
        hit = grow([frozenset(root)], [0], set(root))
        if hit is not None:
            return hit
    return None


def min_degree_generator(d: int) -> Digraph:
    """A digraph with every in- and out-degree at least d, built from a tree.

    A complete d-ary tree of depth d gets arcs from each vertex down to
    its children and up to all its ancestors, which forces out-degrees
    of at least d.  A mirrored copy with all arcs reversed fixes the
    in-degrees, and every copy vertex points at every original vertex to
    tie the two halves together.
    """
    if d < 1:
        raise PreconditionError("the degree demand must be at least 1")
    if d > 3:
        raise PreconditionError(
            f"degree demand {d} needs hundreds of vertices or more; capped at 3"
        )
    parent: list[int | None] = [None]
    frontier = [0]
    for _ in range(d):
        grown = []
        for leaf in frontier:
            for _ in range(d):
                parent.append(leaf)
                grown.append(len(parent) - 1)
        frontier = grown
    m = len(parent)
    arcs: list[tuple[int, int]] = []
    for v in range(1, m):
        arcs.append((parent[v], v))
        anc = parent[v]
        while anc is not None:
            arcs.append((v, anc))
            anc = parent[anc]
    arcs += [(v + m, u + m) for u, v in list(arcs)]
    arcs += [(u + m, v) for u in range(m) for v in range(m)]
    D = Digraph(2 * m, arcs)
    for v in range(D.n):
        if D.out_degree(v) < d or D.in_degree(v) < d:
            raise InternalInvariantError(
                f"vertex {v} has degrees ({D.in_degree(v)}, {D.out_degree(v)}), "
                f"wanted at least {d} on both sides"
            )
    return D
