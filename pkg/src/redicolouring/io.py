"""Line-oriented text formats for the objects the command line moves around.

Four formats, all DIMACS-flavoured (one record per line, a short tag first,
0-indexed vertices):

digraph        ``p digraph n m`` header, one ``a u v`` line per arc
colouring      ``k K`` header, one ``v id colour`` line per vertex
sequence       a colouring block followed by ``m vertex colour`` move lines
decomposition  ``t nodes`` header, tree edges ``e i j``, bags ``b i v1 v2 ...``

Lines starting with ``c`` are comments and blank lines are skipped on input.
The serialisers emit a canonical form (sorted records, no comments, trailing
newline) so that serialise(parse(text)) == text for canonical files and
parse(serialise(obj)) == obj always.
"""

from __future__ import annotations

from .colouring import Colouring
from .digraph import Digraph, Graph
from .dwidth import DDecomposition
from .errors import PreconditionError, RedicolouringError
from .oracle import RecolouringSequence


class ParseError(RedicolouringError):
    """A text file does not conform to its documented record format."""


def _records(text: str):
    """Yield (lineno, fields) for every non-comment, non-blank line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        yield lineno, line.split()


def _int(field: str, lineno: int) -> int:
    try:
        return int(field)
    except ValueError:
        raise ParseError(f"line {lineno}: {field!r} is not an integer") from None


# -- digraphs ---------------------------------------------------------------


def parse_digraph(text: str) -> Digraph:
    header: tuple[int, int] | None = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, fields in _records(text):
        tag = fields[0]
        if tag == "p":
            if header is not None:
                raise ParseError(f"line {lineno}: second 'p' header")
            if len(fields) != 4 or fields[1] != "digraph":
                raise ParseError(f"line {lineno}: expected 'p digraph n m'")
            header = (_int(fields[2], lineno), _int(fields[3], lineno))
            if header[0] < 0 or header[1] < 0:
                raise ParseError(f"line {lineno}: negative count in header")
        elif tag == "a":
            if header is None:
                raise ParseError(f"line {lineno}: arc before the 'p' header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'a u v'")
            u, v = _int(fields[1], lineno), _int(fields[2], lineno)
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at vertex {u}")
            if not (0 <= u < header[0] and 0 <= v < header[0]):
                raise ParseError(
                    f"line {lineno}: arc ({u},{v}) out of range for n={header[0]}"
                )
            if (u, v) in seen:
                raise ParseError(f"line {lineno}: duplicate arc {u} {v}")
            seen.add((u, v))
            arcs.append((u, v))
        else:
            raise ParseError(f"line {lineno}: unknown record tag {tag!r}")
    if header is None:
        raise ParseError("missing 'p digraph n m' header")
    if len(arcs) != header[1]:
        raise ParseError(
            f"header promises {header[1]} arcs, file has {len(arcs)}"
        )
    return Digraph(header[0], arcs)


def serialise_digraph(D: Digraph) -> str:
    lines = [f"p digraph {D.n} {D.m}"]
    lines.extend(f"a {u} {v}" for u, v in D.arcs())
    return "\n".join(lines) + "\n"


# -- colourings and sequences ----------------------------------------------


def _parse_colouring_block(text: str, allow_moves: bool):
    k: int | None = None
    assigned: dict[int, int] = {}
    moves: list[tuple[int, int]] = []
    for lineno, fields in _records(text):
        tag = fields[0]
        if tag == "k":
            if k is not None:
                raise ParseError(f"line {lineno}: second 'k' header")
            if len(fields) != 2:
                raise ParseError(f"line {lineno}: expected 'k K'")
            k = _int(fields[1], lineno)
            if k < 1:
                raise ParseError(f"line {lineno}: palette size must be positive")
        elif tag == "v":
            if k is None:
                raise ParseError(f"line {lineno}: vertex line before 'k' header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'v id colour'")
            vid, col = _int(fields[1], lineno), _int(fields[2], lineno)
            if vid in assigned:
                raise ParseError(f"line {lineno}: vertex {vid} coloured twice")
            if not 1 <= col <= k:
                raise ParseError(
                    f"line {lineno}: colour {col} outside the palette 1..{k}"
                )
            assigned[vid] = col
        elif tag == "m" and allow_moves:
            if k is None:
                raise ParseError(f"line {lineno}: move line before 'k' header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'm vertex colour'")
            vid, col = _int(fields[1], lineno), _int(fields[2], lineno)
            if not 1 <= col <= k:
                raise ParseError(
                    f"line {lineno}: colour {col} outside the palette 1..{k}"
                )
            moves.append((vid, col))
        else:
            raise ParseError(f"line {lineno}: unknown record tag {tag!r}")
    if k is None:
        raise ParseError("missing 'k K' header")
    n = len(assigned)
    if sorted(assigned) != list(range(n)):
        missing = next(v for v in range(n) if v not in assigned)
        raise ParseError(f"vertex lines do not cover 0..{n - 1}: {missing} missing")
    start = Colouring(tuple(assigned[v] for v in range(n)), k)
    for v, _ in moves:
        if not 0 <= v < n:
            raise ParseError(f"move names vertex {v}, outside 0..{n - 1}")
    return start, tuple(moves)


def parse_colouring(text: str) -> Colouring:
    colouring, _ = _parse_colouring_block(text, allow_moves=False)
    return colouring


def serialise_colouring(colouring: Colouring) -> str:
    lines = [f"k {colouring.k}"]
    lines.extend(f"v {v} {c}" for v, c in enumerate(colouring.colours))
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> RecolouringSequence:
    start, moves = _parse_colouring_block(text, allow_moves=True)
    return RecolouringSequence(start, moves)


def serialise_sequence(seq: RecolouringSequence) -> str:
    lines = [serialise_colouring(seq.start).rstrip("\n")]
    lines.extend(f"m {v} {c}" for v, c in seq.moves)
    return "\n".join(lines) + "\n"


# -- decompositions ----------------------------------------------------------


def parse_decomposition(text: str) -> DDecomposition:
    t: int | None = None
    edges: list[tuple[int, int]] = []
    bags: dict[int, frozenset[int]] = {}
    for lineno, fields in _records(text):
        tag = fields[0]
        if tag == "t":
            if t is not None:
                raise ParseError(f"line {lineno}: second 't' header")
            if len(fields) != 2:
                raise ParseError(f"line {lineno}: expected 't nodes'")
            t = _int(fields[1], lineno)
            if t < 1:
                raise ParseError(f"line {lineno}: node count must be positive")
        elif tag == "e":
            if t is None:
                raise ParseError(f"line {lineno}: edge line before 't' header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'e i j'")
            i, j = _int(fields[1], lineno), _int(fields[2], lineno)
            if not (0 <= i < t and 0 <= j < t):
                raise ParseError(f"line {lineno}: edge ({i},{j}) out of range")
            if i == j:
                raise ParseError(f"line {lineno}: self-loop at tree node {i}")
            edges.append((i, j))
        elif tag == "b":
            if t is None:
                raise ParseError(f"line {lineno}: bag line before 't' header")
            if len(fields) < 3:
                raise ParseError(f"line {lineno}: expected 'b i v1 v2 ...'")
            i = _int(fields[1], lineno)
            if not 0 <= i < t:
                raise ParseError(f"line {lineno}: bag for unknown node {i}")
            if i in bags:
                raise ParseError(f"line {lineno}: second bag for node {i}")
            bags[i] = frozenset(_int(f, lineno) for f in fields[2:])
        else:
            raise ParseError(f"line {lineno}: unknown record tag {tag!r}")
    if t is None:
        raise ParseError("missing 't nodes' header")
    absent = [i for i in range(t) if i not in bags]
    if absent:
        raise ParseError(f"no bag given for tree node {absent[0]}")
    try:
        return DDecomposition(Graph(t, edges), tuple(bags[i] for i in range(t)))
    except (PreconditionError, ValueError) as exc:
        raise ParseError(f"not a decomposition: {exc}") from exc


def serialise_decomposition(dec: DDecomposition) -> str:
    lines = [f"t {dec.tree.n}"]
    lines.extend(f"e {i} {j}" for i, j in dec.tree.edges())
    for i, bag in enumerate(dec.bags):
        lines.append("b " + " ".join(str(x) for x in (i, *sorted(bag))))
    return "\n".join(lines) + "\n"
