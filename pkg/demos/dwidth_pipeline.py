"""Take one decomposition of a directed cycle through the whole toolchain.

Starts from a hand-built tree of bags that satisfies the subtree-support
property but not the one-in-one-out shape, and repairs it.  Exact search
then finds a thinner decomposition, which steers a recolouring walk.
"""

from __future__ import annotations

from redicolouring import Colouring, DDecomposition, Digraph, Graph
from redicolouring.dwidth import (
    coherent_colouring,
    dwidth_bruteforce,
    dwidth_sequence,
    equivalence_classes,
    make_valid,
    validate,
)
from redicolouring.errors import PreconditionError
from redicolouring.oracle import validate_sequence


def bags(dec: DDecomposition) -> list[list[int]]:
    return [sorted(b) for b in dec.bags]


def main() -> None:
    C5 = Digraph(5, [(i, (i + 1) % 5) for i in range(5)])
    print("instance: the directed cycle on 5 vertices")
    print()

    # a lazy decomposition: one fat middle bag bridges the two ends
    dec = DDecomposition(
        Graph(3, [(0, 1), (1, 2)]),
        (frozenset({0, 1}), frozenset({1, 2, 3}), frozenset({3, 4})),
    )
    report = validate(C5, dec, "full")
    print(f"hand-built bags {bags(dec)}, width {dec.width}")
    print(f"subtree-support holds: {report.ok} ({report.sets_checked} strong sets checked)")
    try:
        equivalence_classes(C5, dec)
    except PreconditionError as err:
        print(f"but the class machinery refuses it: {err}")

    fixed = make_valid(C5, dec)
    print(f"after repair: bags {bags(fixed)}, width still {fixed.width}")
    print(f"classes {equivalence_classes(C5, fixed).classes}")
    print()

    width, best = dwidth_bruteforce(C5)
    gamma = coherent_colouring(C5, best)
    print(f"search finds width {width} with bags {bags(best)}")
    print(f"classes {equivalence_classes(C5, best).classes}")
    print(f"coherent colouring {gamma.colours} on {gamma.k} colours")
    print()

    # width 1 means any 3-colour pair can be connected through the
    # coherent colourings of the optimal decomposition
    alpha = Colouring((1, 2, 1, 2, 3), 3)
    beta = Colouring((3, 1, 2, 1, 2), 3)
    n = C5.n
    walk = dwidth_sequence(C5, best, alpha, beta)
    final, counts = validate_sequence(C5, 3, walk)
    assert final.colours == beta.colours
    print(f"guided walk {alpha.colours} -> {beta.colours}:")
    print(f"  {len(walk)} moves, bound 2(n^2 + n) = {2 * (n * n + n)}")
    print(f"  busiest vertex recoloured {max(counts.values())} times")

    blind = dwidth_sequence(C5, None, alpha, beta)
    print(f"  without a decomposition in hand the walk has {len(blind)} moves")
    print("  (the search is small enough that both routes use the same tree)")


if __name__ == "__main__":
    main()
