"""Run every recolouring engine on one small digraph and compare the walks.

The instance is two directed triangles joined by a digon.  Its cycle
degeneracy is 1, so three colours already satisfy the strongest engine
preconditions, and the state space is small enough that the brute-force
oracle can report the true shortest walk for contrast.
"""

from __future__ import annotations

from redicolouring import Colouring, Digraph, underlying_graph
from redicolouring.colouring import dichromatic_number_bruteforce, digrundy_bruteforce
from redicolouring.degrees import cycle_degree, degeneracy_ordering
from redicolouring.engines import (
    digrundy_sequence,
    mix_bounded,
    mix_quadratic,
    mix_simple,
    partition_recolour,
    singleton_partition,
    ug_reduction_sequence,
)
from redicolouring.oracle import enumerate_dicolourings, shortest_sequence, validate_sequence


def rewrap(alpha: Colouring, k: int) -> Colouring:
    return Colouring(alpha.colours, k)


def show(name: str, D: Digraph, k: int, seq) -> None:
    _, counts = validate_sequence(D, k, seq)
    worst = max(counts.values(), default=0)
    print(f"  {name:<14} k={k}  moves={len(seq):>2}  max per vertex={worst}")


def main() -> None:
    arcs = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2), (3, 4), (4, 5), (5, 3)]
    D = Digraph(6, arcs)

    dstar = degeneracy_ordering(D, "c").degeneracy
    chi, _ = dichromatic_number_bruteforce(D)
    dg = digrundy_bruteforce(D)
    print(f"digraph on {D.n} vertices, {len(list(D.arcs()))} arcs")
    print(f"cycle degrees {[cycle_degree(D, v)[0] for v in range(D.n)]}")
    print(f"cycle degeneracy {dstar}, dichromatic number {chi}, digrundy {dg}")
    print()

    # swapping the two colour classes realises the diameter of the
    # 3-colour state space: neither endpoint uses colour 3, so every
    # walk has to detour through it
    states = enumerate_dicolourings(D, 3)
    alpha = Colouring((1, 1, 2, 1, 1, 2), 3)
    beta = Colouring((2, 2, 1, 2, 2, 1), 3)
    print(f"walking between two of the {len(states)} dicolourings with 3 colours:")
    print(f"  alpha = {alpha.colours}")
    print(f"  beta  = {beta.colours}")
    print()

    oracle = shortest_sequence(D, 3, alpha, beta)
    assert oracle is not None
    print("engine walks (the oracle row is the exact optimum):")
    show("oracle", D, 3, oracle)
    show("mix_simple", D, 3, mix_simple(D, 3, alpha, beta))
    show("mix_quadratic", D, 3, mix_quadratic(D, 3, alpha, beta))

    P = singleton_partition(D)
    show("partition", D, 3, partition_recolour(D, P, P.s, 3, alpha, beta))

    # these two need one colour more than the mixing pair
    a4, b4 = rewrap(alpha, 4), rewrap(beta, 4)
    show("mix_bounded", D, 4, mix_bounded(D, 4, a4, b4))
    show("digrundy", D, 4, digrundy_sequence(D, 4, a4, b4))

    # the reduction engine drives towards a proper colouring of the
    # underlying graph rather than an arbitrary dicolouring
    G = underlying_graph(D)
    gamma = next(
        s for s in states if all(s[u] != s[v] for u, v in G.edges())
    )
    print()
    print(f"reduction target gamma = {gamma.colours} (proper on the underlying graph)")
    show("ug oracle", D, 3, ug_reduction_sequence(D, 3, alpha, gamma, "oracle"))
    show("ug simple", D, 3, ug_reduction_sequence(D, 3, alpha, gamma, "simple"))


if __name__ == "__main__":
    main()
