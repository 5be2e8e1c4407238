import random

import pytest

from redicolouring import Digraph, bidirect
from redicolouring.colouring import Colouring, dichromatic_number_bruteforce
from redicolouring.degrees import degeneracy_ordering
from redicolouring.engines import mix_bounded, mix_simple
from redicolouring.errors import PreconditionError
from redicolouring.oracle import (
    enumerate_dicolourings,
    shortest_sequence,
    validate_sequence,
)

from helpers import complete_bidirected, directed_cycle, random_digraph


def replay(D, k, seq, beta):
    final, counts = validate_sequence(D, k, seq)
    assert final.colours == beta.colours
    return counts


def test_simple_on_directed_triangle():
    D = directed_cycle(3)
    alpha = Colouring((1, 1, 2), 3)
    beta = Colouring((2, 3, 3), 3)
    seq = mix_simple(D, 3, alpha, beta)
    replay(D, 3, seq, beta)


def test_simple_rejects_small_palette():
    D = complete_bidirected(4)  # cycle degeneracy 3
    cols = Colouring((1, 2, 3, 4), 4)
    with pytest.raises(PreconditionError):
        mix_simple(D, 4, cols, cols)


def test_bounded_rejects_bidirected_five_cycle_at_four():
    # The bidirected 5-cycle has cycle degeneracy 2, so the bounded engine
    # wants six colours; four is not enough even though mixing holds.
    G_edges = [(i, (i + 1) % 5) for i in range(5)]
    arcs = G_edges + [(v, u) for u, v in G_edges]
    D = Digraph(5, arcs)
    alpha = Colouring((1, 2, 1, 2, 3), 4)
    with pytest.raises(PreconditionError):
        mix_bounded(D, 4, alpha, alpha)


def test_dag_sequences_are_hamming_tight():
    rng = random.Random(4021)
    for _ in range(30):
        n = rng.randint(2, 6)
        arcs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        D = Digraph(n, arcs)
        k = 2
        states = enumerate_dicolourings(D, k)
        alpha, beta = rng.sample(states, 2) if len(states) > 1 else (states[0], states[0])
        seq = mix_simple(D, k, alpha, beta)
        dist = sum(1 for a, b in zip(alpha.colours, beta.colours) if a != b)
        assert len(seq) == dist
        replay(D, k, seq, beta)


def test_simple_random_at_threshold():
    rng = random.Random(922)
    done = 0
    while done < 40:
        n = rng.randint(2, 6)
        D = random_digraph(n, rng.uniform(0.2, 0.8), rng)
        dstar = degeneracy_ordering(D, "c").degeneracy
        k = dstar + 2
        states = enumerate_dicolourings(D, k)
        if len(states) < 2:
            continue
        alpha = rng.choice(states)
        beta = rng.choice(states)
        seq = mix_simple(D, k, alpha, beta)
        replay(D, k, seq, beta)
        done += 1


def test_simple_not_shorter_than_oracle():
    rng = random.Random(515)
    done = 0
    while done < 25:
        n = rng.randint(2, 5)
        D = random_digraph(n, 0.5, rng)
        dstar = degeneracy_ordering(D, "c").degeneracy
        k = dstar + 2
        states = enumerate_dicolourings(D, k)
        if len(states) < 2:
            continue
        alpha, beta = rng.sample(states, 2)
        seq = mix_simple(D, k, alpha, beta)
        best = shortest_sequence(D, k, alpha, beta)
        assert best is not None
        assert len(seq) >= len(best)
        done += 1


def test_bounded_per_vertex_counts():
    rng = random.Random(77)
    done = 0
    while done < 30:
        n = rng.randint(2, 6)
        D = random_digraph(n, rng.uniform(0.2, 0.7), rng)
        dstar = degeneracy_ordering(D, "c").degeneracy
        k = 2 * (dstar + 1)
        states = enumerate_dicolourings(D, k)
        if len(states) < 2:
            continue
        alpha = rng.choice(states)
        beta = rng.choice(states)
        seq = mix_bounded(D, k, alpha, beta)
        counts = replay(D, k, seq, beta)
        assert max(counts.values(), default=0) <= dstar + 1
        assert len(seq) <= (dstar + 1) * n
        done += 1


def test_bounded_on_bidirected_cliques():
    # chi = n and cycle degeneracy n - 1, so 2n colours allow a bounded walk
    # between any two optimal colourings.
    for n in (2, 3):
        D = complete_bidirected(n)
        k = 2 * n
        alpha = Colouring(tuple(range(1, n + 1)), k)
        beta = Colouring(tuple(range(n, 0, -1)), k)
        seq = mix_bounded(D, k, alpha, beta)
        counts = replay(D, k, seq, beta)
        assert max(counts.values(), default=0) <= n


def test_simple_reaches_optimal_colourings():
    rng = random.Random(3110)
    for _ in range(10):
        n = rng.randint(3, 6)
        D = random_digraph(n, 0.4, rng)
        dstar = degeneracy_ordering(D, "c").degeneracy
        k = dstar + 2
        chi, best = dichromatic_number_bruteforce(D)
        if chi > k:
            continue
        alpha = Colouring(best.colours, k)
        beta = Colouring(tuple(rng.randint(1, k) for _ in range(n)), k)
        from redicolouring.colouring import is_dicolouring

        if is_dicolouring(D, beta) is not None:
            continue
        seq = mix_simple(D, k, alpha, beta)
        replay(D, k, seq, beta)
