import random

import pytest

from redicolouring.colouring import Colouring, is_dicolouring
from redicolouring.degrees import degeneracy_ordering
from redicolouring.digraph import Digraph, Graph, bidirect, underlying_graph
from redicolouring.dwidth import (
    DDecomposition,
    coherent_colouring,
    dwidth_bruteforce,
    dwidth_sequence,
    equivalence_classes,
    is_coherent,
    make_coherent,
    make_valid,
    min_degree_generator,
    remove_colour,
    rename_coherent,
    validate,
)
from redicolouring.errors import CapExceededError, PreconditionError
from redicolouring.oracle import shortest_sequence, validate_sequence

from helpers import (
    all_dicolourings,
    complete_bidirected,
    directed_cycle,
    random_digraph,
    random_graph,
    treewidth_bruteforce,
)


def c3_decomposition():
    return DDecomposition(
        Graph(2, [(0, 1)]), (frozenset({0, 1}), frozenset({1, 2}))
    )


def pick_dicolouring(D, k, rng):
    cols = all_dicolourings(D, k)
    assert cols, "no dicolouring at this palette"
    return Colouring(rng.choice(cols), k)


def test_decomposition_shape_is_checked():
    with pytest.raises(PreconditionError, match="bags"):
        DDecomposition(Graph(2, [(0, 1)]), (frozenset({0}),))
    with pytest.raises(PreconditionError, match="tree"):
        DDecomposition(Graph(2, []), (frozenset({0}), frozenset({1})))
    with pytest.raises(PreconditionError, match="empty"):
        DDecomposition(Graph(1, []), (frozenset(),))


def test_single_bag_always_passes_validation():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(1, 6)
        D = random_digraph(n, 0.5, rng)
        dec = DDecomposition(Graph(1, []), (frozenset(range(n)),))
        assert dec.width == n - 1
        report = validate(D, dec)
        assert report.ok and report.level == "full"


def test_c3_two_bag_decomposition():
    D = directed_cycle(3)
    dec = c3_decomposition()
    assert dec.width == 1
    assert dec.is_valid and dec.is_full and dec.is_reduced
    report = validate(D, dec)
    assert report.ok
    assert report.sets_checked == 4
    eq = equivalence_classes(D, dec)
    assert eq.classes == ((0, 2), (1,))
    assert coherent_colouring(D, dec).colours == (1, 2, 1)


def test_digon_in_separate_bags_is_flagged():
    D = Digraph(2, [(0, 1), (1, 0)])
    split = DDecomposition(Graph(2, [(0, 1)]), (frozenset({0}), frozenset({1})))
    report = validate(D, split)
    assert not report.ok
    assert (0, 1) in report.violations
    shared = DDecomposition(Graph(1, []), (frozenset({0, 1}),))
    assert validate(D, shared).ok


def test_validate_partial_level_and_caps():
    D = directed_cycle(15)
    bags = tuple(frozenset({v, (v + 1) % 15}) for v in range(14))
    dec = DDecomposition(Graph(14, [(i, i + 1) for i in range(13)]), bags)
    with pytest.raises(CapExceededError):
        validate(D, dec, level="full")
    report = validate(D, dec, level="partial")
    assert report.level == "partial"
    # the 15-cycle itself is longer than the partial cycle cap, so the
    # split of its vertex set across a path of bags goes unnoticed
    assert report.ok
    with pytest.raises(PreconditionError, match="level"):
        validate(D, dec, level="exhaustive")


def test_make_valid_returns_valid_input_unchanged():
    D = directed_cycle(3)
    dec = c3_decomposition()
    assert make_valid(D, dec) is dec


def test_make_valid_contracts_equal_bags():
    D = directed_cycle(3)
    dec = DDecomposition(
        Graph(2, [(0, 1)]), (frozenset({0, 1, 2}), frozenset({0, 1, 2}))
    )
    fixed = make_valid(D, dec)
    assert fixed.tree.n == 1
    assert fixed.bags == (frozenset({0, 1, 2}),)


def test_make_valid_subdivides_wide_edges():
    D = Digraph(4, [(0, 1), (2, 3)])
    dec = DDecomposition(
        Graph(2, [(0, 1)]), (frozenset({0, 1}), frozenset({2, 3}))
    )
    fixed = make_valid(D, dec)
    assert fixed.is_valid
    assert fixed.width == dec.width == 1
    assert fixed.tree.n == 3
    assert validate(D, fixed).ok


def test_make_valid_random_expansions():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(2, 6)
        D = random_digraph(n, 0.5, rng)
        width, dec = dwidth_bruteforce(D)
        adj = {t: set(dec.tree.neighbours(t)) for t in range(dec.tree.n)}
        bags = dict(enumerate(dec.bags))
        for _ in range(rng.randint(1, 5)):
            ids = sorted(bags)
            t = rng.choice(ids)
            mid = max(ids) + 1
            if rng.random() < 0.5 and adj[t]:
                u = rng.choice(sorted(adj[t]))
                adj[t].remove(u)
                adj[u].remove(t)
                adj[mid] = {t, u}
                adj[t].add(mid)
                adj[u].add(mid)
            else:
                adj[mid] = {t}
                adj[t].add(mid)
            bags[mid] = bags[t]
        order = sorted(bags)
        index = {a: i for i, a in enumerate(order)}
        edges = [(index[a], index[b]) for a in order for b in adj[a] if a < b]
        messy = DDecomposition(
            Graph(len(order), edges), tuple(bags[a] for a in order)
        )
        assert validate(D, messy).ok
        fixed = make_valid(D, messy)
        assert fixed.is_valid
        assert fixed.width == width
        assert validate(D, fixed).ok


def test_classes_on_bidirected_path():
    D = bidirect(Graph(3, [(0, 1), (1, 2)]))
    dec = c3_decomposition()
    eq = equivalence_classes(D, dec)
    assert eq.classes == ((0, 2), (1,))
    assert eq.supports[1] == frozenset({0, 1})
    alpha = coherent_colouring(D, dec, k=3)
    assert alpha.colours == (1, 2, 1)
    assert is_coherent(D, dec, alpha)
    assert not is_coherent(D, dec, Colouring((1, 2, 3), 3))


def test_classes_need_a_valid_decomposition():
    D = directed_cycle(3)
    dec = DDecomposition(
        Graph(2, [(0, 1)]), (frozenset({0, 1, 2}), frozenset({2,}))
    )
    with pytest.raises(PreconditionError, match="one-in-one-out"):
        equivalence_classes(D, dec)


def test_rename_equal_endpoints_is_empty():
    D = directed_cycle(3)
    dec = c3_decomposition()
    alpha = Colouring((1, 2, 1), 3)
    assert rename_coherent(D, dec, alpha, alpha).moves == ()


def test_rename_swaps_class_colours_in_five_moves():
    D = directed_cycle(3)
    dec = c3_decomposition()
    seq = rename_coherent(D, dec, Colouring((1, 2, 1), 3), Colouring((2, 1, 2), 3))
    assert seq.moves == ((0, 3), (2, 3), (1, 1), (0, 2), (2, 2))
    final, _ = validate_sequence(D, 3, seq)
    assert final.colours == (2, 1, 2)


def test_rename_rejects_incoherent_endpoints():
    D = directed_cycle(3)
    dec = c3_decomposition()
    with pytest.raises(PreconditionError, match="not coherent"):
        rename_coherent(D, dec, Colouring((1, 2, 3), 3), Colouring((1, 2, 1), 3))


def test_rename_rejects_shared_class_colours():
    D = Digraph(2, [(0, 1)])
    dec = DDecomposition(Graph(1, []), (frozenset({0, 1}),))
    alpha = Colouring((1, 1), 3)
    with pytest.raises(PreconditionError, match="repeats a colour"):
        rename_coherent(D, dec, alpha, Colouring((1, 2), 3))


def test_rename_random_round_trips():
    rng = random.Random(41)
    for _ in range(20):
        n = rng.randint(2, 6)
        D = random_digraph(n, 0.5, rng)
        width, dec = dwidth_bruteforce(D)
        k = width + 2 + rng.randint(0, 1)
        base = coherent_colouring(D, dec, k=k)
        free = [c for c in range(1, k + 1)]
        rng.shuffle(free)
        relabel = {i + 1: free[i] for i in range(width + 1)}
        beta = Colouring(tuple(relabel[c] for c in base.colours), k)
        seq = rename_coherent(D, dec, base, beta)
        assert len(seq.moves) <= 2 * n
        final, _ = validate_sequence(D, k, seq)
        assert final.colours == beta.colours


def test_remove_colour_pinned_triangle():
    D = directed_cycle(3)
    dec = c3_decomposition()
    seq, beta = remove_colour(D, dec, Colouring((1, 2, 3), 3), 3)
    assert seq.moves == ((2, 1),)
    assert beta.colours == (1, 2, 1)


def test_remove_colour_requires_free_root_bag():
    D = directed_cycle(3)
    dec = c3_decomposition()
    with pytest.raises(PreconditionError, match="root bag"):
        remove_colour(D, dec, Colouring((1, 2, 3), 3), 2)


def test_remove_colour_absent_colour_is_a_no_op():
    D = directed_cycle(3)
    dec = c3_decomposition()
    seq, beta = remove_colour(D, dec, Colouring((1, 2, 1), 3), 3)
    assert seq.moves == ()
    assert beta.colours == (1, 2, 1)


def test_remove_colour_flushes_acyclic_layers_once_each():
    D = Digraph(3, [(0, 1), (1, 2)])
    dec = DDecomposition(
        Graph(3, [(0, 1), (1, 2)]),
        (frozenset({0}), frozenset({1}), frozenset({2})),
    )
    seq, beta = remove_colour(D, dec, Colouring((2, 1, 1), 2), 1)
    assert beta.colours == (2, 2, 2)
    counts = [0] * 3
    for v, _ in seq.moves:
        counts[v] += 1
    assert max(counts) == 1


def test_remove_colour_random_roots():
    rng = random.Random(57)
    done = 0
    while done < 25:
        n = rng.randint(2, 6)
        D = random_digraph(n, 0.5, rng)
        width, dec = dwidth_bruteforce(D)
        if dec.tree.n == 1:
            continue
        k = width + 2 + rng.randint(0, 1)
        alpha = coherent_colouring(D, dec, k=k)
        root = rng.randrange(dec.tree.n)
        free = [
            c for c in range(1, k + 1)
            if all(alpha[v] != c for v in dec.bags[root])
        ]
        seq, beta = remove_colour(D, dec, alpha, rng.choice(free), root=root)
        final, counts = validate_sequence(D, k, seq)
        assert final.colours == beta.colours
        assert all(c <= 1 for c in counts.values())
        assert all(beta[v] == alpha[v] for v in dec.bags[root])
        done += 1


def test_make_coherent_pinned_triangle():
    D = directed_cycle(3)
    dec = c3_decomposition()
    seq, coh = make_coherent(D, dec, Colouring((1, 2, 1), 3))
    assert coh.colours == (3, 1, 3)
    assert len(seq.moves) == 5 <= 9
    assert is_coherent(D, dec, coh)


def test_make_coherent_single_bag_reaches_a_rainbow():
    rng = random.Random(73)
    for _ in range(12):
        n = rng.randint(1, 5)
        D = random_digraph(n, 0.5, rng)
        dec = DDecomposition(Graph(1, []), (frozenset(range(n)),))
        k = n + 1
        alpha = pick_dicolouring(D, k, rng)
        seq, coh = make_coherent(D, dec, alpha)
        assert len(seq.moves) <= n
        assert len(set(coh.colours)) == n
        final, _ = validate_sequence(D, k, seq)
        assert final.colours == coh.colours


def test_make_coherent_random_within_quadratic_bound():
    rng = random.Random(91)
    done = 0
    while done < 25:
        n = rng.randint(2, 6)
        D = random_digraph(n, 0.45, rng)
        width, dec = dwidth_bruteforce(D)
        k = width + 2
        cols = all_dicolourings(D, k)
        if not cols:
            continue
        alpha = Colouring(rng.choice(cols), k)
        seq, coh = make_coherent(D, dec, alpha)
        assert len(seq.moves) <= n * n
        assert is_coherent(D, dec, coh)
        final, _ = validate_sequence(D, k, seq)
        assert final.colours == coh.colours
        done += 1


def test_dwidth_sequence_equal_endpoints():
    D = directed_cycle(3)
    alpha = Colouring((1, 2, 1), 3)
    assert dwidth_sequence(D, c3_decomposition(), alpha, alpha).moves == ()


def test_dwidth_sequence_triangle_within_bound():
    D = directed_cycle(3)
    seq = dwidth_sequence(
        D, c3_decomposition(), Colouring((1, 2, 1), 3), Colouring((2, 3, 2), 3)
    )
    assert len(seq.moves) <= 2 * (9 + 3)
    final, _ = validate_sequence(D, 3, seq)
    assert final.colours == (2, 3, 2)


def test_dwidth_sequence_bidirected_path():
    D = bidirect(Graph(3, [(0, 1), (1, 2)]))
    seq = dwidth_sequence(
        D, c3_decomposition(), Colouring((1, 2, 3), 3), Colouring((3, 1, 3), 3)
    )
    assert len(seq.moves) <= 2 * (9 + 3)
    final, _ = validate_sequence(D, 3, seq)
    assert final.colours == (3, 1, 3)


def test_dwidth_sequence_searches_when_unguided():
    D = directed_cycle(4)
    seq = dwidth_sequence(D, None, Colouring((1, 1, 2, 3), 3), Colouring((2, 3, 2, 1), 3))
    final, _ = validate_sequence(D, 3, seq)
    assert final.colours == (2, 3, 2, 1)


def test_dwidth_sequence_wide_palette_skips_the_search():
    rng = random.Random(5)
    D = random_digraph(9, 0.4, rng)
    k = 10
    alpha = Colouring(tuple(range(1, 10)), k)
    beta = Colouring(tuple((i % 9) + 1 for i in range(1, 10)), k)
    assert is_dicolouring(D, alpha) is None
    assert is_dicolouring(D, beta) is None
    seq = dwidth_sequence(D, None, alpha, beta)
    final, _ = validate_sequence(D, k, seq)
    assert final.colours == beta.colours
    assert len(seq.moves) <= 2 * (81 + 9)


def test_dwidth_sequence_refuses_blind_large_instances():
    D = directed_cycle(9)
    alpha = Colouring((1, 2) * 4 + (3,), 3)
    beta = Colouring((2, 1) * 4 + (3,), 3)
    with pytest.raises(PreconditionError, match="too large"):
        dwidth_sequence(D, None, alpha, beta)


def test_dwidth_sequence_needs_width_plus_two_colours():
    D = complete_bidirected(3)
    dec = DDecomposition(Graph(1, []), (frozenset({0, 1, 2}),))
    with pytest.raises(PreconditionError, match="palette"):
        dwidth_sequence(D, dec, Colouring((1, 2, 3), 3), Colouring((3, 2, 1), 3))


def test_dwidth_sequence_walks_are_never_shorter_than_the_oracle():
    rng = random.Random(113)
    done = 0
    while done < 10:
        n = rng.randint(2, 4)
        D = random_digraph(n, 0.5, rng)
        width, dec = dwidth_bruteforce(D)
        k = width + 2
        alpha = pick_dicolouring(D, k, rng)
        beta = pick_dicolouring(D, k, rng)
        seq = dwidth_sequence(D, dec, alpha, beta)
        opt = shortest_sequence(D, k, alpha, beta)
        assert opt is not None
        assert len(opt.moves) <= len(seq.moves)
        done += 1


def test_bruteforce_pinned_widths():
    assert dwidth_bruteforce(Digraph(2, [(0, 1), (1, 0)]))[0] == 1
    width, dec = dwidth_bruteforce(directed_cycle(3))
    assert width == 1
    assert dec.bags == (frozenset({0, 1}), frozenset({1, 2}))
    assert dwidth_bruteforce(complete_bidirected(3))[0] == 2


def test_bruteforce_acyclic_digraphs_have_width_zero():
    D = Digraph(4, [(0, 1), (0, 2), (2, 3)])
    width, dec = dwidth_bruteforce(D)
    assert width == 0
    assert all(len(bag) == 1 for bag in dec.bags)
    assert validate(D, dec).ok


def test_bruteforce_cap():
    with pytest.raises(CapExceededError):
        dwidth_bruteforce(directed_cycle(8))


def test_bruteforce_matches_treewidth_on_bidirected_graphs():
    rng = random.Random(131)
    for _ in range(15):
        n = rng.randint(2, 6)
        G = random_graph(n, 0.5, rng)
        width, dec = dwidth_bruteforce(bidirect(G))
        assert width == treewidth_bruteforce(G)
        assert validate(bidirect(G), dec).ok


def test_width_is_at_least_cycle_degeneracy():
    rng = random.Random(151)
    for _ in range(15):
        n = rng.randint(2, 6)
        D = random_digraph(n, 0.5, rng)
        width, _ = dwidth_bruteforce(D)
        assert width >= degeneracy_ordering(D, "c").degeneracy


def test_degree_generator_small_demands():
    for d in (1, 2):
        D = min_degree_generator(d)
        assert all(D.in_degree(v) >= d for v in range(D.n))
        assert all(D.out_degree(v) >= d for v in range(D.n))
        assert degeneracy_ordering(D, "min").degeneracy >= d
    with pytest.raises(PreconditionError):
        min_degree_generator(0)
    with pytest.raises(PreconditionError):
        min_degree_generator(4)
