import itertools
import random

import pytest

from cluster_nz.cluster import mutation_sequence
from cluster_nz.errors import EmptySequence, LengthMismatch, NotFullyMutated, NotNilpotent
from cluster_nz.linalg import det_int, identity, sub
from cluster_nz.network import (
    alpha_matrix,
    build_network,
    check_symplectic,
    fully_mutated_conditions,
    is_fully_mutated,
    nz_from_x,
    nz_matrices,
    signed_nz,
    to_dot,
    x_matrix,
)

from conftest import A2_B, MARKOV_B
from gen import random_loop, random_sequence


def _row_permutation(pairs_ours, pairs_theirs):
    """A single row permutation carrying every matrix in the first tuple to the second, or None."""
    rows = len(pairs_ours[0])
    for p in itertools.permutations(range(rows)):
        if all(tuple(a[p[r]] for r in range(rows)) == b for a, b in zip(pairs_ours, pairs_theirs)):
            return p
    return None


def test_a2_network(a2):
    net = build_network(a2)
    assert net.N0 == ((2, 0), (0, 2))
    assert net.Nplus == ((0, 0), (0, 0))
    assert net.Nminus == ((0, 1), (1, 0))
    nz = nz_matrices(net)
    assert nz.Aplus == ((2, 0), (0, 2))
    assert nz.Aminus == ((2, -1), (-1, 2))


def test_figure_eight_network(figure_eight):
    net = build_network(figure_eight)
    assert net.N0 == ((1, 1), (1, 1))
    assert net.Nplus == ((2, 2), (0, 0))
    assert net.Nminus == ((0, 0), (2, 2))
    nz = nz_matrices(net)
    assert nz.Aplus == ((-1, -1), (1, 1))
    assert nz.Aminus == ((1, 1), (-1, -1))


def test_gamma3_network(gamma3):
    nz = nz_matrices(gamma3)
    aplus = ((-1, -1, 0), (0, -1, -1), (-1, 0, -1))
    aminus = ((1, 1, -2), (-2, 1, 1), (1, -2, 1))
    assert nz.Aplus == aplus and nz.Aminus == aminus
    net = build_network(gamma3)
    assert net.N0 == ((1, 1, 0), (0, 1, 1), (1, 0, 1))


def test_a2_prime_network_matches_up_to_row_order(a2_prime):
    # the displayed matrices list the classes in a cyclically shifted order
    nz = nz_matrices(a2_prime)
    shown_plus = ((1, -1, 1), (1, 1, -1), (-1, 1, 1))
    shown_minus = ((1, 0, 1), (1, 1, 0), (0, 1, 1))
    assert _row_permutation((nz.Aplus, nz.Aminus), (shown_plus, shown_minus)) == (2, 0, 1)


def test_classes_partition(gamma3):
    net = build_network(gamma3)
    members = [v for c in net.classes for v in c.members]
    assert len(members) == len(set(members))
    assert {v for v in members if v[1] < gamma3.T} == {
        (i, t) for i in range(1, 6) for t in range(gamma3.T)
    }


def test_signed_nz(a2):
    assert signed_nz(a2, "++") == ((2, 0), (0, 2))
    assert signed_nz(a2, "00") == ((2, 0), (0, 2))
    assert signed_nz(a2, "+-") == ((2, -1), (0, 2))
    with pytest.raises(LengthMismatch):
        signed_nz(a2, "+")


def test_fully_mutated_examples(a2):
    assert is_fully_mutated(a2)
    assert not is_fully_mutated(mutation_sequence(A2_B, [1, 1]))
    g_alpha = mutation_sequence([[0] * 4 for _ in range(4)], [1, 4, 1], ["(2 3)", "id", "(2 3)"])
    cond = fully_mutated_conditions(g_alpha)
    assert set(cond.values()) == {False}


def test_empty_sequence():
    with pytest.raises(EmptySequence):
        build_network(mutation_sequence(A2_B, []))


def test_x_matrix_not_nilpotent():
    with pytest.raises(NotNilpotent):
        x_matrix(mutation_sequence(A2_B, [1, 1]), "++")


def test_x_restriction_and_det(a2, a2_prime, figure_eight, gamma3):
    for g in (a2, a2_prime, figure_eight, gamma3):
        assert det_int(sub(identity(g.n * g.T), alpha_matrix(g))) == 1
        for eps in itertools.product("+-0", repeat=g.T):
            x = x_matrix(g, eps)
            a = signed_nz(g, eps)
            assert nz_from_x(g, x) == a
            assert det_int(x) == det_int(a)


def test_symplectic_examples(a2, figure_eight):
    assert check_symplectic(a2)
    assert check_symplectic(figure_eight)
    with pytest.raises(NotFullyMutated):
        check_symplectic(mutation_sequence(A2_B, [1, 1]))


def test_symplectic_random_loops():
    rng = random.Random(7)
    for _ in range(100):
        assert check_symplectic(random_loop(rng))


def test_n0_columns_and_adjacency_crosscheck():
    rng = random.Random(2)
    for _ in range(150):
        g = random_sequence(rng, max_n=5, max_t=8)
        net = build_network(g, check=True)  # asserts the two adjacency routes agree
        assert all(sum(col) == 2 for col in zip(*net.N0))


def test_torus_column_sums():
    rng = random.Random(4)
    seen = 0
    while seen < 20:
        T = rng.randint(2, 6)
        g = mutation_sequence(MARKOV_B, [rng.randint(1, 3) for _ in range(T)],
                              [tuple(rng.sample([1, 2, 3], 3)) for _ in range(T)])
        if not is_fully_mutated(g):
            continue
        seen += 1
        net = build_network(g)
        assert all(sum(c) == 2 for c in zip(*net.Nplus))
        assert all(sum(c) == 2 for c in zip(*net.Nminus))


def test_dot_export(a2):
    dot = to_dot(build_network(a2))
    assert dot.startswith("digraph")
    assert "style=dashed" in dot
