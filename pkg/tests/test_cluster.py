import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cluster_nz.cluster import (
    Quiver,
    apply_permutation,
    cluster_transformation,
    compose,
    initial_seed,
    inverse_permutation,
    is_mutation_loop,
    matrix_mutate,
    matrix_trajectory,
    mutation_sequence,
    parse_cycles,
    permute_matrix,
    quiver_convert,
    run_sequence,
    validate_exchange_matrix,
    yseed_mutate,
)
from cluster_nz.errors import (
    ArityMismatch,
    IllegalQuiver,
    IndexOutOfRange,
    NotSkewSymmetric,
    NotSkewSymmetrizable,
)
from cluster_nz.ratfun import RatFun, eq_exact

from conftest import A2_B, LOOP5_B, P5, loop5
from gen import random_permutation, random_skew, random_symmetrizable

y1, y2 = RatFun.variables(2)


def R(text, n):
    return RatFun.parse(text, n)


def test_symmetrizer():
    assert validate_exchange_matrix(A2_B).d == (1, 1)
    assert validate_exchange_matrix([[0, 2], [-1, 0]]).d == (1, 2)
    with pytest.raises(NotSkewSymmetrizable):
        validate_exchange_matrix([[0, 1], [1, 0]])
    with pytest.raises(NotSkewSymmetrizable):
        validate_exchange_matrix([[1, 0], [0, 0]])


def test_symmetrizer_cycle_inconsistent():
    # ratios around the triangle multiply to 4, not 1
    with pytest.raises(NotSkewSymmetrizable):
        validate_exchange_matrix([[0, 1, -2], [-2, 0, 1], [1, -2, 0]])


def test_free_components_get_one():
    assert validate_exchange_matrix([[0, 0], [0, 0]]).d == (1, 1)


def test_matrix_mutate_a2():
    b = validate_exchange_matrix(A2_B)
    assert matrix_mutate(b, 1).entries == ((0, 1), (-1, 0))
    with pytest.raises(IndexOutOfRange):
        matrix_mutate(b, 3)


def test_loop5_single_step_returns():
    b = validate_exchange_matrix(LOOP5_B)
    p = parse_cycles(P5, 5)
    assert p == (5, 1, 2, 3, 4)
    assert permute_matrix(matrix_mutate(b, 1), p).entries == b.entries


def test_yseed_mutate_a2():
    seed = initial_seed(validate_exchange_matrix(A2_B))
    s1 = yseed_mutate(seed, 1)
    assert eq_exact(s1.Y[0], 1 / y1) and eq_exact(s1.Y[1], y2 * (1 + y1))
    s2 = yseed_mutate(s1, 2)
    assert eq_exact(s2.Y[0], (1 + y2 + y1 * y2) / y1)
    assert eq_exact(s2.Y[1], 1 / (y2 * (1 + y1)))


def test_permutation_action():
    seed = initial_seed(validate_exchange_matrix(A2_B))
    assert apply_permutation(seed, (1, 2)).Y == seed.Y
    swapped = apply_permutation(seed, parse_cycles("(1 2)", 2))
    assert swapped.Y[0].identical(y2) and swapped.Y[1].identical(y1)
    with pytest.raises(ArityMismatch):
        apply_permutation(seed, (1, 2, 3))


def test_cycle_notation():
    assert parse_cycles("(3 2 1)", 3) == (3, 1, 2)
    assert parse_cycles("id", 3) == (1, 2, 3)
    assert parse_cycles("(1 2)(3 4)", 4) == (2, 1, 4, 3)
    s = (2, 3, 1)
    assert compose(s, inverse_permutation(s)) == (1, 2, 3)


def test_run_a2():
    traj = run_sequence(mutation_sequence(A2_B, [1, 2]))
    assert traj.B[2].entries == traj.B[0].entries
    assert len(traj.seeds) == 3


def test_run_empty_sequence():
    gamma = mutation_sequence(A2_B, [])
    traj = run_sequence(gamma)
    assert len(traj.B) == 1
    assert all(a.identical(b) for a, b in zip(cluster_transformation(gamma), RatFun.variables(2)))


def test_matrices_only():
    traj = run_sequence(loop5(40), symbolic=False)
    assert traj.Y is None and traj.matrices_only
    with pytest.raises(ValueError):
        traj.seeds


def test_loop5_transformation():
    mu = cluster_transformation(loop5(1))
    expected = [
        R("y2 + y1*y2", 5),
        R("(y1^2*y3)/(y1^2 + 2*y1 + 1)", 5),
        R("(y1^2*y4)/(y1^2 + 2*y1 + 1)", 5),
        R("y5 + y1*y5", 5),
        R("(1)/(y1)", 5),
    ]
    assert all(eq_exact(a, b) for a, b in zip(mu, expected))


def test_loop5_composition():
    mu1 = cluster_transformation(loop5(1))
    mu3 = cluster_transformation(loop5(3))
    once = mu1
    for _ in range(2):
        once = tuple(f.evaluate(list(once)) for f in mu1)
    assert all(eq_exact(a, b) for a, b in zip(mu3, once))


def test_same_transformation_for_a2_pair():
    g = mutation_sequence(A2_B, [1, 2])
    gp = mutation_sequence(A2_B, [2, 1, 2], [[1, 2], [1, 2], "(1 2)"])
    a, b = cluster_transformation(g), cluster_transformation(gp)
    assert all(eq_exact(x, y) for x, y in zip(a, b))
    assert a[0].identical(R("(1 + y2 + y1*y2)/(y1)", 2))


def test_is_mutation_loop():
    assert is_mutation_loop(mutation_sequence(A2_B, [1, 2]))
    assert all(is_mutation_loop(loop5(t)) for t in (1, 2, 5))
    assert not is_mutation_loop(mutation_sequence(A2_B, [1]))


def test_quiver_convert():
    q = quiver_convert(validate_exchange_matrix([[0, -1], [1, 0]]))
    assert q.arrows == ((2, 1, 1),)
    q5 = quiver_convert(validate_exchange_matrix(LOOP5_B))
    assert set(q5.arrows) == {
        (1, 3, 2), (1, 4, 2), (2, 1, 1), (2, 5, 2), (3, 2, 3), (3, 5, 2), (4, 3, 3), (5, 1, 1), (5, 4, 1)
    }
    assert quiver_convert(q5).entries == tuple(map(tuple, LOOP5_B))
    with pytest.raises(NotSkewSymmetric):
        quiver_convert(validate_exchange_matrix([[0, 2], [-1, 0]]))
    with pytest.raises(IllegalQuiver):
        quiver_convert(Quiver(2, ((1, 1, 1),)))
    with pytest.raises(IllegalQuiver):
        quiver_convert(Quiver(2, ((1, 2, 1), (2, 1, 1))))


# properties -----------------------------------------------------------


def test_mutation_involution_500():
    rng = random.Random(0)
    for _ in range(500):
        n = rng.randint(1, 5)
        b = validate_exchange_matrix(random_skew(rng, n, 3))
        k = rng.randint(1, n)
        seed = initial_seed(b)
        back = yseed_mutate(yseed_mutate(seed, k), k)
        assert back.B.entries == b.entries
        assert all(eq_exact(a, c) for a, c in zip(back.Y, seed.Y))


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_equivariance(rng):
    n = rng.randint(1, 4)
    b = validate_exchange_matrix(random_symmetrizable(rng, n))
    k = rng.randint(1, n)
    s = random_permutation(rng, n)
    seed = initial_seed(b)
    lhs = apply_permutation(yseed_mutate(seed, k), s)
    rhs = yseed_mutate(apply_permutation(seed, s), s[k - 1])
    assert lhs.B.entries == rhs.B.entries
    assert all(eq_exact(a, c) for a, c in zip(lhs.Y, rhs.Y))


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_trajectory_keeps_symmetrizer(rng):
    n = rng.randint(1, 4)
    b = validate_exchange_matrix(random_symmetrizable(rng, n))
    m = [rng.randint(1, n) for _ in range(6)]
    sig = [random_permutation(rng, n) for _ in m]
    gamma = mutation_sequence(b, m, sig)
    d = list(b.d)
    for t, bt in enumerate(matrix_trajectory(gamma)[1:]):
        d = [d[inverse_permutation(sig[t])[i] - 1] for i in range(n)]
        assert bt.d == tuple(d)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_quiver_round_trip(rng):
    b = validate_exchange_matrix(random_skew(rng, rng.randint(1, 5), 3))
    assert quiver_convert(quiver_convert(b)).entries == b.entries
