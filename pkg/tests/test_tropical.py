import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cluster_nz.cluster import mutation_sequence, validate_exchange_matrix
from cluster_nz.errors import (
    IndexOutOfRange,
    InvariantViolation,
    NotReddening,
    NotSignedPermutation,
    NotSkewSymmetric,
    SignIncoherent,
    ZeroVector,
)
from cluster_nz.linalg import det_int
from cluster_nz.tropical import (
    _negated_permutation,
    c_matrix_run,
    f_matrix,
    is_maximal_green,
    is_reddening,
    normalize_reddening,
    parse_signs,
    permute_columns,
    reddening_search,
    sign_of_cvector,
    tropical_mutate,
)

from conftest import A2_B, MARKOV_B
from gen import random_gamma

I2 = ((1, 0), (0, 1))
MINUS_I2 = ((-1, 0), (0, -1))


def test_tropical_mutate_a2():
    b = validate_exchange_matrix(A2_B)
    c1 = tropical_mutate(I2, b, 1)
    assert c1 == ((-1, 0), (0, 1))
    b1 = validate_exchange_matrix([[0, 1], [-1, 0]])
    assert tropical_mutate(c1, b1, 2) == MINUS_I2
    assert tropical_mutate(tropical_mutate(I2, b, 1), validate_exchange_matrix([[0, 1], [-1, 0]]), 1) == I2
    with pytest.raises(IndexOutOfRange):
        tropical_mutate(I2, b, 0)


def test_sign_of_cvector():
    assert sign_of_cvector((0, 1, 2)) == "+"
    assert sign_of_cvector((-1, 0)) == "-"
    with pytest.raises(SignIncoherent):
        sign_of_cvector((1, -1))
    with pytest.raises(ZeroVector):
        sign_of_cvector((0, 0))


def test_parse_signs():
    assert parse_signs("+-0") == ("+", "-", "0")
    assert parse_signs("+, -") == ("+", "-")
    assert parse_signs([1, -1, 0]) == ("+", "-", "0")


def test_f_matrix():
    b = validate_exchange_matrix(A2_B)
    assert f_matrix(b, 1, "+") == ((-1, 0), (0, 1))
    assert f_matrix(b, 1, "-") == ((-1, 1), (0, 1))
    m = validate_exchange_matrix(MARKOV_B)
    assert f_matrix(m, 2, "0") == ((1, 0, 0), (0, -1, 0), (0, 0, 1))


def test_c_matrix_a2():
    trace = c_matrix_run(mutation_sequence(A2_B, [1, 2]))
    assert trace.final == MINUS_I2
    assert trace.eps_trop == ("+", "+")
    assert trace.C[0] == I2


def test_c_matrix_empty():
    trace = c_matrix_run(mutation_sequence(A2_B, []))
    assert trace.C == (I2,)
    assert not is_reddening(mutation_sequence(A2_B, []))


def test_figure_eight_trace(figure_eight):
    trace = c_matrix_run(figure_eight)
    assert trace.eps_trop == ("+", "+")
    assert len(trace.C) == 3


def test_reddening_flags(a2, a2_prime):
    assert is_reddening(a2) and is_maximal_green(a2)
    assert normalize_reddening(a2) == a2
    assert c_matrix_run(a2_prime).final == MINUS_I2
    assert is_maximal_green(a2_prime)


def test_normalize_reddening():
    g = mutation_sequence(A2_B, [2, 1, 2])
    assert c_matrix_run(g).final != MINUS_I2
    fixed = normalize_reddening(g)
    assert fixed.sigma[-1] == (2, 1)
    assert c_matrix_run(fixed).final == MINUS_I2
    with pytest.raises(NotReddening):
        normalize_reddening(mutation_sequence(A2_B, [2, 1]))
    with pytest.raises(NotSignedPermutation):
        _negated_permutation(((-1, -1), (0, -1)))


def test_reddening_needs_skew_symmetric():
    with pytest.raises(NotSkewSymmetric):
        is_reddening(mutation_sequence([[0, 2], [-1, 0]], [1, 2]))


def test_search_a2():
    res = reddening_search(A2_B, 2)
    assert res.found is not None and res.found.m == (1, 2)
    assert is_maximal_green(res.found)


def test_search_torus_exhausts():
    res = reddening_search(MARKOV_B, 8)
    assert res.found is None
    assert res.certificate["balanced"]
    assert res.certificate["out_degrees"] == res.certificate["in_degrees"] == [2]


@pytest.mark.slow
def test_search_torus_depth_12():
    assert reddening_search(MARKOV_B, 12).found is None


def test_green_only_search():
    res = reddening_search([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], 6, green_only=True)
    assert res.found is not None and is_maximal_green(res.found)


# properties -----------------------------------------------------------


def test_engine_agreement_500():
    rng = random.Random(3)
    for _ in range(500):
        gamma = random_gamma(rng)
        c_matrix_run(gamma, check=True)  # raises on disagreement


def test_engine_disagreement_is_reported(monkeypatch):
    import cluster_nz.tropical as trop

    monkeypatch.setattr(trop, "permute_columns", lambda c, s: tuple(tuple(-x for x in r) for r in c))
    with pytest.raises(InvariantViolation):
        trop.c_matrix_run(mutation_sequence(A2_B, [1, 2]))


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_c_matrices_unimodular(rng):
    for c in c_matrix_run(random_gamma(rng)).C:
        assert abs(det_int(c)) == 1


def test_permute_columns():
    c = ((1, 2, 3),)
    assert permute_columns(c, (2, 3, 1)) == ((3, 1, 2),)
