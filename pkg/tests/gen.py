"""Sequence generators shared by the test-suite."""

from __future__ import annotations

import itertools
import random

from cluster_nz.cluster import (
    MutationSequence,
    identity_permutation,
    matrix_mutate,
    mutation_sequence,
    permute_matrix,
    validate_exchange_matrix,
)
from cluster_nz.network import is_fully_mutated

MARKOV = ((0, 2, -2), (-2, 0, 2), (2, -2, 0))


def grid_matrices(n: int, bound: int = 2):
    """Exchange matrices of size n with entries in [-bound, bound].

    n = 3: every skew-symmetric matrix. n = 2: also the skew-symmetrizable
    ones [[0, b], [c, 0]] with b, c of opposite signs.
    """
    if n == 1:
        yield validate_exchange_matrix([[0]])
        return
    if n == 2:
        vals = range(-bound, bound + 1)
        for b, c in itertools.product(vals, vals):
            if (b == 0) == (c == 0) and b * c <= 0:
                yield validate_exchange_matrix([[0, b], [c, 0]])
        return
    vals = range(-bound, bound + 1)
    for x, y, z in itertools.product(vals, repeat=3):
        yield validate_exchange_matrix([[0, x, y], [-x, 0, z], [-y, -z, 0]])


def _canonical(b) -> tuple:
    """Smallest entry tuple over relabellings of b and of -b."""
    n = b.n
    neg = validate_exchange_matrix([[-x for x in r] for r in b.entries])
    return min(
        permute_matrix(c, p).entries for c in (b, neg) for p in itertools.permutations(range(1, n + 1))
    )


def grid_sequences(max_n: int = 3, max_t: int = 4, bound: int = 2):
    """Fully mutated sequences on the fixed grid.

    One matrix per class under relabelling and B -> -B (both identities are
    equivariant under these), words m without immediate repeats,
    sigma_t = id for t < T and sigma_T ranging over S_n.
    """
    for n in range(1, max_n + 1):
        perms = list(itertools.permutations(range(1, n + 1)))
        ident = identity_permutation(n)
        seen = set()
        for b in grid_matrices(n, bound):
            key = _canonical(b)
            if key in seen:
                continue
            seen.add(key)
            for t in range(1, max_t + 1):
                for m in itertools.product(range(1, n + 1), repeat=t):
                    if any(x == y for x, y in zip(m, m[1:])):
                        continue
                    for last in perms:
                        gamma = MutationSequence(b, m, (ident,) * (t - 1) + (last,))
                        if is_fully_mutated(gamma):
                            yield gamma


def random_skew(rng: random.Random, n: int, bound: int = 2):
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            b[i][j], b[j][i] = v, -v
    return b


def random_symmetrizable(rng: random.Random, n: int, bound: int = 2):
    """D B with D = diag(d) and B skew-symmetric gives a skew-symmetrizable matrix (d^-1 symmetrizer)."""
    d = [rng.choice((1, 1, 2)) for _ in range(n)]
    s = random_skew(rng, n, bound)
    return [[d[i] * s[i][j] for j in range(n)] for i in range(n)]


def random_permutation(rng: random.Random, n: int):
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def random_sequence(rng: random.Random, max_n: int = 6, max_t: int = 10, tries: int = 10000) -> MutationSequence:
    """A random fully mutated sequence with n <= max_n and T <= max_t."""
    for _ in range(tries):
        n = rng.randint(1, max_n)
        t = rng.randint(n, max(n, max_t))
        maker = random_symmetrizable if rng.random() < 0.3 else random_skew
        b = validate_exchange_matrix(maker(rng, n))
        m = tuple(rng.randint(1, n) for _ in range(t))
        sigma = tuple(
            random_permutation(rng, n) if rng.random() < 0.3 else identity_permutation(n) for _ in range(t)
        )
        gamma = MutationSequence(b, m, sigma)
        if is_fully_mutated(gamma):
            return gamma
    raise RuntimeError("no fully mutated sequence found")


def _isomorphism(b, target):
    n = b.n
    for p in itertools.permutations(range(1, n + 1)):
        if permute_matrix(b, p).entries == target.entries:
            return p
    return None


def _loop_seed_matrices(n: int):
    """Base matrices with finite mutation classes, so random walks come back."""
    out = []
    if n == 3:
        out.append(MARKOV)
    path = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        sgn = 1 if i % 2 == 0 else -1
        path[i][i + 1], path[i + 1][i] = sgn, -sgn
    out.append(tuple(tuple(r) for r in path))
    if n >= 4:
        d = [row[:] for row in path]
        d[n - 2][n - 1] = d[n - 1][n - 2] = 0
        d[n - 3][n - 1], d[n - 1][n - 3] = -d[n - 3][n - 2], d[n - 3][n - 2]
        out.append(tuple(tuple(r) for r in d))
    return [validate_exchange_matrix(b) for b in out]


def random_loop(rng: random.Random, max_n: int = 5, max_t: int = 10, tries: int = 10000) -> MutationSequence:
    """Random walk in a finite mutation class, closed by a relabelling once it is back at B(0)."""
    for _ in range(tries):
        n = rng.randint(2, max_n)
        b0 = rng.choice(_loop_seed_matrices(n))
        cur = b0
        m, sigma = [], []
        for _step in range(max_t):
            k = rng.randint(1, n)
            p = random_permutation(rng, n) if rng.random() < 0.2 else identity_permutation(n)
            nxt = matrix_mutate(cur, k)
            close = _isomorphism(nxt, b0)
            if close is not None and len(m) + 1 >= n and rng.random() < 0.5:
                gamma = MutationSequence(b0, tuple(m) + (k,), tuple(sigma) + (close,))
                if is_fully_mutated(gamma):
                    return gamma
            m.append(k)
            sigma.append(p)
            cur = permute_matrix(nxt, p)
    raise RuntimeError("no fully mutated loop found")


def random_gamma(rng, n_max=5, t_max=12):
    n = rng.randint(1, n_max)
    maker = random_symmetrizable if rng.random() < 0.3 else random_skew
    b = validate_exchange_matrix(maker(rng, n))
    T = rng.randint(0, t_max)
    return mutation_sequence(
        b, [rng.randint(1, n) for _ in range(T)], [random_permutation(rng, n) for _ in range(T)]
    )
