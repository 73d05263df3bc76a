"""Exchange matrices, Y-seeds, mutations and mutation sequences.

All external indices are 1-based. Permutations are stored in one-line
notation: ``sigma[i-1] == sigma(i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .errors import (
    ArityMismatch,
    IllegalQuiver,
    IndexOutOfRange,
    NotSkewSymmetric,
    NotSkewSymmetrizable,
)
from .ratfun import RatFun, simplify

Permutation = tuple[int, ...]


# ----------------------------------------------------------------------
# exchange matrices


@dataclass(frozen=True)
class ExchangeMatrix:
    entries: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry B_ij with 1-based indices."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def row(self, k: int) -> tuple[int, ...]:
        return self.entries[k - 1]

    @property
    def is_skew_symmetric(self) -> bool:
        return all(x == 1 for x in self.d) or all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.n)
            for j in range(self.n)
        )

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _symmetrizer(b: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(b)
    ratio: list[Fraction | None] = [None] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        component = [root]
        queue = [root]
        while queue:
            i = queue.pop()
            for j in range(n):
                bij, bji = b[i][j], b[j][i]
                if bij == 0 and bji == 0:
                    continue
                if bij == 0 or bji == 0 or (bij > 0) == (bji > 0):
                    raise NotSkewSymmetrizable(
                        f"B[{i + 1}][{j + 1}]={bij} and B[{j + 1}][{i + 1}]={bji} admit no symmetrizer"
                    )
                # d_i B_ij = -d_j B_ji
                want = ratio[i] * Fraction(-bij, bji)
                if ratio[j] is None:
                    ratio[j] = want
                    component.append(j)
                    queue.append(j)
                elif ratio[j] != want:
                    raise NotSkewSymmetrizable("inconsistent symmetrizer along a cycle")
        scale = reduce(lcm, (ratio[k].denominator for k in component), 1)
        ints = [ratio[k] * scale for k in component]
        g = reduce(gcd, (int(x) for x in ints), 0)
        for k, x in zip(component, ints):
            ratio[k] = x / g
    return tuple(int(x) for x in ratio)


def validate_exchange_matrix(entries: Sequence[Sequence[int]]) -> ExchangeMatrix:
    """Check skew-symmetrizability and attach the minimal positive symmetrizer."""
    rows = [list(r) for r in entries]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSkewSymmetrizable("exchange matrix must be square")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise NotSkewSymmetrizable(f"non-integer entry {x!r}")
    for i in range(n):
        if rows[i][i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at {i + 1}")
    d = _symmetrizer(rows)
    return ExchangeMatrix(tuple(tuple(r) for r in rows), d)


def _check_index(k: int, n: int):
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"mutation index {k} outside 1..{n}")


def matrix_mutate(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    _check_index(k, b.n)
    B = b.entries
    n = b.n
    kk = k - 1
    out = []
    for i in range(n):
        bik = B[i][kk]
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-B[i][j])
                continue
            bkj = B[kk][j]
            if bik > 0 and bkj > 0:
                row.append(B[i][j] + bik * bkj)
            elif bik < 0 and bkj < 0:
                row.append(B[i][j] - bik * bkj)
            else:
                row.append(B[i][j])
        out.append(tuple(row))
    return ExchangeMatrix(tuple(out), b.d)


# ----------------------------------------------------------------------
# permutations


def identity_permutation(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def check_permutation(sigma: Sequence[int], n: int) -> Permutation:
    s = tuple(int(x) for x in sigma)
    if len(s) != n:
        raise ArityMismatch(f"permutation of length {len(s)} acting on {n} indices")
    if sorted(s) != list(range(1, n + 1)):
        raise ValueError(f"{list(s)} is not a permutation of 1..{n}")
    return s


def inverse_permutation(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def compose(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(3 2 1)"`` or ``"(1 2)(3 4)"``; ``"id"`` is the identity."""
    perm = list(range(1, n + 1))
    text = text.strip()
    if text in ("", "id", "()"):
        return tuple(perm)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"cannot parse cycle notation {text!r}")
    for cyc in cycles:
        elems = [int(x) for x in cyc.replace(",", " ").split()]
        for x in elems:
            if not 1 <= x <= n:
                raise ValueError(f"cycle element {x} outside 1..{n}")
        for a, b in zip(elems, elems[1:] + elems[:1]):
            perm[a - 1] = b
    return check_permutation(perm, n)


def permute_matrix(b: ExchangeMatrix, sigma: Sequence[int]) -> ExchangeMatrix:
    """sigma(B)_ij = B_{sigma^-1(i), sigma^-1(j)}."""
    sigma = check_permutation(sigma, b.n)
    inv = inverse_permutation(sigma)
    B = b.entries
    entries = tuple(tuple(B[inv[i] - 1][inv[j] - 1] for j in range(b.n)) for i in range(b.n))
    d = tuple(b.d[inv[i] - 1] for i in range(b.n))
    return ExchangeMatrix(entries, d)


def permute_values(y: Sequence, sigma: Sequence[int]) -> tuple:
    """sigma(Y)_i = Y_{sigma^-1(i)}."""
    inv = inverse_permutation(sigma)
    return tuple(y[inv[i] - 1] for i in range(len(y)))


# ----------------------------------------------------------------------
# Y-seeds


@dataclass(frozen=True)
class YSeed:
    B: ExchangeMatrix
    Y: tuple

    def __post_init__(self):
        if len(self.Y) != self.B.n:
            raise ArityMismatch(f"{len(self.Y)} Y-variables for a {self.B.n}x{self.B.n} matrix")


def initial_seed(b: ExchangeMatrix) -> YSeed:
    return YSeed(b, tuple(RatFun.variables(b.n)))


def mutate_values(y: Sequence, b: ExchangeMatrix, k: int) -> tuple:
    """Y-part of the mutation at k over any field (RatFun, Fraction, ModP, complex)."""
    _check_index(k, b.n)
    yk = y[k - 1]
    row = b.row(k)
    plus = minus = None
    out = []
    for i, yi in enumerate(y, start=1):
        if i == k:
            out.append(1 / yk)
            continue
        bki = row[i - 1]
        if bki > 0:
            if plus is None:
                plus = 1 / yk + 1
            out.append(yi * plus ** (-bki))
        elif bki < 0:
            if minus is None:
                minus = yk + 1
            out.append(yi * minus ** (-bki))
        else:
            out.append(yi)
    return tuple(out)


def yseed_mutate(seed: YSeed, k: int) -> YSeed:
    return YSeed(matrix_mutate(seed.B, k), mutate_values(seed.Y, seed.B, k))


def apply_permutation(seed: YSeed, sigma: Sequence[int]) -> YSeed:
    sigma = check_permutation(sigma, seed.B.n)
    return YSeed(permute_matrix(seed.B, sigma), permute_values(seed.Y, sigma))


# ----------------------------------------------------------------------
# mutation sequences


@dataclass(frozen=True)
class MutationSequence:
    B: ExchangeMatrix
    m: tuple[int, ...]
    sigma: tuple[Permutation, ...]

    def __post_init__(self):
        if len(self.m) != len(self.sigma):
            raise ArityMismatch(f"{len(self.m)} mutation indices but {len(self.sigma)} permutations")
        for k in self.m:
            _check_index(k, self.B.n)
        for s in self.sigma:
            check_permutation(s, self.B.n)

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def T(self) -> int:
        return len(self.m)


def mutation_sequence(b, m: Sequence[int], sigma: Sequence[Sequence[int]] | None = None) -> MutationSequence:
    """Convenience constructor; ``sigma=None`` means identity permutations."""
    if not isinstance(b, ExchangeMatrix):
        b = validate_exchange_matrix(b)
    m = tuple(int(k) for k in m)
    if sigma is None:
        sigma = [identity_permutation(b.n)] * len(m)
    sig = tuple(
        parse_cycles(s, b.n) if isinstance(s, str) else check_permutation(s, b.n) for s in sigma
    )
    return MutationSequence(b, m, sig)


@dataclass(frozen=True)
class Trajectory:
    B: tuple[ExchangeMatrix, ...]
    Y: tuple[tuple, ...] | None = None
    matrices_only: bool = False

    @property
    def seeds(self) -> list[YSeed]:
        if self.Y is None:
            raise ValueError("trajectory was computed with matrices only")
        return [YSeed(b, y) for b, y in zip(self.B, self.Y)]


def matrix_trajectory(gamma: MutationSequence) -> tuple[ExchangeMatrix, ...]:
    bs = [gamma.B]
    for k, s in zip(gamma.m, gamma.sigma):
        bs.append(permute_matrix(matrix_mutate(bs[-1], k), s))
    return tuple(bs)


def value_trajectory(gamma: MutationSequence, y0: Sequence, bs=None, reduce=None) -> tuple[tuple, ...]:
    """Y(0..T) starting from the field values ``y0``."""
    bs = bs or matrix_trajectory(gamma)
    ys = [tuple(y0)]
    for t, (k, s) in enumerate(zip(gamma.m, gamma.sigma)):
        nxt = permute_values(mutate_values(ys[-1], bs[t], k), s)
        if reduce is not None:
            nxt = tuple(reduce(v) for v in nxt)
        ys.append(nxt)
    return tuple(ys)


def run_sequence(gamma: MutationSequence, symbolic: bool = True, degree_cap: int = 24) -> Trajectory:
    """Run the Y-seed transitions; with ``symbolic=False`` only B(t) is computed.

    Symbolic Y-variables are passed through :func:`simplify` (full gcd) while
    their degree stays within ``degree_cap``.
    """
    bs = matrix_trajectory(gamma)
    if not symbolic:
        return Trajectory(bs, None, True)
    ys = value_trajectory(
        gamma, RatFun.variables(gamma.n), bs, reduce=lambda v: simplify(v, degree_cap)
    )
    return Trajectory(bs, ys, False)


def cluster_transformation(gamma: MutationSequence) -> tuple[RatFun, ...]:
    return run_sequence(gamma).Y[-1]


def is_mutation_loop(gamma: MutationSequence) -> bool:
    return matrix_trajectory(gamma)[-1].entries == gamma.B.entries


# ----------------------------------------------------------------------
# quivers


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int, int], ...] = field(default=())
    """(i, j, multiplicity) with multiplicity > 0, sorted."""


def quiver_from_matrix(b: ExchangeMatrix | Sequence[Sequence[int]]) -> Quiver:
    entries = b.entries if isinstance(b, ExchangeMatrix) else b
    n = len(entries)
    for i in range(n):
        for j in range(n):
            if entries[i][j] != -entries[j][i]:
                raise NotSkewSymmetric(f"B[{i + 1}][{j + 1}] != -B[{j + 1}][{i + 1}]")
    arrows = tuple(
        (i + 1, j + 1, entries[i][j]) for i in range(n) for j in range(n) if entries[i][j] > 0
    )
    return Quiver(n, arrows)


def matrix_from_quiver(q: Quiver) -> ExchangeMatrix:
    counts: dict[tuple[int, int], int] = {}
    for i, j, mult in q.arrows:
        if not (1 <= i <= q.n and 1 <= j <= q.n):
            raise IllegalQuiver(f"arrow {i}->{j} outside 1..{q.n}")
        if i == j:
            raise IllegalQuiver(f"1-loop at vertex {i}")
        if mult < 0:
            raise IllegalQuiver("negative arrow multiplicity")
        counts[(i, j)] = counts.get((i, j), 0) + mult
    b = [[0] * q.n for _ in range(q.n)]
    for (i, j), c in counts.items():
        if c and counts.get((j, i), 0):
            raise IllegalQuiver(f"2-cycle between {i} and {j}")
        b[i - 1][j - 1] += c
        b[j - 1][i - 1] -= c
    return validate_exchange_matrix(b)


def quiver_convert(obj):
    """Matrix -> Quiver or Quiver -> matrix."""
    if isinstance(obj, Quiver):
        return matrix_from_quiver(obj)
    return quiver_from_matrix(obj)
