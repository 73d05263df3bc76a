"""Tropical Y-dynamics: c-vectors, C-matrices and reddening sequences."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cluster import (
    ExchangeMatrix,
    MutationSequence,
    compose,
    identity_permutation,
    inverse_permutation,
    matrix_mutate,
    matrix_trajectory,
    validate_exchange_matrix,
)
from .errors import (
    IndexOutOfRange,
    InvariantViolation,
    NotReddening,
    NotSignedPermutation,
    NotSkewSymmetric,
    SignIncoherent,
    ZeroVector,
)
from .linalg import identity, matmul, perm_matrix, to_tuple

IntMatrix = tuple[tuple[int, ...], ...]

SIGNS = ("+", "-", "0")


def _sign_value(eps) -> int:
    if eps in ("+", 1, "plus"):
        return 1
    if eps in ("-", -1, "minus"):
        return -1
    if eps in ("0", 0, "zero"):
        return 0
    raise ValueError(f"unknown sign {eps!r}")


def parse_signs(text: str | Sequence) -> tuple[str, ...]:
    """Accept ``"+-0"``, ``"+,-,0"`` or a sequence of symbols."""
    if isinstance(text, str):
        items = [c for c in text if c not in ", "]
    else:
        items = list(text)
    return tuple("+-0"[(1, -1, 0).index(_sign_value(x))] for x in items)


def sign_of_cvector(v: Sequence[int]) -> str:
    pos = any(x > 0 for x in v)
    neg = any(x < 0 for x in v)
    if pos and neg:
        raise SignIncoherent(f"c-vector {list(v)} has mixed signs")
    if not (pos or neg):
        raise ZeroVector("zero c-vector")
    return "+" if pos else "-"


def column(c: Sequence[Sequence[int]], j: int) -> tuple[int, ...]:
    """j-th column (1-based)."""
    return tuple(row[j - 1] for row in c)


def tropical_mutate(c: Sequence[Sequence[int]], b: ExchangeMatrix, k: int) -> IntMatrix:
    """Mutate the tropical Y-variables whose exponent vectors are the columns of ``c``."""
    if not 1 <= k <= b.n:
        raise IndexOutOfRange(f"mutation index {k} outside 1..{b.n}")
    n = b.n
    ck = column(c, k)
    out = [list(r) for r in c]
    for i in range(1, n + 1):
        if i == k:
            for r in range(len(c)):
                out[r][i - 1] = -ck[r]
            continue
        bki = b[k, i]
        if bki > 0:
            for r in range(len(c)):
                out[r][i - 1] += bki * max(ck[r], 0)
        elif bki < 0:
            for r in range(len(c)):
                out[r][i - 1] -= bki * min(ck[r], 0)
    return to_tuple(out)


def permute_columns(c: Sequence[Sequence[int]], sigma: Sequence[int]) -> IntMatrix:
    """New column i is old column sigma^-1(i)."""
    inv = inverse_permutation(sigma)
    return tuple(tuple(row[inv[i] - 1] for i in range(len(sigma))) for row in c)


def f_matrix(b: ExchangeMatrix, k: int, eps) -> IntMatrix:
    if not 1 <= k <= b.n:
        raise IndexOutOfRange(f"mutation index {k} outside 1..{b.n}")
    s = _sign_value(eps)
    f = identity(b.n)
    f[k - 1] = [max(s * b[k, j], 0) for j in range(1, b.n + 1)]
    f[k - 1][k - 1] = -1
    return to_tuple(f)


@dataclass(frozen=True)
class CMatrixTrace:
    C: tuple[IntMatrix, ...]
    eps_trop: tuple[str, ...]

    @property
    def final(self) -> IntMatrix:
        return self.C[-1]


def c_matrix_run(gamma: MutationSequence, check: bool = True) -> CMatrixTrace:
    """C(t) = C(t-1) F_{m_t, eps_t}(B(t-1)) P_{sigma_t^-1}.

    With ``check`` set, the trajectory is recomputed by :func:`tropical_mutate`
    and the two are asserted equal.
    """
    bs = matrix_trajectory(gamma)
    c = to_tuple(identity(gamma.n))
    cs = [c]
    signs = []
    for t, (k, s) in enumerate(zip(gamma.m, gamma.sigma)):
        eps = sign_of_cvector(column(c, k))
        signs.append(eps)
        c = to_tuple(
            matmul(matmul(c, f_matrix(bs[t], k, eps)), perm_matrix(inverse_permutation(s)))
        )
        cs.append(c)
    if check:
        d = cs[0]
        for t, (k, s) in enumerate(zip(gamma.m, gamma.sigma)):
            d = permute_columns(tropical_mutate(d, bs[t], k), s)
            if d != cs[t + 1]:
                raise InvariantViolation(f"tropical engines disagree at step {t + 1}")
    return CMatrixTrace(tuple(cs), tuple(signs))


def _require_skew_symmetric(b: ExchangeMatrix):
    n = b.n
    for i in range(n):
        for j in range(n):
            if b.entries[i][j] != -b.entries[j][i]:
                raise NotSkewSymmetric("reddening is defined for skew-symmetric B only")


def _nonpositive(c: IntMatrix) -> bool:
    return all(x <= 0 for row in c for x in row)


def is_reddening(gamma: MutationSequence) -> bool:
    _require_skew_symmetric(gamma.B)
    return gamma.n > 0 and _nonpositive(c_matrix_run(gamma, check=False).final)


def is_maximal_green(gamma: MutationSequence) -> bool:
    if not is_reddening(gamma):
        return False
    return all(e == "+" for e in c_matrix_run(gamma, check=False).eps_trop)


def _negated_permutation(c: IntMatrix) -> tuple[int, ...]:
    """nu with C = -P_nu, i.e. column j of C is -e_{nu(j)}."""
    n = len(c)
    nu = []
    for j in range(1, n + 1):
        col = column(c, j)
        rows = [i for i, x in enumerate(col, start=1) if x != 0]
        if len(rows) != 1 or col[rows[0] - 1] != -1:
            raise NotSignedPermutation(f"column {j} of C(T) is {list(col)}")
        nu.append(rows[0])
    if sorted(nu) != list(range(1, n + 1)):
        raise NotSignedPermutation("C(T) is not minus a permutation matrix")
    return tuple(nu)


def normalize_reddening(gamma: MutationSequence) -> MutationSequence:
    """Compose the last permutation with nu so that C(T) becomes -I."""
    if not is_reddening(gamma):
        raise NotReddening("sequence is not reddening")
    nu = _negated_permutation(c_matrix_run(gamma, check=False).final)
    if gamma.T == 0:  # pragma: no cover - T=0 is never reddening
        return gamma
    sigma = gamma.sigma[:-1] + (compose(nu, gamma.sigma[-1]),)
    return MutationSequence(gamma.B, gamma.m, sigma)


# ----------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchResult:
    found: MutationSequence | None
    depth: int
    explored: int
    certificate: dict | None = None


def _successors(b: ExchangeMatrix, c: IntMatrix, last: int | None) -> Iterator[tuple[int, ExchangeMatrix, IntMatrix]]:
    for k in range(1, b.n + 1):
        if k == last:
            continue
        sign_of_cvector(column(c, k))
        yield k, matrix_mutate(b, k), tropical_mutate(c, b, k)


def reddening_search(b: ExchangeMatrix | Sequence[Sequence[int]], depth: int, green_only: bool = False) -> SearchResult:
    """Breadth-first search (equivalent to iterative deepening) for a reddening
    sequence of length at most ``depth`` with identity permutations.

    States (B, C) already seen at a smaller depth are pruned. With
    ``green_only`` every step must mutate at a positive c-vector.
    The certificate records the column sums of [B_k.]_+ and [-B_k.]_+ seen
    over every explored exchange matrix; ``balanced`` means every vertex of
    every explored matrix has as many arrows in as out, in which case every
    column of A+ and A- sums to zero and det A_eps vanishes.
    """
    if not isinstance(b, ExchangeMatrix):
        b = validate_exchange_matrix(b)
    _require_skew_symmetric(b)
    n = b.n
    c0 = to_tuple(identity(n))
    seen = {(b.entries, c0)}
    frontier = deque([(b, c0, (), None)])
    out_degrees: set[int] = set()
    in_degrees: set[int] = set()
    balanced = all(sum(row) == 0 for row in b.entries)
    explored = 0
    for level in range(1, depth + 1):
        nxt = deque()
        while frontier:
            cur_b, cur_c, path, last = frontier.popleft()
            for k, nb, nc in _successors(cur_b, cur_c, last):
                if green_only and sign_of_cvector(column(cur_c, k)) != "+":
                    continue
                key = (nb.entries, nc)
                if key in seen:
                    continue
                seen.add(key)
                explored += 1
                for row in nb.entries:
                    out_degrees.add(sum(max(x, 0) for x in row))
                    in_degrees.add(sum(max(-x, 0) for x in row))
                    balanced = balanced and sum(row) == 0
                m = path + (k,)
                if _nonpositive(nc):
                    gamma = MutationSequence(b, m, (identity_permutation(n),) * len(m))
                    return SearchResult(gamma, level, explored)
                nxt.append((nb, nc, m, k))
        frontier = nxt
        if not frontier:
            break
    cert = {
        "out_degrees": sorted(out_degrees),
        "in_degrees": sorted(in_degrees),
        "balanced": balanced,
    }
    return SearchResult(None, depth, explored, cert)
