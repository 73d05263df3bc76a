"""Jacobians of cluster transformations and the determinant identities.

Most functions are written over an abstract field: the Y-values may be
:class:`RatFun` (symbolic), :class:`ModP`, ``Fraction``, ``float`` or
``complex``. Omitting ``y`` means symbolic evaluation at (y1, ..., yn).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .cluster import (
    MutationSequence,
    YSeed,
    inverse_permutation,
    matrix_trajectory,
    mutate_values,
    value_trajectory,
)
from .errors import AllPointsSingular, ArityMismatch, IndexOutOfRange, LengthMismatch
from .linalg import det_field, det_int, identity, laplace_det, matmul, perm_matrix, sub
from .modp import ModP, modulus
from .network import neumann_inverse, alpha_matrix, nz_matrices, require_fully_mutated, signed_nz, x_matrix
from .ratfun import Poly, RatFun, eq_exact, poly_gcd, simplify
from .tropical import c_matrix_run, f_matrix, parse_signs

Matrix = list[list]

DEGREE_CAP = 64


# ----------------------------------------------------------------------
# degree bounds


class DegreeBound:
    """A pseudo-scalar tracking upper bounds on numerator/denominator total degree.

    Running the generic formulas on these instead of field elements gives a
    degree bound for the rational function being evaluated, which feeds the
    Schwartz-Zippel failure probability of modular checks.
    """

    __slots__ = ("n", "d", "zero")

    def __init__(self, n: int = 0, d: int = 0, zero: bool = False):
        self.n, self.d, self.zero = n, d, zero

    @staticmethod
    def _of(x) -> DegreeBound:
        if isinstance(x, DegreeBound):
            return x
        return DegreeBound(0, 0, zero=(x == 0))

    def __add__(self, other):
        o = DegreeBound._of(other)
        if o.zero:
            return self
        if self.zero:
            return o
        return DegreeBound(max(self.n + o.d, o.n + self.d), self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return self

    def __sub__(self, other):
        return self + other

    __rsub__ = __sub__

    def __mul__(self, other):
        o = DegreeBound._of(other)
        if o.zero or self.zero:
            return DegreeBound(zero=True)
        return DegreeBound(self.n + o.n, self.d + o.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = DegreeBound._of(other)
        if self.zero:
            return self
        return DegreeBound(self.n + o.d, self.d + o.n)

    def __rtruediv__(self, other):
        return DegreeBound._of(other) / self

    def __pow__(self, e: int):
        if e == 0:
            return DegreeBound()
        if e < 0:
            return DegreeBound(self.d * -e, self.n * -e)
        return DegreeBound(self.n * e, self.d * e, self.zero)

    def __eq__(self, other):
        return self.zero and DegreeBound._of(other).zero

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def __repr__(self):
        return "DegreeBound(0)" if self.zero else f"DegreeBound({self.n}/{self.d})"


def det_degree_bound(m: Sequence[Sequence[DegreeBound]]) -> DegreeBound:
    """Bound for det(m): clear each row over the product of its denominators."""
    rows = [[DegreeBound._of(x) for x in r] for r in m]
    num = den = 0
    for r in rows:
        common = sum(x.d for x in r if not x.zero)
        den += common
        num += max((x.n + common - x.d for x in r if not x.zero), default=0)
    return DegreeBound(num, den)


# ----------------------------------------------------------------------
# generic helpers


def _is_ratfun_matrix(m) -> bool:
    return any(isinstance(x, RatFun) for r in m for x in r)


def det(m: Sequence[Sequence]):
    """Determinant dispatching on the entry type."""
    if not m:
        return 1
    if any(isinstance(x, DegreeBound) for r in m for x in r):
        return det_degree_bound(m)
    if _is_ratfun_matrix(m):
        return det_ratfun(m)
    if all(isinstance(x, int) for r in m for x in r):
        return det_int(m)
    return det_field(m)


def diag(values: Sequence, zero=0) -> Matrix:
    n = len(values)
    return [[values[i] if i == j else zero for j in range(n)] for i in range(n)]


def _symbolic(gamma: MutationSequence) -> list[RatFun]:
    return RatFun.variables(gamma.n)


def _reduce(x):
    return simplify(x, DEGREE_CAP) if isinstance(x, RatFun) else x


def _trajectory(gamma: MutationSequence, y):
    bs = matrix_trajectory(gamma)
    if y is None:
        y = _symbolic(gamma)
    if len(y) != gamma.n:
        raise ArityMismatch(f"{len(y)} values for {gamma.n} variables")
    ys = value_trajectory(gamma, y, bs, reduce=_reduce)
    return bs, ys


# ----------------------------------------------------------------------
# single mutation


def _check_k(k: int, n: int):
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"mutation index {k} outside 1..{n}")


def z_pair(yk):
    """(z+, z-) = (Y_k/(Y_k+1), 1/(Y_k+1))."""
    zm = 1 / (yk + 1)
    return _reduce(yk * zm), _reduce(zm)


def jacobian_values(y: Sequence, b, k: int, ytilde: Sequence | None = None) -> Matrix:
    """J_k(B) = diag(Y~) (z- F_{k,+}^T + z+ F_{k,-}^T) diag(Y)^-1 at the values ``y``."""
    n = b.n
    _check_k(k, n)
    if ytilde is None:
        ytilde = mutate_values(y, b, k)
    zp, zm = z_pair(y[k - 1])
    fp, fm = f_matrix(b, k, "+"), f_matrix(b, k, "-")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            # (F^T)[i][j] = F[j][i]
            a, c = fp[j][i], fm[j][i]
            if a == 0 and c == 0:
                row.append(0)
                continue
            mij = zm * a + zp * c
            row.append(_reduce(ytilde[i] * mij / y[j]))
        out.append(row)
    return out


def single_jacobian(seed: YSeed, k: int) -> Matrix:
    return jacobian_values(seed.Y, seed.B, k)


def jacobian_case_table(y: Sequence, b, k: int) -> Matrix:
    """The same Jacobian entry by entry from the explicit derivative of each case."""
    n = b.n
    _check_k(k, n)
    yk = y[k - 1]
    out = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        bki = b[k, i]
        for j in range(1, n + 1):
            if i == j == k:
                v = -(yk ** -2)
            elif j != k:
                if i != j:
                    continue
                v = (1 / yk + 1) ** (-bki) if bki >= 0 else (yk + 1) ** (-bki)
            elif bki >= 0:
                v = bki * y[i - 1] * (1 / yk + 1) ** (-bki) / (yk + 1) / yk
            else:
                v = -bki * y[i - 1] * (yk + 1) ** (-bki) / (yk + 1)
            out[i - 1][j - 1] = _reduce(v)
    return out


# ----------------------------------------------------------------------
# sequences


def chain_jacobian(gamma: MutationSequence, y: Sequence | None = None) -> Matrix:
    """J_gamma = P_{sigma_T} J_{m_T} ... P_{sigma_1} J_{m_1} along the trajectory."""
    bs, ys = _trajectory(gamma, y)
    j = identity(gamma.n)
    for t in range(gamma.T):
        k, s = gamma.m[t], gamma.sigma[t]
        jt = jacobian_values(ys[t], bs[t], k)
        step = matmul(perm_matrix(s), jt)
        j = [[_reduce(x) for x in r] for r in matmul(step, j)]
    return j


def k_matrix(gamma: MutationSequence, y: Sequence | None = None) -> Matrix:
    """diag(Y(T))^-1 J_gamma diag(y)."""
    if y is None:
        y = _symbolic(gamma)
    _, ys = _trajectory(gamma, y)
    j = chain_jacobian(gamma, y)
    yt = ys[-1]
    for v in yt:
        if v == 0:
            raise ZeroDivisionError("a component of the cluster transformation vanishes")
    n = gamma.n
    return [
        [_reduce(j[i][c] * y[c] / yt[i]) if j[i][c] != 0 else 0 for c in range(n)]
        for i in range(n)
    ]


def one_minus_k(gamma: MutationSequence, y: Sequence | None = None) -> Matrix:
    return sub(identity(gamma.n), k_matrix(gamma, y))


def lhs_det(gamma: MutationSequence, y: Sequence | None = None):
    """det(I_n - K_gamma(y))."""
    return det(one_minus_k(gamma, y))


@dataclass(frozen=True)
class ZMatrices:
    zplus: tuple
    zminus: tuple

    @property
    def Zplus(self) -> Matrix:
        return diag(self.zplus)

    @property
    def Zminus(self) -> Matrix:
        return diag(self.zminus)


def z_matrices(gamma: MutationSequence, y: Sequence | None = None) -> ZMatrices:
    _, ys = _trajectory(gamma, y)
    pairs = [z_pair(ys[t][gamma.m[t] - 1]) for t in range(gamma.T)]
    return ZMatrices(tuple(p for p, _ in pairs), tuple(m for _, m in pairs))


def tau_matrix(gamma: MutationSequence, y: Sequence | None = None) -> Matrix:
    """A+ Z- + A- Z+."""
    require_fully_mutated(gamma)
    nz = nz_matrices(gamma)
    z = z_matrices(gamma, y)
    T = gamma.T
    return [
        [_reduce(nz.Aplus[e][t] * z.zminus[t] + nz.Aminus[e][t] * z.zplus[t]) for t in range(T)]
        for e in range(T)
    ]


def tau(gamma: MutationSequence, y: Sequence | None = None):
    return det(tau_matrix(gamma, y))


# ----------------------------------------------------------------------
# symbolic determinant


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).divmod_exact(poly_gcd(a, b))


def det_ratfun(m: Sequence[Sequence]) -> RatFun:
    """Exact determinant of a matrix of rational functions.

    Each row is scaled by the lcm of its denominators, the resulting
    polynomial matrix is reduced by fraction-free (Bareiss) elimination, and
    the row multipliers are divided back out.
    """
    size = len(m)
    if size == 0:
        return 1
    nvars = next(x.nvars for r in m for x in r if isinstance(x, RatFun))
    rows = [[x if isinstance(x, RatFun) else RatFun.const(x, nvars) for x in r] for r in m]
    scale = Poly.one(nvars)
    polys = []
    for r in rows:
        mult = Poly.one(nvars)
        for x in r:
            if not x.is_zero() and not x.den.is_constant():
                mult = _poly_lcm(mult, x.den)
        scale = scale * mult
        polys.append([x.num * mult.divmod_exact(x.den) if not x.is_zero() else Poly.zero(nvars) for x in r])
    d = _bareiss(polys, nvars)
    return simplify(RatFun(d, scale), DEGREE_CAP)


def _bareiss(a: list[list[Poly]], nvars: int) -> Poly:
    n = len(a)
    sign = 1
    prev = Poly.one(nvars)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(nvars)
        pk = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(k + 1, n):
                v = a[i][j] * pk - f * a[k][j]
                a[i][j] = v.divmod_exact(prev) if not v.is_zero() else v
            a[i][k] = Poly.zero(nvars)
        prev = pk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_laplace_ratfun(m: Sequence[Sequence]) -> RatFun:
    nvars = next(x.nvars for r in m for x in r if isinstance(x, RatFun))
    return laplace_det([list(r) for r in m], RatFun.zero(nvars))


# ----------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    identity: str
    mode: str
    lhs: object
    rhs: object
    equal: bool
    trials: int = 0
    degree_bound: int | None = None
    failure_bound: float | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def fmt(v):
            if isinstance(v, (list, tuple)):
                return [fmt(x) for x in v]
            if isinstance(v, (int, float, bool)) or v is None:
                return v
            return str(v)

        out = {
            "identity": self.identity,
            "mode": self.mode,
            "equal": self.equal,
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
        }
        if self.mode == "modular":
            out["trials"] = self.trials
            out["degree_bound"] = self.degree_bound
            out["failure_bound"] = self.failure_bound
        if self.details:
            out["details"] = {k: fmt(v) for k, v in self.details.items()}
        return out


def det_formula_degree(gamma: MutationSequence) -> int:
    """Degree bound for the numerator of lhs - rhs in the main identity."""
    y = [DegreeBound(1, 0) for _ in range(gamma.n)]
    lhs = lhs_det(gamma, y)
    rhs = tau(gamma, y)
    lhs, rhs = DegreeBound._of(lhs), DegreeBound._of(rhs)
    return max(lhs.n + rhs.d, rhs.n + lhs.d, 1)


def verify_det_formula(
    gamma: MutationSequence, mode: str = "exact", trials: int = 8, seed: int = 0
) -> VerificationReport:
    """Compare det(I - K_gamma) with det(A+ Z- + A- Z+)."""
    require_fully_mutated(gamma)
    name = "det(I-K) = det(A+Z- + A-Z+)"
    if mode == "exact":
        lhs = lhs_det(gamma)
        rhs = tau(gamma)
        if not isinstance(lhs, RatFun):
            lhs = RatFun.const(lhs, gamma.n)
        if not isinstance(rhs, RatFun):
            rhs = RatFun.const(rhs, gamma.n)
        return VerificationReport(name, "exact", lhs, rhs, eq_exact(lhs, rhs))
    if mode != "modular":
        raise ValueError(f"unknown mode {mode!r}")
    p = modulus()
    rng = random.Random(seed)
    lhs_vals, rhs_vals = [], []
    done = attempts = 0
    while done < trials and attempts < 20 * trials:
        attempts += 1
        y = [ModP(rng.randrange(1, p), p) for _ in range(gamma.n)]
        try:
            a, b = lhs_det(gamma, y), tau(gamma, y)
        except ZeroDivisionError:
            continue
        lhs_vals.append(a)
        rhs_vals.append(b)
        done += 1
    if done == 0:
        raise AllPointsSingular("every sampled point hit a vanishing denominator")
    lhs_vals = [ModP(0, p) + a for a in lhs_vals]
    rhs_vals = [ModP(0, p) + b for b in rhs_vals]
    equal = all(a == b for a, b in zip(lhs_vals, rhs_vals))
    degree = det_formula_degree(gamma)
    per_trial = degree / (p - 1)
    return VerificationReport(
        name,
        "modular",
        [a.v for a in lhs_vals],
        [b.v for b in rhs_vals],
        equal,
        trials=done,
        degree_bound=degree,
        failure_bound=per_trial**done,
        details={"per_trial_bound": per_trial, "modulus": p},
    )


def f_product(gamma: MutationSequence, eps, bs=None) -> Matrix:
    """F_eps = F_{m_1,eps_1} P_{sigma_1^-1} ... F_{m_T,eps_T} P_{sigma_T^-1}."""
    eps = parse_signs(eps)
    bs = bs or matrix_trajectory(gamma)
    f = identity(gamma.n)
    for t in range(gamma.T):
        f = matmul(f, f_matrix(bs[t], gamma.m[t], eps[t]))
        f = matmul(f, perm_matrix(inverse_permutation(gamma.sigma[t])))
    return f


def _f_det_report(gamma, eps, nz, inv, bs) -> VerificationReport:
    lhs = det_int(sub(identity(gamma.n), f_product(gamma, eps, bs)))
    rhs = det_int(nz.signed(eps))
    via_x = det_int(x_matrix(gamma, eps, inv, bs))
    return VerificationReport(
        "det(I-F_eps) = det A_eps",
        "exact",
        lhs,
        rhs,
        lhs == rhs == via_x,
        details={"eps": "".join(eps), "det_X": via_x},
    )


def _f_det_context(gamma):
    require_fully_mutated(gamma)
    return nz_matrices(gamma), neumann_inverse(alpha_matrix(gamma)), matrix_trajectory(gamma)


def verify_f_det(gamma: MutationSequence, eps) -> VerificationReport:
    """det(I_n - F_eps) = det X_eps = det A_eps over the integers."""
    eps = parse_signs(eps)
    if len(eps) != gamma.T:
        raise LengthMismatch(f"{len(eps)} signs for {gamma.T} mutations")
    return _f_det_report(gamma, eps, *_f_det_context(gamma))


def verify_all_signs(gamma: MutationSequence) -> list[VerificationReport]:
    ctx = _f_det_context(gamma)
    return [_f_det_report(gamma, e, *ctx) for e in itertools.product("+-0", repeat=gamma.T)]


def tropical_probe(gamma: MutationSequence, epsilons=(1e-2, 1e-4, 1e-6)) -> list[float]:
    """max |K(eps,...,eps)^T - C(T)| for each eps; None where floats overflow."""
    c = c_matrix_run(gamma, check=False).final
    n = gamma.n
    errs = []
    for e in epsilons:
        try:
            k = k_matrix(gamma, [float(e)] * n)
            err = max(abs(k[j][i] - c[i][j]) for i in range(n) for j in range(n))
        except (OverflowError, ZeroDivisionError):
            err = None
        errs.append(err if err is None or math.isfinite(err) else None)
    return errs


def verify_tropical_limit(gamma: MutationSequence, probe: bool = True) -> VerificationReport:
    """det(I_n - C(T)) = det A_{eps_trop}, plus a numeric look at K^T -> C(T)."""
    require_fully_mutated(gamma)
    trace = c_matrix_run(gamma)
    lhs = det_int(sub(identity(gamma.n), trace.final))
    rhs = det_int(signed_nz(gamma, trace.eps_trop))
    details = {"eps_trop": "".join(trace.eps_trop)}
    ok = lhs == rhs
    if probe:
        errs = tropical_probe(gamma)
        details["probe_errors"] = errs
        if None in errs:
            details["probe_skipped"] = True
        else:
            converging = all(b <= a or b < 1e-9 for a, b in zip(errs, errs[1:])) and errs[-1] < 1e-3
            details["probe_converging"] = converging
            ok = ok and converging
    return VerificationReport("det(I-C(T)) = det A_eps_trop", "exact", lhs, rhs, ok, details=details)
