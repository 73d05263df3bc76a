"""ADE Dynkin mutation loops and the dilogarithm central-charge identity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..cluster import MutationSequence, identity_permutation, validate_exchange_matrix
from ..errors import NotDynkinShape
from .dilog import rogers
from .gluing import GluingSolution, gluing_system, solve_gluing_positive


@dataclass(frozen=True)
class DynkinSpec:
    type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    dim_g: int
    dual_coxeter: int


def _edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A":
        if n < 1:
            raise NotDynkinShape("A_n needs n >= 1")
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        if n < 4:
            raise NotDynkinShape("D_n needs n >= 4")
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if kind == "E":
        if n not in (6, 7, 8):
            raise NotDynkinShape("E_n needs n in {6, 7, 8}")
        return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    raise NotDynkinShape(f"unknown Dynkin type {kind!r}")


def _dim_and_dual_coxeter(kind: str, n: int) -> tuple[int, int]:
    if kind == "A":
        return n * (n + 2), n + 1
    if kind == "D":
        return n * (2 * n - 1), 2 * n - 2
    return {6: (78, 12), 7: (133, 18), 8: (248, 30)}[n]


def dynkin_spec(kind: str, n: int) -> DynkinSpec:
    kind = kind.upper()
    edges = _edges(kind, n)
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        c[i - 1][j - 1] = c[j - 1][i - 1] = -1
    dim, h = _dim_and_dual_coxeter(kind, n)
    return DynkinSpec(kind, n, tuple(tuple(r) for r in c), dim, h)


def cartan(kind: str, n: int) -> tuple[tuple[int, ...], ...]:
    return dynkin_spec(kind, n).cartan


def _bipartition(spec: DynkinSpec) -> list[int]:
    """Colour 0 (sinks) contains vertex 1."""
    n = spec.rank
    colour = [None] * n
    colour[0] = 0
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if spec.cartan[i][j] == -1 and colour[j] is None:
                colour[j] = 1 - colour[i]
                stack.append(j)
    return colour


def dynkin_loop(spec: DynkinSpec) -> MutationSequence:
    """Bipartite orientation with vertex 1 a sink; mutate all sinks, then all sources."""
    n = spec.rank
    colour = _bipartition(spec)
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if spec.cartan[i][j] == -1 and colour[i] == 1:
                b[i][j], b[j][i] = 1, -1  # arrow from source i to sink j
    sinks = [i + 1 for i in range(n) if colour[i] == 0]
    sources = [i + 1 for i in range(n) if colour[i] == 1]
    m = tuple(sinks + sources)
    return MutationSequence(validate_exchange_matrix(b), m, (identity_permutation(n),) * n)


def central_charge(spec: DynkinSpec) -> Fraction:
    return Fraction(2 * spec.dim_g, 2 + spec.dual_coxeter) - spec.rank


@dataclass(frozen=True)
class DilogReport:
    spec: DynkinSpec
    solution: GluingSolution
    zeta: tuple[float, ...]
    lhs_zminus: float
    lhs_zplus: float
    rhs: Fraction
    tol: float

    @property
    def error(self) -> float:
        return abs(self.lhs_zplus - float(self.rhs))

    @property
    def holds(self) -> bool:
        return self.error < self.tol

    def to_json(self) -> dict:
        return {
            "type": f"{self.spec.type}{self.spec.rank}",
            "zeta": list(self.zeta),
            "lhs_zminus": self.lhs_zminus,
            "lhs_zplus": self.lhs_zplus,
            "rhs": str(self.rhs),
            "rhs_float": float(self.rhs),
            "error": self.error,
            "holds": self.holds,
        }


def dilog_identity_check(spec: DynkinSpec, tol: float = 1e-10) -> DilogReport:
    """Solve the positive gluing system of the Dynkin loop and compare with the central charge.

    ``zeta`` are the z_{t,-} coordinates. Both (6/pi^2) sum L(z_{t,-}) and
    (6/pi^2) sum L(z_{t,+}) are reported; the central charge equals the latter
    (the former is rank minus the central charge, by L(x) + L(1-x) = pi^2/6).
    """
    sol = solve_gluing_positive(gluing_system(dynkin_loop(spec)))
    zeta = tuple(z.real for z in sol.zminus)
    scale = 6 / math.pi**2
    lhs_minus = scale * sum(rogers(z) for z in zeta)
    lhs_plus = scale * sum(rogers(1 - z) for z in zeta)
    return DilogReport(spec, sol, zeta, lhs_minus, lhs_plus, central_charge(spec), tol)
