"""Gluing equations of mutation networks and their solutions.

The unknowns are z_t = z_{t,-}; z_{t,+} = 1 - z_t. Equation e reads
prod_t z_{t,+}^(-a+_{et}) z_{t,-}^(a-_{et}) = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..cluster import MutationSequence, matrix_trajectory, value_trajectory
from ..errors import (
    DomainError,
    InvariantViolation,
    NoConvergence,
    NotDynkinShape,
    SingularJacobian,
)
from ..network import nz_matrices, require_fully_mutated
from .dilog import bloch_wigner

WALL = 1e-14


@dataclass(frozen=True)
class GluingSystem:
    Aplus: tuple[tuple[int, ...], ...]
    Aminus: tuple[tuple[int, ...], ...]

    @property
    def T(self) -> int:
        return len(self.Aplus[0]) if self.Aplus else 0

    def values(self, z: Sequence[complex]) -> np.ndarray:
        """prod_t (1-z_t)^(-a+) z_t^(a-) for every equation."""
        z = np.asarray(z, dtype=complex)
        ap = np.asarray(self.Aplus, dtype=float)
        am = np.asarray(self.Aminus, dtype=float)
        out = []
        for e in range(len(self.Aplus)):
            v = 1 + 0j
            for t in range(self.T):
                if ap[e, t]:
                    v *= (1 - z[t]) ** (-int(ap[e, t]))
                if am[e, t]:
                    v *= z[t] ** int(am[e, t])
            out.append(v)
        return np.array(out)

    def residuals(self, z) -> np.ndarray:
        return self.values(z) - 1

    def jacobian(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        g = self.values(z)
        ap = np.asarray(self.Aplus, dtype=float)
        am = np.asarray(self.Aminus, dtype=float)
        return g[:, None] * (ap / (1 - z)[None, :] + am / z[None, :])


@dataclass(frozen=True)
class GluingSolution:
    zminus: tuple[complex, ...]
    residual: float
    iterations: int = 0

    @property
    def zplus(self) -> tuple[complex, ...]:
        return tuple(1 - z for z in self.zminus)


def gluing_system(gamma: MutationSequence) -> GluingSystem:
    require_fully_mutated(gamma)
    nz = nz_matrices(gamma)
    return GluingSystem(nz.Aplus, nz.Aminus)


def _check_off_walls(z: Sequence[complex], what: str):
    for t, v in enumerate(z, start=1):
        if abs(v) < WALL or abs(1 - v) < WALL:
            raise DomainError(f"{what}: z_{t} = {v} lies on 0 or 1")


def _resnorm(sys: GluingSystem, z) -> float:
    r = sys.residuals(z)
    return float(np.max(np.abs(r))) if len(r) else 0.0


def solve_gluing_complex(
    sys: GluingSystem, init: Sequence[complex], tol: float = 1e-12, max_iter: int = 100
) -> GluingSolution:
    """Damped Newton iteration in the unknowns z_{t,-}.

    Gluing systems are frequently rank deficient (the figure-eight system has
    two equations that are reciprocal to each other), so each step is the
    minimum-norm least-squares solution of J dz = -F.
    """
    z = np.asarray(init, dtype=complex)
    if z.shape != (sys.T,):
        raise ValueError(f"initial guess has length {len(z)}, expected {sys.T}")
    _check_off_walls(z, "initial guess")
    res = _resnorm(sys, z)
    it = 0
    while res >= tol:
        if it >= max_iter:
            raise NoConvergence(f"no convergence after {max_iter} iterations (residual {res:.3e})")
        it += 1
        jac = sys.jacobian(z)
        step, _, rank, _ = np.linalg.lstsq(jac, -sys.residuals(z), rcond=None)
        if rank == 0 or not np.all(np.isfinite(step)):
            raise SingularJacobian("singular Jacobian; try a different initial guess")
        lam = 1.0
        for _ in range(31):
            cand = z + lam * step
            if np.all(np.abs(cand) > WALL) and np.all(np.abs(1 - cand) > WALL):
                new = _resnorm(sys, cand)
                if new < res:
                    break
            lam /= 2
        else:
            raise NoConvergence(f"line search failed at iteration {it} (residual {res:.3e})")
        z, res = cand, new
    return GluingSolution(tuple(complex(v) for v in z), res, it)


def _dynkin_cartan(sys: GluingSystem) -> np.ndarray:
    ap = np.asarray(sys.Aplus)
    if ap.shape[0] != ap.shape[1] or not np.array_equal(ap, 2 * np.eye(len(ap), dtype=int)):
        raise NotDynkinShape("positive solver needs A+ = 2I")
    return np.asarray(sys.Aminus, dtype=float)


def solve_gluing_positive(
    sys: GluingSystem,
    tol: float = 1e-13,
    max_iter: int = 10000,
    init: Sequence[float] | None = None,
    damping: float = 0.5,
) -> GluingSolution:
    """Unique solution in (0,1)^T of prod_t z_t^(C_st/2) = 1 - z_s (A+ = 2I, A- = C).

    Damped fixed-point iteration from (1/2, ..., 1/2), finished by Newton
    steps on the logarithmic form.
    """
    c = _dynkin_cartan(sys)
    n = len(c)
    z = np.full(n, 0.5) if init is None else np.asarray(init, dtype=float)
    if np.any(z <= 0) or np.any(z >= 1):
        raise DomainError("initial guess must lie in (0,1)^T")

    def f(v):
        return np.exp(c @ np.log(v) / 2) - (1 - v)

    it = 0
    while it < max_iter:
        it += 1
        target = 1 - np.exp(c @ np.log(z) / 2)
        target = np.clip(target, 1e-300, 1 - 1e-16)
        new = (1 - damping) * z + damping * target
        if np.max(np.abs(new - z)) < 1e-10:
            z = new
            break
        z = new
    # Newton polish on g(v) = (C log v)/2 - log(1 - v)
    for _ in range(50):
        g = c @ np.log(z) / 2 - np.log1p(-z)
        if np.max(np.abs(f(z))) < tol * 1e-2:
            break
        jac = c / (2 * z[None, :]) + np.diag(1 / (1 - z))
        step = np.linalg.solve(jac, -g)
        lam = 1.0
        while np.any(z + lam * step <= 0) or np.any(z + lam * step >= 1):
            lam /= 2
        z = z + lam * step
    res = float(np.max(np.abs(f(z))))
    if res >= tol or np.any(z <= 0) or np.any(z >= 1):
        raise NoConvergence(f"positive solver stalled (residual {res:.3e})")
    sol = GluingSolution(tuple(complex(v) for v in z), _resnorm(sys, z.astype(complex)), it)
    return sol


# ----------------------------------------------------------------------
# fixed points <-> gluing solutions


def _trajectory_values(gamma: MutationSequence, eta: Sequence[complex]):
    bs = matrix_trajectory(gamma)
    return bs, value_trajectory(gamma, [complex(v) for v in eta], bs)


def phi(eta: Sequence[complex], gamma: MutationSequence, tol: float = 1e-8) -> GluingSolution:
    """Send a fixed point of the cluster transformation to a gluing solution."""
    require_fully_mutated(gamma)
    try:
        _, ys = _trajectory_values(gamma, eta)
    except ZeroDivisionError as exc:
        raise InvariantViolation("a mutation point value vanishes along the trajectory") from exc
    err = max(abs(a - b) for a, b in zip(ys[-1], eta))
    if err > tol * max(1.0, max(abs(v) for v in eta)):
        raise InvariantViolation(f"eta is not a fixed point (|mu(eta) - eta| = {err:.3e})")
    zm = []
    for t in range(gamma.T):
        y = ys[t][gamma.m[t] - 1]
        if abs(y) < WALL or abs(y + 1) < WALL:
            raise InvariantViolation(f"Y_(m_{t + 1}) takes the value {y}")
        zm.append(1 / (y + 1))
    sys = gluing_system(gamma)
    return GluingSolution(tuple(zm), _resnorm(sys, zm))


def phi_inverse(sol: GluingSolution, gamma: MutationSequence, tol: float = 1e-8) -> tuple[complex, ...]:
    """Reconstruct the fixed point eta = Y(0) from a gluing solution.

    Y_j(t) is a monomial in the z's: starting from (sigma_s(m_s), s) with value
    z_{s,-}/z_{s,+}, each later step u multiplies by z_{u,+}^[b]+ z_{u,-}^-[-b]+
    (b = B_{m_u, j}(u-1)) until the walk reaches a mutation point.
    """
    require_fully_mutated(gamma)
    sys = gluing_system(gamma)
    if len(sol.zminus) != gamma.T:
        raise InvariantViolation("solution length differs from the sequence length")
    _check_off_walls(sol.zminus, "gluing solution")
    res = _resnorm(sys, sol.zminus)
    if res > tol:
        raise InvariantViolation(f"not a gluing solution (residual {res:.3e})")
    bs = matrix_trajectory(gamma)
    T, n = gamma.T, gamma.n
    zm = list(sol.zminus)
    zp = [1 - v for v in zm]
    eta: list[complex | None] = [None] * n
    for s in range(1, T + 1):
        k = gamma.m[s - 1]
        j = gamma.sigma[s - 1][k - 1]
        val = zm[s - 1] / zp[s - 1]
        t = s
        for _ in range(T * n + 1):
            if t == T:
                t = 0
            if t == 0:
                eta[j - 1] = val
            u = t + 1
            k = gamma.m[u - 1]
            if j == k:
                break
            b = bs[u - 1][k, j]
            if b > 0:
                val *= zp[u - 1] ** b
            elif b < 0:
                val *= zm[u - 1] ** b
            j = gamma.sigma[u - 1][j - 1]
            t = u
    if any(v is None for v in eta):
        raise InvariantViolation("some variable is not reached by a path of G_alpha")
    return tuple(eta)


# ----------------------------------------------------------------------
# geometry of solutions


def volume(sol: GluingSolution) -> float:
    """Sum of Bloch-Wigner values of the shapes z_{t,-}."""
    return sum(bloch_wigner(z) for z in sol.zminus)


def angle_windings(sys: GluingSystem, sol: GluingSolution) -> list[float]:
    """(1/2pi) sum_t (-a+ arg z_{t,+} + a- arg z_{t,-}) for each equation; integers on solutions."""
    out = []
    for e in range(len(sys.Aplus)):
        s = 0.0
        for t in range(sys.T):
            s += -sys.Aplus[e][t] * cmath.phase(sol.zplus[t]) + sys.Aminus[e][t] * cmath.phase(sol.zminus[t])
        out.append(s / (2 * math.pi))
    return out
