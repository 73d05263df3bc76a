"""Dilogarithm Li2 and its Bloch-Wigner and Rogers variants."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from ..errors import DomainError

PI2_6 = math.pi**2 / 6


@lru_cache(maxsize=None)
def _bernoulli(count: int) -> tuple[float, ...]:
    """B_0..B_{count-1} (B_1 = -1/2)."""
    b = [Fraction(1)]
    for m in range(1, count):
        s = sum(math.comb(m + 1, k) * b[k] for k in range(m))
        b.append(-s / (m + 1))
    return tuple(float(x) for x in b)


def _series(z: complex) -> complex:
    """sum z^k / k^2, for |z| <= 1/2."""
    total = 0j
    term = z
    k = 1
    while True:
        add = term / (k * k)
        total += add
        if abs(add) < 1e-18 * max(abs(total), 1e-300):
            return total
        k += 1
        term *= z


def _bernoulli_series(z: complex) -> complex:
    """sum B_n u^(n+1)/(n+1)! with u = -log(1-z); converges for |u| < 2 pi."""
    u = -cmath.log(1 - z)
    bern = _bernoulli(80)
    total = 0j
    power = u
    fact = 1.0
    for n, bn in enumerate(bern):
        fact *= n + 1
        if bn:
            add = bn * power / fact
            total += add
            if n > 4 and abs(add) < 1e-18 * max(abs(total), 1e-300):
                break
        power *= u
    return total


def dilog(z: complex) -> complex:
    """Principal branch of Li2(z), cut along [1, inf)."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6)
    if abs(z) > 1:
        # inversion; on the cut (1, inf) take the value from below, as mpmath does
        if z.imag == 0 and z.real > 1:
            lg = complex(math.log(z.real), math.pi)
        else:
            lg = cmath.log(-z)
        return -_unit_disk(1 / z) - PI2_6 - 0.5 * lg * lg
    return _unit_disk(z)


def _unit_disk(z: complex) -> complex:
    if abs(z) <= 0.5:
        return _series(z)
    if abs(1 - z) <= 0.5:
        # reflection
        w = 1 - z
        return PI2_6 - cmath.log(z) * cmath.log(w) - _series(w)
    return _bernoulli_series(z)


def bloch_wigner(z: complex) -> float:
    """D(z) = Im Li2(z) + arg(1 - z) log|z|."""
    z = complex(z)
    if z == 0 or z == 1:
        return 0.0
    if z.imag == 0:
        return 0.0
    return dilog(z).imag + cmath.phase(1 - z) * math.log(abs(z))


def rogers(x: float) -> float:
    """L(x) = Li2(x) + log(x) log(1 - x) / 2 on (0, 1)."""
    if not 0 < x < 1:
        raise DomainError(f"Rogers dilogarithm needs 0 < x < 1, got {x}")
    return dilog(x).real + 0.5 * math.log(x) * math.log1p(-x)
