"""Prime-field scalars used for probabilistic identity checks."""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import DivisionByZero

#: 2**62 - 57, the largest prime below 2**62.
DEFAULT_MODULUS = 4611686018427387847


def modulus() -> int:
    """Active modulus; ``CLUSTER_NZ_MODULUS`` overrides it (testing only)."""
    env = os.environ.get("CLUSTER_NZ_MODULUS")
    return int(env) if env else DEFAULT_MODULUS


class ModP:
    """An element of GF(p). Mixes with ``int`` and ``Fraction`` operands."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        if isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise DivisionByZero("denominator vanishes mod p")
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return ModP(other, self.p).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> ModP:
        if self.v == 0:
            raise DivisionByZero("inverse of zero in GF(p)")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"
