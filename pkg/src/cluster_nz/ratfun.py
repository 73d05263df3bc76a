"""Sparse multivariate polynomials and rational functions over Q.

Polynomials are dictionaries mapping exponent tuples to nonzero coefficients
(``int`` when integral, ``Fraction`` otherwise). Rational functions are
num/den pairs that are cheaply normalized after every operation; the full
multivariate GCD is only taken on request (:func:`simplify`).

Variables are ``y1 .. yn`` with ``y1 < y2 < ... < yn`` in the lexicographic
term order, i.e. the exponent of ``yn`` is compared first.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import AllPointsSingular, ArityMismatch, DivisionByZero, SingularPoint
from .modp import ModP, modulus

__all__ = [
    "Poly",
    "RatFun",
    "arith",
    "eq_exact",
    "eq_modular",
    "modular_failure_bound",
    "simplify",
    "evaluate",
    "poly_gcd",
]


def _norm_coef(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _lex_key(exps: tuple) -> tuple:
    # yn is the most significant variable
    return exps[::-1]


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ArityMismatch(f"exponent {e} has wrong length for nvars={nvars}")
                    clean[tuple(e)] = _norm_coef(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Poly:
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars: int) -> Poly:
        c = _norm_coef(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> Poly:
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        """The variable ``y_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ArityMismatch(f"variable y{i} outside 1..{nvars}")
        e = [0] * nvars
        e[i - 1] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1) -> Poly:
        return cls(len(exps), {tuple(exps): coef})

    # basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def items(self) -> list[tuple[tuple, object]]:
        """Terms in ascending lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: _lex_key(kv[0]))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        """Degree in ``y_i`` (1-based); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[i - 1] for e in self.terms)

    def leading_term(self) -> tuple[tuple, object]:
        e = max(self.terms, key=_lex_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive with integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums, dens = [], []
        for c in self.terms.values():
            if isinstance(c, int):
                nums.append(c)
            else:
                nums.append(c.numerator)
                dens.append(c.denominator)
        g = reduce(gcd, nums, 0)
        d = reduce(lcm, dens, 1)
        return Fraction(abs(g), d)

    def monomial_content(self) -> tuple:
        """Elementwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for k in range(self.nvars):
                if e[k] < m[k]:
                    m[k] = e[k]
        return tuple(m)

    # arithmetic -------------------------------------------------------
    def _check(self, other: Poly):
        if other.nvars != self.nvars:
            raise ArityMismatch(f"nvars {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        res = dict(self.terms)
        for e, c in o.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = _norm_coef(s)
            else:
                res.pop(e, None)
        return Poly._raw(self.nvars, res)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> Poly:
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: _norm_coef(v * c) for e, v in self.terms.items()})

    def shift(self, exps: tuple) -> Poly:
        """Multiply by the monomial y^exps (exponents may be negative if exact)."""
        return Poly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                res[e] = get(e, 0) + ca * cb
        return Poly._raw(self.nvars, {e: _norm_coef(c) for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = Poly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def divmod_exact(self, other: Poly) -> Poly:
        """Quotient of an exact division; raises ``ValueError`` if not exact."""
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        lb, cb = other.leading_term()
        r = dict(self.terms)
        q: dict = {}
        other_items = list(other.terms.items())
        while r:
            lr = max(r, key=_lex_key)
            cr = r[lr]
            qe = tuple(x - y for x, y in zip(lr, lb))
            if min(qe) < 0:
                raise ValueError("polynomial division is not exact")
            if isinstance(cr, int) and isinstance(cb, int) and cr % cb == 0:
                qc = cr // cb
            else:
                qc = _norm_coef(Fraction(cr) / cb)
            q[qe] = qc
            for e, c in other_items:
                t = tuple([x + y for x, y in zip(e, qe)])
                v = r.get(t, 0) - qc * c
                if v:
                    r[t] = _norm_coef(v)
                else:
                    r.pop(t, None)
        return Poly._raw(self.nvars, q)

    def derivative(self, i: int) -> Poly:
        """Partial derivative with respect to ``y_i`` (1-based)."""
        k = i - 1
        res = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                res[tuple(ne)] = c * e[k]
        return Poly._raw(self.nvars, res)

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``; works for Fraction, ModP, complex or float values."""
        if len(point) != self.nvars:
            raise ArityMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        powers: list[dict] = [dict() for _ in range(self.nvars)]
        total = 0
        for e, c in self.terms.items():
            t = c
            for k, ek in enumerate(e):
                if ek:
                    pk = powers[k]
                    if ek not in pk:
                        pk[ek] = point[k] ** ek
                    t = pk[ek] * t
            total = t + total
        return total

    # text form --------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = "*".join(
                f"y{k + 1}" if ek == 1 else f"y{k + 1}^{ek}" for k, ek in enumerate(e) if ek
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Poly({self.nvars}, {self})"

    @classmethod
    def parse(cls, text: str, nvars: int) -> Poly:
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        result: dict = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coef = Fraction(1)
            exps = [0] * nvars
            for factor in body.split("*"):
                m = re.fullmatch(r"y(\d+)(?:\^(\d+))?", factor)
                if m:
                    k = int(m.group(1))
                    if not 1 <= k <= nvars:
                        raise ValueError(f"variable y{k} outside 1..{nvars}")
                    exps[k - 1] += int(m.group(2) or 1)
                else:
                    coef *= Fraction(factor)
            if sign == "-":
                coef = -coef
            key = tuple(exps)
            result[key] = result.get(key, 0) + coef
        return cls(nvars, result)


# ----------------------------------------------------------------------
# multivariate gcd (recursive primitive PRS)


def _as_univariate(p: Poly, v: int) -> dict[int, Poly]:
    """Split p as sum_d c_d * y_v^d with c_d free of y_v (v is 0-based)."""
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        d = e[v]
        if d:
            e = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(d, {})[e] = c
    return {d: Poly._raw(p.nvars, t) for d, t in parts.items()}


def _from_univariate(parts: Mapping[int, Poly], v: int, nvars: int) -> Poly:
    res = {}
    for d, c in parts.items():
        for e, x in c.terms.items():
            res[e[:v] + (d,) + e[v + 1:]] = x
    return Poly._raw(nvars, res)


def _primitive(p: Poly) -> Poly:
    """Integer-primitive associate with positive leading coefficient."""
    if p.is_zero():
        return p
    c = p.content()
    if p.leading_coefficient() < 0:
        c = -c
    return p.scale(1 / c) if c != 1 else p


def _top_var(p: Poly) -> int:
    best = -1
    for e in p.terms:
        for k in range(len(e) - 1, best, -1):
            if e[k]:
                best = k
                break
    return best


def _prem(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        new = {d: c * lb for d, c in r.items() if d != dr}
        for d, c in b.items():
            if d == db:
                continue
            k = d + dr - db
            t = new.get(k)
            t = (t if t is not None else Poly.zero(lb.nvars)) - lr * c
            if t.is_zero():
                new.pop(k, None)
            else:
                new[k] = t
        r = new
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor over Q, normalized to be integer-primitive."""
    a._check(b)
    if a.is_zero():
        return _primitive(b)
    if b.is_zero():
        return _primitive(a)
    ma, mb = a.monomial_content(), b.monomial_content()
    mg = tuple(min(x, y) for x, y in zip(ma, mb))
    a = a.shift(tuple(-x for x in ma))
    b = b.shift(tuple(-x for x in mb))
    g = _gcd_stripped(a, b)
    return g.shift(mg)


def _gcd_stripped(a: Poly, b: Poly) -> Poly:
    n = a.nvars
    if a.is_constant() or b.is_constant():
        return Poly.one(n)
    if a == b:
        return _primitive(a)
    v = max(_top_var(a), _top_var(b))
    ua, ub = _as_univariate(a, v), _as_univariate(b, v)
    ca = reduce(_gcd_stripped, ua.values()) if len(ua) > 1 else _primitive(next(iter(ua.values())))
    cb = reduce(_gcd_stripped, ub.values()) if len(ub) > 1 else _primitive(next(iter(ub.values())))
    c = _gcd_stripped(ca, cb)
    if max(ua) == 0 or max(ub) == 0:
        return c
    pa = {d: x.divmod_exact(ca) for d, x in ua.items()}
    pb = {d: x.divmod_exact(cb) for d, x in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb)
        if not r:
            break
        if max(r) == 0:
            return c
        cr = reduce(_gcd_stripped, r.values()) if len(r) > 1 else _primitive(next(iter(r.values())))
        r = {d: x.divmod_exact(cr) for d, x in r.items()}
        # the polynomial content misses the integer content; drop it too
        k = _from_univariate(r, v, n).content()
        pa, pb = pb, {d: x.scale(1 / k) for d, x in r.items()}
    g = _primitive(_from_univariate(pb, v, n))
    return _primitive(g * c)


# ----------------------------------------------------------------------


class RatFun:
    """Immutable rational function num/den over Q with cheap normalization."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.nvars)
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> RatFun:
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def const(cls, c, nvars: int) -> RatFun:
        c = Fraction(c)
        return cls._raw(Poly.const(c.numerator, nvars), Poly.const(c.denominator, nvars))

    @classmethod
    def one(cls, nvars: int) -> RatFun:
        return cls.const(1, nvars)

    @classmethod
    def zero(cls, nvars: int) -> RatFun:
        return cls.const(0, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> RatFun:
        return cls._raw(Poly.var(i, nvars), Poly.one(nvars))

    @classmethod
    def variables(cls, nvars: int) -> list[RatFun]:
        return [cls.var(i, nvars) for i in range(1, nvars + 1)]

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def total_degree(self) -> int:
        return max(self.num.total_degree(), self.den.total_degree())

    def _lift(self, other) -> RatFun | None:
        if isinstance(other, RatFun):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"nvars {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun.const(other, self.nvars)
        if isinstance(other, Poly):
            return RatFun(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFun.zero(self.nvars)
        an, ad, bn, bd = self.num, self.den, o.num, o.den
        # cancel identical factors across the product before multiplying out
        if an == bd:
            an = bd = Poly.one(self.nvars)
        if ad == bn:
            ad = bn = Poly.one(self.nvars)
        return RatFun(an * bn, ad * bd)

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> RatFun:
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return RatFun.one(self.nvars)
        return RatFun._raw(*_normalize(self.num ** e, self.den ** e))

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RatFun) else other
        if o is None:
            return NotImplemented
        return eq_exact(self, o)

    __hash__ = None  # equality is semantic, not structural

    def identical(self, other: RatFun) -> bool:
        """Structural equality of the normalized representation."""
        return self.num == other.num and self.den == other.den

    def derivative(self, i: int) -> RatFun:
        n, d = self.num, self.den
        return RatFun(n.derivative(i) * d - n * d.derivative(i), d * d)

    def evaluate(self, point: Sequence):
        dv = self.den.evaluate(point)
        if dv == 0:
            raise SingularPoint("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / dv

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFun({self})"

    @classmethod
    def parse(cls, text: str, nvars: int) -> RatFun:
        s = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
        if m and _balanced(m.group(1)) and _balanced(m.group(2)):
            return cls(Poly.parse(m.group(1), nvars), Poly.parse(m.group(2), nvars))
        if s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
            s = s[1:-1]
        return cls(Poly.parse(s, nvars))


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    n = num.nvars
    if num.is_zero():
        return num, Poly.one(n)
    mn, md = num.monomial_content(), den.monomial_content()
    mg = tuple(min(a, b) for a, b in zip(mn, md))
    if any(mg):
        neg = tuple(-x for x in mg)
        num, den = num.shift(neg), den.shift(neg)
    cn, cd = num.content(), den.content()
    if num.leading_coefficient() < 0:
        cn = -cn
    if den.leading_coefficient() < 0:
        cd = -cd
    # both parts primitive with positive leading coefficient; ratio carries the rest
    ratio = cn / cd
    if cn != 1:
        num = num.scale(1 / cn)
    if cd != 1:
        den = den.scale(1 / cd)
    if num == den:
        num = den = Poly.one(n)
    if ratio.numerator != 1:
        num = num.scale(ratio.numerator)
    if ratio.denominator != 1:
        den = den.scale(ratio.denominator)
    return num, den


# ----------------------------------------------------------------------
# module-level operations


def arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    """Field operation ``op`` in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def eq_exact(a: RatFun, b: RatFun) -> bool:
    if a.nvars != b.nvars:
        raise ArityMismatch(f"nvars {a.nvars} vs {b.nvars}")
    if a.num.terms == b.num.terms and a.den.terms == b.den.terms:
        return True
    if a.is_zero() or b.is_zero():
        return False
    return a.num * b.den == b.num * a.den


def modular_failure_bound(degree: int, trials: int, p: int | None = None) -> float:
    """Upper bound on the probability that a nonzero difference of total
    degree ``degree`` vanishes at ``trials`` independent uniform points."""
    p = p or modulus()
    return (max(degree, 0) / p) ** trials


def eq_modular(a: RatFun, b: RatFun, trials: int = 8, seed: int = 0) -> bool:
    """Probabilistic equality by evaluation at random points of GF(p)."""
    if a.nvars != b.nvars:
        raise ArityMismatch(f"nvars {a.nvars} vs {b.nvars}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    p = modulus()
    rng = random.Random(seed)
    evaluated = 0
    for _ in range(trials):
        pt = [ModP(rng.randrange(p), p) for _ in range(a.nvars)]
        try:
            va = a.evaluate(pt)
            vb = b.evaluate(pt)
        except ZeroDivisionError:
            continue
        evaluated += 1
        if va != vb:
            return False
    if not evaluated:
        raise AllPointsSingular("every sampled point hit a vanishing denominator")
    return True


def simplify(a: RatFun, degree_cap: int = 40) -> RatFun:
    """Cancel the full multivariate gcd when both parts have degree <= cap."""
    if a.is_zero() or a.total_degree() > degree_cap:
        return a
    g = poly_gcd(a.num, a.den)
    if g.is_constant():
        return a
    return RatFun(a.num.divmod_exact(g), a.den.divmod_exact(g))


def evaluate(a: RatFun, point: Sequence, field: str = "rational"):
    """Evaluate in ``field``: ``rational`` (Fraction), ``prime`` (GF(p)) or ``complex``."""
    if len(point) != a.nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, expected {a.nvars}")
    if field == "rational":
        pt = [Fraction(x) for x in point]
    elif field == "prime":
        p = modulus()
        pt = [x if isinstance(x, ModP) else ModP(x, p) for x in point]
    elif field == "complex":
        pt = [complex(x) for x in point]
        n = a.num.evaluate(pt)
        d = a.den.evaluate(pt)
        if d == 0:
            raise SingularPoint("denominator vanishes at the evaluation point")
        return complex(n) / complex(d)
    else:
        raise ValueError(f"unknown field {field!r}")
    return a.evaluate(pt)


def variables(nvars: int) -> list[RatFun]:
    return RatFun.variables(nvars)


def ratfuns_from(values: Iterable, nvars: int) -> list[RatFun]:
    return [v if isinstance(v, RatFun) else RatFun.const(v, nvars) for v in values]
