"""Rational functions of the scheme parameter q, optionally carrying r.

``PolyQ``/``RatQ`` are plain dense univariate polynomials / reduced
fractions over Q.  ``RatFuncQ`` is the working field for parametric
computations: values A(q) + B(q)*r subject to r**2 = (17q-1)(q-1).
All identities "in q" proved by this package are equalities of reduced
RatFuncQ values, so they hold identically, not just at sampled points.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import (
    TowerElement,
    QQ,
    adjoin_radical,
    rational_sqrt,
)


class PoleAtQ0(ZeroDivisionError):
    """Specialization hit a zero of the denominator."""


class InvalidRValue(ValueError):
    """Supplied r does not square to (17q-1)(q-1) at the given q."""


class PolyQ:
    """Dense univariate polynomial over Q, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c):
        return PolyQ((Fraction(c),))

    @staticmethod
    def x():
        return PolyQ((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = PolyQ.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lead
            if c == 0:
                continue
            quo[i - d] = c
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] -= c * oc
        return PolyQ(quo), PolyQ(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * (1 / a.leading())

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def __call__(self, q0):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def __repr__(self):
        if self.is_zero():
            return "PolyQ<0>"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*q^{i}" if i else f"{c}")
        return "PolyQ<" + " + ".join(terms) + ">"


class RatQ:
    """Reduced fraction of PolyQ with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, PolyQ):
            num = PolyQ.const(num)
        if den is None:
            den = PolyQ.const(1)
        elif not isinstance(den, PolyQ):
            den = PolyQ.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return RatQ(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatQ(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return RatQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatQ(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratq(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatQ(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, q0):
        q0 = Fraction(q0)
        d = self.den(q0)
        if d == 0:
            raise PoleAtQ0(f"pole at q = {q0}")
        return self.num(q0) / d

    def __repr__(self):
        return f"RatQ({self.num!r} / {self.den!r})"


def _as_ratq(v):
    if isinstance(v, RatQ):
        return v
    if isinstance(v, PolyQ):
        return RatQ(v)
    if isinstance(v, (int, Fraction)):
        return RatQ(PolyQ.const(v))
    return NotImplemented


Q = RatQ(PolyQ.x())
# defining relation for the auxiliary square root r
R_SQUARED = (17 * Q - 1) * (Q - 1)


class RatFuncQ:
    """Element A(q) + B(q)*r of Q(q)[r]/(r^2 - (17q-1)(q-1)).

    ``r_part`` is None for plain rational functions; arithmetic promotes
    as needed and reduces r^2 on the fly.
    """

    __slots__ = ("plain", "r_part")

    def __init__(self, plain, r_part=None):
        p = _as_ratq(plain)
        if p is NotImplemented:
            raise TypeError(f"bad plain part {plain!r}")
        self.plain = p
        if r_part is not None:
            rp = _as_ratq(r_part)
            if rp is NotImplemented:
                raise TypeError(f"bad r part {r_part!r}")
            if rp.is_zero():
                rp = None
            self.r_part = rp
        else:
            self.r_part = None

    @property
    def numerator(self):
        return self.plain.num

    @property
    def denominator(self):
        return self.plain.den

    @staticmethod
    def r():
        return RatFuncQ(RatQ(0), RatQ(1))

    def has_r(self):
        return self.r_part is not None

    def is_zero(self):
        return self.plain.is_zero() and self.r_part is None

    def _parts(self):
        return self.plain, (self.r_part if self.r_part is not None else RatQ(0))

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.plain == other.plain and self.r_part == other.r_part

    def __hash__(self):
        return hash((self.plain, self.r_part))

    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._parts()
        c, d = other._parts()
        return RatFuncQ(a + c, b + d)

    __radd__ = __add__

    def __neg__(self):
        a, b = self._parts()
        return RatFuncQ(-a, -b)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._parts()
        c, d = other._parts()
        return RatFuncQ(a * c + b * d * R_SQUARED, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self._parts()
        n = a * a - b * b * R_SQUARED
        if n.is_zero():
            raise ZeroDivisionError("not invertible")
        return RatFuncQ(a / n, -b / n)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFuncQ(RatQ(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj_r(self):
        """The image under r -> -r."""
        a, b = self._parts()
        return RatFuncQ(a, -b)

    def __repr__(self):
        if self.r_part is None:
            return f"RatFuncQ({self.plain!r})"
        return f"RatFuncQ({self.plain!r} + ({self.r_part!r})*r)"


def _as_rf(v):
    if isinstance(v, RatFuncQ):
        return v
    base = _as_ratq(v)
    if base is NotImplemented:
        return NotImplemented
    return RatFuncQ(base)


QF = RatFuncQ(Q)
RF_R = RatFuncQ.r()


def ratfunc_specialize(f, q0, r_value=None):
    """Evaluate f at q = q0 as an exact tower element.

    ``r_value`` must be supplied when f carries an r part and must
    square to (17*q0-1)(q0-1); plain values come back in the rational
    tower (or r_value's tower so arithmetic with it stays closed).
    """
    f = _as_rf(f)
    q0 = Fraction(q0)
    base = f.plain(q0)
    if f.r_part is None:
        if r_value is not None:
            return TowerElement.rational(base, r_value.desc)
        return TowerElement.rational(base)
    if r_value is None:
        raise InvalidRValue("f involves r; supply its exact value")
    rho = R_SQUARED(q0)
    if r_value * r_value != rho:
        raise InvalidRValue(f"r**2 != (17q-1)(q-1) at q = {q0}")
    return r_value * f.r_part(q0) + base


def r_value_at(q0, sign=1):
    """An exact square root of (17*q0-1)(q0-1), with its tower.

    Returns (descriptor, element).  The element is rational when the
    radicand is a perfect square, else lives in a fresh depth-1 tower
    over a squarefree radicand, scaled by ``sign``.
    """
    q0 = Fraction(q0)
    rho = R_SQUARED(q0)
    root = rational_sqrt(rho)
    if root is not None:
        return QQ, TowerElement.rational(sign * root)
    desc, rt = adjoin_radical(QQ, rho)
    return desc, rt * sign
