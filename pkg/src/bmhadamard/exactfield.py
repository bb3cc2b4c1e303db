"""Exact arithmetic in towers of quadratic extensions of Q.

A tower is a chain Q = K_0 < K_1 < ... < K_m where each level K_j is
K_{j-1}[t] / (t^2 - p*t - s) for some p, s in K_{j-1} with t^2 - p*t - s
irreducible over K_{j-1}.  Elements are stored as nested pairs (a, b)
meaning a + b*t, bottoming out at `fractions.Fraction`.  Equality is
structural on reduced coefficients, so exact zero tests are just
comparisons; nothing here ever rounds.

Depth stays at most 3 for everything this package builds (a real
quadratic level for a square root of a rational, optionally topped by
one more quadratic level for a unimodular weight).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class DivisionByZero(ZeroDivisionError):
    """Division or inversion with an exactly-zero divisor."""


class IncompatibleTowers(ValueError):
    """Mixed operands whose descriptors are not prefix-compatible."""


class Reducible(ValueError):
    """Attempt to adjoin a quadratic that splits in the current field.

    Carries ``root``: one root of the quadratic, as an element of the
    current field, so the caller can keep working at the same depth.
    """

    def __init__(self, message, root=None):
        super().__init__(message)
        self.root = root


# ---------------------------------------------------------------------------
# integer / rational helpers

def rational_sqrt(x):
    """Exact square root of a Fraction, or None if x is not a square."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_decompose(n):
    """Write a nonzero integer n as m * c**2 with m squarefree.

    Returns (m, c), c > 0.  Trial division; the radicands handled here
    stay below ~10**10 so this is plenty.
    """
    if n == 0:
        raise ValueError("need a nonzero integer")
    sign = -1 if n < 0 else 1
    n = abs(n)
    m, c = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            c *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    m *= n
    return sign * m, c


def rational_radical_parts(x):
    """Split sqrt(x) for a nonzero rational x as (m, scale).

    sqrt(x) = scale * sqrt(m) with m a squarefree integer and scale a
    positive rational.  Used to canonicalize pure-radical tower levels.
    """
    n, d = x.numerator, x.denominator
    m, c = squarefree_decompose(n * d)
    return m, Fraction(c, d)


# ---------------------------------------------------------------------------
# raw coefficient-tree arithmetic (level-0 reps are Fractions,
# level-k reps are pairs of level-(k-1) reps)

def _zero(depth):
    if depth == 0:
        return Fraction(0)
    return (_zero(depth - 1), _zero(depth - 1))


def _const(depth, q):
    if depth == 0:
        return Fraction(q)
    return (_const(depth - 1, q), _zero(depth - 1))


def _is_zero(x):
    if isinstance(x, tuple):
        return _is_zero(x[0]) and _is_zero(x[1])
    return x == 0


def _add(x, y):
    if isinstance(x, tuple):
        return (_add(x[0], y[0]), _add(x[1], y[1]))
    return x + y


def _sub(x, y):
    if isinstance(x, tuple):
        return (_sub(x[0], y[0]), _sub(x[1], y[1]))
    return x - y


def _neg(x):
    if isinstance(x, tuple):
        return (_neg(x[0]), _neg(x[1]))
    return -x


def _mul(levels, depth, x, y):
    # (a + b t)(c + d t) = ac + bd s + (ad + bc + bd p) t  with t^2 = p t + s
    if depth == 0:
        return x * y
    a, b = x
    c, d = y
    low = depth - 1
    p, s = levels[depth - 1]
    ac = _mul(levels, low, a, c)
    bd = _mul(levels, low, b, d)
    ad_bc = _add(_mul(levels, low, a, d), _mul(levels, low, b, c))
    re = _add(ac, _mul(levels, low, bd, s))
    im = _add(ad_bc, _mul(levels, low, bd, p))
    return (re, im)


def _conj(levels, depth, x):
    # galois conjugate at the top level: t -> p - t
    a, b = x
    p, _ = levels[depth - 1]
    return (_add(a, _mul(levels, depth - 1, b, p)), _neg(b))


def _norm(levels, depth, x):
    # x * conj(x) = a^2 + a b p - b^2 s, an element one level down
    a, b = x
    low = depth - 1
    p, s = levels[depth - 1]
    aa = _mul(levels, low, a, a)
    bb = _mul(levels, low, b, b)
    abp = _mul(levels, low, _mul(levels, low, a, b), p)
    return _sub(_add(aa, abp), _mul(levels, low, bb, s))


def _inv(levels, depth, x):
    if depth == 0:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / x
    if _is_zero(x):
        raise DivisionByZero("inverse of zero")
    n_inv = _inv(levels, depth - 1, _norm(levels, depth, x))
    ca, cb = _conj(levels, depth, x)
    return (_mul(levels, depth - 1, ca, n_inv),
            _mul(levels, depth - 1, cb, n_inv))


def _scale(x, q):
    if isinstance(x, tuple):
        return (_scale(x[0], q), _scale(x[1], q))
    return x * q


def _flatten(x, out):
    if isinstance(x, tuple):
        _flatten(x[0], out)
        _flatten(x[1], out)
    else:
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# descriptors

class TowerDescriptor:
    """An ordered chain of quadratic levels over Q.

    ``levels`` is a tuple of (p, s) pairs; level j adjoins a root of
    t^2 - p*t - s where p and s are raw reps at depth j.  Descriptors
    are immutable and compare structurally.
    """

    __slots__ = ("levels", "_hash")

    def __init__(self, levels=()):
        self.levels = tuple(levels)
        self._hash = hash(tuple((tuple(_flatten(p, [])), tuple(_flatten(s, [])))
                                for p, s in self.levels))

    @property
    def depth(self):
        return len(self.levels)

    @property
    def degree(self):
        return 1 << len(self.levels)

    def __eq__(self, other):
        return isinstance(other, TowerDescriptor) and self.levels == other.levels

    def __hash__(self):
        return self._hash

    def is_prefix_of(self, other):
        return self.levels == other.levels[: len(self.levels)]

    def __repr__(self):
        return f"TowerDescriptor(depth={self.depth})"


QQ = TowerDescriptor()


class TowerElement:
    """An exact algebraic number a + b*t, nested down to rationals."""

    __slots__ = ("desc", "rep")

    def __init__(self, desc, rep):
        self.desc = desc
        self.rep = rep

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(q, desc=QQ):
        return TowerElement(desc, _const(desc.depth, Fraction(q)))

    @staticmethod
    def generator(desc):
        """The adjoined root t of the top level of ``desc``."""
        if desc.depth == 0:
            raise ValueError("Q has no generator")
        low = desc.depth - 1
        return TowerElement(desc, (_zero(low), _const(low, 1)))

    # -- structural helpers -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.desc == self.desc:
                return self, other
            if other.desc.is_prefix_of(self.desc):
                return self, other.lift(self.desc)
            if self.desc.is_prefix_of(other.desc):
                return self.lift(other.desc), other
            raise IncompatibleTowers("operands live in unrelated towers")
        if isinstance(other, (int, Fraction)):
            return self, TowerElement.rational(other, self.desc)
        return self, NotImplemented

    def lift(self, desc):
        """Reinterpret inside a taller tower having this one as a prefix."""
        if not self.desc.is_prefix_of(desc):
            raise IncompatibleTowers("not a prefix")
        rep = self.rep
        for d in range(self.desc.depth, desc.depth):
            rep = (rep, _zero(d))
        return TowerElement(desc, rep)

    def descend(self):
        """Drop top levels whose coefficient is zero (canonical home)."""
        desc, rep = self.desc, self.rep
        while desc.depth > 0 and _is_zero(rep[1]):
            desc = TowerDescriptor(desc.levels[:-1])
            rep = rep[0]
        return TowerElement(desc, rep)

    def coefficients(self):
        """Flat tuple of the 2**depth rational coordinates."""
        return tuple(_flatten(self.rep, []))

    def is_zero(self):
        return _is_zero(self.rep)

    def is_rational(self):
        return all(c == 0 for c in self.coefficients()[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coefficients()[0]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return TowerElement(a.desc, _add(a.rep, b.rep))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return TowerElement(a.desc, _sub(a.rep, b.rep))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TowerElement(self.desc, _neg(self.rep))

    def __mul__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return TowerElement(a.desc, _mul(a.desc.levels, a.desc.depth, a.rep, b.rep))

    __rmul__ = __mul__

    def inverse(self):
        return TowerElement(self.desc, _inv(self.desc.levels, self.desc.depth, self.rep))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = TowerElement.rational(1, self.desc)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TowerElement.rational(other, self.desc)
        if not isinstance(other, TowerElement):
            return NotImplemented
        try:
            a, b = self._coerce(other)
        except IncompatibleTowers:
            return False
        return a.rep == b.rep

    def __hash__(self):
        return hash((self.desc, self.coefficients()))

    def __repr__(self):
        return f"TowerElement({self.coefficients()})"

    # -- galois structure ---------------------------------------------------

    def galois_conj(self, level=None):
        """Conjugate at one tower level (default: the top level).

        Flips the sign of the coefficient of that level's root relative
        to its minimal polynomial (t -> p - t).
        """
        depth = self.desc.depth
        if depth == 0:
            return self
        if level is None:
            level = depth - 1
        if not 0 <= level < depth:
            raise ValueError("no such level")

        def walk(d, rep):
            if d - 1 == level:
                return _conj(self.desc.levels, d, rep)
            a, b = rep
            return (walk(d - 1, a), walk(d - 1, b))

        return TowerElement(self.desc, walk(depth, self.rep))

    def trace_conj(self, level=None):
        """(trace, conjugate) at a level; trace = x + conjugate."""
        c = self.galois_conj(level)
        return self + c, c

    def norm_down(self):
        """x * galois_conj(x) at the top level, pushed one level down."""
        if self.desc.depth == 0:
            return self
        low_desc = TowerDescriptor(self.desc.levels[:-1])
        return TowerElement(low_desc, _norm(self.desc.levels, self.desc.depth, self.rep))


# ---------------------------------------------------------------------------
# free-function operations

def tower_arith(op, x, y=None):
    """Dispatch-style field arithmetic ({add|sub|mul|div|neg|inv})."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown op {op!r}")


def field_sqrt(x):
    """A square root of x inside its own tower, or None.

    Decides "is x a square in K" exactly, level by level.  At a level
    t^2 = p*t + s we first rewrite in the shifted basis u = t - p/2
    (u^2 = s + p^2/4 lies one level down), where (c + d*u)^2 = x
    reduces to a quadratic in d^2 over the level below.
    """
    if x.is_zero():
        return TowerElement(x.desc, _zero(x.desc.depth))
    desc = x.desc
    depth = desc.depth
    if depth == 0:
        r = rational_sqrt(x.rep)
        return None if r is None else TowerElement(desc, r)

    levels = desc.levels
    low_desc = TowerDescriptor(levels[:-1])
    p, s = levels[-1]
    half_p = TowerElement(low_desc, _scale(p, Fraction(1, 2)))
    # u = t - p/2, u^2 = m where m = s + p^2/4
    m = TowerElement(low_desc, s) + half_p * half_p
    a_raw, b_raw = x.rep
    a = TowerElement(low_desc, a_raw)
    b = TowerElement(low_desc, b_raw)
    # x = a + b t = (a + b p/2) + b u
    a = a + b * half_p

    def build(c, d):
        # c + d u = (c - d p/2) + d t
        re = c - d * half_p
        return TowerElement(desc, (re.rep, d.rep))

    if b.is_zero():
        c = field_sqrt(a)
        if c is not None:
            return c.lift(desc)
        # sqrt(a) = d*u with d^2 = a/m
        dd = field_sqrt(a / m)
        if dd is not None:
            return build(TowerElement.rational(0, low_desc), dd)
        return None
    # (c + d u)^2 = c^2 + d^2 m + 2 c d u:  2cd = b, c^2 + d^2 m = a
    # => c = b/(2d), and m*(d^2)^2 - a*(d^2) + b^2/4 = 0
    disc = a * a - m * (b * b)
    root = field_sqrt(disc)
    if root is None:
        return None
    two_m = m * 2
    for sign in (1, -1):
        d2 = (a + sign * root) / two_m
        d = field_sqrt(d2)
        if d is not None and not d.is_zero():
            c = b / (d * 2)
            return build(c, d)
    return None


def adjoin_root(desc, p, s):
    """Extend ``desc`` by a root of t^2 - p*t - s.

    p and s are TowerElements of (a prefix of) ``desc``'s field, or
    rationals.  Raises Reducible (with a root attached) when the
    quadratic already splits, so the caller can stay at the current
    depth; this keeps descriptors minimal and equality decidable.
    """
    if not isinstance(p, TowerElement):
        p = TowerElement.rational(p, desc)
    if not isinstance(s, TowerElement):
        s = TowerElement.rational(s, desc)
    p = p.lift(desc) if p.desc != desc else p
    s = s.lift(desc) if s.desc != desc else s
    disc = p * p + 4 * s
    root = field_sqrt(disc)
    if root is not None:
        half = (p + root) / 2
        raise Reducible("quadratic splits in the current field", root=half)
    return TowerDescriptor(desc.levels + ((p.rep, s.rep),))


def adjoin_radical(desc, radicand):
    """Extend by a square root of ``radicand`` (pure quadratic, p = 0).

    Rational radicands are canonicalized to a squarefree integer: the
    caller gets back (new descriptor, the requested sqrt as an element).
    Raises Reducible when the radicand is already a square.
    """
    if isinstance(radicand, (int, Fraction)):
        radicand = TowerElement.rational(radicand, desc)
    if radicand.desc != desc:
        radicand = radicand.lift(desc)
    if radicand.is_zero():
        raise ValueError("radicand must be nonzero")
    if radicand.is_rational():
        m, scale = rational_radical_parts(radicand.as_rational())
        new_desc = adjoin_root(desc, 0, m)
        t = TowerElement.generator(new_desc)
        return new_desc, t * scale
    new_desc = adjoin_root(desc, 0, radicand)
    return new_desc, TowerElement.generator(new_desc)


def embed_signature(desc):
    """Classify each level's root as real (+1) or imaginary (-1).

    Level j with t^2 = p*t + s has roots (p +- sqrt(p^2+4s))/2; they are
    a complex-conjugate pair exactly when the shifted radicand
    m = s + p^2/4 is a negative real.  Requires every radicand to be a
    totally ordered (real) element, i.e. imaginary levels may only sit
    at positions where no later radicand depends on them.  Every tower
    this package builds satisfies that (imaginary level on top).
    """
    from .intervals import element_sign  # local import, avoids a cycle

    signs = []
    for j, (p, s) in enumerate(desc.levels):
        low = TowerDescriptor(desc.levels[:j])
        if any(sg < 0 for sg in signs):
            raise IncompatibleTowers(
                "imaginary level below another level: embedding undefined")
        p_el = TowerElement(low, p)
        s_el = TowerElement(low, s)
        m = s_el + (p_el * p_el) * Fraction(1, 4)
        sg = element_sign(m, tuple(signs))
        if sg == 0:
            raise ValueError("degenerate level (zero discriminant)")
        signs.append(sg)
    return tuple(signs)


def is_real(x):
    """Exact test: does x land in R under the default embedding?

    True iff the coefficient of every imaginary level's root vanishes,
    which for our towers (imaginary level topmost) is the same as being
    fixed by complex conjugation.
    """
    return complex_conj(x) == x


def complex_conj(x):
    """Complex conjugation as a tower automorphism.

    Fixes real levels, applies t -> p - t at imaginary levels.  Only
    meaningful for towers with a well-defined default embedding.
    """
    sig = embed_signature(x.desc)
    out = x
    for level, sg in enumerate(sig):
        if sg < 0:
            out = out.galois_conj(level)
    return out
