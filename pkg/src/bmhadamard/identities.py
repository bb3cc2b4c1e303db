"""Symbolic verification engine: quadric/determinant identities and the
converse direction of the classification, all over exact function fields.

Two kinds of arithmetic live here.  Small multivariate rational
functions (MPoly / MultiRat, <= 5 variables) carry the foundational
identities behind the reconstruction map.  The per-family work happens
in Q(q)[r]/(r^2-(17q-1)(q-1)) via RatFuncQ, so "vanishes identically in
q" is literal.  The one thing this module does *not* do is recompute
ideal-membership certificates: those are replaced by identical
vanishing of the explicit substitutions plus nonvanishing sweeps over
even q (default bound 200), which is what the downstream consumers
actually rely on.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction

from . import linalg
from .exactfield import TowerElement
from .ratfunc import RatQ, Q, RatFuncQ
from .scheme import ParametricScheme, parametric_eigenmatrix
from .typeii import (
    CASES,
    PAIRS,
    case_a_symbolic,
    normalize_case,
    family_coefficients,
)

DEFAULT_SWEEP_BOUND = 200


class ViolationFound(AssertionError):
    """A sweep found a zero that the classification says cannot exist."""


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over Q

class MPoly:
    """Multivariate polynomial with a fixed variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        cleaned = {}
        for expo, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                cleaned[tuple(expo)] = c
        self.terms = cleaned

    @classmethod
    def const(cls, vars, c):
        c = Fraction(c)
        return cls(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, vars, name):
        i = tuple(vars).index(name)
        expo = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(vars, {expo: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.vars, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"MPoly({len(self.terms)} terms in {self.vars})"


class MultiRat:
    """Fraction of MPoly with lazy reduction (monomial content only).

    Equality is decided by cross-multiplication, so the lack of a full
    multivariate gcd costs nothing but intermediate size; the identities
    handled here stay tiny.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = MPoly.const(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _strip_content(num, den)

    @classmethod
    def var(cls, vars, name):
        return cls(MPoly.var(vars, name))

    @classmethod
    def const(cls, vars, c):
        return cls(MPoly.const(vars, c))

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiRat.const(self.num.vars, other)
        return other

    def __eq__(self, other):
        other = self._coerce(other)
        return (self.num * other.den) == (other.num * self.den)

    def __add__(self, other):
        other = self._coerce(other)
        return MultiRat(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return MultiRat(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return MultiRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return MultiRat(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = MultiRat.const(self.num.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _strip_content(num, den):
    if num.is_zero():
        return num, MPoly.const(den.vars, 1)
    nvars = len(num.vars)
    shift = tuple(min(min(e[i] for e in num.terms),
                      min(e[i] for e in den.terms)) for i in range(nvars))
    if any(shift):
        num = MPoly(num.vars, {tuple(a - s for a, s in zip(e, shift)): c
                               for e, c in num.terms.items()})
        den = MPoly(den.vars, {tuple(a - s for a, s in zip(e, shift)): c
                               for e, c in den.terms.items()})
    return num, den


# ---------------------------------------------------------------------------
# the basic polynomials, generic over any commutative ring elements

def g_quadric(x, y, z):
    """x^2 + y^2 + z^2 - xyz - 4."""
    return x * x + y * y + z * z - x * y * z - 4


def h_det(a01, a02, a03, a12, a13, a23):
    """det [[2, a01, a02], [a01, 2, a12], [a03, a13, a23]]."""
    return (2 * (2 * a23 - a12 * a13)
            - a01 * (a01 * a23 - a12 * a03)
            + a02 * (a01 * a13 - 2 * a03))


def h_four(lookup, i, j, k, l):
    """The four-index determinant constraint on X_{i,j} = lookup((i,j)).

    Up to sign and relabeling this equals ``h_det``; evaluated over all
    permutations of four indices it cuts out the same constraints.
    """
    X = lookup
    return ((X(k, l) * X(k, l) - 4) * X(i, j)
            - X(k, l) * (X(k, i) * X(l, j) + X(k, j) * X(l, i))
            + 2 * (X(k, i) * X(k, j) + X(l, i) * X(l, j)))


# ---------------------------------------------------------------------------
# the four foundational identities

def verify_core_identities():
    """Exact rational-function checks behind the reconstruction map.

    lemma_g:      g vanishes on (X/Y+Y/X, X/Z+Z/X, Z/Y+Y/Z)
    lemma_ww:     the product expansion of w*w' in four indeterminates
    lemma_h:      the 3x3 determinant vanishes on pair ratios
    lemma_w1w2w3: the multiplier identity tying w1*w2 + w3 to the quadric
    """
    out = {}

    vs = ("X", "Y", "Z")
    X, Y, Z = (MultiRat.var(vs, v) for v in vs)
    out["lemma_g"] = g_quadric(X / Y + Y / X, X / Z + Z / X, Z / Y + Y / Z) == 0

    vs = ("X", "Y", "Z", "z")
    X, Y, Z, z = (MultiRat.var(vs, v) for v in vs)
    f = z * z - z * X + 1
    g = g_quadric(X, Y, Z)
    w = (z * z - 1) / (z * Z - Y)
    wp = (z ** (-2) - 1) / (z ** (-1) * Z - Y)
    rhs = 1 + (z * z * g + (2 * z * X - z * Y * Z + f) * f) / (z * (z * Z - Y) * (z * Y - Z))
    out["lemma_ww"] = (w * wp) == rhs

    vs = ("X0", "X1", "X2", "X3")
    xs = [MultiRat.var(vs, v) for v in vs]

    def ratio(i, j):
        return xs[i] / xs[j] + xs[j] / xs[i]

    out["lemma_h"] = h_det(ratio(0, 1), ratio(0, 2), ratio(0, 3),
                           ratio(1, 2), ratio(1, 3), ratio(2, 3)) == 0

    vs = ("X1", "X2", "X3")
    X1, X2, X3 = (MultiRat.var(vs, v) for v in vs)
    one = MultiRat.const(vs, 1)
    ys = [one, X1, X2, X3]

    def r2(i, j):
        return ys[i] / ys[j] + ys[j] / ys[i]

    lhs = (X1 * X2 * X3 + 1) * (r2(0, 1) * r2(0, 2) + r2(0, 3) - r2(1, 2))
    rhs = (X1 * X2 + X3) * (
        r2(0, 1) * r2(0, 2) * r2(0, 3) + 2
        - Fraction(1, 2) * (r2(1, 2) * r2(0, 3) + r2(1, 3) * r2(0, 2)
                            + r2(2, 3) * r2(0, 1)))
    out["lemma_w1w2w3"] = lhs == rhs
    return out


# ---------------------------------------------------------------------------
# the linear forms e_k and the converse substitutions

class EPolynomial:
    """e_k = sum_{i<j} P_{k,i} P_{k,j} X_{i,j} + sum_i P_{k,i}^2 - n.

    Linear in the X_{i,j}; coefficients are rational functions of q.
    """

    def __init__(self, k, coeffs, constant):
        self.k = k
        self.coeffs = coeffs      # {(i, j): RatQ}
        self.constant = constant  # RatQ

    def evaluate(self, values):
        """Plug in X_{i,j} -> values[(i,j)] (any RatFuncQ-compatible)."""
        acc = RatFuncQ(self.constant)
        for pair, c in self.coeffs.items():
            acc = acc + RatFuncQ(c) * values[pair]
        return acc

    def evaluate_exact(self, values, zero):
        """Same, over tower elements (values: dict pair -> TowerElement)."""
        acc = zero
        for pair, c in self.coeffs.items():
            acc = acc + values[pair] * c  # c is RatQ evaluated by caller
        return acc


def e_polynomials(P=None):
    """The d linear forms cutting out type-II points, k = 1..d."""
    if P is None:
        P = parametric_eigenmatrix()
    d = len(P) - 1
    n = sum(P[0][j] for j in range(d + 1))
    out = []
    for k in range(1, d + 1):
        coeffs = {(i, j): P[k][i] * P[k][j]
                  for i in range(d + 1) for j in range(i + 1, d + 1)}
        constant = sum((P[k][i] * P[k][i] for i in range(d + 1)), RatQ(0)) - n
        out.append(EPolynomial(k, coeffs, constant))
    return out


def _pair_values(case):
    vec = case_a_symbolic(case)
    return {pair: vec[t] for t, pair in enumerate(PAIRS)}


def converse_constraints(values):
    """All g, h and e_k values at a substitution dict {(i,j): RatFuncQ}."""
    def X(i, j):
        return values[(min(i, j), max(i, j))]

    out = []
    for tri in itertools.combinations(range(4), 3):
        out.append(g_quadric(X(tri[0], tri[1]), X(tri[0], tri[2]),
                             X(tri[1], tri[2])))
    for perm in itertools.permutations(range(4)):
        out.append(h_four(X, *perm))
    for e in e_polynomials():
        out.append(e.evaluate(values))
    return out


def verify_converse(case):
    """Does the family's a-vector annihilate every constraint in q?

    Works in Q(q) extended by r for the sixth family, so a True answer
    is an identity for all q, not a sampled statement.
    """
    values = _pair_values(case)
    return all(c.is_zero() for c in converse_constraints(values))


# ---------------------------------------------------------------------------
# the symmetry functional (used by the Nomura-algebra argument)

def ns_symbolic(case):
    """sum_{j<k} p_jk^i (a_{j,k}^2 - 2) + sum_j p_jj^i for i = 1..3,
    as exact functions of q (and r for the sixth family)."""
    ps = ParametricScheme()
    vals = _pair_values(case)
    out = []
    for i in range(1, 4):
        acc = RatFuncQ(0)
        for j in range(4):
            for k in range(j + 1, 4):
                a = vals[(j, k)]
                acc = acc + RatFuncQ(ps.p(j, k, i)) * (a * a - 2)
            acc = acc + RatFuncQ(ps.p(j, j, i))
        out.append(acc)
    return out


# appendix factor lists for the eliminated-q polynomials of the symmetry
# functional; recorded as *untrusted* fixtures and only consulted by
# divisibility spot-checks, never by any verdict
NS_FACTOR_FIXTURES = {
    "i": ["(q-2)*(q-1)*(q+1)*(q+2)"] * 3,
    "ii": ["(q-2)*(q-1)*(q+1)*(q^4-10*q^2+4*q+17)",
           "(q-2)*(q-1)*(q+1)*(q^4-10*q^2+4*q+17)",
           "(q-2)*(q-1)*(q+1)*(q+2)"],
    "iii": ["q^6-13*q^4+28*q^2+64", "q^4-9*q^2+24", "q^6-13*q^4+28*q^2+64"],
    "iv": ["(q-2)*(q-1)*(q+1)*(q+2)"] * 3,
    "v": ["(q-2)*(q-1)*(q+1)*(q^2-2*q-4)",
          "(q-2)*(q-1)*(q+1)*(q^2-2*q-4)",
          "(q-2)*(q-1)*(q+1)*(q+2)"],
    "vi": ["q^3*(q-3)^2*(q-1)*(q+1)^2*(q^9-q^8-12*q^7+14*q^6+49*q^5"
           "+51*q^4-894*q^3-464*q^2+4664*q-272)",
           "q^3*(q-3)^2*(q-2)*(q-1)*(q+1)^2*(q^7+3*q^6-4*q^5+2*q^4"
           "+57*q^3-q^2-86*q+92)",
           "q^2*(q-3)^2*(q-1)*(q+1)^2*(q^8-2*q^7+66*q^5-273*q^4"
           "-288*q^3+1344*q^2-288*q+16)"],
}


def parse_poly(text):
    """Tiny evaluator for the fixture strings (products/powers in q)."""
    env = {"q": Q, "__builtins__": {}}
    expr = text.replace("^", "**")
    val = eval(expr, env)  # noqa: S307 - fixed fixture strings only
    return val if isinstance(val, RatQ) else RatQ(val)


def ns_norm_numerator(case, i):
    """Numerator of the i-th symmetry value, after eliminating r.

    Values free of r keep their own numerator; values A + B*r go through
    the norm A^2 - B^2 (17q-1)(q-1), whose vanishing at some q captures
    "zero for one of the two signs of r".
    """
    v = ns_symbolic(case)[i - 1]
    if v.r_part is None:
        return v.plain.num
    norm = v * v.conj_r()
    assert norm.r_part is None
    return norm.plain.num


def poly_roots_contained(num, fixture):
    """Every irreducible factor of num divides fixture (multiplicity-free).

    Used to reconcile reduced numerators with the recorded fixtures: the
    fixtures come from cleared (unreduced) denominators, so they may
    carry extra linear factors and different multiplicities, but the
    zero sets must agree in this direction.
    """
    rem = num
    while rem.degree > 0:
        g = rem.gcd(fixture)
        if g.degree == 0:
            return False
        rem = rem.divmod(g)[0]
    return True


def ns_fixture_report(case, i):
    """Compare the i-th symmetry numerator against the recorded fixture."""
    num = ns_norm_numerator(case, i)
    fixture = parse_poly(NS_FACTOR_FIXTURES[normalize_case(case)][i - 1]).num
    quo, rem = num.divmod(fixture)
    return {
        "fixture_divides_numerator": rem.is_zero(),
        "numerator_roots_in_fixture": poly_roots_contained(num, fixture),
    }


# ---------------------------------------------------------------------------
# nonvanishing sweeps

def sweep_bound(default=DEFAULT_SWEEP_BOUND):
    env = os.environ.get("HW_SWEEP_BOUND")
    if env:
        b = int(env)
        if b < 4:
            raise ValueError("HW_SWEEP_BOUND must be >= 4")
        return b
    return default


def even_q_range(bound=None, start=4):
    bound = sweep_bound() if bound is None else bound
    return range(start, bound + 1, 2)


def _rf_zero_at(f, q, r_sign):
    """Exact: does A(q) + B(q)*r vanish for the chosen sign of r?"""
    a = f.plain(q)
    if f.r_part is None:
        return a == 0
    b = f.r_part(q)
    from .ratfunc import R_SQUARED
    from .exactfield import rational_sqrt
    rho = R_SQUARED(q)
    root = rational_sqrt(rho)
    if root is None:
        return a == 0 and b == 0
    return a + b * (r_sign * root) == 0


def _case_sign_pairs(case):
    case = normalize_case(case)
    if case == "vi":
        return [(case, 1), (case, -1)]
    return [(case, 1)]


def scan_nonvanishing(expr_id, case, q_set=None):
    """Evaluate one family of nonvanishing claims over a q sweep.

    expr_id:
      nomura_symmetric_k : the symmetry functional for i = 1, 2, 3
      jones_adjacency    : sums p_ij^m p_3k^i w_i^2/(w_k w_j), m = 1, 2
      jones_component    : infeasibility of the linear system on the
                           unknown triangle counters (with both ratio
                           sums and all marginals imposed)

    Returns [(q, ok), ...]; raises ViolationFound when a zero shows up,
    which would contradict the classification.
    """
    case = normalize_case(case)
    if q_set is None:
        q_set = even_q_range()
    results = []
    violations = []
    if expr_id == "nomura_symmetric_k":
        values = ns_symbolic(case)
        for q in q_set:
            ok = all(not _rf_zero_at(v, q, sign)
                     for v in values
                     for _, sign in _case_sign_pairs(case))
            results.append((q, ok))
            if not ok:
                violations.append(q)
    elif expr_id == "jones_adjacency":
        for q in q_set:
            ok = _jones_adjacency_ok(case, q)
            results.append((q, ok))
            if not ok:
                violations.append(q)
    elif expr_id == "jones_component":
        for q in q_set:
            ok = _jones_component_ok(case, q)
            results.append((q, ok))
            if not ok:
                violations.append(q)
    else:
        raise ValueError(f"unknown expression id {expr_id!r}")
    if violations:
        raise ViolationFound(f"{expr_id}/{case}: zero at q in {violations}")
    return results


def _weight_variants(case, q):
    """All exact weight vectors of a family at q (branches x r signs)."""
    out = []
    for _, sign in _case_sign_pairs(case):
        for branch in (1, -1):
            out.append(family_coefficients(case, q, sign, branch))
    return out


def _jones_adjacency_ok(case, q):
    ps = ParametricScheme()
    p_at = ps.p_at(q)
    for fam in _weight_variants(case, q):
        w = fam.weights
        w_inv = [x.inverse() for x in w]
        zero = TowerElement.rational(0, fam.desc)
        for m in (1, 2):
            acc = zero
            for i in range(4):
                for j in range(4):
                    pij = p_at[i][j][m]
                    if pij == 0:
                        continue
                    for k in range(4):
                        p3k = p_at[3][k][i]
                        if p3k == 0:
                            continue
                        term = w[i] * w[i] * w_inv[j] * w_inv[k]
                        acc = acc + term * (pij * p3k)
            if acc.is_zero():
                return False
    return True


def _jones_component_ok(case, q):
    """No field solution for the unknown counters c_{ijk}, i,j,k in {1,2}.

    Known counters: patterns containing 0 contribute only for the three
    permutations of (0, 3, 3) (value 1); patterns containing 3 only for
    (3, 3, 3) (value p_33^3 - 1); marginal sums over each slot equal
    p_jk^3.  Infeasibility of {marginals, both ratio sums = 0} over the
    weight field at q is exactly what the component argument needs.
    """
    ps = ParametricScheme()
    p_at = ps.p_at(q)
    unknowns = [(i, j, k) for i in (1, 2) for j in (1, 2) for k in (1, 2)]
    index = {t: n for n, t in enumerate(unknowns)}

    for fam in _weight_variants(case, q):
        w = fam.weights
        w_inv = [x.inverse() for x in w]
        zero = TowerElement.rational(0, fam.desc)
        one = TowerElement.rational(1, fam.desc)

        def known(i, j, k):
            if 0 in (i, j, k):
                return 1 if sorted((i, j, k)) == [0, 3, 3] else 0
            if 3 in (i, j, k):
                if (i, j, k) == (3, 3, 3):
                    return p_at[3][3][3] - 1
                return 0
            return None

        def ratio_ff(i, j, k):
            return w[i] * w[i] * w_inv[j] * w_inv[k]

        def ratio_gg(i, j, k):
            return w[j] * w[k] * w_inv[i] * w_inv[i]

        rows, rhs = [], []
        # marginals: sum over first / second / third slot = p_jk^3
        for j in (1, 2):
            for k in (1, 2):
                for slot in range(3):
                    row = [zero] * 8
                    for i in (1, 2):
                        t = [j, k]
                        t.insert(slot, i)
                        row[index[tuple(t)]] = one
                    rows.append(row)
                    rhs.append(TowerElement.rational(
                        Fraction(p_at[j][k][3]), fam.desc))
        for ratio in (ratio_ff, ratio_gg):
            row = [zero] * 8
            const = zero
            for i in range(4):
                for j in range(4):
                    for k in range(4):
                        c = known(i, j, k)
                        if c is None:
                            row[index[(i, j, k)]] = ratio(i, j, k)
                        elif c:
                            const = const + ratio(i, j, k) * Fraction(c)
            rows.append(row)
            rhs.append(-const)
        sol = linalg.solve(rows, rhs, zero=zero, one=one)
        if sol is not None:
            return False
    return True
