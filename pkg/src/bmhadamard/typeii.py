"""The six exact weight families and their type-II / Hadamard certificates.

A weight vector (1, w1, w2, w3) turns into the matrix
W = A0 + w1*A1 + w2*A2 + w3*A3 of the 3-class scheme.  Each family
fixes the pairwise values a_{i,j} = w_i/w_j + w_j/w_i as explicit
rational functions of q (and of r with r^2 = (17q-1)(q-1) for the last
family); the weights themselves are roots of unit quadratics
w^2 - a*w + 1 built in a minimal tower, with the quadratic-root choice
recorded as ``branch`` and the sign of r as ``r_sign``.

Everything decided here is an exact zero test; the interval arithmetic
in :mod:`bmhadamard.intervals` only double-checks unimodularity claims.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import (
    TowerElement,
    adjoin_radical,
    field_sqrt,
    complex_conj,
    is_real,
)
from .intervals import element_sign, abs_is_one
from .ratfunc import QF, RF_R, RatFuncQ, ratfunc_specialize, r_value_at
from .scheme import build_petersen_line_scheme, ParametricScheme

CASES = ("i", "ii", "iii", "iv", "v", "vi")
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class InvalidCase(ValueError):
    pass


class QTooSmall(ValueError):
    pass


class ZeroWeight(ValueError):
    pass


class DenominatorZero(ZeroDivisionError):
    """The reconstruction denominator vanished: the a-matrix was invalid."""


class AllPlusMinusTwo(ValueError):
    """Every a_{i,j} is +-2; use the degenerate section instead."""


class NoWitness(ValueError):
    pass


class NotSquare(ValueError):
    pass


def normalize_case(case):
    if isinstance(case, int):
        if not 1 <= case <= 6:
            raise InvalidCase(f"no case {case}")
        return CASES[case - 1]
    c = str(case).strip().lower()
    if c in CASES:
        return c
    raise InvalidCase(f"no case {case!r}")


# ---------------------------------------------------------------------------
# symbolic a-vectors (order a01, a02, a03, a12, a13, a23)

def case_a_symbolic(case):
    """The a-values of a family as exact functions of q (and r for vi).

    For the sixth family the vector is written with +r; substituting an
    exact negative square root at specialization time gives the r < 0
    matrices.
    """
    case = normalize_case(case)
    q, r = QF, RF_R
    n = q * q - 1
    if case == "i":
        a = -(n - 2)
        return [a, a, a, RatFuncQ(2), RatFuncQ(2), RatFuncQ(2)]
    if case == "ii":
        a01 = (q ** 3 - 3 * q * q - q + 7) / (q * q - 2 * q - 1)
        a13 = (-(q ** 3) + q * q + q + 3) / (q * q - 2 * q - 1)
        return [a01, a01, -(n - 2), RatFuncQ(2), a13, a13]
    if case == "iii":
        a = 2 * (q * q - 6) / (q * q - 4)
        return [a, RatFuncQ(-2), a, -a, RatFuncQ(2), -a]
    if case == "iv":
        a = -2 * (q * q - 2) / (q * q)
        return [RatFuncQ(2), a, RatFuncQ(2), a, RatFuncQ(2), a]
    if case == "v":
        a = -2 / q
        a12 = -2 * (q * q - 2) / (q * q)
        return [a, a, RatFuncQ(2), a12, a, a]
    a01 = (-(q - 1) * (q - 2) + (q + 2) * r) / (2 * q * (q + 1))
    a02 = ((q + 2) * (q - 1) - (q - 2) * r) / (2 * q * (q - 3))
    a03 = (5 * q * q - 2 * q - 19 - (q - 1) * r) / (2 * (q + 1) * (q - 3))
    a12 = 2 * (-(q ** 4) + 2 * q ** 3 + 4 * q * q - 10 * q + 1 + (q - 1) * r) \
        / (q * q * (q + 1) * (q - 3))
    return [a01, a02, a03, a12, -a02, -a01]


def case_a_values(case, q, r_value=None):
    """Specialize the a-vector at a rational q, as tower elements."""
    case = normalize_case(case)
    if case == "vi" and r_value is None:
        raise InvalidCase("the sixth family needs an exact r value")
    vec = [ratfunc_specialize(f, q, r_value) for f in case_a_symbolic(case)]
    desc = vec[0].desc
    return [v.lift(desc) if v.desc != desc else v for v in vec]


# ---------------------------------------------------------------------------
# weight families

class WeightFamily:
    """Exact weights (1, w1, w2, w3) of one constructed family."""

    def __init__(self, case, q, branch, r_sign, desc, weights, r_value):
        self.case = case
        self.q = Fraction(q)
        self.branch = branch
        self.r_sign = r_sign
        self.desc = desc
        self.weights = tuple(weights)
        self.r_value = r_value

    @property
    def n(self):
        return self.q * self.q - 1

    def a_matrix(self):
        return phi(self.weights)

    def a_vector(self):
        a = self.a_matrix()
        return [a[i][j] for i, j in PAIRS]

    def label(self):
        bits = [f"case={self.case}", f"q={self.q}",
                f"branch={'+' if self.branch > 0 else '-'}"]
        if self.case == "vi":
            bits.append(f"r_sign={'+' if self.r_sign > 0 else '-'}")
        return ",".join(bits)

    def __repr__(self):
        return f"WeightFamily({self.label()})"


def _canonical_sqrt_in_field(desc, disc):
    """Square root of a split discriminant, sign-normalized when real."""
    s = field_sqrt(disc)
    if s is None:
        return None
    if not s.is_zero():
        try:
            if element_sign(s) < 0:
                s = -s
        except ValueError:
            pass  # non-real split root: keep field_sqrt's choice
    return s


def unit_quadratic_root(a, branch):
    """w with w + 1/w = a, branch picking the root (a +- sqrt(a^2-4))/2.

    Returns (descriptor, w); extends a's tower by one pure-radical level
    unless the discriminant already has a square root there.
    """
    desc = a.desc
    disc = a * a - 4
    s = _canonical_sqrt_in_field(desc, disc)
    if s is not None:
        return desc, (a + s * branch) / 2
    desc2, rt = adjoin_radical(desc, disc)
    return desc2, (a.lift(desc2) + rt * branch) / 2


def family_coefficients(case, q, r_sign=1, branch=1):
    """Construct one family exactly at an even rational q >= 4."""
    case = normalize_case(case)
    q = Fraction(q)
    if q < 4:
        raise QTooSmall(f"q = {q} < 4")
    if branch not in (1, -1) or r_sign not in (1, -1):
        raise InvalidCase("branch and r_sign must be +-1")

    if case == "vi":
        _, r_val = r_value_at(q, r_sign)
    else:
        r_val = None
    avals = case_a_values(case, q, r_val)
    a01, a02, a03, a12, a13, a23 = avals

    if case in ("i", "ii"):
        desc, w3 = unit_quadratic_root(a03, branch)
        if case == "i":
            w1 = w2 = w3
        else:
            w1 = (-(q - 3) * w3 + (q - 1)) / (q * q - 2 * q - 1)
            w2 = w1
    elif case == "iii":
        desc, w1 = unit_quadratic_root(a01, branch)
        w2 = TowerElement.rational(-1, desc)
        w3 = w1
    elif case == "iv":
        desc, w2 = unit_quadratic_root(a02, branch)
        w1 = w3 = TowerElement.rational(1, desc)
    elif case == "v":
        desc, w1 = unit_quadratic_root(a01, branch)
        w2 = w1.inverse()
        w3 = TowerElement.rational(1, desc)
    else:
        desc, w1 = unit_quadratic_root(a01, branch)
        lifted = [v.lift(desc) if v.desc != desc else v for v in avals]
        a01l, a02l, a03l, a12l, a13l, _ = lifted
        num = w1 * w1 - 1
        den2 = a12l * w1 - a02l
        den3 = a13l * w1 - a03l
        if den2.is_zero() or den3.is_zero():
            raise DenominatorZero("weight reconstruction denominator vanished")
        w2 = num / den2
        w3 = num / den3
        if not (w1 * w2 == -w3):
            raise InvalidCase("w1*w2 = -w3 failed; inconsistent construction")
        if r_val is not None and r_val.desc != desc:
            r_val = r_val.lift(desc)

    w0 = TowerElement.rational(1, desc)
    weights = [w.lift(desc) if w.desc != desc else w for w in (w0, w1, w2, w3)]
    return WeightFamily(case, q, branch, r_sign, desc, weights, r_val)


def all_families(q, cases=CASES, branches=(1, -1), r_signs=(1, -1)):
    """Every family at q: both branches, and both r signs for case vi."""
    out = []
    for case in cases:
        for branch in branches:
            if normalize_case(case) == "vi":
                for rs in r_signs:
                    out.append(family_coefficients(case, q, rs, branch))
            else:
                out.append(family_coefficients(case, q, 1, branch))
    return out


# ---------------------------------------------------------------------------
# the rational map and its inverse

def phi(weights):
    """a_{i,j} = w_i/w_j + w_j/w_i for a vector of nonzero weights."""
    ws = list(weights)
    desc = ws[0].desc
    for w in ws:
        if w.desc.depth > desc.depth:
            desc = w.desc
    ws = [w.lift(desc) if w.desc != desc else w for w in ws]
    if any(w.is_zero() for w in ws):
        raise ZeroWeight("phi needs nonzero weights")
    m = len(ws)
    two = TowerElement.rational(2, desc)
    a = [[two for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            r = ws[i] / ws[j]
            a[i][j] = a[j][i] = r + r.inverse()
    return a


def reconstruct_weights(a, i0, i1, w_pair):
    """Invert phi from a seed pair, w_i = (w1^2-w0^2)/(a1i*w1 - a0i*w0).

    ``a`` must satisfy the quadric/determinant constraints of the image
    of phi; the seeds must satisfy w0/w1 + w1/w0 = a_{i0,i1}.  When
    a_{i0,i1} = +-2 the descent is degenerate: if every off-diagonal
    entry is +-2 the explicit section through (2, a_{0,1}, ..., a_{0,d})
    is returned, otherwise AllPlusMinusTwo asks the caller to reseed.
    """
    d1 = len(a)
    w0, w1 = w_pair
    seed_check = w0 / w1 + w1 / w0
    if seed_check != a[i0][i1]:
        raise ValueError("seed pair does not match a[i0][i1]")
    two = TowerElement.rational(2, w0.desc)
    if a[i0][i1] == two or a[i0][i1] == -two:
        if all(a[i][j] == two or a[i][j] == -two
               for i in range(d1) for j in range(i + 1, d1)):
            section = [two] + [a[0][j] for j in range(1, d1)]
            scale = w_pair[0] / section[i0]
            return [s * scale for s in section]
        raise AllPlusMinusTwo("a[i0][i1] = +-2 but the matrix is not degenerate")
    out = [None] * d1
    out[i0], out[i1] = w0, w1
    diff = w1 * w1 - w0 * w0
    for i in range(d1):
        if i in (i0, i1):
            continue
        den = a[i1][i] * w1 - a[i0][i] * w0
        if den.is_zero():
            raise DenominatorZero(f"denominator vanished at index {i}")
        out[i] = diff / den
        if out[i].is_zero():
            raise DenominatorZero(f"reconstructed weight {i} is zero")
    return out


# ---------------------------------------------------------------------------
# dense matrices and certificates

_PETERSEN = None


def petersen_scheme():
    global _PETERSEN
    if _PETERSEN is None:
        _PETERSEN = build_petersen_line_scheme()
    return _PETERSEN


class TypeIIMatrix:
    """A weight family attached to a scheme, with a dense expansion."""

    def __init__(self, family, scheme=None):
        if scheme is None:
            if family.q != 4:
                raise NotSquare("a concrete scheme exists only at q = 4")
            scheme = petersen_scheme()
        self.family = family
        self.scheme = scheme
        self._dense = None

    @property
    def weights(self):
        return self.family.weights

    def dense(self):
        if self._dense is None:
            w = self.weights
            self._dense = [[w[c] for c in row] for row in self.scheme.rel]
        return self._dense

    def dense_inverse_entrywise(self):
        w = [x.inverse() for x in self.weights]
        return [[w[c] for c in row] for row in self.scheme.rel]


def is_type_ii(family, dense_check=None):
    """Spectral type-II test: beta_k * beta'_k = n for k = 1..d.

    beta_k = sum_j w_j P_{k,j} and beta'_k uses the inverted weights.
    At q = 4 (or when ``dense_check`` is True) the dense identity
    W * (W^(-))^T = n I is verified as well and must agree.
    Returns (bool, certificate dict).
    """
    ps = ParametricScheme()
    P = ps.eigenmatrix_at(family.q)
    n = family.n
    w = family.weights
    w_inv = [x.inverse() for x in w]
    betas, betas_p, products = [], [], []
    for k in range(4):
        beta = sum((w[j] * P[k][j] for j in range(4)),
                   TowerElement.rational(0, family.desc))
        beta_p = sum((w_inv[j] * P[k][j] for j in range(4)),
                     TowerElement.rational(0, family.desc))
        betas.append(beta)
        betas_p.append(beta_p)
        products.append(beta * beta_p)
    ok = all(products[k] == n for k in range(1, 4))
    cert = {
        "beta_products_equal_n": [products[k] == n for k in range(4)],
        "n": n,
    }
    if ok and not products[0] == n:
        # the trace argument forces k = 0 as well; a failure here would
        # contradict the spectral identity
        raise AssertionError("beta_0 beta'_0 != n while k>=1 all pass")
    if dense_check is None:
        dense_check = family.q == 4
    if dense_check:
        dense_ok = _dense_type_ii_check(family)
        cert["dense_identity"] = dense_ok
        if dense_ok != ok:
            raise AssertionError("dense and spectral type-II tests disagree")
    return ok, cert


def _dense_type_ii_check(family):
    mat = TypeIIMatrix(family)
    W = mat.dense()
    Winv = mat.dense_inverse_entrywise()
    n = mat.scheme.n
    zero = TowerElement.rational(0, family.desc)
    target = Fraction(n)
    for x in range(n):
        row = W[x]
        for y in range(n):
            col = Winv[y]  # (W^(-))^T column y = row y of W^(-)
            acc = zero
            for t in range(n):
                acc = acc + row[t] * col[t]
            want = target if x == y else 0
            if not acc == want:
                return False
    return True


def is_hadamard(family, check_type_ii=True, numeric_guard=True):
    """Exact complex-Hadamard test for a constructed family.

    Primary criterion: every a_{i,j} is real and every weight has unit
    modulus, both certified symbolically (conj(w) * w = 1, where conj is
    the tower's complex conjugation).  The open-interval criterion (all
    a real and some a_{i0,i1} strictly inside (-2, 2)), which is the
    sufficient condition used to prove unimodularity, is evaluated too
    and must agree.  Returns (bool, certificate dict).
    """
    if check_type_ii:
        t2, _ = is_type_ii(family, dense_check=False)
        if not t2:
            raise ValueError("is_hadamard requires a type-II input")
    a = family.a_matrix()
    all_real = all(is_real(a[i][j]) for i in range(4) for j in range(i + 1, 4))
    unimodular = all_real and all(
        complex_conj(w) * w == 1 for w in family.weights)
    interval_hit = None
    if all_real:
        for i in range(4):
            for j in range(i + 1, 4):
                if element_sign(a[i][j] + 2) > 0 and element_sign(2 - a[i][j]) > 0:
                    interval_hit = (i, j)
                    break
            if interval_hit:
                break
    interval_criterion = all_real and interval_hit is not None
    if interval_criterion and not unimodular:
        raise AssertionError("interval criterion fired but |w| != 1")
    cert = {
        "a_all_real": all_real,
        "unit_modulus_exact": unimodular,
        "interval/criterion": interval_criterion,
        "interval_witness": interval_hit,
    }
    if numeric_guard and unimodular:
        cert["numeric_guard_1e-12"] = all(abs_is_one(w, 12)
                                          for w in family.weights)
        if not cert["numeric_guard_1e-12"]:
            raise AssertionError("interval guard contradicts exact |w| = 1")
    return unimodular, cert


# ---------------------------------------------------------------------------
# non-Butson witnesses

def is_algebraic_integer(x):
    """Exact test for elements of degree <= 2 over Q."""
    x = x.descend()
    if x.desc.depth == 0:
        return x.rep.denominator == 1
    if x.desc.depth == 1:
        a, b = x.rep
        p_rep, s_rep = x.desc.levels[0]
        # minimal polynomial t^2 - trace t + norm
        trace = 2 * a + b * p_rep
        norm = a * a + a * b * p_rep - b * b * s_rep
        return trace.denominator == 1 and norm.denominator == 1
    raise ValueError("witness test implemented for degree <= 2 only")


def non_butson_witness(family):
    """An a_{i,j} that is not an algebraic integer (families iii-vi).

    Such a witness rules out all entries being roots of unity.  Returns
    (pair, element, reason).
    """
    case = family.case
    a = family.a_matrix()
    if case == "iii":
        pair = (0, 1)
    elif case == "iv":
        pair = (0, 2)
    elif case == "v":
        pair = (0, 1)
    elif case == "vi":
        pair = (0, 1)
    else:
        raise NoWitness(f"case {case} is not covered by the witness argument")
    witness = a[pair[0]][pair[1]].descend()
    if is_algebraic_integer(witness):
        raise NoWitness("expected witness is an algebraic integer")
    if witness.desc.depth == 0:
        reason = f"rational with denominator {witness.rep.denominator}"
    else:
        tr = witness.trace_conj()[0].descend().as_rational()
        reason = f"quadratic with non-integral trace {tr}"
    return pair, witness, reason


# ---------------------------------------------------------------------------
# isolation: the span condition

def span_condition(dense, desc, return_rank=False):
    """Exact rank test of the commutator span of a Hadamard matrix.

    Generators are [v, H* u H] over all diagonal units u, v; the matrix
    is isolated when their span has dimension n^2 - 2n + 1.  The rank is
    computed by sparse Gaussian elimination over the tower field, so the
    verdict is a certificate, not a numerical estimate.
    """
    from .fastfield import FlatTower, sparse_rank

    n = len(dense)
    if any(len(row) != n for row in dense):
        raise NotSquare("dense matrix is not square")
    H = [[e.lift(desc) if e.desc != desc else e for e in row] for row in dense]
    Hc = [[complex_conj(e) for e in row] for row in H]
    flat = FlatTower(desc)
    Hf = [[flat.to_flat(e) for e in row] for row in H]
    Hcf = [[flat.to_flat(e) for e in row] for row in Hc]

    def generators():
        for w in range(n):
            hw = Hf[w]
            hcw = Hcf[w]
            for v in range(n):
                row = {}
                for y in range(n):
                    if y == v:
                        continue
                    row[v * n + y] = flat.mul(hcw[v], hw[y])
                    row[y * n + v] = flat.neg(flat.mul(hcw[y], hw[v]))
                yield row

    rank = sparse_rank(generators(), flat)
    target = n * n - 2 * n + 1
    if return_rank:
        return rank == target, rank
    return rank == target
