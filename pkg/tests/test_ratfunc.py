from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bmhadamard.exactfield import QQ, adjoin_radical
from bmhadamard.ratfunc import (
    InvalidRValue,
    PoleAtQ0,
    PolyQ,
    Q,
    QF,
    RF_R,
    RatFuncQ,
    RatQ,
    R_SQUARED,
    ratfunc_specialize,
    r_value_at,
)


def test_poly_basic():
    q = PolyQ.x()
    p = (q - 1) * (17 * q - 1)
    assert p.coeffs == (1, -18, 17)
    assert p(4) == 201
    assert p.degree == 2
    quo, rem = (p * p + q).divmod(p)
    assert quo == p and rem == q


def test_ratq_reduction_and_monic_denominator():
    q = Q
    f = (q * q - 1) / (q - 1)
    assert f == q + 1
    g = RatQ(PolyQ((0, 2)), PolyQ((0, 0, 4)))  # 2q / 4q^2 = (1/2)/q
    assert g.den.leading() == 1
    assert g(3) == Fraction(1, 6)


def test_r_squared_constant():
    assert R_SQUARED(4) == 201
    assert R_SQUARED(10) == 1521  # = 39^2


def test_rf_arithmetic_reduces_r_squared():
    r = RF_R
    assert (r * r) == RatFuncQ(R_SQUARED)
    x = QF + r            # q + r
    y = QF - r
    assert x * y == RatFuncQ(Q * Q - R_SQUARED)
    assert (x * x.inverse()) == RatFuncQ(1)
    assert x.conj_r() == y


def test_specialize_plain():
    f = Q * Q / 2 - Q
    assert ratfunc_specialize(f, 4).as_rational() == 4
    assert ratfunc_specialize(-2 / Q, 4).as_rational() == Fraction(-1, 2)


def test_specialize_pole():
    f = 1 / (Q - 4)
    with pytest.raises(PoleAtQ0):
        ratfunc_specialize(f, 4)


def test_specialize_with_r():
    # a_{0,1} of the sixth family at q = 4: 3(sqrt(201) - 1)/20
    q, r = QF, RF_R
    f = (-(q - 1) * (q - 2) + (q + 2) * r) / (2 * q * (q + 1))
    desc, rv = r_value_at(4)
    val = ratfunc_specialize(f, 4, rv)
    d201, s201 = adjoin_radical(QQ, 201)
    want = (s201 - 1) * Fraction(3, 20)
    assert val == want


def test_specialize_rejects_bad_r():
    desc, rv = r_value_at(4)
    with pytest.raises(InvalidRValue):
        ratfunc_specialize(RF_R, 6, rv)  # rv^2 = 201 != (17*6-1)*5
    with pytest.raises(InvalidRValue):
        ratfunc_specialize(RF_R, 4, None)


def test_r_value_rational_when_square():
    desc, rv = r_value_at(10)
    assert desc.depth == 0 and rv.as_rational() == 39
    desc, rv = r_value_at(10, sign=-1)
    assert rv.as_rational() == -39
    desc, rv = r_value_at(4, sign=-1)
    assert desc.depth == 1 and (rv * rv).descend().as_rational() == 201


rational_q = st.fractions(min_value=5, max_value=30, max_denominator=3)
small_coeffs = st.lists(st.integers(min_value=-5, max_value=5),
                        min_size=1, max_size=4)


@given(small_coeffs, small_coeffs, small_coeffs, small_coeffs, rational_q)
@settings(max_examples=50, deadline=None)
def test_ratfunc_evaluation_is_a_homomorphism(n1, d1, n2, d2, q0):
    if not any(d1) or not any(d2):
        return
    f = RatQ(PolyQ(n1), PolyQ(d1))
    g = RatQ(PolyQ(n2), PolyQ(d2))
    try:
        fv, gv = f(q0), g(q0)
    except PoleAtQ0:
        return
    assert (f + g)(q0) == fv + gv
    assert (f * g)(q0) == fv * gv
    if not g.is_zero() and gv != 0:
        assert (f / g)(q0) == fv / gv
