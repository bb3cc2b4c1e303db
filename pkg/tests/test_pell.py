import pytest

from bmhadamard.pell import (
    FUNDAMENTAL_17,
    PROBLEM_17_64,
    PellProblem,
    base_solutions,
    descend,
    descent_oracle,
    integral_r_q_values,
    is_r_integer,
    orbit_congruences,
    pell_chain_identity,
    unit_multiply,
)


def test_fundamental_unit_fixture():
    u, v = FUNDAMENTAL_17
    assert u * u - 17 * v * v == 1


def test_problem_validation():
    with pytest.raises(ValueError):
        PellProblem(17, 64, (33, 9))
    with pytest.raises(ValueError):
        PellProblem(12, 64, (7, 2))  # 12 is not squarefree
    with pytest.raises(ValueError):
        PellProblem(17, -4, (33, 8))


def test_base_solutions_of_the_main_problem():
    assert base_solutions(PROBLEM_17_64) == [(8, 0), (9, 1), (26, 6)]


def test_base_solutions_of_unit_form():
    p = PellProblem(17, 1, FUNDAMENTAL_17)
    assert base_solutions(p) == [(1, 0)]


def test_unit_multiplication_closure():
    # (33 + 8 s)(9 + s) = 433 + 105 s and 433^2 - 17*105^2 = 64
    assert unit_multiply(PROBLEM_17_64, (9, 1)) == (433, 105)
    assert 433 ** 2 - 17 * 105 ** 2 == 64
    # negative powers via the conjugate unit
    assert unit_multiply(PROBLEM_17_64, (433, 105), -1) == (9, 1)


def test_descend_reaches_a_base():
    x, y = unit_multiply(PROBLEM_17_64, (26, 6), 3)
    base, steps = descend(PROBLEM_17_64, (x, y))
    assert base == (26, 6) and steps == 3


def test_descent_oracle_small():
    count = descent_oracle(PROBLEM_17_64, 10 ** 4)
    assert count >= 6  # several solutions below 10^4, all accounted for


def test_integral_r_q_values():
    got = integral_r_q_values(-2, 2)
    assert got == [41210, 10, 26, 110890, 482812730]
    assert sorted(got) == [10, 26, 41210, 110890, 482812730]
    for q in got:
        assert q % 2 == 0 and q >= 4
        assert is_r_integer(q) is not None


def test_is_r_integer():
    assert is_r_integer(10) == 39
    assert is_r_integer(26) == 105
    assert is_r_integer(4) is None
    assert is_r_integer(41210) is not None
    with pytest.raises(ValueError):
        is_r_integer(5)
    with pytest.raises(ValueError):
        is_r_integer(2)


def test_congruence_filter():
    # x = 17q - 9 = -9 mod 34 for even q; only the middle orbit at odd
    # powers matches, which is what the q-value formula encodes
    assert all(orbit_congruences().values())
    for q in integral_r_q_values(-3, 3):
        assert (17 * q - 9) % 34 == (-9) % 34


def test_chain_identity_polynomially():
    assert pell_chain_identity().is_zero()


def test_exploratory_weight_stays_quadratic():
    # exploratory, not a certified claim: at every parameter with an
    # integral square root (|n| <= 40 here), a_{0,1} is rational but
    # a_{0,1}^2 - 4 is never a rational square, so the first weight
    # remains a quadratic irrational
    from fractions import Fraction
    from bmhadamard.exactfield import rational_sqrt

    for q in integral_r_q_values(-40, 40):
        r = is_r_integer(q)
        a01 = Fraction(-(q - 1) * (q - 2) + (q + 2) * r, 2 * q * (q + 1))
        assert rational_sqrt(a01 * a01 - 4) is None
