from fractions import Fraction

import pytest

from bmhadamard.exactfield import QQ, TowerElement, adjoin_radical
from bmhadamard.nomura import (
    NotSymmetricAlgebra,
    check_symmetric,
    component_report,
    jones_graph_dense,
    jones_graph_for,
    jones_structure_report,
    nomura_dimension,
    symmetry_values,
    triangle_counters,
    y_inner,
    y_vector,
)
from bmhadamard.typeii import TypeIIMatrix, WeightFamily


def fourier4():
    d, im = adjoin_radical(QQ, -1)
    one = TowerElement.rational(1, d)
    vals = [one, im, -one, -im]
    return [[vals[(j * k) % 4] for k in range(4)] for j in range(4)], d


def test_y_vector_basics(families_q4):
    fam = families_q4[("iv", 1, 1)]
    dense = TypeIIMatrix(fam).dense()
    one = TowerElement.rational(1, fam.desc)
    assert y_vector(dense, 3, 3) == [one] * 15
    assert y_inner(dense, (0, 0), (5, 5)) == 15
    ya = y_vector(dense, 2, 7)
    yb = y_vector(dense, 7, 2)
    assert all((a * b) == 1 for a, b in zip(ya, yb))


def test_diagonal_detached_for_type_ii(families_q4):
    # <Y_aa, Y_cd> = (W^(-) W)_{dc} = n delta: zero off the diagonal
    fam = families_q4[("v", 1, 1)]
    dense = TypeIIMatrix(fam).dense()
    assert y_inner(dense, (0, 0), (3, 9)).is_zero()
    assert y_inner(dense, (1, 1), (2, 2)) == 15


def test_graph_inner_product_matches_reference(families_q4):
    fam = families_q4[("vi", 1, 1)]
    mat = TypeIIMatrix(fam)
    graph = jones_graph_for(mat)
    dense = mat.dense()
    for pair in (((0, 1), (2, 5)), ((3, 3), (4, 4)), ((1, 2), (2, 1))):
        assert graph.inner_product(*pair) == y_inner(dense, *pair)
        assert graph.adjacent(*pair) == (not y_inner(dense, *pair).is_zero())


def test_adjacency_is_symmetric(families_q4):
    fam = families_q4[("iii", 1, 1)]
    graph = jones_graph_for(TypeIIMatrix(fam))
    for a, b in (((0, 1), (5, 9)), ((2, 2), (3, 8)), ((1, 4), (4, 1))):
        assert graph.adjacent(a, b) == graph.adjacent(b, a)


@pytest.mark.parametrize("key", [("i", 1, 1), ("ii", 1, 1), ("iii", 1, 1),
                                 ("iv", 1, 1), ("v", 1, 1),
                                 ("vi", 1, 1), ("vi", -1, 1)])
def test_dimension_two_for_all_families(key, families_q4):
    fam = families_q4[key]
    rep = component_report(TypeIIMatrix(fam))
    assert rep["dim_N"] == 2
    assert rep["component_sizes"] == [210, 15]
    assert rep["n"] == 15


def test_symmetry_precondition_values(families_q4):
    for key in (("iv", 1, 1), ("vi", 1, 1), ("vi", -1, 1)):
        fam = families_q4[key]
        assert check_symmetric(fam)
        assert all(not v.is_zero() for v in symmetry_values(fam))


def test_forced_zero_symmetry_control():
    # hand-build weights solving sum p_jk^1 (a_jk^2 - 2) + sum p_jj^1 = 0:
    # with w = (1, x, 1, 1) the functional for i = 1 becomes
    # p_01^1 (x + 1/x)^2 + (p_12^1 + p_13^1)((x+1/x)^2 - 2) + const;
    # pick (x + 1/x)^2 = t solving the linear equation, then x.
    ps_q = 4
    from bmhadamard.scheme import ParametricScheme

    table = ParametricScheme().p_at(ps_q)
    # coefficients of t and the constant for weights (1, x, 1, 1)
    coef = 0
    const = 0
    for j in range(4):
        for k in range(j + 1, 4):
            p = table[j][k][1]
            touches = (j == 1) != (k == 1)
            if touches:
                coef += p
                const -= 2 * p
            else:
                const += 2 * p  # a_{j,k} = 2 when neither index is 1
        const += table[j][j][1]
    t = Fraction(-const, coef)
    d, s = adjoin_radical(QQ, t.numerator * t.denominator)
    root_t = s / t.denominator  # sqrt(t)
    # x + 1/x = sqrt(t): x = (sqrt(t) + sqrt(t - 4))/2 needs one more level
    disc = root_t * root_t - 4
    d2, rt2 = adjoin_radical(d, disc)
    x = (root_t.lift(d2) + rt2) / 2
    one = TowerElement.rational(1, d2)
    fake = WeightFamily("i", 4, 1, 1, d2, [one, x, one, one], None)
    vals = symmetry_values(fake)
    assert vals[0].is_zero()
    assert not check_symmetric(fake)
    with pytest.raises(NotSymmetricAlgebra):
        nomura_dimension(TypeIIMatrix(fake))


def test_fourier_component_count_is_symmetrized():
    # independent oracle: <Y_ab, Y_cd> = sum_x i^{x(a-b+c-d)} is nonzero
    # exactly when a - b + c - d = 0 mod 4, so components group by the
    # difference a - b into {0}, {2}, {1, 3}: three components, while
    # dim N(W) = 4 (the full cyclic scheme) -- the component method
    # needs the symmetry hypothesis, which fails here (R_1^T = R_3)
    dense, d = fourier4()
    graph = jones_graph_dense(dense, d)
    for ab in ((0, 1), (1, 2)):
        for cd in ((0, 1), (2, 1), (3, 2)):
            want = (ab[0] - ab[1] + cd[0] - cd[1]) % 4 == 0
            assert graph.adjacent(ab, cd) == want or ab == cd
    assert graph.component_count() == 3
    assert graph.component_sizes() == [8, 4, 4]


def test_structure_report_chan1(families_q4):
    rep = jones_structure_report(TypeIIMatrix(families_q4[("iv", 1, 1)]))
    assert rep["dim_N"] == 2
    assert all(rep[k] for k in ("class_clique", "marginals",
                                "bridge_to_class", "off_diagonal_component"))


def test_structure_report_case_vi_both_signs(families_q4):
    for rs in (1, -1):
        rep = jones_structure_report(TypeIIMatrix(families_q4[("vi", rs, 1)]))
        assert rep["dim_N"] == 2


def test_triangle_counters_marginals(petersen, families_q4):
    # the counters of an R3-triangle marginalize to p_jk^3 in all slots
    cls = None
    for x in range(15):
        for y in range(15):
            if petersen.rel[x][y] != 3:
                continue
            for z in range(15):
                if petersen.rel[x][z] == 3 and petersen.rel[y][z] == 3:
                    cls = (x, y, z)
                    break
            if cls:
                break
        if cls:
            break
    c = triangle_counters(petersen, *cls)
    for j in (1, 2):
        for k in (1, 2):
            want = petersen.p[j][k][3]
            assert c.get((1, j, k), 0) + c.get((2, j, k), 0) == want
            assert c.get((j, 1, k), 0) + c.get((j, 2, k), 0) == want
            assert c.get((j, k, 1), 0) + c.get((j, k, 2), 0) == want


def test_labels_partition(families_q4):
    graph = jones_graph_for(TypeIIMatrix(families_q4[("i", 1, 1)]))
    labels = graph.component_labels()
    assert len(labels) == 225
    assert all(l >= 0 for l in labels)
    diag = {labels[a * 15 + a] for a in range(15)}
    assert len(diag) == 1
    assert graph.component_count() >= 2
