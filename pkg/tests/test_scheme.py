from fractions import Fraction

import pytest

from bmhadamard.ratfunc import Q
from bmhadamard.scheme import (
    ConcreteScheme,
    NotAFusion,
    ParametricScheme,
    distance_matrix,
    fused_eigenmatrix_12,
    fused_eigenmatrix_13,
    petersen_graph,
)

P3_AT_4 = [[1, 4, 8, 2], [1, 2, -2, -1], [1, -1, -2, 2], [1, -2, 2, -1]]


def test_petersen_graph_is_kneser():
    verts, adj = petersen_graph()
    assert len(verts) == 10
    assert all(sum(row) == 3 for row in adj)  # 3-regular
    # adjacency = disjointness of 2-subsets
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            assert adj[i][j] == (0 if set(a) & set(b) or i == j else 1)


def test_valencies_match_parametric_row(petersen):
    # oracle: evaluate the parametric first row at q = 4 independently
    q = Fraction(4)
    want = (1, q * q / 2 - q, q * q / 2, q - 2)
    assert petersen.valencies == want == (1, 4, 8, 2)


def test_distance_matrix_identity(petersen):
    dm = distance_matrix(petersen.adjacency_matrix(1))
    for i in range(15):
        for j in range(15):
            assert dm[i][j] == {0: 0, 1: 1, 2: 2, 3: 3}[petersen.rel[i][j]]


def test_axioms_pass(petersen):
    report = petersen.verify_axioms()
    assert report.passed and report.violations == []


def test_broken_scheme_reports_violation():
    rel = [[0, 1], [2, 0]]  # not symmetric, bad classes
    broken = ConcreteScheme.__new__(ConcreteScheme)
    broken.rel = tuple(tuple(r) for r in rel)
    broken.n, broken.d = 2, 2
    broken.p = broken._intersection_numbers()
    assert not broken.verify_axioms().passed


def test_p11_by_common_neighbour_count(petersen):
    # oracle: count common A1-neighbours directly in the line graph
    a1 = petersen.adjacency_matrix(1)
    x, y = next((x, y) for x in range(15) for y in range(15)
                if petersen.rel[x][y] == 1)
    count = sum(1 for z in range(15) if a1[x][z] and a1[y][z])
    assert count == petersen.p[1][1][1] == 1
    assert petersen.p[1][1][3] == 0  # degenerate entry at q = 4


def test_all_64_intersection_numbers_match_parametric(petersen):
    ps = ParametricScheme()
    table = ps.p_at(4)
    for h in range(4):
        for i in range(4):
            for j in range(4):
                assert table[h][i][j] == petersen.p[h][i][j]


def test_eigen_data_matches_parametric(petersen):
    data = petersen.eigen_data()
    assert data.P == [[Fraction(v) for v in row] for row in P3_AT_4]
    assert data.multiplicities == (1, 5, 4, 5)
    # QP = nI and the row-sum identity
    n = Fraction(15)
    for i in range(4):
        row = sum(data.Q[i][j] for j in range(1, 4))
        assert row == (n - 1 if i == 0 else -1)
    assert sum(data.Q[0][j] for j in range(1, 4)) == 14


def test_fusions(petersen):
    f12 = petersen.fuse([{0}, {1, 2}, {3}])
    assert f12.eigen_data().P == [[1, 12, 2], [1, 0, -1], [1, -3, 2]]
    f13 = petersen.fuse([{0}, {1, 3}, {2}])
    assert f13.eigen_data().P == [[1, 6, 8], [1, 1, -2], [1, -3, 2]]
    complete = petersen.fuse([{0}, {1, 2, 3}])
    assert complete.eigen_data().P == [[1, 14], [1, -1]]
    assert complete.p[1][1][1] == 13


def test_non_fusion_rejected(petersen):
    with pytest.raises(NotAFusion):
        petersen.fuse([{0}, {1}, {2, 3}])


def test_fusion_partition_validation(petersen):
    with pytest.raises(ValueError):
        petersen.fuse([{0, 1}, {2, 3}])
    with pytest.raises(ValueError):
        petersen.fuse([{0}, {1, 2}])


def test_parametric_row_sum_is_n():
    ps = ParametricScheme()
    assert sum(ps.P[0][j] for j in range(4)) == Q * Q - 1


def test_parametric_consistency():
    assert ParametricScheme().verify_consistency()


def test_parametric_p_nonnegative_at_even_q():
    ps = ParametricScheme()
    for q in (4, 6, 8, 10, 40):
        table = ps.p_at(q)
        for h in range(4):
            for i in range(4):
                for j in range(4):
                    v = table[h][i][j]
                    assert v >= 0 and v.denominator == 1


def test_symbolic_fusion_rows():
    ps = ParametricScheme()
    assert ps.fused_rows([[0], [1, 2], [3]]) == fused_eigenmatrix_12()
    assert ps.fused_rows([[0], [1, 3], [2]]) == fused_eigenmatrix_13()


def test_scheme_json_export(petersen):
    payload = petersen.to_jsonable(q=4)
    assert payload["n"] == 15 and payload["d"] == 3
    assert payload["valencies"] == [1, 4, 8, 2]
    assert len(payload["relations"]) == 15
    # relation matrix is row-major class indices
    assert all(payload["relations"][i][i] == 0 for i in range(15))


def test_eigen_rows_are_intersection_eigenvectors(petersen):
    # oracle: each row of P is a simultaneous eigenvector of every B_i
    data = petersen.eigen_data()
    for i in range(4):
        b = petersen.intersection_matrix(i)
        for m in range(4):
            v = data.P[m]
            for j in range(4):
                got = sum(b[j][k] * v[k] for k in range(4))
                assert got == data.P[m][i] * v[j]
