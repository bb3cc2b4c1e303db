"""Association schemes: the concrete 15-point scheme and its q-parametric family.

The concrete scheme is built from the line graph of the Petersen graph
(Kneser graph on 2-subsets of a 5-set): A1 is the line-graph adjacency,
A2 = A1^2 - A1 - 4I, A3 = J - I - A1 - A2.  Its eigenmatrix matches the
parametric family at q = 4.  For general even q only intersection
numbers and eigenmatrices exist here (no vertex set is constructed);
they are stored as exact rational functions of q.

Class order is fixed throughout: valencies (1, q^2/2 - q, q^2/2, q-2).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import linalg
from .ratfunc import PolyQ, RatQ, Q


class InternalConsistency(ValueError):
    """A constructed scheme violated its own axioms (must not happen)."""


class NotAFusion(ValueError):
    """Merged classes do not close under matrix multiplication."""


class SingularP(ValueError):
    """Eigenmatrix not invertible; the input was not a valid scheme."""


class AxiomReport:
    """Outcome of the full axiom check, with the intersection table."""

    def __init__(self, violations, p):
        self.violations = list(violations)
        self.p = p

    @property
    def passed(self):
        return not self.violations

    def __repr__(self):
        state = "ok" if self.passed else f"violations={self.violations}"
        return f"AxiomReport({state})"


class SpectralData:
    """Exact eigenmatrices of a scheme: P, Q = n P^-1, multiplicities."""

    def __init__(self, P, Q, n):
        self.P = P
        self.Q = Q
        self.n = n
        self.multiplicities = tuple(Q[0][j] for j in range(len(Q[0])))

    def idempotent_coefficient(self, i, j):
        """Coefficient of A_i in E_j, i.e. Q_{i,j} / n."""
        return self.Q[i][j] / self.n


class ConcreteScheme:
    """A symmetric association scheme given by its relation partition."""

    def __init__(self, rel, check=True):
        self.rel = tuple(tuple(row) for row in rel)
        self.n = len(self.rel)
        self.d = max(max(row) for row in self.rel)
        self.p = self._intersection_numbers()
        if check:
            report = self.verify_axioms()
            if not report.passed:
                raise InternalConsistency("; ".join(report.violations))
        self.valencies = tuple(self.p[i][i][0] if i else 1
                               for i in range(self.d + 1))

    # -- construction helpers -------------------------------------------

    def adjacency_matrix(self, i):
        return [[1 if c == i else 0 for c in row] for row in self.rel]

    def _intersection_numbers(self):
        n, d = self.n, self.d
        rel = self.rel
        # classify x by relation to a pair (u, v) per class of (u, v);
        # constancy over representative pairs is re-checked in verify_axioms
        p = [[[None] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
        seen_pair = [False] * (d + 1)
        for u in range(n):
            for v in range(n):
                k = rel[u][v]
                if seen_pair[k]:
                    continue
                seen_pair[k] = True
                counts = [[0] * (d + 1) for _ in range(d + 1)]
                ru, rv = rel[u], rel[v]
                for x in range(n):
                    counts[ru[x]][rv[x]] += 1
                for i in range(d + 1):
                    for j in range(d + 1):
                        p[i][j][k] = counts[i][j]
        return p

    def verify_axioms(self):
        """Check every defining axiom; returns all violations found."""
        violations = []
        n, d, rel = self.n, self.d, self.rel
        for x in range(n):
            if rel[x][x] != 0:
                violations.append(f"diagonal not class 0 at {x}")
                break
        for x in range(n):
            for y in range(x):
                if rel[x][y] != rel[y][x]:
                    violations.append(f"relation not symmetric at ({x},{y})")
                    break
            else:
                continue
            break
        if any(rel[x][y] == 0 for x in range(n) for y in range(n) if x != y):
            violations.append("class 0 appears off the diagonal")
        # closure: the count of z with rel(x,z)=i, rel(z,y)=j must depend
        # only on rel(x,y); this is A_i A_j = sum_k p_ij^k A_k
        for x in range(n):
            rx = rel[x]
            for y in range(n):
                ry = rel[y]
                k = rx[y]
                counts = [[0] * (d + 1) for _ in range(d + 1)]
                for z in range(n):
                    counts[rx[z]][ry[z]] += 1
                for i in range(d + 1):
                    for j in range(d + 1):
                        if counts[i][j] != self.p[i][j][k]:
                            violations.append(
                                f"p_{i}{j}^{k} not constant (pair ({x},{y}))")
                            return AxiomReport(violations, self.p)
        for i in range(d + 1):
            for j in range(d + 1):
                for k in range(d + 1):
                    if self.p[i][j][k] != self.p[j][i][k]:
                        violations.append(f"p_{i}{j}^{k} != p_{j}{i}^{k}")
        return AxiomReport(violations, self.p)

    # -- spectral data ----------------------------------------------------

    def intersection_matrix(self, i):
        """B_i with (j, k) entry p_{ij}^k, acting on eigenvalue rows."""
        return [[Fraction(self.p[i][j][k]) for k in range(self.d + 1)]
                for j in range(self.d + 1)]

    def eigen_data(self):
        """Exact P and Q = n P^-1, rows ordered valency-row first then
        by decreasing eigenvalue on the first class."""
        d = self.d
        bs = [self.intersection_matrix(i) for i in range(d + 1)]
        rows = self._common_eigenrows(bs)
        if rows is None:
            raise SingularP("could not split the intersection algebra")
        val_row = tuple(Fraction(v) for v in self.valencies)
        if val_row not in rows:
            raise InternalConsistency("valency row missing from spectrum")
        rest = sorted((r for r in rows if r != val_row),
                      key=lambda r: tuple(r[1:]), reverse=True)
        P = [list(val_row)] + [list(r) for r in rest]
        try:
            Q = linalg.mat_inverse(P)
        except ZeroDivisionError as exc:
            raise SingularP("eigenmatrix is singular") from exc
        n = Fraction(self.n)
        Q = [[v * n for v in row] for row in Q]
        data = SpectralData([list(r) for r in P], Q, n)
        _check_spectral(data)
        return data

    def _common_eigenrows(self, bs):
        d = len(bs) - 1
        for combo in _combination_streams(d):
            m = [[sum((Fraction(c) * bs[i + 1][j][k] for i, c in enumerate(combo)),
                      Fraction(0)) for k in range(d + 1)] for j in range(d + 1)]
            eigs = linalg.rational_eigenvalues(m)
            spaces = []
            for lam in eigs:
                shifted = [[m[a][b] - (lam if a == b else 0)
                            for b in range(d + 1)] for a in range(d + 1)]
                spaces.extend(linalg.nullspace(shifted))
            if len(spaces) != d + 1:
                continue
            rows = []
            for v in spaces:
                if v[0] == 0:
                    break
                rows.append(tuple(x / v[0] for x in v))
            else:
                return rows
        return None

    # -- fusions ----------------------------------------------------------

    def fuse(self, partition):
        """Merge relation classes; raises NotAFusion when closure fails.

        ``partition`` covers {0..d} with {0} on its own; merged classes
        are renumbered by their smallest member.
        """
        blocks = [frozenset(b) for b in partition]
        if frozenset({0}) not in blocks:
            raise ValueError("partition must isolate class 0")
        if sorted(c for b in blocks for c in b) != list(range(self.d + 1)):
            raise ValueError("partition must cover classes exactly once")
        blocks = sorted(blocks, key=min)
        relabel = {}
        for new, block in enumerate(blocks):
            for old in block:
                relabel[old] = new
        rel = [[relabel[c] for c in row] for row in self.rel]
        try:
            return ConcreteScheme(rel)
        except InternalConsistency as exc:
            raise NotAFusion(str(exc)) from exc

    def to_jsonable(self, q=None):
        return {
            "format": "scheme/1",
            "n": self.n,
            "d": self.d,
            "q": None if q is None else str(q),
            "valencies": list(self.valencies),
            "relations": [list(row) for row in self.rel],
        }


def _combination_streams(d):
    yield (1,) + (0,) * (d - 1)
    for k in range(1, d):
        yield tuple(1 if i == k else 0 for i in range(d))
    yield tuple(range(1, d + 1))
    yield tuple(i * i + 1 for i in range(1, d + 1))


def _check_spectral(data):
    size = len(data.P)
    n = data.n
    qp = linalg.mat_mul(data.Q, data.P)
    for i in range(size):
        for j in range(size):
            want = n if i == j else 0
            if qp[i][j] != want:
                raise InternalConsistency("QP != nI")
    for i in range(size):
        if data.Q[i][0] != 1 or data.P[i][0] != 1:
            raise InternalConsistency("first column of P/Q not all ones")
        row = sum(data.Q[i][j] for j in range(1, size))
        want = n - 1 if i == 0 else Fraction(-1)
        if row != want:
            raise InternalConsistency("row sums of Q violate n*delta - 1")


# ---------------------------------------------------------------------------
# the concrete q = 4 instance

def petersen_graph():
    """Kneser graph on 2-subsets of a 5-set (adjacent iff disjoint)."""
    verts = list(combinations(range(5), 2))
    adj = [[1 if not (set(a) & set(b)) else 0 for b in verts] for a in verts]
    return verts, adj


def build_petersen_line_scheme():
    """The 15-vertex 3-class scheme on the edges of the Petersen graph."""
    verts, adj = petersen_graph()
    edges = [(i, j) for i in range(10) for j in range(i + 1, 10) if adj[i][j]]
    m = len(edges)
    a1 = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a != b and set(edges[a]) & set(edges[b]):
                a1[a][b] = 1
    # A2 = A1^2 - A1 - 4I must come out 0/1; A3 fills the rest
    sq = [[sum(a1[i][t] * a1[t][j] for t in range(m)) for j in range(m)]
          for i in range(m)]
    rel = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            a2 = sq[i][j] - a1[i][j] - (4 if i == j else 0)
            if a1[i][j]:
                rel[i][j] = 1
            elif a2 == 1:
                rel[i][j] = 2
            elif a2 == 0:
                rel[i][j] = 3
            else:
                raise InternalConsistency(f"A1^2-A1-4I not 0/1 at ({i},{j})")
    scheme = ConcreteScheme(rel)
    if scheme.valencies != (1, 4, 8, 2):
        raise InternalConsistency(f"unexpected valencies {scheme.valencies}")
    return scheme


def distance_matrix(adj):
    """BFS distances of a connected graph given as a 0/1 matrix."""
    n = len(adj)
    out = []
    for src in range(n):
        dist = [-1] * n
        dist[src] = 0
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for v in range(n):
                    if adj[u][v] and dist[v] < 0:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        out.append(dist)
    return out


# ---------------------------------------------------------------------------
# the parametric family

def _rq(expr):
    return expr if isinstance(expr, RatQ) else RatQ(expr)


def parametric_eigenmatrix():
    """First eigenmatrix of the family, entries in Q(q)."""
    q = Q
    return [
        [_rq(1), q * q / 2 - q, q * q / 2, q - 2],
        [_rq(1), q / 2, -(q / 2), _rq(-1)],
        [_rq(1), -(q / 2) + 1, -(q / 2), q - 2],
        [_rq(1), -(q / 2), q / 2, _rq(-1)],
    ]


def fused_eigenmatrix_12():
    """Eigenmatrix of the imprimitive fusion {R1 u R2}, {R3}."""
    q = Q
    return [
        [_rq(1), q * (q - 1), q - 2],
        [_rq(1), _rq(0), _rq(-1)],
        [_rq(1), -q + 1, q - 2],
    ]


def fused_eigenmatrix_13():
    """Eigenmatrix of the primitive fusion {R1 u R3}, {R2}."""
    q = Q
    return [
        [_rq(1), q * q / 2 - 2, q * q / 2],
        [_rq(1), q / 2 - 1, -(q / 2)],
        [_rq(1), -(q / 2) - 1, q / 2],
    ]


def parametric_intersection_matrices():
    """B_1, B_2, B_3 with (i, j) entry p_{h,i}^j, entries in Q(q)."""
    q = Q
    b1 = [
        [_rq(0), _rq(1), _rq(0), _rq(0)],
        [q * q / 2 - q, (q - 2) ** 2 / 4, (q - 2) ** 2 / 4, q * (q - 4) / 4],
        [_rq(0), q * (q - 2) / 4, q * (q - 2) / 4, q * q / 4],
        [_rq(0), (q - 4) / 2, (q - 2) / 2, _rq(0)],
    ]
    b2 = [
        [_rq(0), _rq(0), _rq(1), _rq(0)],
        [_rq(0), q * (q - 2) / 4, q * (q - 2) / 4, q * q / 4],
        [q * q / 2, q * q / 4, q * q / 4, q * q / 4],
        [_rq(0), q / 2, (q - 2) / 2, _rq(0)],
    ]
    b3 = [
        [_rq(0), _rq(0), _rq(0), _rq(1)],
        [_rq(0), (q - 4) / 2, (q - 2) / 2, _rq(0)],
        [_rq(0), q / 2, (q - 2) / 2, _rq(0)],
        [q - 2, _rq(0), _rq(0), q - 3],
    ]
    return b1, b2, b3


class ParametricScheme:
    """The 3-class family for general even q >= 4: tables, no vertices."""

    def __init__(self):
        self.d = 3
        self.P = parametric_eigenmatrix()
        b1, b2, b3 = parametric_intersection_matrices()
        ident = [[_rq(1 if i == j else 0) for j in range(4)] for i in range(4)]
        self.B = [ident, b1, b2, b3]
        self.n = RatQ(PolyQ((-1, 0, 1)))  # q^2 - 1

    def p(self, h, i, j):
        return self.B[h][i][j]

    def eigen_data(self):
        try:
            inv = linalg.mat_inverse(self.P, zero=_rq(0), one=_rq(1))
        except ZeroDivisionError as exc:
            raise SingularP("parametric eigenmatrix singular") from exc
        Qm = [[v * self.n for v in row] for row in inv]
        return SpectralData(self.P, Qm, self.n)

    def verify_consistency(self):
        """Structure-constant identity tying P to the B tables, plus the
        row-sum identities, all as rational-function equalities."""
        zero = _rq(0)
        for h in range(4):
            for i in range(4):
                for m in range(4):
                    acc = zero
                    for k in range(4):
                        acc = acc + self.p(h, i, k) * self.P[m][k]
                    if not acc == self.P[m][h] * self.P[m][i]:
                        return False
        row0 = sum(self.P[0][j] for j in range(4))
        if not row0 == self.n:
            return False
        data = self.eigen_data()
        for i in range(4):
            want = self.n - 1 if i == 0 else _rq(-1)
            if not sum(data.Q[i][j] for j in range(1, 4)) == want:
                return False
        return True

    def p_at(self, q0):
        """All p_{hi}^j evaluated at a rational q0 (64 Fractions)."""
        return [[[self.p(h, i, j)(q0) for j in range(4)] for i in range(4)]
                for h in range(4)]

    def eigenmatrix_at(self, q0):
        return [[entry(q0) for entry in row] for row in self.P]

    def fused_rows(self, merged):
        """Collapse the parametric eigenmatrix along a fusion of classes.

        Sums the columns inside each block and drops duplicate rows;
        for admissible fusions this reproduces the fused eigenmatrix.
        """
        blocks = sorted((sorted(b) for b in merged), key=lambda b: b[0])
        rows = []
        for m in range(4):
            row = tuple(sum((self.P[m][j] for j in block), _rq(0))
                        for block in blocks)
            if row not in rows:
                rows.append(row)
        return [list(r) for r in rows]
