"""Jones-graph components and the dimension of the Nomura algebra.

Vertices are ordered pairs (a, b) of points; (a, b) ~ (c, d) when the
ordinary bilinear product <Y_ab, Y_cd> of ratio vectors
(Y_ab)_x = W_xa / W_xb is nonzero.  For a symmetric Nomura algebra the
connected components are exactly the adjacency matrices of N(W), so
counting them gives dim N.  Every adjacency decision here is an exact
zero test in the tower field; there is no tolerance anywhere in this
module.

The symmetry precondition is the nonvanishing of
sum_{j<k} p_jk^i (a_{j,k}^2 - 2) + sum_j p_jj^i for i = 1..d, checked
exactly from the intersection numbers before the component method is
trusted.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import TowerElement
from .fastfield import FlatTower
from .scheme import ParametricScheme


class NotSymmetricAlgebra(ValueError):
    """Symmetry functional vanished; component counting is not justified."""


class StepFailed(AssertionError):
    def __init__(self, step, detail=""):
        super().__init__(f"structure step {step!r} failed {detail}")
        self.step = step


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def unite(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


# ---------------------------------------------------------------------------
# exact ratio vectors (reference implementation, used by tests)

def y_vector(dense, a, b):
    """(Y_ab)_x = W_xa / W_xb as exact tower elements."""
    return [row[a] / row[b] for row in dense]


def y_inner(dense, ab, cd):
    """Ordinary (non-Hermitian) scalar product <Y_ab, Y_cd>."""
    ya = y_vector(dense, *ab)
    yc = y_vector(dense, *cd)
    acc = ya[0] * yc[0]
    for x in range(1, len(ya)):
        acc = acc + ya[x] * yc[x]
    return acc


# ---------------------------------------------------------------------------
# fast adjacency oracle

class JonesGraph:
    """Adjacency oracle and component labels on the n^2 pair vertices.

    Inner products reduce to 15-term sums over a 4-index ratio table
    w_i w_k / (w_j w_l); the table is precomputed as integer vectors
    over one common denominator so each test is pure integer work.
    """

    def __init__(self, scheme_rel, weights, desc):
        self.rel = scheme_rel
        self.n = len(scheme_rel)
        self.desc = desc
        flat = FlatTower(desc)
        m = len(weights)
        w = [x.lift(desc) if x.desc != desc else x for x in weights]
        w_inv = [x.inverse() for x in w]
        vals = {}
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    for l in range(m):
                        vals[(i, j, k, l)] = flat.to_flat(
                            w[i] * w_inv[j] * w[k] * w_inv[l])
        den = 1
        from math import gcd
        for vec, d in vals.values():
            den = den * d // gcd(den, d)
        self.dim = flat.dim
        self.den = den
        self.flat = flat
        self.table = {key: tuple(v * (den // d) for v in vec)
                      for key, (vec, d) in vals.items()}
        self._labels = None

    def adjacent(self, ab, cd):
        """Exact: is <Y_ab, Y_cd> nonzero?"""
        a, b = ab
        c, d = cd
        rel = self.rel
        table = self.table
        acc = None
        for x in range(self.n):
            rx = rel[x]
            vec = table[(rx[a], rx[b], rx[c], rx[d])]
            if acc is None:
                acc = list(vec)
            else:
                for t in range(self.dim):
                    acc[t] += vec[t]
        return any(acc)

    def inner_product(self, ab, cd):
        """The same sum as an exact tower element."""
        a, b = ab
        c, d = cd
        rel = self.rel
        acc = [0] * self.dim
        for x in range(self.n):
            rx = rel[x]
            vec = self.table[(rx[a], rx[b], rx[c], rx[d])]
            for t in range(self.dim):
                acc[t] += vec[t]
        return self.flat.from_flat((tuple(acc), self.den))

    def vertices(self):
        return [(a, b) for a in range(self.n) for b in range(self.n)]

    def component_labels(self):
        """BFS component labels over all n^2 vertices, fully exact."""
        if self._labels is not None:
            return self._labels
        verts = self.vertices()
        labels = [-1] * len(verts)
        comp = 0
        for start in range(len(verts)):
            if labels[start] >= 0:
                continue
            labels[start] = comp
            frontier = [verts[start]]
            unvisited = [i for i in range(len(verts)) if labels[i] < 0]
            while frontier:
                u = frontier.pop()
                still = []
                for i in unvisited:
                    if labels[i] >= 0:
                        continue
                    if self.adjacent(u, verts[i]):
                        labels[i] = comp
                        frontier.append(verts[i])
                    else:
                        still.append(i)
                unvisited = still
            comp += 1
        self._labels = labels
        return labels

    def component_count(self):
        return max(self.component_labels()) + 1

    def component_sizes(self):
        labels = self.component_labels()
        sizes = {}
        for l in labels:
            sizes[l] = sizes.get(l, 0) + 1
        return sorted(sizes.values(), reverse=True)


def jones_graph_for(mat):
    return JonesGraph(mat.scheme.rel, mat.weights, mat.family.desc)


def jones_graph_dense(dense, desc):
    """Jones graph of an arbitrary dense type-II matrix (no scheme).

    Treats every entry pattern individually (the "scheme" is the trivial
    one with one class per entry position); used for hand-entered
    matrices such as character tables.
    """
    n = len(dense)
    rel = [[i * n + j for j in range(n)] for i in range(n)]
    weights = [dense[i][j].lift(desc) if dense[i][j].desc != desc else dense[i][j]
               for i in range(n) for j in range(n)]
    return JonesGraph(rel, weights, desc)


# ---------------------------------------------------------------------------
# symmetry precondition and the dimension

def check_symmetric(family):
    """Exact nonvanishing of the symmetry functional at the family's q."""
    values = symmetry_values(family)
    return all(not v.is_zero() for v in values)


def symmetry_values(family):
    """sum_{j<k} p_jk^i (a_{j,k}^2 - 2) + sum_j p_jj^i for i = 1..3."""
    ps = ParametricScheme()
    p_at = ps.p_at(family.q)
    a = family.a_matrix()
    out = []
    for i in range(1, 4):
        acc = TowerElement.rational(0, family.desc)
        for j in range(4):
            for k in range(j + 1, 4):
                pjk = p_at[j][k][i]
                if pjk:
                    acc = acc + (a[j][k] * a[j][k] - 2) * pjk
            acc = acc + Fraction(p_at[j][j][i])
        out.append(acc)
    return out


def nomura_dimension(mat, _graph=None):
    """dim N(W) = number of Jones-graph components, symmetry checked first."""
    if not check_symmetric(mat.family):
        raise NotSymmetricAlgebra(
            "symmetry functional vanished; component method not applicable")
    graph = _graph if _graph is not None else jones_graph_for(mat)
    labels = graph.component_labels()
    n = graph.n
    diag = {labels[a * n + a] for a in range(n)}
    if len(diag) != 1:
        raise AssertionError("diagonal vertices split across components")
    return graph.component_count()


def component_report(mat):
    graph = jones_graph_for(mat)
    dim = nomura_dimension(mat, _graph=graph)
    return {
        "n": graph.n,
        "num_components": graph.component_count(),
        "component_sizes": graph.component_sizes(),
        "dim_N": dim,
    }


# ---------------------------------------------------------------------------
# the three-step structure of the component argument (q = 4 only)

def _r03_classes(scheme):
    uf = UnionFind(scheme.n)
    for x in range(scheme.n):
        for y in range(scheme.n):
            if scheme.rel[x][y] in (0, 3):
                uf.unite(x, y)
    classes = {}
    for x in range(scheme.n):
        classes.setdefault(uf.find(x), []).append(x)
    return list(classes.values())


def triangle_counters(scheme, x, y, z):
    """c_{i,j,k} = #{u : (x,u) in R_i, (y,u) in R_j, (z,u) in R_k}."""
    c = {}
    for u in range(scheme.n):
        key = (scheme.rel[x][u], scheme.rel[y][u], scheme.rel[z][u])
        c[key] = c.get(key, 0) + 1
    return c


def jones_structure_report(mat):
    """Replay the three steps of the dim-2 argument on the actual graph.

    (a) pairs inside one R0-u-R3 class are mutually connected,
    (b) every R1 u R2 vertex has a neighbor among the class pairs,
    (c) the off-diagonal vertex set is a single component.
    Also checks the marginal identities of the triangle counters.
    Raises StepFailed on the first broken step.
    """
    scheme = mat.scheme
    graph = jones_graph_for(mat)
    labels = graph.component_labels()
    n = scheme.n

    classes = _r03_classes(scheme)
    for cls in classes:
        pairs = [(x, y) for x in cls for y in cls
                 if x != y and scheme.rel[x][y] == 3]
        comps = {labels[x * n + y] for x, y in pairs}
        if len(comps) != 1:
            raise StepFailed("class_clique", f"class {cls}")

    # marginals of the triangle counters against p_jk^3
    cls = next(c for c in classes if len(c) >= 3)
    x, y, z = cls[:3]
    c = triangle_counters(scheme, x, y, z)
    for j in (1, 2):
        for k in (1, 2):
            want = scheme.p[j][k][3]
            sums = (
                c.get((1, j, k), 0) + c.get((2, j, k), 0),
                c.get((j, 1, k), 0) + c.get((j, 2, k), 0),
                c.get((j, k, 1), 0) + c.get((j, k, 2), 0),
            )
            if any(s != want for s in sums):
                raise StepFailed("marginals", f"j={j} k={k} {sums} != {want}")

    by_point = {}
    for cls in classes:
        for x in cls:
            by_point[x] = cls
    for x in range(n):
        for z in range(n):
            if scheme.rel[x][z] not in (1, 2):
                continue
            if not any(graph.adjacent((x, y), (x, z))
                       for y in by_point[x] if y != x):
                raise StepFailed("bridge_to_class", f"({x},{z}) left side")
            if not any(graph.adjacent((yp, z), (x, z))
                       for yp in by_point[z] if yp != z):
                raise StepFailed("bridge_to_class", f"({x},{z}) right side")

    off = {labels[x * n + y] for x in range(n) for y in range(n) if x != y}
    if len(off) != 1:
        raise StepFailed("off_diagonal_component", f"{len(off)} components")
    return {
        "class_clique": True,
        "marginals": True,
        "bridge_to_class": True,
        "off_diagonal_component": True,
        "dim_N": max(labels) + 1,
    }
