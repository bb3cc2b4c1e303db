"""Small exact linear algebra over any field-like element type.

Works for Fraction, RatQ, RatFuncQ and TowerElement alike: elements
need +, -, *, division (or .inverse()), and == against ``zero``.
Everything is plain Gaussian elimination; matrices are lists of lists
and stay tiny (4x4 eigen work) or structured (the sparse span-condition
elimination lives in typeii, not here).
"""

from __future__ import annotations

from fractions import Fraction


def identity(n, zero=Fraction(0), one=Fraction(1)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b, zero=Fraction(0)):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = zero
            for t in range(k):
                acc = acc + ai[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_inverse(a, zero=Fraction(0), one=Fraction(1)):
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(a)
    work = [list(row) + ident_row for row, ident_row in
            zip(a, identity(n, zero, one))]
    for col in range(n):
        piv = next((r for r in range(col, n) if not work[r][col] == zero), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        inv = _field_inverse(work[col][col], one)
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and not work[r][col] == zero:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def nullspace(a, zero=Fraction(0), one=Fraction(1)):
    """Basis of the right kernel of a (rows may outnumber columns)."""
    rows = [list(r) for r in a]
    ncols = len(rows[0]) if rows else 0
    pivots = {}
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col] == zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _field_inverse(rows[r][col], one)
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col] == zero:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots[col] = r
        r += 1
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for pc, pr in pivots.items():
            vec[pc] = zero - rows[pr][fc]
        basis.append(vec)
    return basis


def solve(a, b, zero=Fraction(0), one=Fraction(1)):
    """One solution of A x = b, or None when inconsistent.

    b is a flat vector; the system may be over- or under-determined.
    """
    rows = [list(r) + [bv] for r, bv in zip(a, b)]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col] == zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _field_inverse(rows[r][col], one)
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col] == zero:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if not rows[i][ncols] == zero:
            return None
    x = [zero] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][ncols]
    return x


def _field_inverse(v, one):
    if hasattr(v, "inverse"):
        return v.inverse()
    return one / v


def char_poly(a):
    """Characteristic polynomial of a rational matrix (Faddeev-LeVerrier).

    Returns coefficients c_0..c_n, ascending, of det(xI - A); exact over
    Fraction entries.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        tr = sum((am[i][i] for i in range(n)), Fraction(0))
        c = -tr / k
        coeffs[n - k] = c
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def rational_eigenvalues(a):
    """All rational eigenvalues of a rational square matrix, no repeats.

    Found as rational roots of the characteristic polynomial (numerator
    divisors over denominator divisors after clearing); enough for the
    intersection matrices handled here, whose spectra are rational.
    """
    coeffs = char_poly(a)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    lead = ints[-1]
    # strip powers of x so the constant term is nonzero
    shift = 0
    while ints[shift] == 0:
        shift += 1
    const = ints[shift]
    roots = set()
    if shift:
        roots.add(Fraction(0))
    for p in _divisors(abs(const)):
        for s in _divisors(abs(lead)):
            for sign in (1, -1):
                cand = Fraction(sign * p, s)
                if _poly_eval(coeffs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(n):
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
