"""Exact linear algebra over the integers and rationals.

Vectors are tuples of ints (or Fractions), matrices are tuples of row
tuples.  Everything here is deterministic and allocation-light; sizes are
small (ranks <= 8) throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

Vec = tuple
Mat = tuple


def vec(it) -> Vec:
    return tuple(it)


def mat(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b, strict=True))


def add(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def sub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def neg(a) -> Vec:
    return tuple(-x for x in a)


def scale(c, a) -> Vec:
    return tuple(c * x for x in a)


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, abs(x))
    return g


def primitive(v: Vec) -> Vec:
    """Divide an integer vector by the gcd of its entries (0 stays 0)."""
    g = gcd_list(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def rational(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def clear_denominators(v) -> Vec:
    """Smallest positive multiple of a rational vector that is integral and
    primitive."""
    fr = [Fraction(x) for x in v]
    from math import lcm

    denom = 1
    for x in fr:
        denom = lcm(denom, x.denominator)
    return primitive(tuple(int(x * denom) for x in fr))


def det(m: Mat) -> Fraction:
    """Determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    prod = Fraction(sign)
    for i in range(n):
        prod *= a[i][i]
    return prod


def rank(m: Mat) -> int:
    rows = [[Fraction(x) for x in row] for row in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def rref(m: Mat):
    """Reduced row echelon form over Q; returns (rows, pivot_columns)."""
    rows = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][col] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return [tuple(row) for row in rows[:r]], pivots


def solve_rational(a: Mat, b: Vec):
    """One solution x (tuple of Fractions) of A x = b, or None."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    rows, pivots = rref(mat(aug))
    x = [Fraction(0)] * ncols
    for row, p in zip(rows, pivots):
        if p == ncols:  # 0 = 1 row
            return None
        x[p] = row[-1]
    # verify (also catches inconsistent rows below the pivot block)
    for row, bi in zip(a, b):
        if dot(row, x) != bi:
            return None
    return tuple(x)


def nullspace_rational(a: Mat, ncols: int | None = None):
    """Basis (tuples of Fractions) of the right kernel of A over Q."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    rows, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel_int(a: Mat, ncols: int | None = None):
    """Basis of the integer right kernel {x in Z^n : A x = 0}.

    The basis generates the full (saturated) kernel lattice.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    rat = nullspace_rational(a, ncols)
    if not rat:
        return []
    # The rational kernel intersected with Z^n: saturate the integer span of
    # the cleared basis.
    ints = [clear_denominators(v) for v in rat]
    return saturate(ints, ncols)


def hnf(rows, ncols: int | None = None):
    """Row-style Hermite normal form basis of the lattice spanned by rows.

    Returns a list of integer vectors in echelon shape (pivot entries
    positive, entries above pivots reduced).
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    work = [list(r) for r in rows if not is_zero(r)]
    basis = []
    col = 0
    while work and col < ncols:
        cand = [r for r in work if r[col] != 0]
        if not cand:
            col += 1
            continue
        # reduce candidates against each other until one pivot remains
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            a, b = cand[0], cand[1]
            q = b[col] // a[col]
            nb = [x - q * y for x, y in zip(b, a)]
            work.remove(b)
            if not is_zero(nb):
                work.append(nb)
            cand = [r for r in work if r[col] != 0]
        piv = cand[0]
        work.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        col += 1
    # reduce entries above pivots
    for i in reversed(range(len(basis))):
        pcol = next(c for c in range(ncols) if basis[i][c] != 0)
        for j in range(i):
            q = basis[j][pcol] // basis[i][pcol]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return [tuple(r) for r in basis]


def in_lattice(basis, v) -> bool:
    """Membership of integer vector v in the lattice spanned by basis rows."""
    if is_zero(v):
        return True
    if not basis:
        return False
    sol = solve_rational(transpose(mat(basis)), v)
    if sol is None:
        return False
    return all(x.denominator == 1 for x in sol)


def lattice_coords(basis, v):
    """Rational coordinates of v in terms of the basis rows, or None."""
    if not basis:
        return None if not is_zero(v) else ()
    return solve_rational(transpose(mat(basis)), v)


def saturate(rows, ncols: int | None = None):
    """HNF basis of the saturation (Q-span intersected with Z^n)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return []
    # saturation = integer kernel of the system of linear forms vanishing on
    # the row span
    perp = nullspace_rational(rows, ncols)
    if not perp:
        return hnf([tuple(identity(ncols)[i]) for i in range(ncols)], ncols)
    perp_int = mat(clear_denominators(v) for v in perp)
    rat = nullspace_rational(perp_int, ncols)
    ints = [clear_denominators(v) for v in rat]
    return hnf(ints, ncols)


def sat_index(rows, ncols: int | None = None) -> int:
    """Index of the lattice spanned by rows inside its saturation.

    Equals the product of the invariant factors, i.e. the gcd of all
    maximal minors of a basis matrix.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    basis = hnf(rows, ncols)
    k = len(basis)
    if k == 0:
        return 1
    minors = []
    for cols in combinations(range(ncols), k):
        sq = mat(tuple(row[c] for c in cols) for row in basis)
        d = det(sq)
        minors.append(int(d))
    g = gcd_list(minors)
    return g if g else 1


def is_saturated(rows, ncols: int | None = None) -> bool:
    return sat_index(rows, ncols) == 1


def invert_unimodular(m: Mat) -> Mat:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(m)
    d = det(m)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    rows, _ = rref(mat(aug))
    inv = mat(tuple(int(x) for x in row[n:]) for row in rows)
    return inv
