"""Exact linear algebra over the rationals.

Matrices are plain lists of lists of Fraction; vectors are lists of
Fraction.  Everything here is small and dense (module dimensions stay in
the dozens), so simple Gauss elimination with exact arithmetic is both
fast enough and free of the conditioning questions that would make
socles and kernels ill-defined in floating point.
"""

from __future__ import annotations

from fractions import Fraction

Mat = list  # list[list[Fraction]]
Vec = list  # list[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(m: int, n: int) -> Mat:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def copy_mat(a: Mat) -> Mat:
    return [row[:] for row in a]


def shape(a: Mat) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def transpose(a: Mat) -> Mat:
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    m, k = shape(a)
    k2, n = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    bt = transpose(b)
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for j in range(n):
            bj = bt[j]
            s = ZERO
            for t in range(k):
                x = ai[t]
                if x:
                    s += x * bj[t]
            oi[j] = s
    return out


def mat_vec(a: Mat, v: Vec) -> Vec:
    m, n = shape(a)
    if n != len(v):
        raise ValueError("shape mismatch")
    return [sum((a[i][j] * v[j] for j in range(n) if v[j]), ZERO) for i in range(m)]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Mat, c: Fraction) -> Mat:
    return [[c * x for x in row] for row in a]


def is_zero_mat(a: Mat) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def rref(a: Mat) -> tuple:
    """Reduced row echelon form. Returns (R, pivot column list)."""
    r = copy_mat(a)
    m, n = shape(r)
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = None
        for i in range(row, m):
            if r[i][col]:
                piv = i
                break
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = ONE / r[row][col]
        if inv != 1:
            r[row] = [x * inv for x in r[row]]
        for i in range(m):
            if i != row and r[i][col]:
                c = r[i][col]
                ri, rr = r[i], r[row]
                r[i] = [x - c * y for x, y in zip(ri, rr)]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a: Mat) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def row_space_basis(rows: list) -> list:
    """Echelonized basis of the span of the given row vectors."""
    if not rows:
        return []
    r, pivots = rref(rows)
    return [r[i] for i in range(len(pivots))]


def nullspace(a: Mat) -> list:
    """Basis of the right kernel {v : a v = 0}, as a list of vectors."""
    m, n = shape(a)
    if n == 0:
        return []
    if m == 0:
        return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    r, pivots = rref(a)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: Mat, b: Vec):
    """One solution of a x = b, or None if inconsistent."""
    m, n = shape(a)
    aug = [a[i][:] + [b[i]] for i in range(m)]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for i, p in enumerate(pivots):
        x[p] = r[i][n]
    return x


def solve_matrix(a: Mat, b: Mat):
    """One solution X of a X = b, or None. Solves all columns in one elimination."""
    m, n = shape(a)
    mb, k = shape(b)
    if m != mb:
        raise ValueError("shape mismatch")
    aug = [a[i][:] + b[i][:] for i in range(m)]
    r, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    x = zeros(n, k)
    for i, p in enumerate(pivots):
        x[p] = r[i][n:]
    return x


def inverse(a: Mat):
    """Exact inverse, or None if singular."""
    n = len(a)
    x = solve_matrix(a, identity(n))
    if x is None:
        return None
    # solve_matrix only certifies consistency; confirm invertibility
    if len(rref(a)[1]) != n:
        return None
    return x


def det(a: Mat) -> Fraction:
    n = len(a)
    r = copy_mat(a)
    d = ONE
    for col in range(n):
        piv = None
        for i in range(col, n):
            if r[i][col]:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != col:
            r[col], r[piv] = r[piv], r[col]
            d = -d
        d *= r[col][col]
        inv = ONE / r[col][col]
        for i in range(col + 1, n):
            if r[i][col]:
                c = r[i][col] * inv
                r[i] = [x - c * y for x, y in zip(r[i], r[col])]
    return d


def in_row_space(rows: list, v: Vec) -> bool:
    if all(x == 0 for x in v):
        return True
    if not rows:
        return False
    return rank(rows) == rank(rows + [v])


def quotient_projection(rows: list, n: int) -> tuple:
    """Coordinates on Q^n / span(rows).

    Returns (P, section_cols) with P a k x n matrix (k = n - rank) whose
    kernel is exactly the span, and section_cols the standard coordinates
    q_1 < ... < q_k such that e_{q_t} maps to the t-th quotient basis
    vector (so the obvious section has P . S = id).
    """
    if not rows:
        return identity(n), list(range(n))
    r, pivots = rref(rows)
    r = r[: len(pivots)]
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    p = zeros(len(free), n)
    for t, q in enumerate(free):
        p[t][q] = ONE
    for i, pv in enumerate(pivots):
        for t, q in enumerate(free):
            p[t][pv] = -r[i][q]
    return p, free
