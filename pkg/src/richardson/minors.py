"""Evaluation layer for type A: points of the unipotent group as exact
rational unitriangular matrices, minors of group elements, signed
permutation representatives of Weyl elements, Gauss factorization over
the big cell, and the reduction map that squeezes an open stratum point
onto its twisted unipotent chart.

All arithmetic is exact (Fraction entries throughout).  Only SL(n) is
supported; operations that need a fundamental-representation realization
reject other Dynkin kinds instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from . import linalg
from .weyl import (
    DynkinDiagram,
    ReducedWord,
    WeylElement,
    dynkin,
    from_window,
    j_set,
    reduced_word,
    to_window,
    v_sequence,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class BigCellError(ValueError):
    """A Gauss factorization hit a vanishing leading principal minor."""


def _freeze(rows) -> tuple:
    return tuple(tuple(linalg.frac(x) for x in row) for row in rows)


def _require_type_a(diagram: DynkinDiagram):
    if diagram.kind != "A":
        raise ValueError("matrix realization exists for type A only")


@dataclass(frozen=True)
class GroupElement:
    """Square matrix over Q with determinant exactly 1."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("group element must be square")
        if linalg.det([list(r) for r in self.entries]) != 1:
            raise ValueError("group element must have determinant 1")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __mul__(self, other):
        prod = linalg.mat_mul([list(r) for r in self.entries],
                              [list(r) for r in other.entries])
        if isinstance(self, UnitriMatrix) and isinstance(other, UnitriMatrix):
            return UnitriMatrix(tuple(map(tuple, prod)))
        return GroupElement(tuple(map(tuple, prod)))

    def inverse(self):
        inv = linalg.inverse([list(r) for r in self.entries])
        if isinstance(self, UnitriMatrix):
            return UnitriMatrix(tuple(map(tuple, inv)))
        return GroupElement(tuple(map(tuple, inv)))

    def transpose(self) -> "GroupElement":
        return GroupElement(tuple(map(tuple, linalg.transpose(
            [list(r) for r in self.entries]))))


@dataclass(frozen=True)
class UnitriMatrix(GroupElement):
    """Upper unitriangular matrix over Q: a point of N."""

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError("unitriangular matrix must be square")
            if row[i] != 1:
                raise ValueError("diagonal entry must be 1")
            for j in range(i):
                if row[j] != 0:
                    raise ValueError("entry below the diagonal must vanish")


def group(rows) -> GroupElement:
    return GroupElement(_freeze(rows))


def unitri(rows) -> UnitriMatrix:
    return UnitriMatrix(_freeze(rows))


def unitri_identity(n: int) -> UnitriMatrix:
    return UnitriMatrix(tuple(map(tuple, linalg.identity(n))))


def matrix_to_json(x) -> list:
    """Rows of "p/q" strings; inverse of the *_from_json parsers."""
    return [[str(e) for e in row] for row in x.entries]


def unitri_from_json(rows) -> UnitriMatrix:
    return unitri([[Fraction(s) for s in row] for row in rows])


def group_from_json(rows) -> GroupElement:
    return group([[Fraction(s) for s in row] for row in rows])


# -- minors -------------------------------------------------------------------

@dataclass(frozen=True)
class MinorSpec:
    """Row and column subsets (1-based, equal size) of a square matrix."""

    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        cols = tuple(int(c) for c in self.cols)
        if len(rows) != len(cols):
            raise ValueError("row and column sets must have equal size")
        if sorted(set(rows)) != list(rows) or sorted(set(cols)) != list(cols):
            raise ValueError("subsets must be sorted and duplicate-free")
        if rows and rows[0] < 1:
            raise ValueError("subsets are 1-based")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)


def minor(x, spec: MinorSpec) -> Fraction:
    ent = x.entries
    sub = [[ent[r - 1][c - 1] for c in spec.cols] for r in spec.rows]
    return linalg.det(sub)


def weight_subset(u: WeylElement, i: int) -> tuple:
    """Image u({1..i}) as a sorted tuple; the row (or column) set of the
    extremal weight u(varpi_i) in the i-th fundamental representation."""
    _require_type_a(u.diagram)
    window = to_window(u)
    return tuple(sorted(window[k] for k in range(i)))


def plucker(x, cols) -> Fraction:
    """Minor on the first k rows; on the chart where the leading k x k
    minor is 1 these are affine Pluecker coordinates."""
    cols = tuple(sorted(int(c) for c in cols))
    return minor(x, MinorSpec(tuple(range(1, len(cols) + 1)), cols))


# -- signed permutation representatives ---------------------------------------

def _generator_rep(n1: int, i: int, upper_sign: int) -> list:
    # 2x2 block (0, upper_sign; -upper_sign, 0) at rows/cols {i, i+1}
    m = linalg.identity(n1)
    m[i - 1][i - 1] = ZERO
    m[i][i] = ZERO
    m[i - 1][i] = Fraction(upper_sign)
    m[i][i - 1] = Fraction(-upper_sign)
    return m


@lru_cache(maxsize=None)
def rep_bar(w: WeylElement) -> GroupElement:
    """Representative with -1 above the diagonal in each generator block."""
    _require_type_a(w.diagram)
    n1 = w.diagram.rank + 1
    mats = [_generator_rep(n1, i, -1) for i in reduced_word(w).letters]
    prod = reduce(linalg.mat_mul, mats, linalg.identity(n1))
    return GroupElement(tuple(map(tuple, prod)))


@lru_cache(maxsize=None)
def rep_barbar(w: WeylElement) -> GroupElement:
    """Representative with +1 above the diagonal in each generator block."""
    _require_type_a(w.diagram)
    n1 = w.diagram.rank + 1
    mats = [_generator_rep(n1, i, 1) for i in reduced_word(w).letters]
    prod = reduce(linalg.mat_mul, mats, linalg.identity(n1))
    return GroupElement(tuple(map(tuple, prod)))


# -- Gauss factorization and the chart map ------------------------------------

def gauss_plus(z) -> UnitriMatrix:
    """Unit upper triangular factor of z = (lower) * (unit upper).

    Crout elimination; the pivots are ratios of leading principal
    minors, so a zero pivot certifies that z sits outside the big cell.
    """
    ent = z.entries
    n = len(ent)
    low = linalg.zeros(n, n)
    up = linalg.identity(n)
    for j in range(n):
        for i in range(j, n):
            low[i][j] = ent[i][j] - sum(low[i][k] * up[k][j] for k in range(j))
        if low[j][j] == 0:
            raise BigCellError(
                "leading principal minor %d vanishes" % (j + 1))
        for c in range(j + 1, n):
            up[j][c] = (ent[j][c]
                        - sum(low[j][k] * up[k][c] for k in range(j))) / low[j][j]
    return UnitriMatrix(tuple(map(tuple, up)))


def zeta(v: WeylElement, w: WeylElement, x: UnitriMatrix) -> UnitriMatrix:
    """Chart reduction of a stratum point: the unit-upper factor of the
    doubly twisted element.  Constant on orbits of the left action of
    the v-twisted unipotent subgroup."""
    return gauss_plus(rep_barbar(v) * x * rep_bar(w.inverse))


def phi_w(w: WeylElement, n: UnitriMatrix) -> UnitriMatrix:
    """Conjugation carrying the complementary subgroup of w to the one
    of w^{-1}; defined on N'(w) (the wrap fails loudly elsewhere)."""
    prod = rep_barbar(w) * n * rep_bar(w.inverse)
    return UnitriMatrix(prod.entries)


# -- membership tests and samplers --------------------------------------------

def open_minor_specs(v: WeylElement, w: WeylElement) -> tuple:
    """One minor per Dynkin vertex; their joint non-vanishing cuts out
    the open locus O_{v,w} inside N."""
    vi, wi = v.inverse, w.inverse
    return tuple(MinorSpec(weight_subset(vi, i), weight_subset(wi, i))
                 for i in v.diagram.vertices)


def in_O(v: WeylElement, w: WeylElement, x: UnitriMatrix) -> bool:
    return all(minor(x, s) != 0 for s in open_minor_specs(v, w))


def inversion_pairs(w: WeylElement) -> tuple:
    """Pairs (i, j), i < j, with w(i) > w(j)."""
    window = to_window(w)
    n1 = len(window)
    return tuple((i, j) for i in range(1, n1 + 1) for j in range(i + 1, n1 + 1)
                 if window[i - 1] > window[j - 1])


def _conjugate_by_rep(w: WeylElement, x: UnitriMatrix) -> GroupElement:
    r = rep_bar(w)
    return r * x * r.inverse()


def in_Nw(w: WeylElement, x: UnitriMatrix) -> bool:
    """x lies in N(w) = N meet w^{-1} N^- w: the w-conjugate is lower."""
    c = _conjugate_by_rep(w, x).entries
    n = len(c)
    return all(c[i][j] == 0 for i in range(n) for j in range(i + 1, n))


def in_Nprime(w: WeylElement, x: UnitriMatrix) -> bool:
    """x lies in N'(w) = N meet w^{-1} N w: the w-conjugate stays upper."""
    c = _conjugate_by_rep(w, x).entries
    n = len(c)
    return all(c[i][j] == 0 for i in range(n) for j in range(i))


def random_fraction(rng, bound: int = 9, zero_ok: bool = True) -> Fraction:
    den = rng.randint(1, 3)
    while True:
        num = rng.randint(-bound, bound)
        if num != 0 or zero_ok:
            return Fraction(num, den)


def _elementary(n1: int, i: int, j: int, t: Fraction) -> UnitriMatrix:
    m = linalg.identity(n1)
    m[i - 1][j - 1] = t
    return UnitriMatrix(tuple(map(tuple, m)))


def _root_subgroup_product(pairs, n1: int, rng) -> UnitriMatrix:
    x = unitri_identity(n1)
    for (i, j) in pairs:
        x = x * _elementary(n1, i, j, random_fraction(rng, zero_ok=False))
    return x


def sample_Nw(w: WeylElement, rng) -> UnitriMatrix:
    """Random point of N(w): product of root subgroup elements over the
    inversion pairs of w, in a fixed order."""
    _require_type_a(w.diagram)
    return _root_subgroup_product(inversion_pairs(w), w.diagram.rank + 1, rng)


def sample_Nprime(w: WeylElement, rng) -> UnitriMatrix:
    """Random point of N'(w): same construction over non-inversions."""
    _require_type_a(w.diagram)
    n1 = w.diagram.rank + 1
    inv = set(inversion_pairs(w))
    pairs = [(i, j) for i in range(1, n1 + 1) for j in range(i + 1, n1 + 1)
             if (i, j) not in inv]
    return _root_subgroup_product(pairs, n1, rng)


def factor_unipotent(w: WeylElement, z: UnitriMatrix) -> tuple:
    """Unique factorization z = z1 * z2 with z1 in N(w), z2 in N'(w).

    Solved band by band: at superdiagonal distance g the product rule
    only mixes in entries of strictly smaller distance, so each entry of
    z is claimed by exactly one factor.
    """
    inv = set(inversion_pairs(w))
    n = z.n
    z1 = linalg.identity(n)
    z2 = linalg.identity(n)
    ent = z.entries
    for g in range(1, n):
        for i in range(1, n - g + 1):
            j = i + g
            cross = sum(z1[i - 1][k - 1] * z2[k - 1][j - 1]
                        for k in range(i + 1, j))
            rhs = ent[i - 1][j - 1] - cross
            if (i, j) in inv:
                z1[i - 1][j - 1] = rhs
            else:
                z2[i - 1][j - 1] = rhs
    out1 = UnitriMatrix(tuple(map(tuple, z1)))
    out2 = UnitriMatrix(tuple(map(tuple, z2)))
    if (out1 * out2).entries != ent:
        raise RuntimeError("unipotent factorization lost an entry")
    return out1, out2


def sample_unitriangular(n: int, rng, bound: int = 9) -> UnitriMatrix:
    rows = linalg.identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = random_fraction(rng, bound)
    return UnitriMatrix(tuple(map(tuple, rows)))


def sample_O(v: WeylElement, w: WeylElement, rng, tries: int = 400) -> UnitriMatrix:
    """Rejection-sample the dense open locus O_{v,w}."""
    n1 = v.diagram.rank + 1
    for _ in range(tries):
        x = sample_unitriangular(n1, rng)
        if in_O(v, w, x):
            return x
    raise RuntimeError("open-locus sampling failed; is v <= w?")


def sample_minor_vanishing(n: int, vanish: MinorSpec, rng,
                           nonzero=(), tries: int = 400) -> UnitriMatrix:
    """Random unitriangular point with one minor forced to vanish and a
    list of others kept nonzero.

    The minor is affine in the entry at (first row, last column) of its
    own subsets, so that entry is solved for linearly; degenerate draws
    (zero linear coefficient, or a violated side condition) are thrown
    away and redrawn.
    """
    r, c = vanish.rows[0], vanish.cols[-1]
    if not r < c:
        raise ValueError("tuned entry must lie above the diagonal")
    for _ in range(tries):
        rows = [list(row) for row in sample_unitriangular(n, rng).entries]
        rows[r - 1][c - 1] = ZERO
        base = linalg.det([[rows[i - 1][j - 1] for j in vanish.cols]
                           for i in vanish.rows])
        rows[r - 1][c - 1] = ONE
        coef = linalg.det([[rows[i - 1][j - 1] for j in vanish.cols]
                           for i in vanish.rows]) - base
        if coef == 0:
            continue
        rows[r - 1][c - 1] = -base / coef
        x = UnitriMatrix(tuple(map(tuple, rows)))
        if minor(x, vanish) != 0:
            raise RuntimeError("linear solve failed to kill the minor")
        if all(minor(x, s) != 0 for s in nonzero):
            return x
    raise RuntimeError("vanishing-locus sampling failed")


# -- Bruhat cell of a group element --------------------------------------------

def bruhat_cell(z: GroupElement, diagram: DynkinDiagram = None) -> WeylElement:
    """Weyl element of the double coset B^- w B^- containing z.

    Ranks of the northeast justified blocks (top rows, right columns)
    are constant on such double cosets, and for a permutation matrix
    they count the one-entries in each block; the permutation is read
    off the discrete differences.
    """
    ent = [list(r) for r in z.entries]
    n = len(ent)
    if diagram is None:
        diagram = dynkin("A", n - 1)
    _require_type_a(diagram)
    r = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            block = [row[j - 1:] for row in ent[:i]]
            r[i][j] = linalg.rank(block)
    window = []
    for k in range(1, n + 1):
        img = next(i for i in range(1, n + 1) if r[i][k] - r[i][k + 1] == 1)
        window.append(img)
    return from_window(diagram, window)


# -- the initial cluster as minors ---------------------------------------------

def initial_minor_specs(v: WeylElement, word: ReducedWord) -> tuple:
    """Pairs (seed position j, minor) for the initial cluster attached
    to the word: rows come from the partial v-sequence, columns from the
    partial products of the word, both inverted."""
    _require_type_a(word.diagram)
    seq = v_sequence(v, word)
    out = []
    for j in j_set(v, word):
        i = word.letter(j)
        rows = weight_subset(seq[j].inverse, i)
        cols = weight_subset(word.right_product(j).inverse, i)
        out.append((j, MinorSpec(rows, cols)))
    return tuple(out)


def initial_cluster_values(spec, x: UnitriMatrix) -> list:
    """Evaluate every initial cluster variable at the point x.

    spec carries the pair (v, word) - any object with those attributes,
    in particular a category description, is accepted.
    """
    return [(j, minor(x, ms))
            for j, ms in initial_minor_specs(spec.v, spec.word)]
