"""Weyl group combinatorics for simply laced Dynkin diagrams.

Elements are stored as integer matrices acting on the weight lattice in
the fundamental-weight basis, so equality, inversion and composition are
exact and independent of any choice of word.  Reduced words follow the
convention that a word is printed left to right as s_{i_r} ... s_{i_1}:
position k in the mathematical recursions (v_(k), w_(k), gamma_k) refers
to the k-th letter *from the right* of the printed sequence.

>>> d = dynkin("A", 2)
>>> w = parse_word_element(d, "s1 s2 s1")
>>> length(w)
3
>>> word_str(reduced_word(w))
's1 s2 s1'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg

__all__ = [
    "DynkinDiagram",
    "dynkin",
    "WeylElement",
    "ReducedWord",
    "identity_element",
    "simple_reflection",
    "length",
    "left_descents",
    "right_descents",
    "reduced_word",
    "all_reduced_words",
    "bruhat_leq",
    "longest_element",
    "v_sequence",
    "j_set",
    "property_P",
    "interval_roots",
    "parabolic_data",
    "act_weight",
    "act_root",
    "fundamental_weight",
    "gamma_weight",
    "word_str",
    "parse_word",
    "parse_word_element",
    "to_window",
    "from_window",
]


@dataclass(frozen=True)
class DynkinDiagram:
    """A simply laced Dynkin diagram with vertices 1..rank (Bourbaki labels)."""

    kind: str
    rank: int

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    @property
    def edges(self) -> tuple:
        return _edges(self.kind, self.rank)

    @property
    def adjacency(self) -> tuple:
        n = self.rank
        adj = [[0] * n for _ in range(n)]
        for i, j in self.edges:
            adj[i - 1][j - 1] = adj[j - 1][i - 1] = 1
        return tuple(tuple(r) for r in adj)

    def neighbors(self, i: int) -> tuple:
        return tuple(b if a == i else a for a, b in self.edges if i in (a, b))

    def cartan(self) -> tuple:
        return _cartan(self.kind, self.rank)

    def __str__(self):
        return f"{self.kind}{self.rank}"


def dynkin(kind: str, rank: int) -> DynkinDiagram:
    kind = kind.upper()
    if kind == "A" and rank >= 1:
        pass
    elif kind == "D" and rank >= 4:
        pass
    elif kind == "E" and rank in (6, 7, 8):
        pass
    else:
        raise ValueError(f"not a simply laced Dynkin type: {kind}{rank}")
    return DynkinDiagram(kind, rank)


@lru_cache(maxsize=None)
def _edges(kind: str, rank: int) -> tuple:
    if kind == "A":
        return tuple((i, i + 1) for i in range(1, rank))
    if kind == "D":
        # fork at rank-2: vertices rank-1 and rank both attach there
        chain = tuple((i, i + 1) for i in range(1, rank - 1))
        return chain + ((rank - 2, rank),)
    # Bourbaki E_n: chain 1-3-4-5-...-n with 2 attached to 4
    chain = ((1, 3),) + tuple((i, i + 1) for i in range(3, rank))
    return chain + ((2, 4),)


@lru_cache(maxsize=None)
def _cartan(kind: str, rank: int) -> tuple:
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in _edges(kind, rank):
        c[i - 1][j - 1] = c[j - 1][i - 1] = -1
    return tuple(tuple(r) for r in c)


@lru_cache(maxsize=None)
def _cartan_inverse(kind: str, rank: int) -> tuple:
    c = [[Fraction(x) for x in row] for row in _cartan(kind, rank)]
    inv = linalg.inverse(c)
    return tuple(tuple(r) for r in inv)


@lru_cache(maxsize=None)
def positive_roots(diagram: DynkinDiagram) -> tuple:
    """All positive roots, as integer tuples in the simple-root basis."""
    n = diagram.rank
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    refl = [_root_matrix_of_generator(diagram, i) for i in diagram.vertices]
    while frontier:
        nxt = []
        for r in frontier:
            for m in refl:
                img = tuple(sum(m[a][b] * r[b] for b in range(n)) for a in range(n))
                if all(x >= 0 for x in img) and img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen))


def _root_matrix_of_generator(diagram: DynkinDiagram, i: int) -> list:
    # s_i(alpha_j) = alpha_j - c[i][j] alpha_i
    n = diagram.rank
    c = diagram.cartan()
    m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    for j in range(n):
        m[i - 1][j] -= c[i - 1][j]
    return m


class WeylElement:
    """Group element as an integer matrix on the fundamental-weight basis.

    Column j holds the coordinates of w(varpi_j).
    """

    __slots__ = ("diagram", "mat", "_inv", "_len", "_rootmat", "_hash")

    def __init__(self, diagram: DynkinDiagram, mat):
        self.diagram = diagram
        self.mat = tuple(tuple(int(x) for x in row) for row in mat)
        self._inv = None
        self._len = None
        self._rootmat = None
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.diagram == other.diagram
            and self.mat == other.mat
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.diagram, self.mat))
        return self._hash

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.diagram != other.diagram:
            raise ValueError("mixed diagrams")
        a, b = self.mat, other.mat
        n = self.diagram.rank
        prod = [
            [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return WeylElement(self.diagram, prod)

    @property
    def inverse(self) -> "WeylElement":
        if self._inv is None:
            m = [[Fraction(x) for x in row] for row in self.mat]
            inv = linalg.inverse(m)
            self._inv = WeylElement(self.diagram, [[int(x) for x in row] for row in inv])
        return self._inv

    def is_identity(self) -> bool:
        n = self.diagram.rank
        return all(self.mat[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def root_matrix(self) -> tuple:
        """Matrix of the action on the root lattice (simple-root basis)."""
        if self._rootmat is None:
            n = self.diagram.rank
            c = self.diagram.cartan()
            cinv = _cartan_inverse(self.diagram.kind, self.diagram.rank)
            mc = [
                [sum(self.mat[i][k] * c[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)
            ]
            rm = []
            for i in range(n):
                row = []
                for j in range(n):
                    x = sum(cinv[i][k] * mc[k][j] for k in range(n))
                    if x.denominator != 1:
                        raise AssertionError("root action not integral")
                    row.append(int(x))
                rm.append(tuple(row))
            self._rootmat = tuple(rm)
        return self._rootmat

    def __repr__(self):
        return f"WeylElement({self.diagram}, {word_str(reduced_word(self))!r})"


def identity_element(diagram: DynkinDiagram) -> WeylElement:
    n = diagram.rank
    return WeylElement(diagram, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


@lru_cache(maxsize=None)
def simple_reflection(diagram: DynkinDiagram, i: int) -> WeylElement:
    # s_i(varpi_j) = varpi_j - delta_{ij} alpha_i
    n = diagram.rank
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range")
    c = diagram.cartan()
    m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    for a in range(n):
        m[a][i - 1] -= c[a][i - 1]
    return WeylElement(diagram, m)


def act_weight(w: WeylElement, weight) -> tuple:
    n = w.diagram.rank
    return tuple(sum(w.mat[i][j] * weight[j] for j in range(n)) for i in range(n))


def act_root(w: WeylElement, root) -> tuple:
    n = w.diagram.rank
    rm = w.root_matrix()
    return tuple(sum(rm[i][j] * root[j] for j in range(n)) for i in range(n))


def fundamental_weight(diagram: DynkinDiagram, i: int) -> tuple:
    return tuple(1 if j == i - 1 else 0 for j in range(diagram.rank))


def _root_is_negative(root) -> bool:
    return any(x < 0 for x in root) and all(x <= 0 for x in root)


def length(w: WeylElement) -> int:
    if w._len is None:
        w._len = sum(
            1 for beta in positive_roots(w.diagram) if _root_is_negative(act_root(w, beta))
        )
    return w._len


def right_descents(w: WeylElement) -> list:
    """Vertices i with l(w s_i) < l(w), i.e. w(alpha_i) < 0."""
    out = []
    for i in w.diagram.vertices:
        alpha = tuple(1 if j == i - 1 else 0 for j in range(w.diagram.rank))
        if _root_is_negative(act_root(w, alpha)):
            out.append(i)
    return out


def left_descents(w: WeylElement) -> list:
    """Vertices i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) < 0."""
    return right_descents(w.inverse)


@dataclass(frozen=True)
class ReducedWord:
    """A reduced word, stored exactly as printed: letters[0] is i_r.

    Word positions are indexed from the right end (k = 1 is the last
    printed letter); letter(k) returns the letter at position k.
    """

    diagram: DynkinDiagram
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for i in self.letters:
            if not 1 <= i <= self.diagram.rank:
                raise ValueError(f"letter {i} out of range for {self.diagram}")

    def __len__(self):
        return len(self.letters)

    def letter(self, k: int) -> int:
        """The letter i_k: k-th counted from the right end, 1-based."""
        r = len(self.letters)
        if not 1 <= k <= r:
            raise IndexError(k)
        return self.letters[r - k]

    def product(self) -> WeylElement:
        w = identity_element(self.diagram)
        for i in self.letters:
            w = w * simple_reflection(self.diagram, i)
        return w

    def right_product(self, k: int) -> WeylElement:
        """The partial product w_(k) = s_{i_k} ... s_{i_1} (last k printed letters)."""
        w = identity_element(self.diagram)
        if k:
            for i in self.letters[len(self.letters) - k :]:
                w = w * simple_reflection(self.diagram, i)
        return w

    def is_reduced(self) -> bool:
        return length(self.product()) == len(self.letters)


def reduced_word(w: WeylElement) -> ReducedWord:
    """Canonical reduced word: repeatedly strip the smallest left descent."""
    letters = []
    cur = w
    while not cur.is_identity():
        i = min(left_descents(cur))
        letters.append(i)
        cur = simple_reflection(w.diagram, i) * cur
    return ReducedWord(w.diagram, tuple(letters))


def all_reduced_words(w: WeylElement):
    """Yield every reduced word of w (letters in printed order)."""
    if w.is_identity():
        yield ()
        return
    for i in left_descents(w):
        for tail in all_reduced_words(simple_reflection(w.diagram, i) * w):
            yield (i,) + tail


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """Bruhat order test by the greedy subword criterion.

    Walk down any fixed reduced word of w from the left; drop a letter
    onto v whenever it is a left descent of the running element.  The
    lifting property makes the greedy answer word-independent.
    """
    if v.diagram != w.diagram:
        raise ValueError("mixed diagrams")
    u = v
    if length(u) > length(w):
        return False
    for i in reduced_word(w).letters:
        if u.is_identity():
            return True
        s = simple_reflection(w.diagram, i)
        su = s * u
        if length(su) < length(u):
            u = su
    return u.is_identity()


@lru_cache(maxsize=None)
def longest_element(diagram: DynkinDiagram) -> WeylElement:
    w = identity_element(diagram)
    while True:
        asc = [i for i in diagram.vertices if i not in right_descents(w)]
        if not asc:
            return w
        w = w * simple_reflection(diagram, asc[0])


def v_sequence(v: WeylElement, word: ReducedWord) -> list:
    """The interpolation sequence v_(0), ..., v_(r) of v along the word.

    v_(k) = s_{i_k} v_(k-1) exactly when that keeps a reduced factorization
    of v, i.e. when l(v v_(k-1)^{-1} s_{i_k}) < l(v v_(k-1)^{-1}).
    """
    diagram = word.diagram
    if v.diagram != diagram:
        raise ValueError("mixed diagrams")
    seq = [identity_element(diagram)]
    cur = seq[0]
    for k in range(1, len(word) + 1):
        s = simple_reflection(diagram, word.letter(k))
        t = v * cur.inverse
        if length(t * s) < length(t):
            cur = s * cur
        seq.append(cur)
    if seq[-1] != v:
        raise ValueError("v is not below the word's element in Bruhat order")
    return seq


def j_set(v: WeylElement, word: ReducedWord) -> tuple:
    seq = v_sequence(v, word)
    return tuple(k for k in range(1, len(word) + 1) if seq[k] == seq[k - 1])


def property_P(v: WeylElement, w: WeylElement) -> bool:
    """True iff w = (w v^{-1}) v with lengths adding."""
    return length(w * v.inverse) + length(v) == length(w)


def interval_roots(v: WeylElement, w: WeylElement) -> tuple:
    """Positive roots beta with w(beta) < 0 and v(beta) > 0."""
    out = []
    for beta in positive_roots(w.diagram):
        if _root_is_negative(act_root(w, beta)) and not _root_is_negative(act_root(v, beta)):
            out.append(beta)
    return tuple(out)


def parabolic_data(diagram: DynkinDiagram, K) -> tuple:
    """Longest element of W_K and the minimal-coset-representative test.

    The predicate decides membership in W^K = elements with no left
    descent inside K.
    """
    K = sorted(set(K))
    for i in K:
        if not 1 <= i <= diagram.rank:
            raise ValueError(f"vertex {i} out of range")
    w = identity_element(diagram)
    while True:
        asc = [i for i in K if i not in right_descents(w)]
        if not asc:
            break
        w = w * simple_reflection(diagram, asc[0])

    def is_minimal_rep(u: WeylElement) -> bool:
        return not any(i in K for i in left_descents(u))

    return w, is_minimal_rep


def gamma_weight(word: ReducedWord, k: int) -> tuple:
    """gamma_k = varpi_{i_k} - w_(k)^{-1}(varpi_{i_k}), in root coordinates.

    This is the dimension vector of the k-th socle-tower module.
    """
    diagram = word.diagram
    i = word.letter(k)
    varpi = fundamental_weight(diagram, i)
    img = act_weight(word.right_product(k).inverse, varpi)
    diff = [a - b for a, b in zip(varpi, img)]
    cinv = _cartan_inverse(diagram.kind, diagram.rank)
    n = diagram.rank
    out = []
    for a in range(n):
        x = sum(cinv[a][b] * diff[b] for b in range(n))
        if x.denominator != 1:
            raise AssertionError("gamma not in the root lattice")
        out.append(int(x))
    return tuple(out)


# -- serialization ---------------------------------------------------------


def word_str(word) -> str:
    letters = word.letters if isinstance(word, ReducedWord) else tuple(word)
    return " ".join(f"s{i}" for i in letters)


def parse_word(diagram: DynkinDiagram, text: str) -> tuple:
    """Parse 's1 s2 s1' (or '1 2 1') into a printed-order letter tuple."""
    letters = []
    for tok in text.replace(",", " ").split():
        if tok.lower().startswith("s"):
            tok = tok[1:]
        if not tok.isdigit():
            raise ValueError(f"bad word token {tok!r}")
        i = int(tok)
        if not 1 <= i <= diagram.rank:
            raise ValueError(f"letter {i} out of range for {diagram}")
        letters.append(i)
    return tuple(letters)


def parse_word_element(diagram: DynkinDiagram, text: str) -> WeylElement:
    w = identity_element(diagram)
    for i in parse_word(diagram, text):
        w = w * simple_reflection(diagram, i)
    return w


def _epsilon_weights(diagram: DynkinDiagram) -> list:
    """Type A only: weight coordinates of eps_1, ..., eps_{n+1} (SL basis)."""
    if diagram.kind != "A":
        raise ValueError("window notation is defined for type A only")
    n = diagram.rank
    eps = []
    for k in range(1, n + 2):
        v = [0] * n
        if k <= n:
            v[k - 1] = 1
        if k >= 2 and k - 2 < n:
            v[k - 2] -= 1
        eps.append(tuple(v))
    return eps


def to_window(w: WeylElement) -> tuple:
    """One-line permutation of {1..n+1} for type A elements."""
    eps = _epsilon_weights(w.diagram)
    index = {e: k + 1 for k, e in enumerate(eps)}
    window = []
    for e in eps:
        img = act_weight(w, e)
        window.append(index[tuple(img)])
    return tuple(window)


def from_window(diagram: DynkinDiagram, window) -> WeylElement:
    window = tuple(int(x) for x in window)
    n = diagram.rank
    if sorted(window) != list(range(1, n + 2)):
        raise ValueError("not a permutation window")
    eps = _epsilon_weights(diagram)
    cols = []
    for j in range(1, n + 1):
        # w(varpi_j) = eps_{sigma(1)} + ... + eps_{sigma(j)}
        acc = [0] * n
        for k in range(j):
            acc = [a + b for a, b in zip(acc, eps[window[k] - 1])]
        cols.append(acc)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    return WeylElement(diagram, mat)


def to_permutation(w: WeylElement) -> tuple:
    return to_window(w)
