"""Exact seed mutation over Laurent polynomials with frozen coefficients.

The combinatorial half of the toolkit: seeds carry a signed exchange
matrix over all vertices (frozen ones included) together with one exact
Laurent polynomial per vertex, expressed in the initial variables.
Mutation follows the matrix/exchange-binomial rule, division is performed
exactly, and mutation classes are enumerated breadth first with the seed
identified by its unordered cluster.
"""

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

CLASS_CAP = 10_000


class DivisionError(ArithmeticError):
    """Raised when an exchange binomial is not divisible by the old variable."""


def _strip(terms):
    return tuple(sorted(((e, c) for e, c in terms.items() if c != 0), reverse=True))


@dataclass(frozen=True)
class LaurentPoly:
    """Multivariate Laurent polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one integer per variable, possibly
    negative) to nonzero coefficients; it is stored sorted descending so
    equal polynomials are equal dataclasses and the leading term is first.
    """

    nvars: int
    terms: tuple  # ((exponents, coefficient), ...), sorted descending

    @staticmethod
    def make(nvars, mapping):
        return LaurentPoly(nvars, _strip(mapping))

    @staticmethod
    def constant(nvars, value):
        value = Fraction(value)
        if value == 0:
            return LaurentPoly(nvars, ())
        return LaurentPoly(nvars, (((0,) * nvars, value),))

    @staticmethod
    def variable(nvars, index):
        if not 0 <= index < nvars:
            raise ValueError("variable index out of range")
        exps = tuple(1 if t == index else 0 for t in range(nvars))
        return LaurentPoly(nvars, ((exps, ONE),))

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == (((0,) * self.nvars, ONE),)

    def _check_like(self, other):
        if not isinstance(other, LaurentPoly) or other.nvars != self.nvars:
            raise ValueError("operands live in different Laurent rings")

    def __add__(self, other):
        self._check_like(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, ZERO) + c
        return LaurentPoly(self.nvars, _strip(acc))

    def __sub__(self, other):
        self._check_like(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, ZERO) - c
        return LaurentPoly(self.nvars, _strip(acc))

    def __mul__(self, other):
        self._check_like(other)
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, ZERO) + c1 * c2
        return LaurentPoly(self.nvars, _strip(acc))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("use exact_div for negative powers")
        out = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other):
        """Divide exactly in the Laurent ring; raise if a remainder is left.

        Peeling the leading term of the running remainder against the
        leading term of the divisor removes one term of the true quotient
        per step, so an exact division finishes in as many steps as the
        quotient has terms.
        """
        self._check_like(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        quo = {}
        e_d, c_d = other.terms[0]
        for _ in range(100_000):
            if rem.is_zero():
                return LaurentPoly(self.nvars, _strip(quo))
            e_r, c_r = rem.terms[0]
            e = tuple(a - b for a, b in zip(e_r, e_d))
            c = c_r / c_d
            quo[e] = quo.get(e, ZERO) + c
            rem = rem - LaurentPoly(self.nvars, ((e, c),)) * other
        raise DivisionError("polynomial division left a remainder")

    def evaluate(self, values):
        """Evaluate at a tuple of Fractions (nonzero where exponents dip below zero)."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        vals = [Fraction(v) for v in values]
        total = ZERO
        for e, c in self.terms:
            term = c
            for base, k in zip(vals, e):
                if k:
                    term *= base**k
            total += term
        return total

    def to_string(self, names):
        """Canonical human-readable form ``numerator/denominator-monomial``."""
        if len(names) != self.nvars:
            raise ValueError("wrong number of names")
        if self.is_zero():
            return "0"
        shift = [max(0, -min(e[t] for e, _ in self.terms)) for t in range(self.nvars)]
        parts = []
        for e, c in self.terms:
            mono = _monomial_string(
                [a + s for a, s in zip(e, shift)], names)
            parts.append((mono, c))
        text = ""
        for t, (mono, c) in enumerate(parts):
            mag = abs(c)
            if mono == "1":
                body = _coeff_string(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (_coeff_string(mag), mono)
            if t == 0:
                text = body if c > 0 else "-" + body
            else:
                text += (" + " if c > 0 else " - ") + body
        denom = _monomial_string(shift, names)
        if denom == "1":
            return text
        if len(parts) > 1:
            text = "(%s)" % text
        if "*" in denom:
            denom = "(%s)" % denom
        return "%s/%s" % (text, denom)


def parse_laurent(text, names):
    """Inverse of :meth:`LaurentPoly.to_string` (accepts any +,-,*,/,^ form).

    ``names`` fixes the variable order; unknown identifiers are rejected.
    Division is performed exactly and raises :class:`DivisionError` when
    the expression is not a Laurent polynomial in the given variables.
    """
    nvars = len(names)
    index = {name: t for t, name in enumerate(names)}
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        tok = peek()
        pos[0] += 1
        return tok

    def parse_expr():
        if peek() == "-":
            take()
            total = LaurentPoly.constant(nvars, 0) - parse_term()
        else:
            total = parse_term()
        while peek() in ("+", "-"):
            op = take()
            nxt = parse_term()
            total = total + nxt if op == "+" else total - nxt
        return total

    def parse_term():
        total = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            nxt = parse_factor()
            total = total * nxt if op == "*" else total.exact_div(nxt)
        return total

    def parse_factor():
        base = parse_atom()
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            tok = take()
            if not isinstance(tok, int):
                raise ValueError("exponent must be an integer")
            k = sign * tok
            if k >= 0:
                return base**k
            return LaurentPoly.constant(nvars, 1).exact_div(base ** (-k))
        return base

    def parse_atom():
        tok = take()
        if tok == "(":
            inner = parse_expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses in %r" % text)
            return inner
        if isinstance(tok, int):
            return LaurentPoly.constant(nvars, tok)
        if isinstance(tok, str) and tok in index:
            return LaurentPoly.variable(nvars, index[tok])
        raise ValueError("unexpected token %r in %r" % (tok, text))

    result = parse_expr()
    if pos[0] != len(tokens):
        raise ValueError("trailing input in %r" % text)
    return result


def _tokenize(text):
    out = []
    t = 0
    while t < len(text):
        ch = text[t]
        if ch.isspace():
            t += 1
        elif ch in "+-*/^()":
            out.append(ch)
            t += 1
        elif ch.isdigit():
            start = t
            while t < len(text) and text[t].isdigit():
                t += 1
            out.append(int(text[start:t]))
        elif ch.isalpha() or ch == "_":
            start = t
            while t < len(text) and (text[t].isalnum() or text[t] == "_"):
                t += 1
            out.append(text[start:t])
        else:
            raise ValueError("bad character %r" % ch)
    if not out:
        raise ValueError("empty expression")
    return out


def _monomial_string(exps, names):
    out = []
    for name, k in zip(names, exps):
        if k == 1:
            out.append(name)
        elif k:
            out.append("%s^%d" % (name, k))
    return "*".join(out) if out else "1"


def _coeff_string(c):
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


# -- seeds -----------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    """Exchange matrix plus one Laurent variable per vertex.

    ``ids`` fixes the vertex order once and for all; every seed in a
    mutation class shares it, so positions, names, and matrix rows stay
    comparable across the class.  Frozen vertices keep their variables
    forever but still appear in exchange binomials.
    """

    ids: tuple
    frozen: tuple
    b: tuple  # tuple of tuple rows over all vertices, b[i][j] skew
    variables: tuple  # LaurentPoly per vertex, same order as ids

    def __post_init__(self):
        n = len(self.ids)
        if len(set(self.ids)) != n:
            raise ValueError("duplicate vertex ids")
        if set(self.frozen) - set(self.ids):
            raise ValueError("frozen ids must be vertices")
        if len(self.b) != n or any(len(row) != n for row in self.b):
            raise ValueError("exchange matrix shape mismatch")
        for i in range(n):
            for j in range(n):
                if self.b[i][j] != -self.b[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")
        if len(self.variables) != n:
            raise ValueError("one variable per vertex required")

    @staticmethod
    def initial(ids, frozen, b):
        """Fresh seed whose variables are the formal generators x<id>."""
        n = len(ids)
        rows = tuple(tuple(int(x) for x in row) for row in b)
        variables = tuple(LaurentPoly.variable(n, t) for t in range(n))
        return Seed(tuple(ids), tuple(frozen), rows, variables)

    @staticmethod
    def from_quiver(quiver):
        """Seed of a Gabriel quiver (anything with labels/frozen/to_b_matrix)."""
        return Seed.initial(
            tuple(quiver.labels), tuple(quiver.frozen), quiver.to_b_matrix())

    @property
    def names(self):
        return tuple("x%d" % j for j in self.ids)

    @property
    def mutable_ids(self):
        return tuple(j for j in self.ids if j not in self.frozen)

    def position(self, j):
        try:
            return self.ids.index(j)
        except ValueError:
            raise ValueError("no vertex %r in this seed" % (j,)) from None

    def variable(self, j):
        return self.variables[self.position(j)]

    def variable_strings(self):
        return tuple(p.to_string(self.names) for p in self.variables)

    def cluster_key(self):
        """Unordered mutable cluster, the identity of a seed in its class."""
        names = self.names
        return tuple(sorted(
            self.variables[self.position(j)].to_string(names)
            for j in self.mutable_ids))

    def exchange_binomial(self, j):
        """The two exchange monomials at a mutable vertex, as polynomials."""
        k = self.position(j)
        plus = LaurentPoly.constant(len(self.ids), 1)
        minus = LaurentPoly.constant(len(self.ids), 1)
        for a in range(len(self.ids)):
            c = self.b[a][k]
            if c > 0:
                plus = plus * self.variables[a] ** c
            elif c < 0:
                minus = minus * self.variables[a] ** (-c)
        return plus, minus

    def mutate(self, j):
        """Seed mutation at the mutable vertex labelled ``j``."""
        if j in self.frozen:
            raise ValueError("vertex %r is frozen" % (j,))
        k = self.position(j)
        n = len(self.ids)
        plus, minus = self.exchange_binomial(j)
        new_var = (plus + minus).exact_div(self.variables[k])
        new_vars = tuple(
            new_var if t == k else p for t, p in enumerate(self.variables))
        new_b = [list(row) for row in self.b]
        for i in range(n):
            for t in range(n):
                if i == k or t == k:
                    new_b[i][t] = -self.b[i][t]
                else:
                    new_b[i][t] = self.b[i][t] + (
                        abs(self.b[i][k]) * self.b[k][t]
                        + self.b[i][k] * abs(self.b[k][t])) // 2
        return Seed(self.ids, self.frozen,
                    tuple(tuple(row) for row in new_b), new_vars)


@dataclass(frozen=True)
class MutationClass:
    """Everything reachable from one seed by repeated mutation."""

    seeds: tuple
    variables: tuple  # distinct mutable variables, first-appearance order
    complete: bool

    @property
    def variable_strings(self):
        if not self.seeds:
            return ()
        names = self.seeds[0].names
        return tuple(p.to_string(names) for p in self.variables)


def mutate(seed, j):
    return seed.mutate(j)


def enumerate_class(seed, cap=CLASS_CAP):
    """Breadth-first closure of a seed under mutation at mutable vertices.

    Seeds are identified by their unordered clusters.  Exploration stops
    early (``complete=False``) once ``cap`` distinct seeds have been seen.
    """
    names = seed.names
    seen = {seed.cluster_key(): seed}
    queue = [seed]
    variables = {}
    for j in seed.mutable_ids:
        poly = seed.variable(j)
        variables.setdefault(poly.to_string(names), poly)
    complete = True
    while queue:
        current = queue.pop(0)
        for j in current.mutable_ids:
            nxt = current.mutate(j)
            key = nxt.cluster_key()
            if key in seen:
                continue
            if len(seen) >= cap:
                complete = False
                queue = []
                break
            seen[key] = nxt
            queue.append(nxt)
            poly = nxt.variable(j)
            variables.setdefault(poly.to_string(names), poly)
    return MutationClass(
        seeds=tuple(seen.values()),
        variables=tuple(variables.values()),
        complete=complete,
    )


def detect_type(seed):
    """Recognize a simply-laced Dynkin shape in the mutable part, if any.

    Returns ``("A", n)``, ``("D", n)`` or ``("E", n)`` when the mutable
    subquiver (ignoring orientation) is a path, a fork, or one of the
    three exceptional trees; ``None`` otherwise.
    """
    ids = seed.mutable_ids
    n = len(ids)
    if n == 0:
        return None
    pos = {j: seed.position(j) for j in ids}
    edges = set()
    for a in ids:
        for b in ids:
            if a < b and seed.b[pos[a]][pos[b]] != 0:
                if abs(seed.b[pos[a]][pos[b]]) != 1:
                    return None
                edges.add((a, b))
    if len(edges) != n - 1:
        return None
    adj = {j: [] for j in ids}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    # connectivity
    stack, found = [ids[0]], {ids[0]}
    while stack:
        for t in adj[stack.pop()]:
            if t not in found:
                found.add(t)
                stack.append(t)
    if len(found) != n:
        return None
    degrees = sorted(len(adj[j]) for j in ids)
    if degrees[-1] <= 2:
        return ("A", n)
    if degrees[-1] > 3 or degrees.count(3) > 1:
        return None
    branch = next(j for j in ids if len(adj[j]) == 3)
    legs = []
    for start in adj[branch]:
        length, prev, here = 1, branch, start
        while True:
            ahead = [t for t in adj[here] if t != prev]
            if not ahead:
                break
            prev, here = here, ahead[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return ("D", n)
    if legs[0] == 1 and legs[1] == 2 and legs[2] in (2, 3, 4):
        return ("E", n)
    return None


def mutate_lambda(lam, b, kpos):
    """Log-canonical matrix for the cluster mutated at position ``kpos``.

    The new variable's brackets are read off its leading exchange
    monomial; for a compatible pair the other monomial gives the same
    answer off the diagonal, which also makes the update an involution.
    """
    n = len(lam)
    new = [list(row) for row in lam]
    for j in range(n):
        if j == kpos:
            continue
        val = -lam[kpos][j] + sum(
            max(b[a][kpos], 0) * lam[a][j] for a in range(n) if a != kpos)
        new[kpos][j] = val
        new[j][kpos] = -val
    new[kpos][kpos] = 0
    return [[int(x) for x in row] for row in new]


def check_compatibility(seed, lam):
    """Test the log-canonical matrix against the exchange matrix.

    ``lam`` is skew over the seed's vertices in id order.  The pair is
    compatible when (B^T L) has, in every mutable row, zeros off the
    diagonal and a positive entry on it; returns (ok, diagonal entries).
    """
    n = len(seed.ids)
    if len(lam) != n or any(len(row) != n for row in lam):
        raise ValueError("lambda matrix shape mismatch")
    diag = []
    ok = True
    for j in seed.mutable_ids:
        k = seed.position(j)
        row = [sum(seed.b[a][k] * lam[a][t] for a in range(n)) for t in range(n)]
        for t in range(n):
            if t == k:
                continue
            if row[t] != 0:
                ok = False
        if row[k] <= 0:
            ok = False
        diag.append(row[k])
    return ok, tuple(diag)


def evaluate(poly, values):
    return poly.evaluate(values)
