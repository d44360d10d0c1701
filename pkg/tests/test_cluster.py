"""Laurent arithmetic, seed mutation, class enumeration, compatibility."""

from fractions import Fraction as F
from random import Random

import pytest

from richardson import cluster, fixtures, minors
from richardson.cluster import LaurentPoly, Seed
from richardson.strata import (
    category_spec,
    gabriel_quiver,
    initial_tilting,
    poisson_matrix,
)


def xvars(n):
    return [LaurentPoly.variable(n, t) for t in range(n)]


def big_seed():
    v, word = fixtures.big_pair()
    spec = category_spec(word.diagram, v, word.product(), word)
    tilting = initial_tilting(spec)
    return Seed.from_quiver(gabriel_quiver(tilting)), tilting


# -- Laurent arithmetic ------------------------------------------------------------


def test_poly_ring_basics():
    x, y = xvars(2)
    one = LaurentPoly.constant(2, 1)
    p = (x + y) * (x + y)
    assert p.terms[0] == ((2, 0), F(1))  # leading term is x^2
    assert p == x * x + LaurentPoly.constant(2, 2) * x * y + y * y
    assert (x - x).is_zero()
    assert (p - p).is_zero()
    assert (x * y - y * x).is_zero()
    assert one.is_one()
    assert (x**3).evaluate([F(2), F(5)]) == 8


def test_exact_division_roundtrip():
    x, y = xvars(2)
    two = LaurentPoly.constant(2, 2)
    p = x * x + two * x * y + y * y
    q = x + y
    assert p.exact_div(q) == q
    assert (p * q).exact_div(p) == q
    # Laurent divisor with negative exponents
    inv = LaurentPoly(2, (((-1, 0), F(1)),))
    assert (q * inv).exact_div(inv) == q


def test_inexact_division_raises():
    x, y = xvars(2)
    one = LaurentPoly.constant(2, 1)
    with pytest.raises(cluster.DivisionError):
        (x + one).exact_div(y + one)
    with pytest.raises(ZeroDivisionError):
        x.exact_div(LaurentPoly.constant(2, 0))


def test_evaluate_handles_negative_exponents():
    x, y = xvars(2)
    p = (x + y).exact_div(x * y)  # 1/y + 1/x
    assert p.evaluate([F(2), F(4)]) == F(3, 4)


def test_string_forms_are_canonical():
    x, y, z = xvars(3)
    names = ("x1", "x2", "x3")
    one = LaurentPoly.constant(3, 1)
    two = LaurentPoly.constant(3, 2)
    assert x.to_string(names) == "x1"
    assert (x + one).exact_div(y).to_string(names) == "(x1 + 1)/x2"
    assert (x * x * y).to_string(names) == "x1^2*x2"
    assert (x + y + one).exact_div(x * y).to_string(names) == \
        "(x1 + x2 + 1)/(x1*x2)"
    assert (two * x - y).to_string(names) == "2*x1 - x2"
    assert (LaurentPoly.constant(3, F(-3, 2)) * x).to_string(names) == "-3/2*x1"
    assert LaurentPoly.constant(3, 0).to_string(names) == "0"
    assert (x * y).exact_div(z).to_string(names) == "x1*x2/x3"


# -- seed mutation ------------------------------------------------------------------


def test_seed_validation():
    with pytest.raises(ValueError):
        Seed.initial((1, 1), (), [[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        Seed.initial((1, 2), (9,), [[0, 1], [-1, 0]])
    with pytest.raises(ValueError):
        Seed.initial((1, 2), (), [[0, 1], [1, 0]])


def test_rank_two_exchange():
    s = Seed.initial((1, 2), (), [[0, 1], [-1, 0]])
    t = s.mutate(1)
    assert t.b == ((0, -1), (1, 0))
    names = s.names
    assert t.variable(1).to_string(names) == "(x2 + 1)/x1"
    assert t.variable(2).to_string(names) == "x2"
    with pytest.raises(ValueError):
        Seed.initial((1, 2), (2,), [[0, 1], [-1, 0]]).mutate(2)


def test_matrix_mutation_creates_the_composite_arrow():
    s = Seed.initial((1, 2, 3), (), [[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    t = s.mutate(2)
    assert t.b == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def test_mutation_is_an_involution():
    s = Seed.initial((1, 2, 3), (), [[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    for j in (1, 2, 3):
        back = s.mutate(j).mutate(j)
        assert back.b == s.b
        assert back.variables == s.variables
        assert back.variable_strings() == s.variable_strings()


def test_pentagon():
    s = Seed.initial((1, 2), (), [[0, 1], [-1, 0]])
    cls = cluster.enumerate_class(s)
    assert len(cls.seeds) == 5
    assert cls.complete
    assert set(cls.variable_strings) == {
        "x1",
        "x2",
        "(x2 + 1)/x1",
        "(x1 + 1)/x2",
        "(x1 + x2 + 1)/(x1*x2)",
    }


def test_enumeration_cap_reports_incomplete():
    s = Seed.initial((1, 2), (), [[0, 1], [-1, 0]])
    cls = cluster.enumerate_class(s, cap=3)
    assert len(cls.seeds) == 3
    assert not cls.complete


def test_frozen_vertices_never_mutate_but_enter_exchanges():
    s = Seed.initial((1, 2), (2,), [[0, 1], [-1, 0]])
    assert s.mutable_ids == (1,)
    t = s.mutate(1)
    assert t.variable(1).to_string(s.names) == "(x2 + 1)/x1"
    cls = cluster.enumerate_class(s)
    assert len(cls.seeds) == 2
    assert cls.complete


# -- the big worked example ----------------------------------------------------------


def test_big_seed_enumeration_counts():
    seed, _ = big_seed()
    assert seed.ids == (3,) + (7, 8) + fixtures.BIG_FROZEN
    cls = cluster.enumerate_class(seed)
    assert len(cls.seeds) == fixtures.BIG_SEED_COUNT
    assert len(cls.variables) == fixtures.BIG_MUTABLE_COUNT
    assert cls.complete
    # every seed keeps the frozen variables untouched
    for s in cls.seeds:
        for j in fixtures.BIG_FROZEN:
            assert s.variable(j).to_string(seed.names) == "x%d" % j


def test_big_seed_is_a_path_quiver():
    seed, _ = big_seed()
    assert cluster.detect_type(seed) == ("A", 3)


def test_detect_type_on_other_shapes():
    def skew(edges, n, frozen=()):
        b = [[0] * n for _ in range(n)]
        for a, c in edges:
            b[a - 1][c - 1] = 1
            b[c - 1][a - 1] = -1
        return Seed.initial(tuple(range(1, n + 1)), frozen, b)

    assert cluster.detect_type(skew([(1, 2)], 2)) == ("A", 2)
    assert cluster.detect_type(skew([(1, 3), (2, 3), (3, 4)], 4)) == ("D", 4)
    assert cluster.detect_type(
        skew([(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], 6)) == ("E", 6)
    # a 3-cycle is not a tree
    assert cluster.detect_type(skew([(1, 2), (2, 3)], 3)) == ("A", 3)
    cyc = Seed.initial((1, 2, 3), (), [[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert cluster.detect_type(cyc) is None
    # disconnected
    assert cluster.detect_type(skew([(1, 2)], 4)) is None
    assert cluster.detect_type(Seed.initial((1,), (1,), [[0]])) is None


def test_poisson_pairing_is_compatible():
    seed, tilting = big_seed()
    ok, diag = cluster.check_compatibility(seed, poisson_matrix(tilting))
    assert ok
    assert diag == (2, 2, 2)


def test_compatibility_rejects_a_broken_pairing():
    seed, tilting = big_seed()
    lam = [list(r) for r in poisson_matrix(tilting)]
    lam[0][1] += 1
    lam[1][0] -= 1
    ok, _ = cluster.check_compatibility(seed, lam)
    assert not ok


def test_big_variable_values_match_the_projective_coordinates():
    seed, _ = big_seed()
    cls = cluster.enumerate_class(seed)
    v, word = fixtures.big_pair()
    ispecs = dict(minors.initial_minor_specs(v, word))
    vanish = minors.MinorSpec((1, 2, 3), fixtures.BIG_VANISHING)
    keep = [minors.MinorSpec((1, 2, 3), c) for c in fixtures.BIG_NONVANISHING]
    keep += list(ispecs.values())
    rng = Random(60)
    for _ in range(5):
        x = minors.sample_minor_vanishing(6, vanish, rng, nonzero=keep)
        values = [minors.minor(x, ispecs[j]) for j in seed.ids]
        got = {p.evaluate(values) for p in cls.variables}
        want = {minors.plucker(x, cols) for cols in fixtures.BIG_CLUSTER_PLUECKERS}
        (m1, m2), sub = fixtures.BIG_EXTRA_VARIABLE
        want.add(minors.plucker(x, m1) * minors.plucker(x, m2)
                 - minors.plucker(x, sub))
        assert got == want


def test_random_walks_stay_laurent_and_reversible():
    seed, _ = big_seed()
    rng = Random(61)
    for _ in range(3):
        path = [rng.choice(seed.mutable_ids) for _ in range(8)]
        s = seed
        for j in path:
            s = s.mutate(j)  # raises DivisionError if the property ever fails
        for j in reversed(path):
            s = s.mutate(j)
        assert s.variables == seed.variables
        assert s.b == seed.b


# -- parsing -----------------------------------------------------------------------


def test_parse_laurent_roundtrips_canonical_strings():
    names = ("x1", "x2", "x3")
    for text in ("x1", "(x1 + 1)/x2", "x1^2*x2", "(x1 + x2 + 1)/(x1*x2)",
                 "2*x1 - x2", "-3/2*x1", "0", "x1*x2/x3",
                 "(x1^3 - 2*x2 + 5)/(x1*x3^2)"):
        p = cluster.parse_laurent(text, names)
        assert p.to_string(names) == text


def test_parse_laurent_handles_explicit_operators():
    names = ("x1", "x2")
    p = cluster.parse_laurent("3/2*x1", names)
    assert p.evaluate([F(2), F(1)]) == F(3)
    q = cluster.parse_laurent("x1^-1", names)
    assert q.evaluate([F(4), F(1)]) == F(1, 4)
    r = cluster.parse_laurent("(x1 + x2)^2", names)
    assert r == (xvars(2)[0] + xvars(2)[1]) ** 2


def test_parse_laurent_rejects_garbage():
    names = ("x1",)
    for text in ("", "x9", "x1 +", "(x1", "x1 ** 2", "1/0", "$"):
        with pytest.raises((ValueError, ZeroDivisionError, cluster.DivisionError)):
            cluster.parse_laurent(text, names)


def test_parse_laurent_roundtrips_the_whole_mutation_class():
    seed, _ = big_seed()
    names = seed.names
    for text in cluster.enumerate_class(seed).variable_strings:
        assert cluster.parse_laurent(text, names).to_string(names) == text


# -- bracket mutation --------------------------------------------------------------


def test_lambda_mutation_is_involutive_and_stays_compatible():
    seed, tilting = big_seed()
    lam = [list(r) for r in poisson_matrix(tilting)]
    rng = Random(62)
    s = seed
    current = lam
    for _ in range(6):
        j = rng.choice(s.mutable_ids)
        kpos = s.position(j)
        once = cluster.mutate_lambda(current, s.b, kpos)
        back = cluster.mutate_lambda(once, s.mutate(j).b, kpos)
        assert back == [list(r) for r in current]
        s = s.mutate(j)
        current = once
        ok, diag = cluster.check_compatibility(s, current)
        assert ok and diag == (2, 2, 2)


def test_lambda_mutation_keeps_skew_symmetry():
    seed, tilting = big_seed()
    lam = poisson_matrix(tilting)
    out = cluster.mutate_lambda(lam, seed.b, seed.position(3))
    n = len(out)
    for a in range(n):
        assert out[a][a] == 0
        for b in range(n):
            assert out[a][b] == -out[b][a]
