"""Frozen reference data for the two fully worked flag-stratum examples.

Everything here was transcribed once from the worked computations and is
treated as immutable: tests and the verification suites compare engine
output against these values, never the other way around.

The big example lives in A_5 with w = w_0 s_2 and a length six v; the
small one in A_3 exhibits a stratum with no mutable variable at all.
"""

from .weyl import ReducedWord, dynkin, parse_word_element

# -- the A_5 positroid-stratum example ---------------------------------------

A5 = dynkin("A", 5)

BIG_WORD = (1, 3, 5, 2, 4, 1, 3, 5, 2, 4, 1, 3, 5, 4)
BIG_V_WORD = "s1 s2 s1 s4 s5 s4"


def big_pair():
    """(v, word) for the A_5 example."""
    return parse_word_element(A5, BIG_V_WORD), ReducedWord(A5, BIG_WORD)


BIG_J_SET = (3, 7, 8, 10, 11, 12, 13, 14)

# dimension vectors of the eight summands of the initial tilting object
BIG_U_DIMS = {
    3: (0, 0, 1, 1, 0),
    7: (0, 0, 1, 0, 0),
    8: (1, 1, 2, 2, 1),
    10: (1, 1, 2, 1, 0),
    11: (0, 1, 2, 2, 1),
    12: (1, 1, 1, 0, 0),
    13: (1, 2, 3, 2, 1),
    14: (0, 0, 1, 1, 1),
}

BIG_FROZEN = (10, 11, 12, 13, 14)

# Gabriel quiver of the endomorphism algebra, as (source, target) pairs
BIG_QUIVER_ARROWS = (
    (7, 12),
    (10, 7),
    (13, 10),
    (3, 10),
    (12, 10),
    (8, 13),
    (10, 8),
    (11, 8),
    (8, 3),
    (7, 3),
    (13, 11),
    (14, 11),
    (3, 14),
)

# hom-dimension difference matrix, rows and columns in BIG_J_SET order
BIG_LAMBDA = (
    (0, -1, 0, 0, 0, 0, 0, 1),
    (1, 0, 1, 0, 1, 1, 0, 1),
    (0, -1, 0, -1, -1, -1, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 1),
    (0, -1, 1, 0, 0, 0, 0, 0),
    (0, -1, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0),
    (-1, -1, 0, -1, 0, 0, 0, 0),
)

# initial cluster variables: j -> (row set, column set) of the minor
BIG_MINOR_LABELS = {
    3: ((3,), (5,)),
    7: ((3,), (4,)),
    8: ((1, 2, 3), (2, 5, 6)),
    10: ((1, 2, 3), (2, 4, 5)),
    11: ((2, 3), (5, 6)),
    12: ((1, 2, 3), (2, 3, 4)),
    13: ((1, 2, 3), (4, 5, 6)),
    14: ((3,), (6,)),
}

# the nine cluster variables of the whole mutation class, written as
# Pluecker coordinates of the projected 3-space chart; the last one is a
# binomial in them
BIG_CLUSTER_PLUECKERS = (
    (1, 2, 5),
    (1, 2, 4),
    (2, 5, 6),
    (1, 4, 5),
    (2, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 6),
)
BIG_EXTRA_VARIABLE = (((1, 4, 5), (2, 3, 6)), (4, 5, 6))  # [145][236] - [456]

# chart description of the stratum: one vanishing Pluecker coordinate and
# five frozen nonvanishing ones
BIG_VANISHING = (3, 4, 5)
BIG_NONVANISHING = ((2, 3, 4), (2, 4, 5), (4, 5, 6), (1, 5, 6), (1, 2, 6))

BIG_MUTABLE_COUNT = 9
BIG_SEED_COUNT = 14

# -- the A_3 example with an empty mutable part -------------------------------

A3 = dynkin("A", 3)

SMALL_V_WORD = "s2"
SMALL_W_WORD = "s1 s2 s3"


def small_pair():
    """(v, word) for the A_3 example."""
    v = parse_word_element(A3, SMALL_V_WORD)
    return v, ReducedWord(A3, (1, 2, 3))


SMALL_J_SET = (1, 3)

# unitriangular 4x4 matrices here are parametrized row by row:
#   x[0][1] = a, x[0][2] = b, x[0][3] = c,
#   x[1][2] = d, x[1][3] = e, x[2][3] = f
# and the twisted matrix has these entries (as strings over the chart):
SMALL_ZETA_ENTRIES = {
    (0, 1): "-1/c",
    (0, 2): "-a/c",
    (0, 3): "-b/c",
    (1, 2): "a",
    (1, 3): "(b*f - c)/f",
    (2, 3): "(d*f - e)/f",
}

# membership in the open locus of the twist chart
SMALL_OPEN_CONDITIONS = ("c", "f")

# the two frozen variables of the stratum, as minors (seed position -> minor)
SMALL_MINOR_LABELS = {
    1: ((1, 2, 3), (1, 2, 4)),
    3: ((1,), (4,)),
}

# -- the second A_3 example: every summand pro-injective ----------------------

TINY_V_WORD = "s2"
TINY_W_WORD = "s1 s3 s2 s1 s3"


def tiny_pair():
    """(v, word) for the all-frozen A_3 example."""
    v = parse_word_element(A3, TINY_V_WORD)
    return v, ReducedWord(A3, (1, 3, 2, 1, 3))


# dimension vectors of the four pro-injectives: two simples, two injectives
TINY_PRO_INJECTIVE_DIMS = ((0, 0, 1), (1, 0, 0), (1, 1, 1), (1, 1, 1))
