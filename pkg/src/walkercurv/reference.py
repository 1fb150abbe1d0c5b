"""Published closed forms for the Walker family, kept as text fixtures.

Nothing here feeds the generic computations; these tables are only ever
compared against them. Typographic slips in the source are transcribed
as printed except where a note says otherwise.
"""

from .exprparse import parse_normal

RHO_SYMBOLS = ("r13", "r14", "r24", "r33", "r34", "r44", "lam")

# Gamma^k_ij keyed (k, i, j) with i <= j
CONNECTION = {
    (1, 1, 3): "1/2*a_1",
    (2, 1, 4): "1/2*a_1",
    (1, 2, 3): "1/2*a_2",
    (2, 2, 4): "1/2*a_2",
    (1, 3, 3): "1/2*(a*a_1 + a_3)",
    (2, 3, 3): "1/2*(a*a_2 - a_4)",
    (3, 3, 3): "-1/2*a_1",
    (4, 3, 3): "-1/2*a_2",
    (1, 3, 4): "1/2*a_4",
    (2, 3, 4): "1/2*a_3",
    (1, 4, 4): "1/2*(a*a_1 - a_3)",
    (2, 4, 4): "1/2*(a*a_2 + a_4)",
    (3, 4, 4): "-1/2*a_1",
    (4, 4, 4): "-1/2*a_2",
}

# the second equation prints u4 for x4; read as x4
GEODESIC = {
    1: "-(a_1*v1*v3 + a_2*v2*v3 + 1/2*(a*a_1 + a_3)*v3*v3 + a_4*v3*v4"
       " + 1/2*(a*a_1 - a_3)*v4*v4)",
    2: "-(a_1*v1*v4 + a_2*v2*v4 + 1/2*(a*a_2 - a_4)*v3*v3 + a_3*v3*v4"
       " + 1/2*(a*a_2 + a_4)*v4*v4)",
    3: "a_1/2*v3*v3 + a_1/2*v4*v4",
    4: "a_2/2*v3*v3 + a_2/2*v4*v4",
}
VELOCITY_SYMBOLS = ("v1", "v2", "v3", "v4")

# R_ijkl on canonical representatives
CURVATURE = {
    (1, 3, 1, 3): "1/2*a_11",
    (1, 3, 2, 3): "1/2*a_12",
    (1, 4, 2, 4): "1/2*a_12",
    (1, 3, 3, 4): "1/4*(a_1*a_2 - 2*a_14)",
    (1, 4, 1, 4): "1/2*a_11",
    (1, 4, 3, 4): "1/4*(2*a_13 - a_1^2)",
    (2, 3, 2, 3): "1/2*a_22",
    (2, 3, 3, 4): "1/4*(a_2^2 - 2*a_24)",
    (2, 4, 2, 4): "1/2*a_22",
    (2, 4, 3, 4): "1/4*(2*a_23 - a_1*a_2)",
    (3, 4, 3, 4): "1/4*(2*a_33 + 2*a_44 - a*a_1^2 - a*a_2^2)",
}

RICCI = {
    (1, 3): "1/2*a_11",
    (1, 4): "1/2*a_12",
    (2, 3): "1/2*a_12",
    (2, 4): "1/2*a_22",
    (3, 3): "1/2*(a_2^2 + a*a_11 + a*a_22 - 2*a_24)",
    (3, 4): "1/2*(-a_1*a_2 + a_14 + a_23)",
    (4, 4): "1/2*(a_1^2 + a*a_11 - 2*a_13 + a*a_22)",
}

SCALAR = "a_11 + a_22"

EINSTEIN_TENSOR = {
    (1, 3): "1/4*(a_11 - a_22)",
    (2, 4): "-1/4*(a_11 - a_22)",
    (1, 4): "1/2*a_12",
    (2, 3): "1/2*a_12",
    (3, 3): "1/4*(2*a_2^2 + a*a_11 + a*a_22 - 4*a_24)",
    (3, 4): "1/2*(-a_1*a_2 + a_14 + a_23)",
    (4, 4): "1/4*(2*a_1^2 + a*a_11 - 4*a_13 + a*a_22)",
}

EINSTEIN_SYSTEM = [
    "a_11 - a_22",
    "a_12",
    "2*a_2^2 + a*a_11 + a*a_22 - 4*a_24",
    "a_1*a_2 - a_14 - a_23",
    "2*a_1^2 + a*a_11 + a*a_22 - 4*a_13",
]

# Ricci operator Q^i_j in terms of Ricci components
OPERATOR = {
    (1, 1): "r13",
    (1, 2): "r14",
    (1, 3): "r33 - a*r13",
    (1, 4): "r34 - a*r14",
    (2, 1): "r14",
    (2, 2): "r24",
    (2, 3): "r34 - a*r14",
    (2, 4): "r44 - a*r24",
    (3, 3): "r13",
    (3, 4): "r14",
    (4, 3): "r14",
    (4, 4): "r24",
}

CHAR_POLY = "((r13 - lam)*(r24 - lam) - r14^2)^2"
# discriminant under the square root, as printed and as implied by the quadratic
DISCRIMINANT_PRINTED = "(r13 - r24)^2 + r14^2"
DISCRIMINANT_EXPANDED = "(r13 - r24)^2 + 4*r14^2"

# Q proportional to the identity
SCALAR_OPERATOR_SYSTEM = [
    "a_11 - a_22",
    "a_12",
    "a_2^2 + a*a_11 - 2*a_24",
    "a_1*a_2 - a_14 - a_23",
    "a_1^2 + a*a_11 - 2*a_13",
]

# two-eigenvalue case, stated on the Ricci components ...
DIAGONALIZABLE_RICCI_LEVEL = [
    "2*r14*r34 - 2*a*r14^2 - r13*r44 + 2*a*r13*r24 - r24*r33",
    "r44 - a*r24 + r33 - a*r13",
]
# ... and restated on the defining function
DIAGONALIZABLE_SYSTEM = [
    "a_1^2 - 2*a_13 + a*a_22 + a_2^2 + a*a_11 - 2*a_24",
    "a_12*(-a_1*a_2 + a_14 + a_23 - a*a_12)"
    " - 1/2*a_11*(a_1^2 + a*a_11 - 2*a_13)"
    " - 1/2*a_22*(a_2^2 + a*a_22 - 2*a_24)",
]

# (nabla_i rho)_jk keyed (i, j, k) with j <= k; unlisted components claimed zero
NABLA_RICCI = {
    (1, 1, 3): "1/2*a_111",
    (3, 1, 3): "1/4*(2*a_113 + a_2*a_12)",
    (1, 1, 4): "1/2*a_121",
    (4, 1, 3): "1/4*(2*a_114 - a_1*a_12)",
    (3, 1, 4): "1/4*(2*a_123 - a_1*a_12)",
    (4, 1, 4): "1/4*(2*a_124 - a_1*a_22 + a_1*a_11 + a_2*a_12)",
    (3, 2, 3): "1/4*(2*a_123 - a_2*a_11 + a_1*a_12 + a_2*a_22)",
    (1, 2, 4): "1/2*a_122",
    (2, 2, 4): "1/2*a_222",
    (3, 2, 4): "1/4*(2*a_223 - a_2*a_12)",
    (4, 2, 4): "1/4*(2*a_224 + a_1*a_12)",
    (4, 2, 3): "1/4*(2*a_124 - a_2*a_12)",
    (1, 3, 3): "1/2*(2*a_2*a_12 + a*a_111 + a_1*a_22 + a*a_221 - 2*a_241)",
    (2, 3, 3): "1/2*(2*a_2*a_22 + a*a_112 + a_2*a_22 + a*a_222 - 2*a_242)",
    (3, 3, 3): "1/2*(3*a_2*a_23 + a*a_113 + a_3*a_22 + a*a_223 - 2*a_243"
               " - a*a_2*a_12 + a_4*a_12 + a*a_1*a_22 - 2*a_1*a_24 + a_2*a_14)",
    (4, 3, 3): "1/2*(2*a_2*a_24 + a*a_114 + a_4*a_22 + a*a_224 - 2*a_244 - a_3*a_12)",
    (1, 3, 4): "1/2*(a_141 + a_231 - 2*a_1*a_12 - a_2*a_11)",
    (2, 3, 4): "1/2*(-2*a_2*a_12 - a_1*a_22 + a_142 + a_232)",
    (3, 3, 4): "1/4*(-4*a_2*a_13 - a_1*a_23 + 2*a_143 + 2*a_233 - 2*a_3*a_12"
               " - a*a_1*a_12 + a_4*a_22 + a_1*a_14 + a*a_2*a_11 - a_4*a_11)",
    (4, 3, 4): "1/4*(-a_2*a_14 - 4*a_1*a_24 + 2*a_144 + 2*a_234 - 2*a_4*a_12"
               " - a_3*a_22 + a_3*a_11 - a*a_2*a_12 + a*a_1*a_22 + a_2*a_23)",
    (1, 4, 4): "1/2*(3*a_1*a_11 + a*a_111 - 2*a_131 + a*a_122)",
    (2, 4, 4): "1/2*(2*a_1*a_12 + a_2*a_11 + a*a_112 - 2*a_132 + a*a_222)",
    (3, 4, 4): "1/2*(2*a_1*a_13 + a_3*a_11 + a*a_113 - 2*a_133 + a*a_223 - a_4*a_12)",
    (4, 4, 4): "1/2*(3*a_1*a_14 + a_4*a_11 + a*a_114 - 2*a_134 + a*a_224"
               " - a*a_1*a_12 + a_3*a_12 + a_1*a_23 + a*a_2*a_11 - 2*a_2*a_13)",
}

# restricted family a = x1*b(x3,x4) + x2*c(x3,x4) + d(x3,x4)
RESTRICTED_DEFINITION = "x1*b + x2*c + d"

RESTRICTED_EINSTEIN = [
    "b_3 - 1/2*b^2",
    "c_4 - 1/2*c^2",
    "b_4 + c_3 - b*c",
]

EXAMPLE_EINSTEIN = {
    "b": "1/(-1/2*x3 - 1/2*x4 + 2)",
    "c": "1/(-1/2*x3 - 1/2*x4 + 2)",
}

# Each entry: (generator text, coordinate it was integrated in, or None).
# "b^2 = 2*b_3 + k(x4)" only fixes b^2 - 2*b_3 up to a function of x4.
PARALLEL_STATEMENT = [
    ("b^2 - 2*b_3", 3),
    ("c^2 - 2*c_4", 4),
    ("3*c*c_3 - 2*c_34 - 2*b*c_4 + b_4*c", None),
    ("4*c*b_3 + b*c_3 - 2*b_34 - 2*c_33 - b*b_4", None),
    ("c*b_4 + 4*b*c_4 - 2*b_44 - 2*c_34 - c*c_3", None),
    ("3*b*b_4 - 2*b_34 + b*c_3 - 2*c*b_3", None),
]

PARALLEL_PROOF = [
    "3*c*c_3 - 2*c_34 - 2*b*c_4 + b_4*c",
    "4*c*b_3 + b*c_3 - 2*b_34 - 2*c_33 - b*b_4",
    "b*b_3 - b_33",
    "c*c_4 - c_44",
    "c*b_4 + 4*b*c_4 - 2*b_44 - 2*c_34 - c*c_3",
    "3*b*b_4 - 2*b_34 + b*c_3 - 2*c*b_3",
]

CYCLIC_STATEMENT = [
    "3*c*c_3 - 2*c_34 - 2*b*c_4 + c*b_4",
    "3*b*b_4 - 2*b_34 + b*c_3 - 2*c*b_3",
]

CODAZZI_STATEMENT = [
    "4*c*b_3 + b*c_3 - 2*b_34 - 2*c_33 - b*b_4 + 2*c*c_4 - 2*c_44",
    "c*b_4 + 4*b*c_4 - 2*b_44 - 2*c_34 - c*c_3 + 2*b*b_3 - 2*b_33",
]


def table(entries, symbols=()):
    """Parse a dict of text entries into NormalForms."""
    return {k: parse_normal(v, symbols=symbols) for k, v in entries.items()}


def system(entries, symbols=()):
    return [parse_normal(v, symbols=symbols) for v in entries]
