"""Reference data for the class-number-1 classification.

Known lists from the literature that the pipelines in `classify` must
regenerate: the Gauss class-number-1 radicands, the imaginary quadratic
class-number-2 and -4 lists, the Brown-Parry biquadratic table, the
triquadratic table, the candidate tables by subfield-class-number product
P, the fundamental-unit table of the relevant real quadratic fields, and
the decomposition choices used for the octic computations.

Everything here is comparison data; nothing is fed back into the
computations themselves (the one exception being the decomposition table,
which only fixes a choice among equally valid bases).
"""

# imaginary quadratic fields with h = 1 (radicands)
GAUSS_H1 = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

# imaginary quadratic fields with h = 2: Q(sqrt(-a)) for a in this list
H2_RADICANDS = (5, 6, 10, 13, 15, 22, 35, 37, 51, 58, 91, 115, 123, 187, 235, 267, 403, 427)

# imaginary quadratic fields with h = 4
H4_RADICANDS = (
    14, 17, 21, 30, 33, 34, 39, 42, 46, 55, 57, 70, 73, 78, 82, 85, 93, 97,
    102, 130, 133, 142, 155, 177, 190, 193, 195, 203, 219, 253, 259, 291,
    323, 355, 435, 483, 555, 595, 627, 667, 715, 723, 763, 795, 955, 1003,
    1027, 1227, 1243, 1387, 1411, 1435, 1507, 1555,
)

# imaginary biquadratic fields with h = 1 (Brown-Parry); 47 radicand pairs.
# The restatement inside the classification theorem is headed "the 42
# imaginary biquadratic fields" while the original source says "exactly 47";
# both printed tables contain the same 47 entries, so the "42" is treated
# as a typo and flagged as a discrepancy by the report.
N2_TABLE = (
    (-1, 2), (-1, 3), (-1, 5), (-1, 7), (-1, 11), (-1, 13), (-1, 19),
    (-1, 37), (-1, 43), (-1, 67), (-1, 163),
    (2, -3), (2, -11), (-2, -3), (-2, 5), (-2, -7), (-2, -11), (-2, -19),
    (-2, 29), (-2, -43), (-2, -67),
    (-3, 5), (-3, -7), (-3, -11), (-3, 17), (-3, -19), (-3, 41), (-3, -43),
    (-3, -67), (-3, 89), (-3, -163),
    (-7, 5), (-7, -11), (-7, 13), (-7, -19), (-7, -43), (-7, 61), (-7, -163),
    (-11, 17), (-11, -19), (-11, -67), (-11, -163),
    (-19, -67), (-19, -163), (-43, -67), (-43, -163), (-67, -163),
)

N2_COUNT_STATED = {"original": 47, "theorem_heading": 42}

# imaginary triquadratic fields with h = 1, as printed in the main theorem
N3_TABLE = (
    (-1, 2, 3), (-1, 2, 5), (-1, 2, 11),
    (-1, 3, 5), (-1, 3, 7), (-1, 3, 11), (-1, 3, 19),
    (-1, 7, 5), (-1, 7, 13), (-1, 7, 19),
    (-2, -3, -7), (-2, -3, 5), (-2, -7, 5),
    (-3, -7, 5), (-3, -11, 2), (-3, -11, -19), (-3, -11, 17),
)

# the same 17 fields as printed in the triquadratic theorem (equivalent
# radicand lists; compare by FieldId)
N3_TABLE_ALT = (
    (-1, 2, 3), (-1, 2, 5), (-1, 2, 11),
    (-1, 3, 5), (-1, 3, 7), (-1, 3, 11), (-1, 3, 19),
    (-1, 7, 5), (-1, 7, 13), (-1, 7, 19),
    (-2, -3, -7), (-2, -3, -10), (-2, -7, -10),
    (-3, -7, -15), (-3, -11, -6), (-3, -11, -19), (-3, -11, -51),
)

# triquadratic candidates with P = 2 and P = 4 (statement of the P-in-{1,2,4}
# lemma); P = 2 has two fields, P = 4 has sixteen
P2_CANDIDATES = ((-1, 2, 3), (-1, 2, 11))

P4_CANDIDATES = (
    (-1, 2, 5), (-1, 2, 7), (-1, 3, 7), (-1, 3, 5),
    (-1, 3, 11), (-1, 3, 19), (-1, 7, 5), (-1, 7, 13),
    (-1, 7, 19), (-2, -3, -7), (-2, -3, -10), (-2, -7, -10),
    (-3, -7, -15), (-3, -11, -6), (-3, -11, -19), (-3, -11, -51),
)

# P = 4 case (i): h1 = h2 = h3 = 1, h4 = 4, identified by a4
P4_CASE1_A4 = (14, 21, 33, 42, 57, 133, 627)

# P = 8 candidates.  Case (i): (1,2,2,2); case (ii): (1,1,2,4) — printed with
# signs dropped, all entries are negative radicands; case (iii): (1,1,1,8).
P8_CASE1 = ((-1, -6, -10), (-2, -5, -6), (-3, -5, -6), (-11, -5, -10))

P8_CASE2 = (
    (-1, -2, -15), (-1, -2, -35), (-1, -2, -51), (-1, -3, -10),
    (-1, -3, -13), (-1, -7, -6), (-1, -7, -10), (-1, -7, -37),
    (-1, -11, -5), (-1, -19, -10), (-2, -3, -5), (-2, -3, -13),
    (-2, -7, -5), (-2, -19, -5),
)

P8_CASE3 = (
    (-2, -3, -11), (-1, -7, -11), (-2, -3, -19), (-2, -7, -11),
    (-2, -3, -43), (-1, -7, -43), (-2, -11, -19), (-3, -19, -43),
)

# fundamental units eps = (g + b*sqrt(a))/q of the real quadratic fields
# entering the octic computations, with N(eps); 22 rows
UNIT_TABLE = {
    2: (1, 1, 1, -1),
    3: (2, 1, 1, 1),
    5: (1, 1, 2, -1),
    6: (5, 2, 1, 1),
    7: (8, 3, 1, 1),
    10: (3, 1, 1, -1),
    11: (10, 3, 1, 1),
    14: (15, 4, 1, 1),
    15: (4, 1, 1, 1),
    17: (4, 1, 1, -1),
    19: (170, 39, 1, 1),
    21: (5, 1, 2, 1),
    22: (197, 42, 1, 1),
    30: (11, 2, 1, 1),
    33: (23, 4, 1, 1),
    35: (6, 1, 1, 1),
    57: (151, 20, 1, 1),
    66: (65, 8, 1, 1),
    70: (251, 30, 1, 1),
    91: (1574, 165, 1, 1),
    105: (41, 4, 1, 1),
    209: (46551, 3220, 1, 1),
}

# decomposition choices (K; k; k1, k2, k3; p) used for the 17 octic class
# number computations, plus the worked example {-1,-2,-3}
DECOMPOSITION_TABLE = (
    ((-1, 2, 11), (2,), (-1, 2), (-11, 2), (11, 2), 11),
    ((-1, 2, 5), (2,), (-1, 2), (-5, 2), (5, 2), 5),
    ((-1, 2, 7), (2,), (-1, 2), (-7, 2), (7, 2), 7),
    ((-1, 3, 5), (3,), (-1, 3), (-5, 3), (5, 3), 5),
    ((-1, 3, 7), (3,), (-1, 3), (-7, 3), (7, 3), 7),
    ((-1, 3, 11), (3,), (-1, 3), (-11, 3), (11, 3), 11),
    ((-1, 3, 19), (3,), (-1, 3), (-19, 3), (19, 3), 19),
    ((-1, 7, 5), (7,), (-1, 7), (-5, 7), (5, 7), 5),
    ((-1, 7, 13), (7,), (-1, 7), (-13, 7), (13, 7), 13),
    ((-1, 7, 19), (7,), (-1, 7), (-19, 7), (19, 7), 19),
    ((-2, -3, -7), (6,), (-2, 6), (-7, 6), (14, 6), 7),
    ((-2, -3, -10), (5,), (-2, 5), (-3, 5), (6, 5), 3),
    ((-2, -7, -10), (5,), (-2, 5), (-7, 5), (14, 5), 7),
    ((-3, -7, -15), (5,), (-3, 5), (-7, 5), (21, 5), 7),
    ((-3, -11, -6), (2,), (-3, 2), (-11, 2), (33, 2), 3),
    ((-3, -11, -19), (33,), (-3, 33), (-19, 33), (57, 33), 19),
    ((-3, -11, -51), (33,), (-3, 33), (-51, 33), (17, 33), 17),
    ((-1, -2, -3), (2,), (-1, 2), (-3, 2), (3, 2), 3),
)

# the four surviving 4-quadratic candidates with their class numbers
N4_CANDIDATES = {
    (-1, -2, -3, -7): 4,
    (-1, -2, -3, -11): 4,
    (-1, -2, -3, -5): 2,
    (-1, -2, -5, -7): 4,
}
