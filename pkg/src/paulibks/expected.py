"""Published reference values the CLI compares against (version 1).

Distances are stored as exact squared values D^2.
"""

from __future__ import annotations

from fractions import Fraction as F

VERSION = 1

# qubits m -> (n = 2^m, #mcs, #rays, #real rays, #aut group)
TABLE1 = {
    1: (2, 3, 6, 4, 8),
    2: (4, 15, 60, 24, 1152),
    3: (8, 135, 1080, 240, 2580480),
    4: (16, 2295, 36720, 4320, 89181388800),
    5: (32, 75735, 2423520, 146880, None),
}
# the m = 5 automorphism entry is printed only approximately and disagrees with
# the Clifford order formula by a factor of ten; it is reported, never passed
TABLE1_M5_AUT_APPROX = 4.8e15

# two-qubit (Mermin square) proofs: label -> (#proofs, counts per distance)
SQUARE_DISTANCES = (F(1, 3), F(7, 12), F(2, 3), F(5, 6), F(1))
TABLE2 = {
    "24-15": (16, (18, 18, 9, 54, 6)),
    "22-13A": (96, (12, 18, 3, 42, 3)),
    "22-13B": (144, (12, 18, 4, 42, 2)),
    "20-11A": (96, (6, 18, 0, 30, 1)),
    "20-11B": (144, (6, 18, 1, 30, 0)),
    "18-9": (16, (0, 18, 0, 18, 0)),
}

# three-qubit (Mermin pentagram) proofs
PENTAGRAM_DISTANCES = (F(3, 7), F(9, 14), F(6, 7))
TABLE3 = {
    "40-15": (64, (20, 30, 55)),
    "38-13": (640, (12, 30, 36)),
    "36-11": (320, (4, 30, 21)),
}

# derived by clique search, recorded for regression rather than as reference data
SYSTEM_SIZES = {
    "mermin-square": {"rays": 24, "bases": 24, "kernel_dimension": 10},
    "mermin-pentagram": {"rays": 40, "bases": 25, "kernel_dimension": 11},
}

CENSUS_TABLES = {
    "mermin-square": (SQUARE_DISTANCES, TABLE2),
    "mermin-pentagram": (PENTAGRAM_DISTANCES, TABLE3),
}

MAGIC_SIGNS = {
    "mermin-square": [1, 1, 1, 1, 1, -1],
    "mermin-pentagram": [1, 1, 1, 1, -1],
}

SQUARE_BASE_GRAPH_AUT = 72

LATTICE_MIN_VECTORS = {4: ("D4", F(2), 24), 8: ("E8", F(2), 240), 16: ("Lambda16", F(4), 4320)}
LATTICE_GRAM_DET = {4: 4, 8: 1, 16: 256}


def expected_histogram(system: str, label: str) -> dict[F, int]:
    distances, table = CENSUS_TABLES[system]
    _, counts = table[label]
    return {d: c for d, c in zip(distances, counts) if c}
