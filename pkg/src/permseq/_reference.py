"""Reference tables reproduced by ``permseq table``.

``ERRATA`` holds the entries whose reference value cannot be right,
together with the value a correct computation yields and the reason.
``--check`` compares against the corrected value and reports the erratum.
"""

from decimal import Decimal

C1322 = (1, 3, 2, 2)
C2433 = (2, 4, 3, 3)

# lower bound on L (cycle multiples of b) for log10 X0 = 3..10
FLOOR = {
    C1322: {3: 5, 4: 17, 5: 22, 6: 127, 7: 276, 8: 276, 9: 6475, 10: 13226},
    C2433: {3: 2, 4: 2, 5: 9, 6: 52, 7: 52, 8: 113, 9: 113, 10: 2651},
}

# x3(m) at X0 = 10^6, as printed; the last printed digit sets the resolution
X3 = {
    C1322: {1: "126", 2: "1241", 3: "8171", 4: "45588", 5: "2.3201e5", 10: "4.2643e8", 20: "4.9668e14",
            50: "1.1449e32", 100: "2.2665e60"},
    C2433: {1: "88", 2: "754", 3: "4422", 4: "22142", 5: "1.0150e5", 10: "1.1314e8", 20: "5.0142e13",
            50: "6.6686e29", 100: "1.1640e56"},
}

# (L1, L2) at X0 = 10^6
L1L2 = {
    C1322: {1: ("10", "16"), 2: ("122", "162"), 3: ("875", "1085"), 4: ("5120", "6103"),
            5: ("26893", "31240"), 10: ("5.3270e7", "5.8249e7"), 20: ("6.5093e13", "6.8249e13")},
    C2433: {1: ("9", "12"), 2: ("84", "107"), 3: ("517", "625"), 4: ("2661", "3124"),
            5: ("12437", "14307"), 10: ("1.4561e7", "1.5903e7"), 20: ("6.676e12", "7.034e13")},
}


def resolution(printed: str):
    """One unit of the last printed digit of ``printed``."""
    return Decimal(1).scaleb(Decimal(printed).as_tuple().exponent)


def agrees(value, printed: str, m: int) -> bool:
    """Tolerance used for cross-over tables.

    For ``m <= 5`` within one unit of the last printed digit (one unit for
    integer entries), for larger ``m`` within 0.5 percent.
    """
    exp = Decimal(printed)
    if m <= 5:
        return abs(Decimal(str(float(value))) - exp) <= resolution(printed)
    return abs(float(value) / float(exp) - 1) <= 0.005


CONVERGENTS = {
    C1322: [(3, 2), (7, 5), (24, 17), (31, 22), (179, 127), (389, 276), (9126, 6475), (18641, 13226),
            (46408, 32927)],
    C2433: [(5, 2), (17, 7), (22, 9), (127, 52), (276, 113), (6475, 2651), (13226, 5415), (32927, 13481)],
}
MAX_PARTIAL_QUOTIENT = 55

LAUBL_FIRST = [(389, 276), (778, 552), (957, 679), (1167, 828)]

# (x_min, x_max, length, m)
CYCLES_2433 = [
    (1, 1, 1, 0), (2, 2, 1, 0), (3, 4, 2, 1), (5, 5, 1, 0), (6, 8, 3, 1), (9, 16, 7, 1),
    (15, 32, 14, 3), (27, 176, 51, 10), (33, 52, 7, 2), (90, 1972, 93, 19), (213, 700, 31, 7),
    (645, 1612, 31, 8),
]

CYCLES_COLLATZ = [(1, 1, 1, 0), (2, 3, 2, 1), (4, 9, 5, 2), (44, 111, 12, 4)]

CYCLES_COLLATZ_SIMPLE = [
    (1, 3, 3, 1), (4, 27, 11, 2), (5, 5, 1, 0), (10, 15, 2, 1), (14, 21, 3, 1), (16, 261, 34, 8),
    (20, 45, 5, 1), (220, 555, 12, 4),
]

# the four extended generalizations, in reference order (not rank order)
CYCLES_COLLATZ_EXT = [
    [(0, 1, 2, 1), (2, 7, 5, 1), (42, 109, 12, 4)],
    [(0, 5, 5, 1), (40, 107, 12, 4)],
    [(0, 7, 6, 1), (5, 5, 1, 0), (12, 19, 2, 1), (26, 61, 5, 1), (140, 5215, 94, 26), (306, 775, 12, 4)],
    [(1, 1, 1, 0), (0, 23, 11, 2), (6, 11, 1, 1), (10, 17, 3, 1), (12, 257, 34, 8), (16, 41, 5, 1),
     (216, 551, 12, 4)],
]

PRIMECOMP_SHORT = [(1,), (2,), (3, 4), (5, 6), (7, 8), (9,), (10, 11), (12, 13), (14, 17, 15)]
PRIMECOMP_LENGTHS = {18: 22, 62: 3, 84: 3, 92: 6}

DIVERGENCE_RATIO = {C1322: (0.05, 0.02), C2433: (0.12, 0.03)}

ERRATA = {
    ("floor", C2433, 3): (
        1,
        "at X0=1e3 the budget a(a-e)/(b e) is 9.19 while q=2 needs 2*(2+7) = 18; "
        "only q=1 passes, and no rescaling of the budget fits both the 1e3 and 1e4 rows",
    ),
    ("l1l2", C2433, 20): (
        ("6.676e12", "7.034e12"),
        "L2 must lie just above L1 = 6.676e12; 7.034e13 has its exponent off by one",
    ),
    ("cycles-collatz-ext", 3, (6, 11, 1)): (
        (6, 11, 2),
        "a 1-element cycle has x_min = x_max, so (6,11,1) is impossible; the cycle is 6 <-> 11",
    ),
    ("cycles-collatz", (4, 9, 5), "m"): (
        1,
        "the cycle 4,6,9,7,5 has a single local maximum (9)",
    ),
    ("divergence", C2433): (
        None,
        "a census at 1e5 meets about 0.016 distinct divergent trajectories per seed under every "
        "escape convention tried",
    ),
}
