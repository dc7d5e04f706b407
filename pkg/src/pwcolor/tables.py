"""Published weight assignments for the 4-Coloring and #3-Coloring analyses.

Each entry records the assignment, the piece it was reported for, the
analysis parameters and the running-time base reported alongside it.
"""
from __future__ import annotations

import math

from .analyzer import Piece, WeightAssignment

# exponents of the 3-coloring subroutines run on G[C]
C_PRIME_3COL = math.log2(1.3289)
C_PRIME_3COL_FAST = math.log2(1.3217)

_FOUR_COLORING = dict(w1=0.35115, ws=0.06390, wk={2: 0.11110, 3: 0.07153, 4: 0.05121, 5: 0.0, 6: 0.0})

PUBLISHED = {
    # 550 pieces, worst piece
    "four_coloring_550": dict(
        weights=WeightAssignment(alpha=0.39150, c_prime=C_PRIME_3COL, **_FOUR_COLORING),
        piece=Piece(0.74863, 0.75),
        c=4,
        counting=False,
        base=1.7207,
    ),
    # 5000 pieces, worst piece
    "counting_5000": dict(
        weights=WeightAssignment(
            w1=0.27135,
            ws=0.58989,
            wk={2: 0.75603, 3: 0.05501, 4: 0.04030, 5: 0.03089, 6: 0.0},
            alpha=0.44052,
            c_prime=0.0,
        ),
        piece=Piece(0.66653, 0.66667),
        c=3,
        counting=True,
        base=1.6225,
    ),
    # single piece, plain measure and conquer
    "four_coloring_1": dict(
        weights=WeightAssignment(
            w1=0.40391,
            ws=0.0,
            wk={2: 0.12023, 3: 0.07197, 4: 0.0, 5: 0.0, 6: 0.0},
            alpha=0.39433,
            c_prime=C_PRIME_3COL,
        ),
        piece=Piece(0.0, 0.75),
        c=4,
        counting=False,
        base=1.7275,
    ),
    "four_coloring_10": dict(
        weights=WeightAssignment(alpha=0.39357, c_prime=C_PRIME_3COL, **_FOUR_COLORING),
        piece=Piece(0.675, 0.75),
        c=4,
        counting=False,
        base=1.7257,
    ),
    "four_coloring_50": dict(
        weights=WeightAssignment(alpha=0.39188, c_prime=C_PRIME_3COL, **_FOUR_COLORING),
        piece=Piece(0.735, 0.75),
        c=4,
        counting=False,
        base=1.7217,
    ),
    "four_coloring_100": dict(
        weights=WeightAssignment(alpha=0.39167, c_prime=C_PRIME_3COL, **_FOUR_COLORING),
        piece=Piece(0.7425, 0.75),
        c=4,
        counting=False,
        base=1.7212,
    ),
}

# alpha_3..alpha_6 printed next to the 550-piece assignment
THRESHOLDS_550 = {3: 0.26980, 4: 0.08725, 5: -0.07382, 6: -0.24466}

# running-time bases by piece count for 4-Coloring
PIECE_SWEEP = {1: 1.7275, 10: 1.7257, 50: 1.7217, 100: 1.7212}
