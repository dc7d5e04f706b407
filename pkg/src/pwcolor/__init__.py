"""Exact c-Coloring / #c-Coloring and piecewise running-time analysis."""
from ._version import __version__
from .analyzer import (
    AnalysisReport,
    Piece,
    WeightAssignment,
    base_of_exponent,
    build_constraints,
    constraint_slacks,
    make_pieces,
    optimize_piece,
    piece_objective,
    piecewise_analyze,
    thresholds,
    verify_assignment,
)
from .engine import (
    EngineConfig,
    EngineResult,
    SearchState,
    color_subroutine,
    count_colorings,
    decide_colorable,
    measure_value,
    solve_count,
)
from .graph import Graph, generate, parse_dimacs, read_dimacs, write_dimacs
from .oracles import brute_force_oracle
from .pathwidth import PathDecomposition, pw_count_colorings, validate_decomposition
