"""Piecewise measure-and-conquer analysis of the hybrid coloring algorithm.

The similarity ratio k/n of a d-colorable Vertex Cover instance lies in
[0, d/(d+1)]. That interval is cut into p equal pieces and every piece gets
its own weight assignment, chosen to minimize the running-time exponent of
the piece subject to the branching constraints. The overall bound is the
worst piece.

Inside a piece the exponent is the larger of

* the branching bound  w1 + sum_i wk_i * max(0, u - alpha_i) + ws * (1 - l) + c' * u
* the pathwidth bound  alpha * log2(c)

For a fixed alpha the first is linear in the weights and the constraints
are log-sum-exp, so the weights come from a convex solve; alpha itself is
found by a safeguarded Newton search for the point where the two bounds
meet.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import _barrier
from ._version import __version__

__all__ = [
    "BETA",
    "AnalysisReport",
    "ConstraintSet",
    "OptimizerError",
    "Piece",
    "PieceResult",
    "Verification",
    "WeightAssignment",
    "base_of_exponent",
    "branching_exponent",
    "build_constraints",
    "constraint_slacks",
    "make_pieces",
    "optimize_piece",
    "parse_exponent",
    "piece_objective",
    "piecewise_analyze",
    "thresholds",
    "verify_assignment",
]

# leading pathwidth coefficient for residual graphs of maximum degree i
BETA: dict[int, Fraction] = {
    2: Fraction(0),
    3: Fraction(1, 6),
    4: Fraction(1, 3),
    5: Fraction(13, 30),
    6: Fraction(23, 45),
}

WEIGHT_BOX = 50.0
FEASIBILITY_TOL = 1e-9


class OptimizerError(RuntimeError):
    pass


def _check_a(a: int) -> None:
    if not 3 <= a <= 7:
        raise ValueError(f"degree switch a must lie in 3..7 (pathwidth table stops at degree 6), got {a}")


def thresholds(alpha, a: int = 7) -> dict[int, tuple]:
    """Trigger thresholds (alpha_i, gamma_i) for levels 2..a-1.

    alpha_i = (alpha - beta_i) / (1 - beta_i), gamma_i = beta_i / (1 - beta_i).
    An exact ``alpha`` (int or Fraction) gives exact alpha_i.
    """
    _check_a(a)
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    out = {}
    for i in range(2, a):
        beta = BETA[i]
        gamma = beta / (1 - beta)
        if isinstance(alpha, (int, Fraction)):
            out[i] = ((Fraction(alpha) - beta) / (1 - beta), gamma)
        else:
            out[i] = ((alpha - float(beta)) / (1 - float(beta)), gamma)
    return out


def parse_exponent(text) -> float:
    """Read a subroutine exponent: a plain real or ``log2:<base>``."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        s = str(text).strip()
        if s.startswith("log2:"):
            base = float(s[5:])
            if base < 1:
                raise ValueError(f"log2 base must be >= 1, got {base}")
            value = math.log2(base)
        else:
            value = float(s)
    if not value >= 0:
        raise ValueError(f"subroutine exponent must be nonnegative, got {text!r}")
    return value


def base_of_exponent(E: float) -> float:
    """2^E rounded up at the 4th decimal."""
    if E < 0:
        raise ValueError("exponent must be nonnegative")
    # the 1e-9 keeps exact round trips such as 2^log2(1.6225) from bumping up
    return math.ceil(2.0**E * 1e4 - 1e-9) / 1e4


# ----------------------------------------------------------------- weights


@dataclass(frozen=True)
class Piece:
    l: float
    u: float

    def __post_init__(self):
        if not 0 <= self.l <= self.u:
            raise ValueError(f"piece needs 0 <= l <= u, got [{self.l}, {self.u}]")


@dataclass
class WeightAssignment:
    w1: float
    ws: float
    wk: dict[int, float]
    alpha: float
    c_prime: float = 0.0
    a: int = 7

    def __post_init__(self):
        _check_a(self.a)
        self.wk = {i: float(self.wk.get(i, 0.0)) for i in range(2, self.a)}

    @property
    def levels(self) -> range:
        return range(2, self.a)

    def thresholds(self) -> dict[int, tuple]:
        return thresholds(self.alpha, self.a)

    def vector(self) -> np.ndarray:
        return np.array([self.w1, self.ws] + [self.wk[i] for i in self.levels])

    @classmethod
    def from_vector(cls, x: Sequence[float], alpha: float, c_prime: float, a: int) -> "WeightAssignment":
        return cls(
            w1=float(x[0]),
            ws=float(x[1]),
            wk={i: float(x[i]) for i in range(2, a)},
            alpha=float(alpha),
            c_prime=float(c_prime),
            a=a,
        )

    def to_dict(self, piece: Piece | None = None) -> dict:
        out = {
            "w1": self.w1,
            "ws": self.ws,
            "wk": {str(i): self.wk[i] for i in self.levels},
            "alpha": self.alpha,
            "cprime": self.c_prime,
            "a": self.a,
        }
        if piece is not None:
            out["l"] = piece.l
            out["u"] = piece.u
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> tuple["WeightAssignment", Piece | None]:
        try:
            a = int(data.get("a", 7))
            w = cls(
                w1=float(data["w1"]),
                ws=float(data["ws"]),
                wk={int(k): float(v) for k, v in dict(data["wk"]).items()},
                alpha=float(data["alpha"]),
                c_prime=parse_exponent(data.get("cprime", 0.0)),
                a=a,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed weight assignment: {exc}") from exc
        piece = Piece(float(data["l"]), float(data["u"])) if "l" in data and "u" in data else None
        return w, piece

    def is_nonnegative(self) -> bool:
        return min(self.vector()) >= 0 and self.c_prime >= 0


# ------------------------------------------------------------- constraints


@dataclass(frozen=True)
class Constraint:
    """2^(-first @ x) + 2^(-second @ x) <= 1 over x = (w1, ws, wk_2..wk_{a-1})."""

    tag: str
    first: np.ndarray
    second: np.ndarray


@dataclass(frozen=True)
class ConstraintSet:
    a: int
    counting: bool
    constraints: tuple[Constraint, ...]

    def __len__(self) -> int:
        return len(self.constraints)

    @property
    def tags(self) -> list[str]:
        return [c.tag for c in self.constraints]

    @property
    def A(self) -> np.ndarray:
        return np.array([c.first for c in self.constraints])

    @property
    def B(self) -> np.ndarray:
        return np.array([c.second for c in self.constraints])


def build_constraints(a: int = 7, counting: bool = False) -> ConstraintSet:
    """Branching constraints of the hybrid algorithm.

    One for Δ >= a, one per level i = 2..a-1, one for Δ = 1 and, when
    counting, one for a degree-0 vertex.
    """
    _check_a(a)
    # x = (w1, ws, wk_2..wk_{a-1}), so wk_j sits at index j
    nv = a
    levels = range(2, a)
    gamma = {i: float(BETA[i] / (1 - BETA[i])) for i in levels}

    out = []
    first, second = np.zeros(nv), np.zeros(nv)
    first[0], first[1] = a + 1, 1
    for j in levels:
        first[j] = gamma[j]
    second[0] = 1
    out.append(Constraint("degree>=a", first, second))

    for i in levels:
        first, second = np.zeros(nv), np.zeros(nv)
        first[0], first[1] = i + 1, 1
        second[0] = 1
        for j in range(i, a):
            first[j] = i
            second[j] = 1
        for j in range(2, i):
            first[j] = gamma[j]
        out.append(Constraint(f"degree={i}", first, second))

    both = np.zeros(nv)
    both[0], both[1] = 2, 1
    for j in levels:
        both[j] = 1
    out.append(Constraint("degree=1", both, both.copy()))

    if counting:
        first, second = np.zeros(nv), np.zeros(nv)
        first[0], first[1] = 1, 1
        second[0] = 1
        for j in levels:
            second[j] = 1
        out.append(Constraint("degree=0", first, second))
    return ConstraintSet(a, counting, tuple(out))


def constraint_slacks(w: WeightAssignment, cs: ConstraintSet) -> list[float]:
    if w.a != cs.a:
        raise ValueError(f"assignment has a={w.a} but constraints were built for a={cs.a}")
    x = w.vector()
    return [float(2.0 ** -(c.first @ x) + 2.0 ** -(c.second @ x)) for c in cs.constraints]


# --------------------------------------------------------------- objective


def branching_exponent(w: WeightAssignment, piece: Piece) -> float:
    th = w.thresholds()
    total = w.w1 + w.ws * (1 - piece.l) + w.c_prime * piece.u
    for i in w.levels:
        total += w.wk[i] * max(0.0, piece.u - float(th[i][0]))
    return total


def piece_objective(w: WeightAssignment, piece: Piece, c: int) -> float:
    """Exponent E with running time O*(2^(E n)) for instances in the piece."""
    return max(branching_exponent(w, piece), w.alpha * math.log2(c))


def make_pieces(d: int, p: int) -> list[Piece]:
    if d < 1 or p < 1:
        raise ValueError(f"need d >= 1 and p >= 1, got d={d}, p={p}")
    top = Fraction(d, d + 1)
    return [Piece(float((i - 1) * top / p), float(i * top / p)) for i in range(1, p + 1)]


# ------------------------------------------------------------- optimizer


def _cost_rows(alpha, l, u, a):
    beta = np.array([float(BETA[i]) for i in range(2, a)])
    alpha_i = (alpha[:, None] - beta) / (1 - beta)
    coef = np.maximum(0.0, u[:, None] - alpha_i)
    cost = np.column_stack([np.ones(len(l)), 1 - l, coef])
    return cost, alpha_i, beta


def _optimize_batch(l, u, a, c_prime, c, counting, tol=1e-10, max_outer=80):
    """Optimal (weights, alpha) for each piece [l[j], u[j]].

    The branching exponent minimized over weights, V(alpha), is
    non-increasing in alpha and the pathwidth exponent is increasing, so the
    optimum is where g(alpha) = V(alpha) - alpha log2 c changes sign. Newton
    steps use dV/dalpha from the envelope theorem and fall back to bisection
    whenever they leave the current bracket.
    """
    cs = build_constraints(a, counting)
    A, B = cs.A, cs.B
    L = math.log2(c)
    P = len(l)
    lo = np.zeros(P)
    hi = np.full(P, 1.0 - 1e-9)
    alpha = np.full(P, 0.5)
    X = np.zeros((P, a))
    active = np.arange(P)
    for _ in range(max_outer):
        if len(active) == 0:
            break
        cost, alpha_i, beta = _cost_rows(alpha[active], l[active], u[active], a)
        x = _barrier.solve(cost, A, B, upper=WEIGHT_BOX)
        X[active] = x
        g = (cost * x).sum(1) + c_prime * u[active] - alpha[active] * L
        above = g > 0
        lo[active] = np.where(above, alpha[active], lo[active])
        hi[active] = np.where(above, hi[active], alpha[active])
        slope = -(x[:, 2:] * (u[active, None] > alpha_i) / (1 - beta)).sum(1) - L
        step = alpha[active] - g / slope
        outside = (step <= lo[active]) | (step >= hi[active])
        nxt = np.where(outside, 0.5 * (lo[active] + hi[active]), step)
        done = (np.abs(g) < tol) | (hi[active] - lo[active] < tol)
        alpha[active] = np.where(done, alpha[active], nxt)
        # the last solve must match the alpha we keep
        active = active[~done]
    if len(active):
        raise OptimizerError(f"alpha search did not converge on {len(active)} piece(s)")
    return X, alpha


@dataclass
class PieceResult:
    piece: Piece
    weights: WeightAssignment
    exponent: float
    slacks: list[float]

    @property
    def base(self) -> float:
        return base_of_exponent(self.exponent)

    def to_dict(self) -> dict:
        return {
            "l": self.piece.l,
            "u": self.piece.u,
            "exponent": self.exponent,
            "base": self.base,
            "weights": self.weights.to_dict(self.piece),
            "slacks": self.slacks,
        }


def _results_for(pieces, a, c_prime, c, counting) -> list[PieceResult]:
    l = np.array([pc.l for pc in pieces])
    u = np.array([pc.u for pc in pieces])
    X, alpha = _optimize_batch(l, u, a, c_prime, c, counting)
    cs = build_constraints(a, counting)
    out = []
    for j, pc in enumerate(pieces):
        w = WeightAssignment.from_vector(X[j], alpha[j], c_prime, a)
        slacks = constraint_slacks(w, cs)
        E = piece_objective(w, pc, c)
        if not (np.isfinite(E) and max(slacks) <= 1 + FEASIBILITY_TOL):
            raise OptimizerError(f"piece [{pc.l}, {pc.u}] ended infeasible (max slack {max(slacks)})")
        out.append(PieceResult(pc, w, E, slacks))
    return out


def optimize_piece(
    piece: Piece, a: int = 7, c_prime: float = 0.0, c: int = 4, counting: bool = False
) -> tuple[WeightAssignment, float]:
    """Feasible weights minimizing the piece exponent, and that exponent."""
    res = _results_for([piece], a, c_prime, c, counting)[0]
    return res.weights, res.exponent


@dataclass
class AnalysisReport:
    params: dict
    pieces: list[PieceResult] = field(default_factory=list)

    @property
    def worst(self) -> PieceResult:
        return max(self.pieces, key=lambda r: r.exponent)

    @property
    def max_exponent(self) -> float:
        return self.worst.exponent

    @property
    def max_base(self) -> float:
        return base_of_exponent(self.max_exponent)

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "pieces": [r.to_dict() for r in self.pieces],
            "max_base": self.max_base,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        a = self.params["a"]
        levels = list(range(2, a))
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["index", "l", "u", "exponent", "base", "alpha", "w1", "ws"]
            + [f"wk{i}" for i in levels]
            + ["max_slack"]
        )
        for j, r in enumerate(self.pieces, 1):
            w = r.weights
            writer.writerow(
                [j, repr(r.piece.l), repr(r.piece.u), repr(r.exponent), r.base, repr(w.alpha), repr(w.w1), repr(w.ws)]
                + [repr(w.wk[i]) for i in levels]
                + [repr(max(r.slacks))]
            )
        return buf.getvalue()


def piecewise_analyze(
    d: int,
    p: int,
    a: int = 7,
    c_prime: float = 0.0,
    c: int | None = None,
    counting: bool = False,
    threads: int = 1,
    chunk: int = 256,
) -> AnalysisReport:
    """Analyze all p pieces of [0, d/(d+1)] and collect the report.

    Pieces are solved in fixed blocks of ``chunk``; ``threads`` only changes
    how blocks are scheduled, so the report does not depend on it.
    """
    c = d + 1 if c is None else c
    if c != d + 1:
        raise ValueError(f"the reduction uses d = c - 1; got d={d}, c={c}")
    _check_a(a)
    if c_prime < 0:
        raise ValueError("subroutine exponent must be nonnegative")
    pieces = make_pieces(d, p)
    blocks = [pieces[i : i + chunk] for i in range(0, len(pieces), chunk)]

    def run(block):
        return _results_for(block, a, c_prime, c, counting)

    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    params = {
        "d": d,
        "c": c,
        "p": p,
        "a": a,
        "cprime": c_prime,
        "counting": counting,
        "version": __version__,
    }
    return AnalysisReport(params, [r for part in parts for r in part])


@dataclass
class Verification:
    feasible: bool
    slacks: list[float]
    tags: list[str]
    exponent: float
    branching: float
    pathwidth: float

    @property
    def base(self) -> float:
        return base_of_exponent(self.exponent)


def verify_assignment(
    w: WeightAssignment, piece: Piece, c: int, counting: bool = False, tol: float = FEASIBILITY_TOL
) -> Verification:
    """Evaluate a given assignment on one piece, without optimizing."""
    cs = build_constraints(w.a, counting)
    slacks = constraint_slacks(w, cs)
    feasible = w.is_nonnegative() and max(slacks) <= 1 + tol
    br = branching_exponent(w, piece)
    pw = w.alpha * math.log2(c)
    return Verification(feasible, slacks, cs.tags, max(br, pw), br, pw)
