"""Hybrid branch-and-enumerate / pathwidth solver for c-Coloring and #c-Coloring.

c-Coloring is solved as (c-1)-colorable Vertex Cover: the search grows an
independent set S (the vertices taking the last color) and a partial cover
C ⊇ N(S), branching on a maximum-degree vertex of G - (S ∪ C). Whenever C
is small relative to the remaining degree level, the search is abandoned
and the whole graph is handed to the pathwidth DP, using a decomposition
built from the (S, C) at that point.

Vertex sets are bitmasks inside the search and frozensets at the API.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

from .analyzer import WeightAssignment, thresholds
from .graph import Graph, mask_of, vertices_of
from .pathwidth import (
    DEFAULT_STATE_CAP,
    augment_decomposition,
    decompose_heuristic,
    decompose_low_degree,
    pw_count_colorings,
)

__all__ = [
    "DEFAULT_ALPHA",
    "EngineConfig",
    "EngineResult",
    "MeasureRecord",
    "SearchState",
    "StateInvariantError",
    "TraceNode",
    "check_measure_decrease",
    "color_subroutine",
    "count_colorings",
    "decide_colorable",
    "enum_is",
    "enum_is_counting",
    "enum_is_pw",
    "enum_is_pw_counting",
    "measure_value",
    "solve_count",
]

# alpha at the worst 4-Coloring piece; thresholds only steer performance
DEFAULT_ALPHA = 0.3915


class StateInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class SearchState:
    """(S, C) plus the |S| and |C| seen when the residual Δ first fell to each level."""

    S: frozenset[int] = frozenset()
    C: frozenset[int] = frozenset()
    first_S_size: dict[int, int] = field(default_factory=dict)
    first_C_size: dict[int, int] = field(default_factory=dict)

    @classmethod
    def root(cls) -> "SearchState":
        return cls()


@dataclass(frozen=True)
class EngineConfig:
    d: int
    k: int
    a: int = 7
    alpha: float = DEFAULT_ALPHA
    mode: str = "decision"
    prune_on_k: bool = True
    use_pathwidth: bool = True
    trace: bool = False
    check_invariants: bool = False
    state_cap: int = DEFAULT_STATE_CAP

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"cover must get at least one color, got d={self.d}")
        if self.k < 0:
            raise ValueError(f"cover budget must be nonnegative, got k={self.k}")
        if self.mode not in ("decision", "counting"):
            raise ValueError(f"mode must be 'decision' or 'counting', got {self.mode!r}")
        thresholds(self.alpha, self.a)  # validates alpha and a

    def levels(self) -> dict[int, tuple[float, float]]:
        return {i: (float(al), float(ga)) for i, (al, ga) in thresholds(self.alpha, self.a).items()}


@dataclass(frozen=True)
class TraceNode:
    """One binary branching step: the parent state and both child states."""

    routine: str
    degree: int
    vertex: int
    parent: SearchState
    children: tuple[SearchState, SearchState]
    pruned: tuple[bool, bool]


@dataclass
class EngineResult:
    answer: bool | int
    nodes_visited: int = 0
    pw_triggered: bool = False
    pw_trigger_degree: int | None = None
    pw_width: int | None = None
    trace: list[TraceNode] | None = None


class _PathwidthTrigger(Exception):
    def __init__(self, S: int, C: int, degree: int):
        super().__init__(degree)
        self.S, self.C, self.degree = S, C, degree


# ------------------------------------------------------------------ search


class _Search:
    def __init__(self, g: Graph, cfg: EngineConfig):
        if cfg.k > cfg.d * g.n // (cfg.d + 1):
            raise ValueError(f"cover budget k={cfg.k} exceeds floor(d n / (d + 1)) = {cfg.d * g.n // (cfg.d + 1)}")
        self.g = g
        self.cfg = cfg
        self.n = g.n
        self.adj = g.adj_mask
        self.full = g.full_mask
        self.levels = cfg.levels()
        self.level_ids = tuple(range(2, cfg.a))
        self.nodes = 0
        self.trace: list[TraceNode] | None = [] if cfg.trace else None

    # state handling -----------------------------------------------------

    def _prepare(self, S: int, C: int, first: tuple, eager: bool):
        """Normalize a state: isolated residual vertices join S when ``eager``,
        first-reach bookkeeping is updated, and (Δ, v) are computed."""
        adj = self.adj
        alive = self.full & ~(S | C)
        if eager:
            lone = 0
            for v in vertices_of(alive):
                if not adj[v] & alive:
                    lone |= 1 << v
            if lone:
                S |= lone
                alive &= ~lone
        delta, pick = 0, -1
        best = -1
        for v in vertices_of(alive):
            dv = (adj[v] & alive).bit_count()
            if dv > best:
                best, pick = dv, v
        delta = max(best, 0)
        if any(f is None for f in first):
            s, c = S.bit_count(), C.bit_count()
            first = tuple(
                (s, c) if f is None and lvl >= delta else f for lvl, f in zip(self.level_ids, first)
            )
        return S, C, first, delta, pick, alive

    def _root(self, state: SearchState, eager: bool):
        S, C = mask_of(state.S), mask_of(state.C)
        first = tuple(
            (state.first_S_size[i], state.first_C_size.get(i, C.bit_count())) if i in state.first_S_size else None
            for i in self.level_ids
        )
        self._check(S, C)
        return self._prepare(S, C, first, eager)

    def _check(self, S: int, C: int) -> None:
        adj = self.adj
        if S & C:
            raise StateInvariantError("S and C intersect")
        for v in vertices_of(S):
            if adj[v] & S:
                raise StateInvariantError(f"S is not independent at vertex {v}")
            if adj[v] & ~C:
                raise StateInvariantError(f"N({v}) is not contained in C")

    def snapshot(self, S: int, C: int, first: tuple) -> SearchState:
        fs = {lvl: f[0] for lvl, f in zip(self.level_ids, first) if f is not None}
        fc = {lvl: f[1] for lvl, f in zip(self.level_ids, first) if f is not None}
        return SearchState(frozenset(vertices_of(S)), frozenset(vertices_of(C)), fs, fc)

    def _branch(self, node, eager: bool, routine: str):
        S, C, first, delta, v, alive = node
        bit = 1 << v
        left = self._prepare(S | bit, C | (self.adj[v] & alive), first, eager)
        right = self._prepare(S, C | bit, first, eager)
        if self.trace is not None:
            prune = self.cfg.prune_on_k and self.cfg.mode == "decision"
            kids = (left, right)
            self.trace.append(
                TraceNode(
                    routine,
                    delta,
                    v,
                    self.snapshot(S, C, first),
                    tuple(self.snapshot(k[0], k[1], k[2]) for k in kids),
                    tuple(prune and k[1].bit_count() > self.cfg.k for k in kids),
                )
            )
        return left, right

    def _pw_guard(self, delta: int, S: int, C: int) -> bool:
        """True when the pathwidth-aware search keeps branching here."""
        if delta >= self.cfg.a:
            return True
        if delta < 3:
            return False
        if not self.cfg.use_pathwidth:
            return True
        al, ga = self.levels[delta]
        return C.bit_count() > al * self.n + ga * S.bit_count()

    def _low_guard(self, S: int, C: int) -> bool:
        if not self.cfg.use_pathwidth:
            return True
        al, ga = self.levels[2]
        return C.bit_count() > al * self.n + ga * S.bit_count()

    # decision -------------------------------------------------------------

    def enum_is_pw(self, node) -> bool:
        S, C, first, delta, v, alive = node
        self.nodes += 1
        if self.cfg.check_invariants:
            self._check(S, C)
        if self.cfg.prune_on_k and C.bit_count() > self.cfg.k:
            return False
        if self._pw_guard(delta, S, C):
            left, right = self._branch(node, eager=False, routine="enum_is_pw")
            return self.enum_is_pw(left) or self.enum_is_pw(right)
        if delta <= 2 and self._low_guard(S, C):
            return self.enum_is(self._prepare(S, C, first, eager=True))
        raise _PathwidthTrigger(S, C, delta)

    def enum_is(self, node) -> bool:
        S, C, first, delta, v, alive = node
        self.nodes += 1
        if self.cfg.check_invariants:
            self._check(S, C)
        if self.cfg.prune_on_k and C.bit_count() > self.cfg.k:
            return False
        if delta > 0:
            left, right = self._branch(node, eager=True, routine="enum_is")
            return self.enum_is(left) or self.enum_is(right)
        return _color_mask(self.g, C, self.cfg.d, "decide")

    # counting -------------------------------------------------------------

    def enum_is_pw_counting(self, node) -> int:
        S, C, first, delta, v, alive = node
        self.nodes += 1
        if self.cfg.check_invariants:
            self._check(S, C)
        if self._pw_guard(delta, S, C):
            left, right = self._branch(node, eager=False, routine="enum_is_pw_counting")
            return self.enum_is_pw_counting(left) + self.enum_is_pw_counting(right)
        if delta <= 2 and self._low_guard(S, C):
            return self.enum_is_counting(node)
        raise _PathwidthTrigger(S, C, delta)

    def enum_is_counting(self, node) -> int:
        S, C, first, delta, v, alive = node
        self.nodes += 1
        if self.cfg.check_invariants:
            self._check(S, C)
        if alive:
            left, right = self._branch(node, eager=False, routine="enum_is_counting")
            return self.enum_is_counting(left) + self.enum_is_counting(right)
        return _color_mask(self.g, C, self.cfg.d, "count")

    # pathwidth fallback ---------------------------------------------------

    def solve_by_pathwidth(self, trig: _PathwidthTrigger) -> tuple[int, int]:
        g = self.g
        rest = [v for v in range(g.n) if not (trig.S | trig.C) >> v & 1]
        if trig.degree <= 2:
            inner = decompose_low_degree(g, rest)
        else:
            inner = decompose_heuristic(g, rest)
        pd = augment_decomposition(inner, vertices_of(trig.C), vertices_of(trig.S))
        count = pw_count_colorings(g, pd, self.cfg.d + 1, state_cap=self.cfg.state_cap)
        return count, pd.width


def _run(g: Graph, state: SearchState, cfg: EngineConfig, routine: str) -> EngineResult:
    search = _Search(g, cfg)
    node = search._root(state, eager=(routine == "enum_is"))
    result = EngineResult(answer=False)
    try:
        result.answer = getattr(search, routine)(node)
    except _PathwidthTrigger as trig:
        count, width = search.solve_by_pathwidth(trig)
        result.answer = count if cfg.mode == "counting" else count > 0
        result.pw_triggered = True
        result.pw_trigger_degree = trig.degree
        result.pw_width = width
    result.nodes_visited = search.nodes
    result.trace = search.trace
    return result


def enum_is_pw(g: Graph, state: SearchState, cfg: EngineConfig) -> EngineResult:
    """Is there a d-colorable vertex cover C' ⊇ C avoiding S (of size <= k when pruning)?

    A pathwidth trigger anywhere in the search replaces the whole answer by
    the c-colorability of G computed over a path decomposition.
    """
    if cfg.mode != "decision":
        raise ValueError("enum_is_pw is the decision routine; use enum_is_pw_counting")
    return _run(g, state, cfg, "enum_is_pw")


def enum_is(g: Graph, state: SearchState, cfg: EngineConfig) -> bool:
    """Plain enumeration below degree 3, finishing with the color check."""
    search = _Search(g, cfg)
    node = search._root(state, eager=True)
    if node[3] > 2:
        raise ValueError(f"enum_is needs residual maximum degree <= 2, got {node[3]}")
    return search.enum_is(node)


def enum_is_pw_counting(g: Graph, state: SearchState, cfg: EngineConfig) -> EngineResult:
    """Counting version of enum_is_pw: sums over both branches."""
    if cfg.mode != "counting":
        raise ValueError("enum_is_pw_counting needs mode='counting'")
    if cfg.prune_on_k:
        raise ValueError("pruning on k drops colorings; counting needs prune_on_k=False")
    return _run(g, state, cfg, "enum_is_pw_counting")


def enum_is_counting(g: Graph, state: SearchState, cfg: EngineConfig) -> int:
    """Sum over independent sets S' ⊇ S reached by branching of the number of
    d-colorings of G - S'; branches on isolated residual vertices too."""
    search = _Search(g, replace(cfg, prune_on_k=False))
    node = search._root(state, eager=False)
    if node[3] > 2:
        raise ValueError(f"enum_is_counting needs residual maximum degree <= 2, got {node[3]}")
    return search.enum_is_counting(node)


# ------------------------------------------------------------ color check


def color_subroutine(g: Graph, X: Iterable[int] | int, d: int, mode: str = "decide") -> bool | int:
    """d-colorability of G[X] (``decide``) or its number of proper d-colorings (``count``)."""
    if mode not in ("decide", "count"):
        raise ValueError(f"mode must be 'decide' or 'count', got {mode!r}")
    mask = X if isinstance(X, int) else mask_of(X)
    return _color_mask(g, mask, d, mode)


def _components(g: Graph, mask: int) -> list[int]:
    adj = g.adj_mask
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = adj[low.bit_length() - 1] & mask & ~comp
            comp |= nb
            frontier |= nb
        comps.append(comp)
        rest &= ~comp
    return comps


def _bipartite(g: Graph, comp: int) -> bool:
    adj = g.adj_mask
    start = (comp & -comp).bit_length() - 1
    side = {start: 0}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in vertices_of(adj[x] & comp):
            if y not in side:
                side[y] = side[x] ^ 1
                stack.append(y)
            elif side[y] == side[x]:
                return False
    return True


def _color_mask(g: Graph, mask: int, d: int, mode: str):
    counting = mode == "count"
    if d < 0:
        raise ValueError("d must be nonnegative")
    if not mask:
        return 1 if counting else True
    if d == 0:
        return 0 if counting else False
    comps = _components(g, mask)
    if d <= 2:
        ok = all(_bipartite(g, c) if d == 2 else c.bit_count() == 1 for c in comps)
        if not counting:
            return ok
        return d ** len(comps) if ok else 0
    total = 1
    for comp in comps:
        r = _backtrack(g, comp, d, counting)
        if counting:
            total *= r
            if not total:
                return 0
        elif not r:
            return False
    return total if counting else True


def _backtrack(g: Graph, comp: int, d: int, counting: bool):
    """Colorings of one connected component, up to renaming of colors.

    A vertex may only open the next unused color, so each coloring class is
    visited once and weighted by d (d-1) ... (d-used+1) at the leaf.
    """
    adj = g.adj_mask
    # BFS from a maximum-degree vertex keeps every vertex after a neighbour
    start = max(vertices_of(comp), key=lambda v: ((adj[v] & comp).bit_count(), -v))
    order = [start]
    seen = 1 << start
    i = 0
    while i < len(order):
        nb = sorted(vertices_of(adj[order[i]] & comp & ~seen), key=lambda v: (-(adj[v] & comp).bit_count(), v))
        for y in nb:
            seen |= 1 << y
            order.append(y)
        i += 1
    pos = {v: j for j, v in enumerate(order)}
    earlier = [[pos[u] for u in vertices_of(adj[v] & comp) if pos[u] < j] for j, v in enumerate(order)]
    size = len(order)
    colors = [0] * size
    falling = [math.perm(d, u) for u in range(d + 1)]

    def rec(j: int, used: int):
        if j == size:
            return falling[used] if counting else True
        banned = {colors[t] for t in earlier[j]}
        total = 0
        for col in range(min(used + 1, d)):
            if col in banned:
                continue
            colors[j] = col
            r = rec(j + 1, max(used, col + 1))
            if counting:
                total += r
            elif r:
                return True
        return total if counting else False

    return rec(0, 0)


# -------------------------------------------------------------- wrappers


def _config(g: Graph, c: int, mode: str, overrides: dict) -> EngineConfig:
    d = c - 1
    base = dict(d=d, k=d * g.n // c, mode=mode, prune_on_k=(mode == "decision"))
    base.update(overrides)
    return EngineConfig(**base)


def decide_colorable(g: Graph, c: int, **overrides) -> EngineResult:
    """Is G properly c-colorable? Runs the hybrid search as (c-1)-colorable Vertex Cover."""
    if c < 0:
        raise ValueError("number of colors must be nonnegative")
    if g.n == 0:
        return EngineResult(True)
    if c == 0:
        return EngineResult(False)
    if c == 1:
        return EngineResult(g.m == 0)
    cfg = _config(g, c, "decision", overrides)
    return enum_is_pw(g, SearchState.root(), cfg)


def solve_count(g: Graph, c: int, **overrides) -> EngineResult:
    """Number of proper colorings V -> {1..c}, with search statistics."""
    if c < 0:
        raise ValueError("number of colors must be nonnegative")
    if g.n == 0:
        return EngineResult(1)
    if c == 0:
        return EngineResult(0)
    if c == 1:
        return EngineResult(1 if g.m == 0 else 0)
    cfg = _config(g, c, "counting", overrides)
    return enum_is_pw_counting(g, SearchState.root(), cfg)


def count_colorings(g: Graph, c: int, **overrides) -> int:
    return solve_count(g, c, **overrides).answer


# ----------------------------------------------------------------- measure


def measure_value(g: Graph, state: SearchState, cfg: EngineConfig, weights: WeightAssignment) -> float:
    """Measure of a search state under a weight assignment.

    Level i contributes b_i. Before the residual Δ first drops to i,
    b_i = k - alpha_i n - gamma_i |S|; from then on the value reached at that
    moment is reduced by every vertex C gains afterwards. Both are clamped
    at 0, as is b_s = (n - k) - |S|.
    """
    n, k = g.n, cfg.k
    s, c = len(state.S), len(state.C)
    th = weights.thresholds()
    mu = weights.w1 * (n - s - c) + weights.c_prime * k
    for i in weights.levels:
        al, ga = float(th[i][0]), float(th[i][1])
        if i in state.first_S_size:
            grown = c - state.first_C_size.get(i, c)
            b = k - al * n - ga * state.first_S_size[i] - grown
        else:
            b = k - al * n - ga * s
        mu += weights.wk[i] * max(0.0, b)
    mu += weights.ws * max(0, (n - k) - s)
    return mu


@dataclass(frozen=True)
class MeasureRecord:
    node: TraceNode
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def check_measure_decrease(
    g: Graph, trace: list[TraceNode], cfg: EngineConfig, weights: WeightAssignment, tol: float = 1e-9
) -> list[MeasureRecord]:
    """Evaluate 2^mu(child1) + 2^mu(child2) <= 2^mu(parent) + tol per traced node.

    A child cut off by the budget k is rejected in polynomial time and is
    left out of the sum.
    """
    out = []
    for node in trace:
        lhs = sum(
            2.0 ** measure_value(g, ch, cfg, weights)
            for ch, cut in zip(node.children, node.pruned)
            if not cut
        )
        rhs = 2.0 ** measure_value(g, node.parent, cfg, weights) + tol
        out.append(MeasureRecord(node, lhs, rhs))
    return out
