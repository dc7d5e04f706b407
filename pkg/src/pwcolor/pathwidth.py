"""Path decompositions and coloring counts over them.

A decomposition is an ordered list of bags. The counting DP sweeps the bags
left to right keeping, for every proper coloring of the current bag, the
number of proper colorings of everything introduced so far that extend it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import Graph

__all__ = [
    "DEFAULT_STATE_CAP",
    "DecompositionError",
    "PathDecomposition",
    "StateCapExceeded",
    "Validation",
    "augment_decomposition",
    "decompose",
    "decompose_heuristic",
    "decompose_low_degree",
    "pw_count_colorings",
    "degree_pathwidth_bound",
    "validate_decomposition",
]

DEFAULT_STATE_CAP = 10**7


class DecompositionError(ValueError):
    pass


class StateCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]]) -> "PathDecomposition":
        return cls(tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        # empty decomposition reports 0, same convention as Δ of an empty graph
        return max((len(b) for b in self.bags), default=1) - 1

    def __len__(self) -> int:
        return len(self.bags)

    def to_json(self) -> str:
        return json.dumps([sorted(b) for b in self.bags])

    @classmethod
    def from_json(cls, text: str) -> "PathDecomposition":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(b, list) for b in data):
            raise DecompositionError("expected a JSON list of vertex-index lists")
        return cls.of(data)


@dataclass(frozen=True)
class Validation:
    ok: bool
    violation: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_decomposition(g: Graph, pd: PathDecomposition) -> Validation:
    """Check vertex cover, edge cover and contiguity, reporting the first failure."""
    seen_at: dict[int, list[int]] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return Validation(False, "vertex-range", (v, i))
            seen_at.setdefault(v, []).append(i)
    for v in range(g.n):
        if v not in seen_at:
            return Validation(False, "vertex-cover", (v,))
    for u, v in g.sorted_edges():
        if not any(u in bag and v in bag for bag in pd.bags):
            return Validation(False, "edge-cover", (u, v))
    for v in sorted(seen_at):
        idx = seen_at[v]
        if idx[-1] - idx[0] + 1 != len(idx):
            gap = next(j for j in range(idx[0], idx[-1]) if j not in set(idx))
            return Validation(False, "contiguity", (v, gap))
    return Validation(True)


# -------------------------------------------------------------- constructors


def decompose_low_degree(g: Graph, vertices: Iterable[int] | None = None) -> PathDecomposition:
    """Width <= 2 decomposition of a graph (or induced subgraph) with Δ <= 2.

    Components are laid out one after another: a path gets its sliding
    window of edges, a cycle gets one anchor vertex added to every bag of
    the window over the remaining path, an isolated vertex a singleton bag.
    """
    verts = set(range(g.n)) if vertices is None else set(vertices)
    deg = {v: len(g.adj[v] & verts) for v in verts}
    if any(d > 2 for d in deg.values()):
        raise DecompositionError("decompose_low_degree needs maximum degree <= 2")
    bags: list[frozenset[int]] = []
    for comp in g.components(verts):
        if len(comp) == 1:
            bags.append(frozenset(comp))
            continue
        ends = [v for v in comp if deg[v] == 1]
        if ends:
            order = _walk(g, verts, min(ends))
            bags.extend(frozenset(order[i : i + 2]) for i in range(len(order) - 1))
        else:
            anchor = comp[0]
            order = _walk(g, verts - {anchor}, min(g.adj[anchor] & verts))
            bags.extend(frozenset((order[i], order[i + 1], anchor)) for i in range(len(order) - 1))
    return PathDecomposition(tuple(bags))


def _walk(g: Graph, verts: set[int], start: int) -> list[int]:
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in g.adj[cur] if w in verts and w != prev and w != start]
        if not nxt:
            return order
        prev, cur = cur, min(nxt)
        order.append(cur)


def decompose_heuristic(g: Graph, vertices: Iterable[int] | None = None) -> PathDecomposition:
    """Greedy linear layout turned into a path decomposition.

    Vertices are placed one at a time, each step picking the vertex that
    leaves the smallest frontier (placed vertices with an unplaced
    neighbour). Bag t holds the t-th vertex plus the frontier before it, so
    the width is the vertex separation number of the layout.
    """
    verts = sorted(set(range(g.n)) if vertices is None else set(vertices))
    vset = set(verts)
    adj = {v: g.adj[v] & vset for v in verts}
    unplaced_deg = {v: len(adj[v]) for v in verts}
    placed: set[int] = set()
    frontier: set[int] = set()
    bags: list[frozenset[int]] = []
    remaining = set(verts)
    while remaining:
        best = None
        for v in sorted(remaining):
            # frontier after placing v
            gone = sum(1 for u in adj[v] if u in frontier and unplaced_deg[u] == 1)
            size = len(frontier) - gone + (1 if unplaced_deg[v] > 0 else 0)
            key = (size, -sum(1 for u in adj[v] if u in placed), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        bags.append(frozenset(frontier | {v}))
        remaining.discard(v)
        placed.add(v)
        for u in adj[v]:
            unplaced_deg[u] -= 1
            if u in frontier and unplaced_deg[u] == 0:
                frontier.discard(u)
        if unplaced_deg[v] > 0:
            frontier.add(v)
    return PathDecomposition(tuple(bags))


def decompose(g: Graph, vertices: Iterable[int] | None = None) -> PathDecomposition:
    """Low-degree construction when it applies, the heuristic otherwise."""
    verts = set(range(g.n)) if vertices is None else set(vertices)
    if all(len(g.adj[v] & verts) <= 2 for v in verts):
        return decompose_low_degree(g, verts)
    return decompose_heuristic(g, verts)


def augment_decomposition(
    residual_pd: PathDecomposition, C: Iterable[int], S: Iterable[int]
) -> PathDecomposition:
    """Extend a decomposition of G - (S ∪ C) to all of G.

    Every residual bag gains C, then one bag {v} ∪ C follows per v in S.
    Requires S independent with N(S) ⊆ C; the caller validates the result.
    """
    cover = frozenset(C)
    bags = [b | cover for b in residual_pd.bags]
    bags.extend(frozenset((v,)) | cover for v in sorted(S))
    if not bags and cover:
        bags.append(cover)
    return PathDecomposition(tuple(bags))


# -------------------------------------------------------------------- DP


def pw_count_colorings(
    g: Graph, pd: PathDecomposition, c: int, state_cap: int = DEFAULT_STATE_CAP, check: bool = True
) -> int:
    """Number of proper colorings V -> {0..c-1} by a sweep over the bags."""
    if c < 0:
        raise ValueError("number of colors must be nonnegative")
    if check:
        verdict = validate_decomposition(g, pd)
        if not verdict:
            raise DecompositionError(f"invalid decomposition: {verdict.violation} {verdict.witness}")
    if g.n == 0:
        return 1
    if c == 0:
        return 0
    if c ** (pd.width + 1) > state_cap:
        raise StateCapExceeded(f"{c}^{pd.width + 1} bag colorings exceed the cap of {state_cap}")

    adj = g.adj
    cur: tuple[int, ...] = ()
    table: dict[tuple[int, ...], int] = {(): 1}
    for bag in pd.bags:
        keep = tuple(v for v in cur if v in bag)
        if len(keep) != len(cur):
            pos = [cur.index(v) for v in keep]
            proj: dict[tuple[int, ...], int] = {}
            for key, cnt in table.items():
                k2 = tuple(key[i] for i in pos)
                proj[k2] = proj.get(k2, 0) + cnt
            table, cur = proj, keep
        for v in sorted(bag - set(cur)):
            clash = [i for i, u in enumerate(cur) if u in adj[v]]
            ext: dict[tuple[int, ...], int] = {}
            for key, cnt in table.items():
                used = {key[i] for i in clash}
                for col in range(c):
                    if col not in used:
                        ext[key + (col,)] = cnt
            table, cur = ext, cur + (v,)
            if not table:
                return 0
    return sum(table.values())


# ------------------------------------------------------------- analytic side

_DEGREE_PW_COEFF = {3: Fraction(1, 6), 4: Fraction(1, 3), 5: Fraction(13, 30), 6: Fraction(23, 45)}


def degree_pathwidth_bound(hist: dict[int, int]) -> Fraction:
    """Leading-order pathwidth upper bound from a degree histogram.

    n3/6 + n4/3 + 13 n5/30 + 23 n6/45 + n_{>=7}; the o(n) term is dropped.
    """
    total = Fraction(0)
    for deg, count in hist.items():
        if deg >= 7:
            total += count
        elif deg in _DEGREE_PW_COEFF:
            total += _DEGREE_PW_COEFF[deg] * count
    return total
