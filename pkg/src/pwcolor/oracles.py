"""Exhaustive ground truth, written independently of the search engine."""
from __future__ import annotations

from itertools import combinations, product

from .graph import Graph

__all__ = ["OracleSizeError", "brute_force_oracle", "count_by_independent_sets"]

DECIDE_LIMIT = 20
COUNT_LIMIT = 12


class OracleSizeError(ValueError):
    pass


def _proper(g: Graph, col) -> bool:
    return all(col[u] != col[v] for u, v in g.edges)


def _count_assignments(g: Graph, vertices: list[int], c: int) -> int:
    """Proper c-colorings of G[vertices] by enumerating all c^|vertices| maps."""
    inside = set(vertices)
    edges = [(u, v) for u, v in g.edges if u in inside and v in inside]
    total = 0
    for combo in product(range(c), repeat=len(vertices)):
        col = dict(zip(vertices, combo))
        if all(col[u] != col[v] for u, v in edges):
            total += 1
    return total


def _colorable(g: Graph, vertices: list[int], c: int) -> bool:
    inside = set(vertices)
    col: dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == len(vertices):
            return True
        v = vertices[i]
        for k in range(c):
            if all(col.get(u) != k for u in g.adj[v] if u in inside):
                col[v] = k
                if rec(i + 1):
                    return True
                del col[v]
        return False

    return rec(0)


def _covers(g: Graph, k: int):
    for size in range(min(k, g.n) + 1):
        for X in combinations(range(g.n), size):
            xs = set(X)
            if all(u in xs or v in xs for u, v in g.edges):
                yield list(X)


def brute_force_oracle(g: Graph, c: int = 0, mode: str = "decide", d: int | None = None, k: int | None = None):
    """Ground truth by enumeration.

    ``decide`` / ``count``: c-colorability / number of proper c-colorings.
    ``cover_decide`` / ``cover_count``: existence / number of vertex covers X
    with |X| <= k and G[X] d-colorable.
    """
    if mode == "decide":
        if g.n > DECIDE_LIMIT:
            raise OracleSizeError(f"n={g.n} exceeds the decide limit {DECIDE_LIMIT}")
        return _colorable(g, list(range(g.n)), c)
    if mode == "count":
        if g.n > COUNT_LIMIT:
            raise OracleSizeError(f"n={g.n} exceeds the count limit {COUNT_LIMIT}")
        return _count_assignments(g, list(range(g.n)), c)
    if mode in ("cover_decide", "cover_count"):
        if d is None or k is None:
            raise ValueError(f"{mode} needs d and k")
        if g.n > COUNT_LIMIT:
            raise OracleSizeError(f"n={g.n} exceeds the cover limit {COUNT_LIMIT}")
        hits = (X for X in _covers(g, k) if _colorable(g, X, d))
        if mode == "cover_decide":
            return any(True for _ in hits)
        return sum(1 for _ in hits)
    raise ValueError(f"unknown oracle mode {mode!r}")


def count_by_independent_sets(g: Graph, c: int, counter=None) -> int:
    """Sum over all independent sets S' of the (c-1)-colorings of G - S'.

    ``counter(g, vertices, colors)`` counts the colorings of G[vertices];
    plain enumeration by default.
    """
    counter = counter or _count_assignments
    if g.n > COUNT_LIMIT:
        raise OracleSizeError(f"n={g.n} exceeds the count limit {COUNT_LIMIT}")
    if g.n == 0:
        return 1
    if c == 0:
        return 0
    total = 0
    for bits in range(1 << g.n):
        S = [v for v in range(g.n) if bits >> v & 1]
        sset = set(S)
        if any(u in sset and v in sset for u, v in g.edges):
            continue
        rest = [v for v in range(g.n) if v not in sset]
        total += counter(g, rest, c - 1)
    return total
