"""Simple undirected graphs, DIMACS I/O, generators and set predicates.

Vertices are ``0..n-1`` internally; DIMACS files use 1-based ids.
Adjacency is kept both as frozensets and as integer bitmasks, the latter
being what the search engine works on.
"""
from __future__ import annotations

import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "DimacsError",
    "Graph",
    "ResidualView",
    "degree_histogram",
    "generate",
    "is_independent_set",
    "is_vertex_cover",
    "mask_of",
    "parse_dimacs",
    "read_dimacs",
    "residual",
    "vertices_of",
    "write_dimacs",
]


class DimacsError(ValueError):
    """Malformed DIMACS ``.col`` input."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on ``range(n)``."""

    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    adj_mask: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in norm:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            n=n,
            edges=frozenset(norm),
            adj=tuple(frozenset(s) for s in nbrs),
            adj_mask=tuple(mask_of(s) for s in nbrs),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the old labels."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), sub), keep

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of G[vertices] (all of V by default)."""
        allowed = set(range(self.n)) if vertices is None else set(vertices)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps


# --------------------------------------------------------------------- DIMACS


def parse_dimacs(text: str | bytes, strict: bool = False) -> Graph:
    """Parse the DIMACS ``.col`` dialect.

    Duplicate ``e`` lines collapse to a single edge. A declared edge count
    that disagrees with the distinct edges read is a warning, or an error
    when ``strict`` is set.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    n = None
    declared_m = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: second 'p' line")
            if len(parts) != 4:
                raise DimacsError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: non-integer in 'p' line") from exc
            if n < 0 or declared_m < 0:
                raise DimacsError(f"line {lineno}: negative size in 'p' line")
        elif tag == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: 'e' line before 'p' line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: non-integer vertex id") from exc
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: vertex index out of range [1, {n}]")
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop at vertex {u}")
            u, v = u - 1, v - 1
            edges.add((u, v) if u < v else (v, u))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise DimacsError("missing 'p edge <n> <m>' line")
    if declared_m != len(edges):
        msg = f"declared {declared_m} edges but read {len(edges)} distinct edges"
        if strict:
            raise DimacsError(msg)
        warnings.warn(msg, stacklevel=2)
    return Graph.from_edges(n, edges)


def read_dimacs(path, strict: bool = False) -> Graph:
    with open(path, "rb") as f:
        return parse_dimacs(f.read(), strict=strict)


def write_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- generators


def generate(kind: str, n: int = 0, p: float = 0.5, seed: int = 0, m: int | None = None) -> Graph:
    """Build a graph from a named family.

    ``path``, ``cycle``, ``complete`` and ``gnp`` take ``n``; ``gnp`` also
    takes ``p`` and ``seed``. ``bipartite`` is K_{n,m} and ``petersen``
    ignores the size arguments.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        if n < 3:
            raise ValueError("a simple cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "gnp":
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"edge probability must lie in [0, 1], got {p}")
        rng = random.Random(seed)
        return Graph.from_edges(
            n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        )
    if kind == "bipartite":
        m = n if m is None else m
        return Graph.from_edges(n + m, [(i, n + j) for i in range(n) for j in range(m)])
    if kind == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph.from_edges(10, outer + spokes + inner)
    raise ValueError(f"unknown graph family {kind!r}")


# ---------------------------------------------------------------- predicates


class ResidualView:
    """G[V \\ removed] without copying the host graph."""

    __slots__ = ("graph", "removed", "alive")

    def __init__(self, graph: Graph, removed: int):
        self.graph = graph
        self.removed = removed
        self.alive = graph.full_mask & ~removed

    def vertices(self) -> list[int]:
        return list(vertices_of(self.alive))

    def __len__(self) -> int:
        return self.alive.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.alive >> v & 1)

    def degree(self, v: int) -> int:
        return (self.graph.adj_mask[v] & self.alive).bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(vertices_of(self.graph.adj_mask[v] & self.alive))

    def max_degree_vertex(self) -> tuple[int, int]:
        """(Δ, lowest-index vertex attaining it); (0, -1) on the empty view."""
        best, arg = -1, -1
        adj = self.graph.adj_mask
        alive = self.alive
        for v in vertices_of(alive):
            d = (adj[v] & alive).bit_count()
            if d > best:
                best, arg = d, v
        return (max(best, 0), arg)

    def max_degree(self) -> int:
        return self.max_degree_vertex()[0]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.graph.sorted_edges() if u in self and v in self]

    def materialize(self) -> Graph:
        """Copy onto the host's vertex labels (removed vertices stay isolated)."""
        return Graph.from_edges(self.graph.n, self.edges())


def _as_mask(g: Graph, x) -> int:
    if isinstance(x, int):
        return x
    return mask_of(x)


def residual(g: Graph, removed) -> tuple[ResidualView, int]:
    """View of G minus ``removed`` and its maximum degree (0 when empty)."""
    view = ResidualView(g, _as_mask(g, removed))
    return view, view.max_degree()


def is_independent_set(g: Graph, x) -> bool:
    mask = _as_mask(g, x)
    return all(not (g.adj_mask[v] & mask) for v in vertices_of(mask))


def is_vertex_cover(g: Graph, x) -> bool:
    return is_independent_set(g, g.full_mask & ~_as_mask(g, x))


def degree_histogram(g: Graph) -> dict[int, int]:
    return dict(sorted(Counter(len(a) for a in g.adj).items()))
