"""Hypothesis strategies shared across the suite."""
from itertools import combinations

from hypothesis import strategies as st

from pwcolor.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def graphs_with_subset(draw, min_n=1, max_n=8):
    g = draw(graphs(min_n=min_n, max_n=max_n))
    mask = draw(st.integers(0, (1 << g.n) - 1))
    return g, mask
