import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwcolor.graph import (
    DimacsError,
    Graph,
    degree_histogram,
    generate,
    is_independent_set,
    is_vertex_cover,
    mask_of,
    parse_dimacs,
    residual,
    vertices_of,
    write_dimacs,
)

from strategies import graphs, graphs_with_subset


@given(graphs())
def test_degree_sum_is_twice_edges(g):
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


@given(graphs_with_subset())
def test_residual_degrees_match_induced_subgraph(pair):
    g, removed = pair
    view, delta = residual(g, removed)
    alive = [v for v in range(g.n) if not removed >> v & 1]
    sub, labels = g.induced(alive)
    assert sorted(view.degree(v) for v in alive) == sorted(sub.degree(i) for i in range(sub.n))
    assert delta == (sub.max_degree() if sub.n else 0)


@given(graphs_with_subset())
def test_cover_complement_is_independent(pair):
    g, x = pair
    assert is_vertex_cover(g, x) == is_independent_set(g, g.full_mask & ~x)


@given(graphs())
def test_dimacs_round_trip(g):
    h = parse_dimacs(write_dimacs(g, comment="round trip"))
    assert h.n == g.n and h.sorted_edges() == g.sorted_edges()


@given(st.sets(st.integers(0, 60)))
def test_mask_round_trip(vs):
    assert set(vertices_of(mask_of(vs))) == vs


def test_max_degree_vertex_lowest_index():
    g = Graph.from_edges(5, [(1, 2), (3, 4), (1, 0), (3, 0)])
    view, delta = residual(g, 0)
    assert (delta, view.max_degree_vertex()[1]) == (2, 0)
    view, delta = residual(g, mask_of([0]))
    assert (delta, view.max_degree_vertex()[1]) == (1, 1)


def test_empty_residual():
    g = generate("path", 3)
    view, delta = residual(g, g.full_mask)
    assert delta == 0 and view.max_degree_vertex() == (0, -1) and len(view) == 0


def test_parse_comments_and_duplicates():
    g = parse_dimacs("c hello\np edge 3 2\ne 1 2\ne 2 1\ne 2 3\n")
    assert g.n == 3 and g.sorted_edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\n",
        "p edge 3 1\ne 1 4\n",
        "p edge 3 1\ne 2 2\n",
        "p edge 3 1\ne 1\n",
        "p edge 3 1\nx 1 2\n",
        "p edge two 1\n",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


def test_declared_edge_count_mismatch():
    text = "p edge 3 5\ne 1 2\n"
    with pytest.warns(UserWarning):
        g = parse_dimacs(text)
    assert g.m == 1
    with pytest.raises(DimacsError):
        parse_dimacs(text, strict=True)


def test_generators():
    assert generate("path", 4).sorted_edges() == [(0, 1), (1, 2), (2, 3)]
    assert generate("cycle", 5).m == 5
    assert generate("complete", 5).m == 10
    assert generate("bipartite", 2, m=3).m == 6
    pet = generate("petersen")
    assert pet.n == 10 and pet.m == 15 and degree_histogram(pet) == {3: 10}
    assert generate("path", 0).n == 0


def test_gnp_is_seeded():
    a = generate("gnp", 12, p=0.5, seed=7)
    b = generate("gnp", 12, p=0.5, seed=7)
    assert a.sorted_edges() == b.sorted_edges()
    assert write_dimacs(a) == write_dimacs(b)


@pytest.mark.parametrize("kind,kw", [("cycle", dict(n=2)), ("gnp", dict(n=3, p=1.5)), ("hypercube", dict(n=3))])
def test_generator_errors(kind, kw):
    with pytest.raises(ValueError):
        generate(kind, **kw)


def test_self_loop_rejected_in_constructor():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])
