import random

import pytest

from kmsgroups.coset_graph import (
    GraphTooLarge,
    build,
    check_distance_in_link,
    cycle_decomposition,
    edge_distance,
    girth,
    girth_report,
    link_roots,
    word_lengths,
)
from kmsgroups.rank2 import Rank2Element
from kmsgroups.rootsystem import Rank2Type
from kmsgroups.scalars import parse_field

from .oracles import line_graph_distances, networkx_girth

SMALL = [(t, f) for t in ("A1xA1", "A2", "B2", "G2") for f in ("F2", "F3", "F4", "F5") if not (t == "G2" and f == "F5")]


@pytest.mark.parametrize("t,f,n", [("A2", "F2", 8), ("G2", "F2", 64), ("B2", "F3", 81), ("A1xA1", "F7", 49)])
def test_edge_counts(t, f, n):
    assert build(t, parse_field(f)).n_edges == n


@pytest.mark.parametrize("t,f", SMALL)
def test_vertex_count_and_regularity(t, f):
    K = parse_field(f)
    G = build(t, K)
    q = len(list(K.elements()))
    assert G.n_vertices == 2 * q ** (Rank2Type(t).nroots - 1)
    assert G.degrees() == {q}


@pytest.mark.parametrize("t,f", SMALL)
def test_girth_matches_networkx(t, f):
    G = build(t, parse_field(f))
    assert girth(G) == networkx_girth(G)


@pytest.mark.parametrize("t,f", [("A2", "F3"), ("B2", "F2"), ("G2", "F2")])
def test_exhaustive_girth_agrees(t, f):
    G = build(t, parse_field(f))
    assert girth(G, exhaustive=True) == girth(G)


@pytest.mark.parametrize(
    "t,f,g",
    [
        ("A2", "F2", 8),
        ("A2", "F3", 6),
        ("A2", "F4", 6),
        ("B2", "F2", 8),
        ("B2", "F3", 8),
        ("G2", "F2", 16),
        ("G2", "F3", 12),
        ("A1xA1", "F2", 4),
        ("A1xA1", "F5", 4),
    ],
)
def test_girth_values(t, f, g):
    assert girth(build(t, parse_field(f))) == g


def test_cycle_decompositions():
    assert cycle_decomposition(build("A2", parse_field("F2"))) == [8]
    assert cycle_decomposition(build("G2", parse_field("F2"))) == [16] * 4
    # B2 over F2: the two root groups generate a dihedral group of order 8
    assert cycle_decomposition(build("B2", parse_field("F2"))) == [8, 8]
    with pytest.raises(ValueError):
        cycle_decomposition(build("A2", parse_field("F3")))


def test_too_large_is_rejected(monkeypatch):
    import kmsgroups.coset_graph as cg

    monkeypatch.setattr(cg, "MAX_EDGES", 50)
    with pytest.raises(GraphTooLarge):
        cg.build("G2", parse_field("F2"))


def test_forest_has_infinite_girth():
    from kmsgroups.coset_graph import CosetGraph

    G = CosetGraph(Rank2Type("A2"), None, [0], [(0, 1)], [("a", ()), ("b", ())], [[0], [0]])
    assert girth(G) == float("inf")


@pytest.mark.parametrize("t,f", [("A2", "F3"), ("B2", "F2"), ("G2", "F2"), ("A2", "F4")])
def test_edge_distance_is_line_graph_distance(t, f):
    G = build(t, parse_field(f))
    rng = random.Random(0)
    for s in rng.sample(range(G.n_edges), 3):
        dist = line_graph_distances(G, s)
        for k in range(G.n_edges):
            assert edge_distance(G, G.edges[k], G.edges[s]) == dist.get(k, float("inf"))


def test_edge_distance_basics():
    K = parse_field("F3")
    G = build("A2", K)
    g = G.edges[5]
    assert edge_distance(G, g, g) == 0
    assert edge_distance(G, g.times_letter((1, 0), K(1)), g) == 1


def test_word_lengths_cover_the_group():
    K = parse_field("F3")
    lengths = word_lengths("A2", K)
    assert len(lengths) == 27
    assert max(lengths.values()) == 4  # m + 1, attained by the link root group


def test_link_roots():
    assert link_roots("A2") == [(1, 1)]
    assert link_roots("B2") == [(1, 1), (2, 1)]
    assert link_roots("G2") == [(1, 1), (3, 1)]


@pytest.mark.parametrize(
    "t,f",
    [("A2", f) for f in ("F2", "F3", "F4", "F5")]
    + [("B2", f) for f in ("F2", "F3", "F4")]
    + [("G2", "F2"), ("G2", "F3")],
)
def test_distance_in_link(t, f):
    assert check_distance_in_link(t, parse_field(f))


def test_distance_in_link_needs_m_at_least_three():
    with pytest.raises(ValueError):
        check_distance_in_link("A1xA1", parse_field("F2"))


def test_distance_check_detects_close_pairs(monkeypatch):
    """Replacing the link root by a simple root makes two elements adjacent."""
    import kmsgroups.coset_graph as cg

    monkeypatch.setattr(cg, "link_roots", lambda t: [(1, 0)])
    assert not cg.check_distance_in_link("A2", parse_field("F3"))


def test_edge_list_and_report():
    G = build("A2", parse_field("F2"))
    lines = G.edge_list().splitlines()
    legend = [ln for ln in lines if ln.startswith("#")]
    edges = [ln for ln in lines if not ln.startswith("#")]
    assert len(legend) == G.n_vertices and len(edges) == G.n_edges
    assert all(len(ln.split()) == 2 for ln in edges)
    report = girth_report([("A2", "F2", 8, [8]), ("A2", "F3", 6, None)]).splitlines()
    assert report[0] == "type\tfield\tgirth\tcycles"
    assert report[2] == "A2\tF3\t6\t-"


def test_edges_are_group_elements():
    K = parse_field("F2")
    G = build("B2", K)
    assert len({g.coords for g in G.edges}) == G.n_edges
    assert all(isinstance(g, Rank2Element) for g in G.edges)
