from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import three_graphs
from simtri.catalog import catalog_entry, family
from simtri.constructions import build_S
from simtri.hypergraph import (
    FormatError,
    ThreeGraph,
    all_triples,
    clone_vertex,
    contains_subgraph,
    find_embedding,
    format_hypergraph,
    is_family_free,
    link,
    neighborhood,
    parse_hypergraph,
    read_hypergraph,
    triple_rank,
    write_hypergraph,
)
from simtri.reproduce import brute_contains

K4M = ThreeGraph.from_edges(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
S9 = build_S(9)
GROUPS = [set(range(0, 3)), set(range(3, 6)), set(range(6, 9))]


def test_edges_are_canonicalized():
    G = ThreeGraph.from_edges(4, [(2, 1, 0), (0, 1, 2), (3, 1, 0)])
    assert G.edges == {(0, 1, 2), (0, 1, 3)}
    assert (1, 0, 2) in G


@pytest.mark.parametrize("edges", [[(0, 1, 1)], [(0, 1, 5)], [(0, 1)], [(-1, 0, 1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(ValueError):
        ThreeGraph.from_edges(4, edges)


def test_triple_rank_is_lexicographic():
    n = 7
    assert [triple_rank(t, n) for t in all_triples(n)] == list(range(35))


def test_neighborhood_single_edge():
    G = ThreeGraph.from_edges(3, [(0, 1, 2)])
    assert neighborhood(G, 0, 1) == {2}


def test_neighborhood_in_S9_is_third_group():
    for a, b in [(0, 3), (1, 7), (5, 8)]:
        third = next(g for g in GROUPS if a not in g and b not in g)
        assert neighborhood(S9, a, b) == third


def test_neighborhood_empty_graph():
    assert neighborhood(ThreeGraph(5), 1, 2) == frozenset()


def test_link_plain():
    G = ThreeGraph.from_edges(4, [(0, 1, 2), (0, 1, 3)])
    assert link(G, 0).pairs == {(1, 2), (1, 3)}


def test_link_restricted_to_own_group():
    for v in range(9):
        own = next(g for g in GROUPS if v in g)
        pairs = link(S9, v, own).pairs
        assert len(pairs) <= 1
        assert pairs == {tuple(sorted(own - {v}))}


def test_link_bipartite_between_other_groups():
    L = link(S9, 0, GROUPS[1], GROUPS[2])
    assert len(L) == 9


def test_link_vertex_out_of_range():
    with pytest.raises(ValueError):
        link(S9, 9)


def test_contains_identity_plus_isolated():
    G = ThreeGraph(5, K4M.edges)
    assert contains_subgraph(G, K4M)
    phi = find_embedding(G, K4M)
    assert all(tuple(sorted(phi[x] for x in e)) in G.edges for e in K4M.edges)


def test_S9_has_no_k4_minus():
    assert not contains_subgraph(S9, K4M)
    assert not brute_contains(S9, K4M)


def test_edge_in_edgeless_graph():
    assert not contains_subgraph(ThreeGraph(6), ThreeGraph.from_edges(3, [(0, 1, 2)]))


def test_pattern_larger_than_host():
    assert not contains_subgraph(ThreeGraph.from_edges(3, [(0, 1, 2)]), K4M)


def test_family_freeness_examples():
    assert is_family_free(S9, family())
    assert not is_family_free(K4M, [K4M])
    assert is_family_free(ThreeGraph(8), family())


@settings(max_examples=150, deadline=None)
@given(three_graphs(max_n=7), three_graphs(min_n=3, max_n=5))
def test_containment_matches_exhaustive_maps(G, H):
    assert contains_subgraph(G, H) == brute_contains(G, H)


@settings(max_examples=100, deadline=None)
@given(three_graphs(min_n=3, max_n=7), st.data())
def test_containment_is_monotone(G, data):
    H = catalog_entry(data.draw(st.sampled_from(["K4-", "C5-", "C5+", "L2", "L5"]))).graph
    extra = data.draw(st.lists(st.sampled_from(all_triples(G.n)), max_size=5))
    if contains_subgraph(G, H):
        assert contains_subgraph(G.add_edges(extra), H)


@settings(max_examples=100, deadline=None)
@given(three_graphs(max_n=8))
def test_link_sizes_sum_to_three_times_edges(G):
    assert sum(len(link(G, v)) for v in range(G.n)) == 3 * G.num_edges


def test_clone_single_edge_becomes_edgeless():
    G = ThreeGraph.from_edges(3, [(0, 1, 2)])
    H = clone_vertex(G, 0, 1)
    assert H.n == 3 and H.num_edges == 0


def test_clone_isolated_vertex_gains_link():
    G = ThreeGraph.from_one_indexed(5, [(1, 2, 3), (1, 2, 4)])
    H = clone_vertex(G, 4, 0)  # vertex 5 is isolated, copy vertex 1
    assert H.num_edges == G.num_edges + len(link(G, 0))
    assert H.edges == G.edges | {(1, 2, 4), (1, 3, 4)}


def test_clone_rejects_bad_arguments():
    with pytest.raises(ValueError):
        clone_vertex(S9, 2, 2)
    with pytest.raises(ValueError):
        clone_vertex(S9, 0, 9)


@settings(max_examples=100, deadline=None)
@given(three_graphs(min_n=2, max_n=8), st.data())
def test_clone_keeps_vertex_count_and_w_v_separate(G, data):
    u, v = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=2, unique=True))
    H = clone_vertex(G, u, v)
    assert H.n == G.n
    assert not any(u in e and v in e for e in H.edges)
    assert link(H, u).pairs == {p for p in link(G, v).pairs if u not in p}


def test_clone_preserves_freeness_on_S_blocks():
    fam = family()
    G = build_S(9)
    for u, v in combinations(range(9), 2):
        assert is_family_free(clone_vertex(G, u, v), fam)


def test_format_round_trip(tmp_path):
    text = format_hypergraph(S9)
    assert text.splitlines()[0] == "9 30"
    assert text.splitlines()[1] == "1 2 3"
    assert parse_hypergraph(text) == S9
    write_hypergraph(S9, tmp_path / "s9.hg")
    assert read_hypergraph(tmp_path / "s9.hg") == S9


@settings(max_examples=100, deadline=None)
@given(three_graphs(max_n=8))
def test_format_round_trip_random(G):
    assert parse_hypergraph(format_hypergraph(G)) == G


def test_comments_and_blank_lines(data_dir):
    assert read_hypergraph(data_dir / "k4minus.hg") == K4M


@pytest.mark.parametrize(
    "text, line",
    [
        ("4 1\n1 2 x\n", 2),
        ("4 1\n1 2\n", 2),
        ("4 1\n1 2 5\n", 2),
        ("4 2\n1 2 3\n", 1),
        ("four\n", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(FormatError) as exc:
        parse_hypergraph(text, "g.hg")
    assert exc.value.line == line
    assert f"g.hg:{line}:" in str(exc.value)


def test_bad_file_reports_line(data_dir):
    with pytest.raises(FormatError) as exc:
        read_hypergraph(data_dir / "bad_graph.hg")
    assert exc.value.line == 3
