from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import three_graphs
from simtri.catalog import (
    MAX_CATALOG_VERTICES,
    DenseCertificate,
    brute_force_dense,
    catalog,
    catalog_entry,
    certificate_for_ordering,
    check_certificate,
    find_dense_ordering,
    format_certificate,
)
from simtri.hypergraph import ThreeGraph

NAMES = ["K4-", "C5-", "C5+", "L2", "L3", "L4", "L5", "L6", "P7-", "L7", "L8", "L9", "L10"]


def one(*edges):
    return tuple(tuple(v - 1 for v in e) for e in edges)


def test_catalog_names_and_order():
    assert [e.name for e in catalog()] == NAMES


def test_k4_minus_entry():
    assert catalog_entry("K4-").graph == ThreeGraph.from_one_indexed(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4)])


def test_l10_entry():
    G = catalog_entry("L10").graph
    assert G.n == 12 and G.num_edges == 11
    assert max(G.edges) == (9, 10, 11)


def test_p7_minus_entry():
    G = catalog_entry("P7-").graph
    assert G.n == 7 and G.num_edges == 6


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog_entry("L11")


def test_catalog_bounds():
    for e in catalog():
        assert e.graph.n <= MAX_CATALOG_VERTICES
        assert len(e.graph.sorted_edges()) == e.graph.num_edges


def test_verifiable_flags():
    assert {e.name for e in catalog() if not e.verifiable} == {"P7-"}


def test_k4_minus_certificate_accepted():
    H = catalog_entry("K4-").graph
    cert = DenseCertificate((0, 1, 2, 3), one((1, 2, 3)), one((1, 2, 4), (1, 3, 4)))
    assert check_certificate(H, cert)


def test_reversed_k4_minus_ordering_rejected():
    H = catalog_entry("K4-").graph
    cert = DenseCertificate((3, 2, 1, 0), one((2, 3, 4)), one((1, 2, 4), (1, 3, 4)))
    assert not check_certificate(H, cert)


def test_single_edge_has_no_certificate():
    H = ThreeGraph.from_edges(3, [(0, 1, 2)])
    for perm in permutations(range(3)):
        assert not check_certificate(H, DenseCertificate(perm, (), ((0, 1, 2), (0, 1, 2))))
    assert find_dense_ordering(H) is None


def test_malformed_permutation_raises():
    H = catalog_entry("K4-").graph
    with pytest.raises(ValueError):
        check_certificate(H, DenseCertificate((0, 0, 1, 2), one((1, 2, 3)), one((1, 2, 4), (1, 3, 4))))


@pytest.mark.parametrize("name", ["L7", "L8", "L9", "L10"])
def test_extended_members_dense(name):
    H = catalog_entry(name).graph
    cert = find_dense_ordering(H)
    assert cert is not None and check_certificate(H, cert)


def test_c5_plus_ordering_ending_at_5():
    H = catalog_entry("C5+").graph
    cert = find_dense_ordering(H, final=4)
    assert cert is not None and cert.ordering[-1] == 4
    assert check_certificate(H, certificate_for_ordering(H, [0, 1, 5, 2, 3, 4]))


def test_p7_minus_not_dense():
    H = catalog_entry("P7-").graph
    assert find_dense_ordering(H) is None
    assert not brute_force_dense(H)


def test_catalog_agrees_with_brute_force():
    for e in catalog():
        if e.graph.n <= 8:
            assert (find_dense_ordering(e.graph) is not None) == brute_force_dense(e.graph), e.name


def test_certificate_for_bad_ordering():
    H = catalog_entry("K4-").graph
    with pytest.raises(ValueError):
        certificate_for_ordering(H, [3, 2, 1, 0])


def test_certificate_text():
    text = format_certificate(find_dense_ordering(catalog_entry("K4-").graph))
    assert text.splitlines()[0].startswith("ordering: ")
    assert text.splitlines()[1:] == ["e_3: 1 3 4", "e_4: 1 2 3", "e_4': 1 2 4"]


@settings(max_examples=200, deadline=None)
@given(three_graphs(min_n=4, max_n=7))
def test_dense_search_matches_brute_force(H):
    cert = find_dense_ordering(H)
    assert (cert is not None) == brute_force_dense(H)
    if cert is not None:
        assert check_certificate(H, cert)


@st.composite
def dense_graphs(draw):
    """Random graphs built to be dense: each new vertex closes one edge, the last closes two."""
    r = draw(st.integers(4, 8))
    edges = []
    for v in range(2, r - 1):
        a, b = draw(st.lists(st.integers(0, v - 1), min_size=2, max_size=2, unique=True))
        edges.append((a, b, v))
    last = r - 1
    pairs = st.lists(st.integers(0, r - 2), min_size=2, max_size=2, unique=True).map(tuple)
    p1 = draw(pairs)
    p2 = draw(pairs.filter(lambda p: set(p) != set(p1)))
    edges += [p1 + (last,), p2 + (last,)]
    return ThreeGraph.from_edges(r, edges)


@settings(max_examples=200, deadline=None)
@given(dense_graphs(), st.permutations(range(8)))
def test_dense_round_trip_under_relabelling(G, perm):
    perm = [p for p in perm if p < G.n]
    cert = find_dense_ordering(G)
    assert cert is not None
    H = G.relabel(perm)
    assert check_certificate(H, cert.relabel(perm))
    assert find_dense_ordering(H) is not None
