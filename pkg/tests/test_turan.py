import pytest

from simtri.catalog import catalog_entry, family
from simtri.constructions import build_S, h_value
from simtri.hypergraph import ThreeGraph, all_triples, is_family_free
from simtri.turan import (
    CHECKPOINT_MAGIC,
    SearchRefused,
    SearchResult,
    brute_force_turan,
    exact_turan,
    verify_witness,
)

F = family()
K4M = [catalog_entry("K4-").graph]
K4M_L2 = K4M + [catalog_entry("L2").graph]
FAMILIES = {"F": F, "K4-": K4M, "K4-,L2": K4M_L2}

# exhaustive-oracle values, frozen
ORACLE = {
    ("F", 3): 1, ("F", 4): 2, ("F", 5): 4, ("F", 6): 8,
    ("K4-", 3): 1, ("K4-", 4): 2, ("K4-", 5): 5, ("K4-", 6): 10,
    ("K4-,L2", 3): 1, ("K4-,L2", 4): 2, ("K4-,L2", 5): 5, ("K4-,L2", 6): 10,
}


@pytest.mark.parametrize("fam, n", sorted(ORACLE))
def test_branch_and_bound_matches_frozen_oracle(fam, n):
    res = exact_turan(n, FAMILIES[fam], fam)
    assert res.max_edges == ORACLE[fam, n]
    assert verify_witness(res, FAMILIES[fam])


@pytest.mark.parametrize("fam, n", [("F", 4), ("F", 5), ("K4-", 5), ("K4-,L2", 5)])
def test_oracle_recomputes(fam, n):
    assert brute_force_turan(n, FAMILIES[fam]) == ORACLE[fam, n]


def test_oracle_n6_full_family():
    assert brute_force_turan(6, F) == ORACLE["F", 6]


def test_n7():
    res = exact_turan(7, F, "F")
    assert res.max_edges == 13 == h_value(7)
    assert verify_witness(res, F)


def test_tiny_n():
    for n in range(3):
        assert exact_turan(n, F).max_edges == 0


def test_lower_bound_by_S():
    for n in range(3, 8):
        assert exact_turan(n, F).max_edges >= build_S(n).num_edges


def test_monotone_in_n_and_family():
    for n in range(3, 7):
        assert exact_turan(n, F).max_edges <= exact_turan(n + 1, F).max_edges
        assert exact_turan(n, K4M).max_edges >= exact_turan(n, K4M_L2).max_edges >= exact_turan(n, F).max_edges


def test_deterministic():
    a = exact_turan(6, F, "F")
    b = exact_turan(6, F, "F")
    assert a.witness == b.witness and a.nodes_expanded == b.nodes_expanded


def test_guard():
    with pytest.raises(SearchRefused):
        exact_turan(10, F)
    with pytest.raises(ValueError):
        exact_turan(5, [])


def test_witness_with_extra_edge_fails():
    res = exact_turan(6, K4M, "K4-")
    for t in all_triples(6):
        if t in res.witness.edges:
            continue
        bad = SearchResult(6, "K4-", res.max_edges + 1, res.witness.add_edges([t]))
        assert not verify_witness(bad, K4M)


def test_S6_witness_consistent():
    S6 = build_S(6)
    claim = SearchResult(6, "F", 8, S6)
    assert verify_witness(claim, F)
    assert exact_turan(6, F).max_edges == 8


def test_wrong_count_fails():
    res = exact_turan(5, F)
    assert not verify_witness(SearchResult(5, "F", res.max_edges + 1, res.witness), F)


def test_checkpoint_written_and_resumed(tmp_path):
    path = tmp_path / "ck.txt"
    res = exact_turan(6, F, "F", checkpoint=path, checkpoint_every=50)
    text = path.read_text().splitlines()
    assert text[0] == CHECKPOINT_MAGIC
    assert text[1:3] == ["n 6", "family F"]
    again = exact_turan(6, F, "F", checkpoint=path, checkpoint_every=50)
    assert again.max_edges == res.max_edges
    assert verify_witness(again, F)


def test_foreign_or_corrupt_checkpoint_ignored(tmp_path, caplog):
    path = tmp_path / "ck.txt"
    exact_turan(5, F, "F", checkpoint=path, checkpoint_every=5)
    assert exact_turan(6, F, "F", checkpoint=path).max_edges == 8
    path.write_text("not a checkpoint\n")
    assert exact_turan(6, F, "F", checkpoint=path).max_edges == 8
    assert "ignoring checkpoint" in caplog.text


def test_custom_family_from_graph():
    # forbidding a single edge leaves nothing
    edge = ThreeGraph.from_edges(3, [(0, 1, 2)])
    assert exact_turan(6, [edge]).max_edges == 0
    res = exact_turan(6, K4M)
    assert is_family_free(res.witness, K4M)
