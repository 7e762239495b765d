from simtri.catalog import catalog_entry
from simtri.constructions import CACHE_MAGIC, HSequence
from simtri.hypergraph import ThreeGraph
from simtri.reproduce import CHECKS, ReproContext, format_table, run_all, run_check


def test_row_keys_unique():
    keys = [k for k, _, _ in CHECKS]
    assert len(keys) == len(set(keys))
    assert {k.rstrip("abcdefgh") for k in keys} == {str(i) for i in range(1, 11)}


def test_mutated_l7_fails_forbid_row():
    L7 = catalog_entry("L7").graph
    assert run_check("1b").passed
    dropped = ThreeGraph(L7.n, L7.edges - {max(L7.edges)})
    assert not run_check("1b", ReproContext(overrides={"L7": dropped})).passed
    # 678 -> 128 keeps the graph dense but makes it realizable
    moved = dropped.add_edges([(0, 1, 7)])
    assert run_check("1a", ReproContext(overrides={"L7": moved})).passed
    assert not run_check("1b", ReproContext(overrides={"L7": moved})).passed


def test_realizable_replacement_fails_forbid_row():
    hexagon = ThreeGraph.from_one_indexed(6, [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (2, 4, 6)])
    assert not run_check("1f", ReproContext(overrides={"K4-": hexagon})).passed


def test_poisoned_cache_fails_hseq_row(tmp_path):
    clean = HSequence()
    clean.value(27)
    path = tmp_path / "h.txt"
    clean.save(path)
    lines = path.read_text().splitlines()
    lines = [("27 820 9 9 9" if line.startswith("27 ") else line) for line in lines]
    path.write_text("\n".join(lines) + "\n")
    assert lines[0] == CACHE_MAGIC
    assert run_check("2a", ReproContext(hseq=HSequence.load(tmp_path / "h.txt"))).passed is False
    assert run_check("2a", ReproContext(hseq=HSequence.load(tmp_path / "missing.txt"))).passed


def test_crashing_row_is_reported_not_raised():
    ctx = ReproContext(overrides={"L10": ThreeGraph(13, frozenset())})
    res = run_check("1e", ctx)
    assert not res.passed


def test_table_format():
    results = run_all(keys={"6b", "6c"})
    table = format_table(results)
    assert table.splitlines()[-1] == "2/2 checks passed"
    assert table.startswith("[PASS] 6b")
