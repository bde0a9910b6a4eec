import numpy as np
import pytest

from stabame.ame import verify_ame_symbolic
from stabame.errors import BudgetExceededError
from stabame.search import (
    GraphState,
    format_certificate,
    format_search_report,
    format_witness_line,
    graph_from_index,
    graph_from_upper,
    graph_to_group,
    num_edge_slots,
    parse_witness_line,
    search_ame,
)
from stabame.stabgroup import validate
from stabame.statevec import state_from_group, verify_ame_dense


def test_graph_state_validation():
    with pytest.raises(ValueError):
        GraphState(2, 2, ((0, 1), (0, 0)))  # asymmetric
    with pytest.raises(ValueError):
        GraphState(2, 2, ((1, 0), (0, 0)))  # diagonal
    with pytest.raises(ValueError):
        GraphState(2, 2, ((0, 2), (2, 0)))  # entry out of range


def test_graph_to_group_empty_graph_stabilizes_plus_states():
    g = graph_to_group(graph_from_upper(2, 2, [0]))
    assert validate(g).stabilizes_unique_state
    st = state_from_group(g)
    assert np.abs(st.amplitudes - 0.5).max() < 1e-9  # |+>|+>


def test_graph_single_edge_is_ame_2_2():
    g = graph_to_group(graph_from_upper(2, 2, [1]))
    assert verify_ame_symbolic(g).is_ame
    assert verify_ame_dense(state_from_group(g)).is_ame


def test_graph_complete_qutrit_triangle_is_ame_3_3():
    g = graph_to_group(graph_from_upper(3, 3, [1, 1, 1]))
    assert verify_ame_symbolic(g).is_ame


def test_graph_groups_always_valid_random():
    rng = np.random.default_rng(79)
    for d in (2, 3, 4, 6, 12):
        for n in (2, 3, 4):
            for _ in range(3):
                entries = [int(v) for v in rng.integers(0, d, num_edge_slots(n))]
                g = graph_to_group(graph_from_upper(d, n, entries))
                report = validate(g)
                assert report.stabilizes_unique_state
                assert report.order == d**n


def test_candidate_indexing_is_lexicographic():
    assert graph_from_index(2, 3, 0).upper_triangle() == (0, 0, 0)
    assert graph_from_index(2, 3, 1).upper_triangle() == (0, 0, 1)
    assert graph_from_index(2, 3, 4).upper_triangle() == (1, 0, 0)
    assert graph_from_index(3, 3, 26).upper_triangle() == (2, 2, 2)
    with pytest.raises(ValueError):
        graph_from_index(2, 3, 8)


def test_search_4_2_exhaustive_empty():
    result = search_ame(4, 2, mode="exhaustive")
    assert result.found == ()
    assert result.searched == 64
    assert result.exhausted


def test_search_4_3_first_witness():
    result = search_ame(4, 3, mode="first")
    assert len(result.found) == 1
    assert not result.exhausted
    group = graph_to_group(result.found[0])
    assert verify_ame_symbolic(group).is_ame
    dense = verify_ame_dense(state_from_group(group))
    assert dense.is_ame and dense.worst_deviation < 1e-9


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_search_pairs_have_witnesses(d):
    result = search_ame(2, d, mode="exhaustive")
    assert result.exhausted and result.searched == d
    assert len(result.found) >= 1
    for graph in result.found:
        g = graph_to_group(graph)
        assert verify_ame_symbolic(g).is_ame
        assert verify_ame_dense(state_from_group(g)).is_ame


def test_search_determinism():
    a = search_ame(3, 3, mode="exhaustive")
    b = search_ame(3, 3, mode="exhaustive")
    assert a == b
    assert a.searched == 27


def test_search_sharding_composes():
    full = search_ame(3, 3, mode="exhaustive")
    parts = [search_ame(3, 3, shard=(0, 10)), search_ame(3, 3, shard=(10, 27))]
    merged = tuple(g for part in parts for g in part.found)
    assert merged == full.found
    assert sum(p.searched for p in parts) == full.searched
    assert not parts[0].exhausted
    with pytest.raises(ValueError):
        search_ame(3, 3, shard=(5, 100))


def test_search_budget():
    with pytest.raises(BudgetExceededError):
        search_ame(4, 3, mode="exhaustive", search_budget=100)
    # first-witness mode is not budget-gated
    assert search_ame(4, 3, mode="first", search_budget=100).found


def test_search_rejects_unknown_mode():
    with pytest.raises(ValueError):
        search_ame(2, 2, mode="everything")


def test_witness_line_roundtrip():
    graph = graph_from_upper(3, 4, [0, 1, 1, 1, 2, 0])
    line = format_witness_line(graph)
    assert line == "4 3 : 0 1 1 1 2 0"
    assert parse_witness_line(line) == graph
    with pytest.raises(ValueError):
        parse_witness_line("nonsense")


def test_certificate_and_report_format():
    assert (
        format_certificate(4, 2, 64, 0) == "EXHAUSTED n=4 d=2 searched=64 witnesses=0"
    )
    result = search_ame(4, 2, mode="exhaustive")
    report = format_search_report(4, 2, result)
    assert report == (
        "EXHAUSTED n=4 d=2 searched=64 witnesses=0\nNO-STABILIZER-AME n=4 d=2\n"
    )
    partial = search_ame(3, 2, shard=(0, 4))
    text = format_search_report(3, 2, partial)
    assert text.splitlines()[-1].startswith("PARTIAL n=3 d=2 searched=4")


def test_claim_strength_follows_completeness_flag():
    from stabame.search import graph_search_is_complete

    # prime d: graph states cover all stabilizer states (up to local Clifford)
    assert graph_search_is_complete(2) and graph_search_is_complete(5)
    # prime powers with e >= 2 and composites: not established, stay cautious
    assert not graph_search_is_complete(4)
    assert not graph_search_is_complete(6)

    result = search_ame(4, 2, mode="exhaustive")
    assert "NO-STABILIZER-AME" in format_search_report(4, 2, result)
    assert "NO-GRAPH-STATE-AME" in format_search_report(4, 2, result, complete=False)
    # a non-empty exhaustion never carries a claim line
    pair = search_ame(2, 2, mode="exhaustive")
    assert "NO-" not in format_search_report(2, 2, pair)
