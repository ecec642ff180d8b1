import pytest

from project.disc_solver import PlanStats
from project.errors import FormatError
from project.formats import (
    BENCH_HEADER,
    SUMMARY_HEADER,
    parse_configuration,
    parse_graph,
    parse_instance,
    parse_plan,
    write_bench_csv,
    write_configuration,
    write_graph,
    write_instance,
    write_plan,
    write_summary_csv,
)
from project.instance_lab import BenchRecord, BenchSummary
from project.plan_engine import Configuration, Plan

ONE_PEBBLE_RING = """\
# directed 5-cycle
n 5
e 0 1
e 1 2
e 2 3
e 3 4
e 4 0
p 0 1
t 0 4
"""


def test_parse_graph_ignores_comments_and_blank_lines():
    d = parse_graph("n 3  # three vertices\n\ne 0 1\ne 1 2\n  e 2 0\n")
    assert d.vertex_count == 3
    assert d.edges == frozenset({(0, 1), (1, 2), (2, 0)})


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("n 3\nx 0 1\n", 2, "unknown directive"),
        ("n 3\ne 0\n", 2, "takes 2 integers"),
        ("n 3\ne 0 one\n", 2, "non-integer"),
        ("n 3\ne 0 3\n", 2, "outside 0..2"),
        ("e 0 1\nn 3\n", 1, "must come before"),
        ("n 3\nn 4\n", 2, "given twice"),
        ("n 3\ne 1 1\n", 2, "self-loop"),
    ],
)
def test_parse_graph_reports_the_line(text, line, fragment):
    with pytest.raises(FormatError) as excinfo:
        parse_graph(text)
    assert excinfo.value.line == line
    assert fragment in str(excinfo.value)
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_parse_graph_needs_a_vertex_count():
    with pytest.raises(FormatError) as excinfo:
        parse_graph("# nothing\n")
    assert excinfo.value.line is None


def test_plan_lines_only_in_plan_files():
    assert parse_plan("m 0 1\nm 1 2\n# moves=2\n") == Plan.of([(0, 1), (1, 2)])
    with pytest.raises(FormatError):
        parse_plan("n 3\nm 0 1\n")


def test_parse_configuration_rejects_shared_vertices():
    assert parse_configuration("p 0 2\nh 0 1\n") == Configuration(pebbles={0: 2}, holes={0: 1})
    with pytest.raises(FormatError) as excinfo:
        parse_configuration("p 0 2\nh 0 2\n")
    assert excinfo.value.line == 2
    with pytest.raises(FormatError):
        parse_configuration("p 0 2\np 0 3\n")


def test_parse_instance_fills_holes(one_pebble_ring):
    inst = parse_instance(ONE_PEBBLE_RING)
    assert inst.start.pebbles == {0: 1}
    assert inst.start.holes == {0: 0, 1: 2, 2: 3, 3: 4}
    assert inst.targets == {0: 4}
    assert inst.digraph.edges == one_pebble_ring.digraph.edges


@pytest.mark.parametrize(
    "extra, fragment",
    [
        ("p 1 2\n", "no target"),
        ("t 3 2\n", "unknown pebbles"),
        ("t 0 3\n", "two targets"),
        ("p 1 2\nt 1 4\n", "invalid instance"),
    ],
)
def test_parse_instance_rejects_inconsistent_pieces(extra, fragment):
    with pytest.raises(FormatError) as excinfo:
        parse_instance(ONE_PEBBLE_RING + extra)
    assert fragment in str(excinfo.value)


def test_parse_instance_with_explicit_holes_must_cover_the_graph():
    text = ONE_PEBBLE_RING + "h 0 0\nh 1 2\n"
    with pytest.raises(FormatError):
        parse_instance(text)


def test_written_documents_parse_back(component_chain, one_pebble_ring):
    assert parse_graph(write_graph(component_chain)).edges == component_chain.edges
    inst = parse_instance(write_instance(one_pebble_ring))
    assert inst.start == one_pebble_ring.start
    assert inst.targets == one_pebble_ring.targets
    a = Configuration(pebbles={0: 3, 1: 0}, holes={0: 1, 1: 2})
    assert parse_configuration(write_configuration(a)) == a


def test_write_plan_trailer():
    plan = Plan.of([(1, 2), (2, 3), (3, 4)])
    text = write_plan(plan, PlanStats(moves=3, pebble_moves=3))
    assert text.splitlines() == ["m 1 2", "m 2 3", "m 3 4", "# moves=3", "# pebble_moves=3"]
    assert write_plan(Plan()) == "# moves=0\n"
    assert parse_plan(text) == plan


def test_bench_tables():
    record = BenchRecord(node_count=20, agent_count=10, seed=7, move_count=42, runtime_ms=1.23456, feasible=True)
    rows = write_bench_csv([record]).splitlines()
    assert rows[0] == ",".join(BENCH_HEADER)
    assert rows[1] == "20,10,7,42,1.235,1,"
    failed = record.model_copy(update={"move_count": 0, "feasible": False, "error": "tree solver failed, twice"})
    assert write_bench_csv([failed]).splitlines()[1] == '20,10,7,0,1.235,0,"tree solver failed, twice"'
    summary = BenchSummary(
        node_count=20, agent_count=10, runs=3, median_moves=42.0, median_ms=1.5, median_check_ms=0.1
    )
    rows = write_summary_csv([summary]).splitlines()
    assert rows == [",".join(SUMMARY_HEADER), "20,10,42,1.500"]
