import networkx as nx
import pytest
from pydantic import ValidationError

from project.errors import NotStronglyBiconnected, NotStronglyConnected, VertexNotInComponent
from project.graph_core import (
    ComponentKind,
    Digraph,
    Ear,
    EarDecomposition,
    classify_component,
    cycle_sequence,
    cycle_sequence_violation,
    decompose,
    ear_decomposition_violation,
    is_partially_bidirectional_cycle,
    is_strongly_connected,
    open_ear_decomposition,
    principal_cycle,
    underlying_graph,
)


def test_strong_connectivity(five_cycle):
    assert is_strongly_connected(five_cycle)
    broken = Digraph.from_edges(5, set(five_cycle.edges) - {(4, 0)})
    assert not is_strongly_connected(broken)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 2)]])
def test_bad_edges_are_rejected(edges):
    with pytest.raises(ValidationError):
        Digraph.from_edges(3, edges)


def test_underlying_graph_merges_directions():
    d = Digraph.from_edges(3, [(0, 1), (1, 0), (2, 1)])
    assert underlying_graph(d).edges == {(0, 1), (1, 2)}


def test_shortest_path_prefers_smaller_ids():
    d = Digraph.from_edges(4, [(0, 2), (0, 1), (1, 3), (2, 3), (3, 0)])
    assert d.shortest_path(0, 3) == (0, 1, 3)
    assert d.shortest_path(0, 3, avoid=[1]) == (0, 2, 3)
    assert d.shortest_path(3, 2, avoid=[0]) is None


def test_decompose_component_chain(component_chain):
    dec = decompose(component_chain)
    assert dec.articulation_points == {2, 4, 5, 10}
    assert [c.vertices for c in dec.components] == [(0, 1, 2, 3), (5, 6, 7, 8, 9, 10), (10, 11, 12)]
    assert [c.kind for c in dec.components] == [
        ComponentKind.PARTIALLY_BIDIRECTIONAL_CYCLE,
        ComponentKind.REGULAR_OED,
        ComponentKind.PARTIALLY_BIDIRECTIONAL_CYCLE,
    ]
    assert dec.corridors == [(2, 4, 5)]
    assert len(dec.components_of(10)) == 2
    assert dec.component_containing(6, 9).vertices == (5, 6, 7, 8, 9, 10)
    assert dec.component_containing(0, 6) is None


def test_decompose_requires_strong_connectivity():
    with pytest.raises(NotStronglyConnected):
        decompose(Digraph.from_edges(3, [(0, 1), (1, 2)]))


def test_partially_bidirectional_cycles(five_cycle, eared_cycle):
    assert is_partially_bidirectional_cycle(five_cycle)
    with_back_edges = Digraph.from_edges(5, set(five_cycle.edges) | {(1, 0), (3, 2)})
    assert is_partially_bidirectional_cycle(with_back_edges)
    assert not is_partially_bidirectional_cycle(eared_cycle)
    assert not is_partially_bidirectional_cycle(Digraph.from_edges(2, [(0, 1), (1, 0)]))


def test_principal_cycle_follows_edge_direction():
    forward = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0)])
    backward = Digraph.from_edges(3, [(0, 2), (2, 1), (1, 0), (0, 1)])
    assert principal_cycle(forward) == (0, 1, 2)
    assert principal_cycle(backward) == (0, 2, 1)


def test_classify_rejects_non_components(five_cycle):
    with pytest.raises(NotStronglyBiconnected):
        classify_component(five_cycle.subgraph([0, 1, 2]))
    with pytest.raises(NotStronglyBiconnected):
        classify_component(Digraph.from_edges(2, [(0, 1), (1, 0)]).subgraph([0, 1]))


def test_regular_ear_decomposition(eared_cycle):
    c = eared_cycle.subgraph(range(10))
    assert classify_component(c) is ComponentKind.REGULAR_OED
    ed = open_ear_decomposition(c)
    assert ed.is_regular
    assert len(ed.basic_cycle) >= 3
    assert ear_decomposition_violation(c, ed) is None


def test_cycle_ear_decomposition_has_trivial_ears(five_cycle):
    d = Digraph.from_edges(5, set(five_cycle.edges) | {(1, 0), (3, 2)})
    c = d.subgraph(range(5))
    ed = open_ear_decomposition(c)
    assert not ed.is_regular
    assert ed.basic_cycle == (0, 1, 2, 3, 4)
    assert all(ear.is_trivial for ear in ed.ears[1:])
    assert ear_decomposition_violation(c, ed) is None


def test_violation_reports_uncovered_edges():
    d = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)])
    ed = EarDecomposition(ears=[Ear(path=(0, 1, 2, 0))])
    assert ear_decomposition_violation(d.subgraph(range(3)), ed) == "ears do not cover the component"


def test_random_components_decompose(roadmaps):
    for d in roadmaps:
        for c in decompose(d).components:
            ed = open_ear_decomposition(c)
            assert ear_decomposition_violation(c, ed) is None
            assert ed.is_regular == (c.kind is ComponentKind.REGULAR_OED)


def test_cycle_sequences_link_every_pair(eared_cycle, component_chain):
    components = [eared_cycle.subgraph(range(10)), *decompose(component_chain).components]
    for c in components:
        ed = open_ear_decomposition(c)
        for v in c.vertices:
            for w in c.vertices:
                seq = cycle_sequence(c, ed, v, w)
                assert cycle_sequence_violation(c, seq, v, w) is None
                assert seq.cycles[0][0] == v


def test_cycle_sequence_rejects_outside_vertices(eared_cycle):
    c = eared_cycle.subgraph([0, 1, 2, 3, 4])
    with pytest.raises(VertexNotInComponent):
        cycle_sequence(c, open_ear_decomposition(c), 0, 7)


def test_eared_cycle_values(eared_cycle):
    c = eared_cycle.subgraph(range(10))
    ed = open_ear_decomposition(c)
    assert [ear.path for ear in ed.ears] == [(0, 1, 2, 3, 4, 0), (2, 5, 6, 3), (0, 7, 8, 9, 6)]
    seq = cycle_sequence(c, ed, 1, 9)
    assert seq.cycles == [(1, 2, 3, 4, 0), (4, 0, 7, 8, 9, 6, 3)]
    assert set(seq.cycles[1]) == {0, 7, 8, 9, 6, 3, 4}
    assert seq.links == [(3, 4)]
    seq = cycle_sequence(c, ed, 0, 5)
    assert [set(ring) for ring in seq.cycles] == [{0, 1, 2, 5, 6, 3, 4}]
    assert seq.links == []


def test_cycle_sequence_can_start_on_a_given_edge():
    d = Digraph.from_edges(
        11,
        [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (5, 6),
            (6, 7), (7, 8), (8, 4), (7, 9), (9, 10), (10, 6),
        ],
    )
    c = d.subgraph(range(1, 11))
    seq = cycle_sequence(c, open_ear_decomposition(c), 9, 1, via=10)
    assert seq.cycles == [(9, 10, 6, 7), (6, 7, 8, 4, 5), (4, 5, 1, 2, 3)]
    assert seq.links == [(6, 7), (4, 5)]
    with pytest.raises(VertexNotInComponent):
        cycle_sequence(c, open_ear_decomposition(c), 9, 1, via=6)


def test_cycle_sequences_through_every_first_edge(eared_cycle):
    c = eared_cycle.subgraph(range(10))
    ed = open_ear_decomposition(c)
    for v in c.vertices:
        for via in c.successors(v):
            for w in c.vertices:
                seq = cycle_sequence(c, ed, v, w, via=via)
                assert cycle_sequence_violation(c, seq, v, w) is None
                assert seq.cycles[0][:2] == (v, via)


def test_articulation_points_match_vertex_removal(roadmaps, glued_roadmaps):
    trees = [
        Digraph.from_edges(6, [e for u, v in tree.edges for e in ((u, v), (v, u))])
        for tree in nx.nonisomorphic_trees(6)
    ]
    for d in [*roadmaps, *glued_roadmaps, *trees]:
        g = d.underlying_networkx()
        cut = {v for v in d.vertex_ids() if not nx.is_connected(nx.restricted_view(g, [v], []))}
        assert decompose(d).articulation_points == cut


def test_corridor_interiors_are_articulation_points(component_chain):
    dec = decompose(component_chain)
    (corridor,) = dec.corridors
    assert set(corridor[1:-1]) <= dec.articulation_points
    assert 4 in dec.articulation_points
    assert dec.components_of(4) == []
    assert dec.junctions == {2, 5, 10}
