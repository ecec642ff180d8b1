import numpy as np
import pytest
from pydantic import ValidationError

from project.errors import InvalidConfiguration, InvalidPlan, NoSuchEdge, NotStronglyConnected, TargetOccupied
from project.graph_core import Digraph
from project.motion_primitives import cycle_rotation
from project.plan_engine import (
    Board,
    Configuration,
    Plan,
    apply_plan,
    check_configuration,
    lift_undirected_plan,
    plans_equivalent,
    reverse_plan,
    swap_config,
)


def random_plan(d: Digraph, a: Configuration, length: int, seed: int) -> Plan:
    rng = np.random.default_rng(seed)
    board = Board(d, a)
    edges = sorted(d.edges)
    while len(board.moves) < length:
        u, v = edges[int(rng.integers(len(edges)))]
        if board.is_hole(v):
            board.move(u, v)
    return board.plan()


def test_configuration_is_one_to_one():
    with pytest.raises(ValidationError):
        Configuration(pebbles={0: 1}, holes={0: 1})


def test_holes_fill_free_vertices():
    a = Configuration.with_holes_elsewhere(5, {0: 1})
    assert a == Configuration(pebbles={0: 1}, holes={0: 0, 1: 2, 2: 3, 3: 4})


def test_partial_configuration_is_rejected(five_cycle):
    with pytest.raises(InvalidConfiguration):
        check_configuration(Configuration(pebbles={0: 1}, holes={0: 2}), five_cycle)


def test_swap_config_exchanges_occupants():
    a = Configuration(pebbles={0: 1}, holes={0: 2})
    assert swap_config(a, 1, 2) == Configuration(pebbles={0: 2}, holes={0: 1})
    assert swap_config(a, 1, 1) == a


def test_apply_plan_moves_the_pebble(one_pebble_ring):
    end = apply_plan(one_pebble_ring.start, Plan.of([(1, 2), (2, 3), (3, 4)]), one_pebble_ring.digraph)
    assert end.pebbles == {0: 4}
    assert sorted(end.holes.values()) == [0, 1, 2, 3]


def test_apply_plan_reports_failing_index(one_pebble_ring):
    with pytest.raises(NoSuchEdge) as excinfo:
        apply_plan(one_pebble_ring.start, Plan.of([(1, 2), (2, 1)]), one_pebble_ring.digraph)
    assert excinfo.value.index == 1


def test_moving_onto_a_pebble_fails(five_cycle):
    a = Configuration.with_holes_elsewhere(5, {0: 1, 1: 2})
    with pytest.raises(TargetOccupied) as excinfo:
        apply_plan(a, Plan.of([(1, 2)]), five_cycle)
    assert excinfo.value.index == 0


def test_reverse_plan_restores_every_agent(roadmaps):
    for seed, d in enumerate(roadmaps):
        a = Configuration.with_holes_elsewhere(7, {0: 0, 1: 3, 2: 5})
        f = random_plan(d, a, 12, seed)
        back = reverse_plan(d, a, f)
        assert apply_plan(apply_plan(a, f, d), back, d) == a


def test_reverse_plan_needs_strong_connectivity():
    d = Digraph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(NotStronglyConnected):
        reverse_plan(d, Configuration.with_holes_elsewhere(3, {0: 0}), Plan.of([(0, 1)]))


def test_reverse_plan_rejects_undefined_plans(one_pebble_ring):
    with pytest.raises(InvalidPlan) as excinfo:
        reverse_plan(one_pebble_ring.digraph, one_pebble_ring.start, Plan.of([(1, 2), (0, 2)]))
    assert excinfo.value.index == 1


def test_full_rotation_is_the_identity_where_defined(five_cycle):
    a = Configuration(pebbles={0: 0, 1: 1, 2: 2, 3: 3}, holes={0: 4})
    ring = (0, 1, 2, 3, 4)
    full = cycle_rotation(a, ring, 5)
    assert len(full) == 20
    assert plans_equivalent(five_cycle, full, Plan(), where_defined=True)
    assert not plans_equivalent(five_cycle, full, Plan())
    assert not plans_equivalent(five_cycle, cycle_rotation(a, ring, 1), Plan(), where_defined=True)


def test_lift_undirected_plan_completes_cycles(one_pebble_ring):
    lifted = lift_undirected_plan(one_pebble_ring.digraph, one_pebble_ring.start, Plan.of([(1, 0), (0, 4)]))
    end = apply_plan(one_pebble_ring.start, lifted, one_pebble_ring.digraph)
    assert end == Configuration(pebbles={0: 4}, holes={0: 1, 1: 2, 2: 3, 3: 0})


def test_lift_rejects_non_adjacent_moves(one_pebble_ring):
    with pytest.raises(NoSuchEdge) as excinfo:
        lift_undirected_plan(one_pebble_ring.digraph, one_pebble_ring.start, Plan.of([(1, 2), (2, 4)]))
    assert excinfo.value.index == 1
