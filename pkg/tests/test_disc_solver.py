import numpy as np
import pytest
from pydantic import ValidationError

from project.disc_solver import (
    Instance,
    OutcomeKind,
    check_feasibility,
    compress,
    decide_feasibility,
    plan_stats,
    solve,
    verify,
    verify_report,
)
from project.errors import InvalidConfiguration, NotStronglyConnected
from project.graph_core import Digraph
from project.instance_lab import GenParams, gen_digraph, gen_instance, oracle_solve
from project.plan_engine import Configuration, Plan


def instance(d: Digraph, pebbles: dict[int, int], targets: dict[int, int]) -> Instance:
    return Instance(
        digraph=d,
        start=Configuration.with_holes_elsewhere(d.vertex_count, pebbles),
        targets=targets,
    )


def test_instance_validation(five_cycle):
    with pytest.raises(ValidationError):
        instance(five_cycle, {0: 1}, {1: 4})
    with pytest.raises(ValidationError):
        instance(five_cycle, {0: 1, 1: 2}, {0: 4, 1: 4})
    with pytest.raises(ValidationError):
        instance(five_cycle, {0: 1}, {0: 5})
    with pytest.raises(InvalidConfiguration):
        Instance(digraph=five_cycle, start=Configuration(pebbles={0: 1}), targets={0: 4})


def test_one_pebble_ring_is_solved_by_forward_moves(one_pebble_ring):
    assert decide_feasibility(one_pebble_ring) == (True, "cyclic-order")
    outcome = solve(one_pebble_ring)
    assert outcome.kind is OutcomeKind.FEASIBLE
    assert outcome.plan == Plan.of([(1, 2), (2, 3), (3, 4)])
    assert outcome.stats.moves == 3
    assert outcome.stats.per_pebble == {0: 3}


def test_solved_instances_need_no_moves(component_chain):
    inst = instance(component_chain, {0: 3, 1: 8}, {0: 3, 1: 8})
    assert decide_feasibility(inst) == (True, "trivial")
    outcome = solve(inst)
    assert outcome.kind is OutcomeKind.FEASIBLE
    assert len(outcome.plan) == 0


def test_full_roadmap_cannot_move():
    d = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)])
    full = Configuration(pebbles={0: 0, 1: 1, 2: 2})
    inst = Instance(digraph=d, start=full, targets={0: 1, 1: 0, 2: 2})
    assert decide_feasibility(inst) == (False, "no-holes")
    assert solve(inst).kind is OutcomeKind.INFEASIBLE


def test_cycle_order_decides_feasibility(five_cycle):
    inst = instance(five_cycle, {0: 0, 1: 1, 2: 2}, {0: 0, 1: 2, 2: 1})
    assert not check_feasibility(inst)
    assert solve(inst).kind is OutcomeKind.INFEASIBLE
    assert oracle_solve(inst).kind is OutcomeKind.INFEASIBLE


def test_single_hole_off_cycles_is_unsupported(eared_cycle):
    pebbles = {v: v for v in range(1, 10)}
    targets = {**pebbles, 4: 0}
    inst = instance(eared_cycle, pebbles, targets)
    assert decide_feasibility(inst) == (True, "one-hole-group")
    outcome = solve(inst)
    assert outcome.kind is OutcomeKind.UNSUPPORTED
    assert "2 holes" in outcome.reason


def test_roadmap_must_be_strongly_connected():
    d = Digraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(NotStronglyConnected):
        check_feasibility(instance(d, {0: 0}, {0: 3}))


def test_tree_pipeline_on_component_chain(component_chain):
    inst = instance(component_chain, {0: 0, 1: 1, 2: 12, 3: 6}, {0: 12, 1: 6, 2: 0, 3: 1})
    assert decide_feasibility(inst) == (True, "tree")
    outcome = solve(inst)
    assert outcome.kind is OutcomeKind.FEASIBLE
    assert verify(inst, outcome.plan)
    assert outcome.stats.tree_moves > 0
    shorter = compress(outcome.plan, inst)
    assert verify(inst, shorter)
    assert len(shorter) <= len(outcome.plan)


def test_verify_report_diagnostics(one_pebble_ring):
    report = verify_report(one_pebble_ring, Plan.of([(1, 2), (2, 1)]))
    assert not report.valid
    assert report.failed_index == 1
    report = verify_report(one_pebble_ring, Plan.of([(1, 2)]))
    assert not report.valid
    assert report.misplaced == [0]
    assert verify_report(one_pebble_ring, Plan.of([(1, 2), (2, 3), (3, 4)])).valid


def test_plan_stats_split_moves(one_pebble_ring):
    stats = plan_stats(one_pebble_ring, Plan.of([(2, 3), (1, 2), (2, 3)]))
    assert stats.moves == 3
    assert stats.hole_moves == 1
    assert stats.pebble_moves == 2
    assert stats.per_pebble == {0: 2}


def test_compress_drops_hole_moves_and_back_and_forth():
    d = Digraph.from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
    inst = instance(d, {0: 0}, {0: 2})
    plan = Plan.of([(1, 2), (0, 1), (1, 0), (2, 1), (0, 2)])
    assert compress(plan, inst) == Plan.of([(0, 2)])


def random_instances():
    for seed in range(10):
        d = gen_digraph(GenParams(node_count=8, ws_k=2, ws_p=0.3, seed=seed))
        for agents in (2, 3, 4):
            yield gen_instance(d, agents, seed * 10 + agents)


def test_solver_agrees_with_oracle_on_generated_roadmaps():
    for inst in random_instances():
        expected = oracle_solve(inst).kind
        assert check_feasibility(inst) == (expected is OutcomeKind.FEASIBLE)
        outcome = solve(inst)
        assert outcome.kind is expected
        if expected is OutcomeKind.FEASIBLE:
            assert verify(inst, outcome.plan)


def test_solver_agrees_with_oracle_on_dense_roadmaps(roadmaps):
    for seed, d in enumerate(roadmaps):
        inst = gen_instance(d, 3, seed)
        expected = oracle_solve(inst).kind
        outcome = solve(inst)
        assert outcome.kind is expected
        if expected is OutcomeKind.FEASIBLE:
            assert verify(inst, outcome.plan)


def test_one_hole_feasibility_matches_oracle(roadmaps):
    for seed, d in enumerate(roadmaps[:6]):
        rng = np.random.default_rng(seed)
        starts = rng.permutation(7)[:6]
        ends = rng.permutation(7)[:6]
        inst = instance(
            d,
            {p: int(v) for p, v in enumerate(starts)},
            {p: int(v) for p, v in enumerate(ends)},
        )
        expected = oracle_solve(inst).kind is OutcomeKind.FEASIBLE
        assert check_feasibility(inst) == expected


STAR_WITH_ARMS = [
    (0, 6), (6, 0), (1, 2), (2, 1), (2, 5), (5, 2),
    (3, 4), (4, 3), (4, 6), (6, 5), (5, 4),
]


def test_pebbles_cross_a_star_with_crowded_arms():
    d = Digraph.from_edges(7, STAR_WITH_ARMS)
    inst = instance(d, {0: 3, 1: 0, 2: 6, 3: 1}, {0: 1, 1: 0, 2: 5, 3: 3})
    assert oracle_solve(inst).kind is OutcomeKind.FEASIBLE
    assert check_feasibility(inst)
    outcome = solve(inst)
    assert outcome.kind is OutcomeKind.FEASIBLE
    assert verify(inst, outcome.plan)
