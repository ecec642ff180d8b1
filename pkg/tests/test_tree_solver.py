import logging
from itertools import permutations

import networkx as nx
import numpy as np
import pytest
from pydantic import ValidationError

from project.disc_solver import Instance, OutcomeKind
from project.errors import InvalidPlan, NoSuchEdge, NotConnected, TargetOccupied, TooFewHoles
from project.graph_core import Digraph, UndirectedGraph, decompose, underlying_graph
from project.instance_lab import oracle_solve
from project.plan_engine import Configuration, apply_plan
from project.tree_solver import (
    PermutationGroup,
    PermutationInstance,
    TreeBoard,
    TreeMove,
    TreePlan,
    build_bct,
    convert_path,
    one_hole_feasible,
    pmt_feasible,
    pmt_to_ppt,
    ppt_solve,
    solve_pmt,
)


def path_tree(n: int):
    return build_bct(UndirectedGraph(vertex_count=n, edges={(i, i + 1) for i in range(n - 1)}))


def cycle_adjacency(n: int) -> dict[int, list[int]]:
    return {v: [(v - 1) % n, (v + 1) % n] for v in range(n)}


@pytest.fixture
def chain_tree(component_chain):
    return build_bct(underlying_graph(component_chain))


def test_stars_and_bridges(chain_tree):
    assert chain_tree.stars == [(0, 1, 2, 3), (5, 6, 7, 8, 9, 10), (10, 11, 12)]
    assert chain_tree.bridges == [(2, 4), (4, 5)]
    assert chain_tree.node_count == 16
    assert list(chain_tree.trans_shipment_vertices) == [13, 14, 15]
    assert chain_tree.star_map[15] == (10, 11, 12)


def test_move_targets(chain_tree):
    assert chain_tree.move_targets(4) == ((2, None), (5, None))
    assert chain_tree.move_targets(0) == ((1, 13), (2, 13), (3, 13))
    assert (11, 15) in chain_tree.move_targets(10)
    assert (6, 14) in chain_tree.move_targets(10)


def test_distances(chain_tree):
    dist = chain_tree.distances(0)
    assert dist[13] == 1
    assert dist[2] == 2
    assert dist[4] == 3
    assert dist[12] == 8


def test_dump_lists_stars_then_edges(chain_tree):
    lines = chain_tree.dump().splitlines()
    assert lines[:4] == ["t 13", "t 14", "t 15", "e 0 13"]
    assert "e 2 4" in lines
    assert "e 12 15" in lines
    assert len(lines) == 3 + len(chain_tree.tree_edges)


def test_disconnected_graph_has_no_tree():
    with pytest.raises(NotConnected):
        build_bct(UndirectedGraph(vertex_count=3, edges={(0, 1)}))


def test_tree_board_rejects_bad_moves(chain_tree):
    board = TreeBoard(chain_tree, {0: 0, 1: 1})
    with pytest.raises(InvalidPlan):
        board.move(2, 3)
    with pytest.raises(TargetOccupied):
        board.move(0, 1)
    with pytest.raises(NoSuchEdge):
        board.move(0, 4)
    board.move(0, 3)
    assert board.moves == [TreeMove(0, 3, 13)]
    board.rollback(0)
    assert board.where == {0: 0, 1: 1}


def test_permutation_instance_checks_cover():
    with pytest.raises(ValidationError):
        PermutationInstance(positions={0: 1, 1: 2}, targets={0: 2, 1: 3})


def test_pmt_to_ppt_fills_targets(chain_tree):
    a = Configuration.with_holes_elsewhere(13, {0: 0, 1: 1, 2: 12})
    targets = {0: 6, 1: 11, 2: 3}
    prefix, residual = pmt_to_ppt(chain_tree, a, targets)
    board = TreeBoard(chain_tree, a.pebbles)
    board.replay(prefix)
    assert set(board.where.values()) == set(targets.values())
    assert residual.positions == board.where


@pytest.mark.parametrize(
    "pebbles, targets",
    [
        ({0: 0, 1: 12}, {0: 12, 1: 0}),
        ({0: 0, 1: 1, 2: 12}, {0: 6, 1: 11, 2: 3}),
        ({0: 4, 1: 5, 2: 2, 3: 7}, {0: 5, 1: 4, 2: 7, 3: 2}),
    ],
)
def test_solve_pmt_reaches_targets(chain_tree, pebbles, targets):
    a = Configuration.with_holes_elsewhere(13, pebbles)
    assert pmt_feasible(chain_tree, a, targets)
    board = TreeBoard(chain_tree, pebbles)
    board.replay(solve_pmt(chain_tree, a, targets))
    assert board.where == targets


def test_pebbles_cannot_pass_on_a_path():
    t = path_tree(4)
    a = Configuration.with_holes_elsewhere(4, {0: 1, 1: 2})
    assert not pmt_feasible(t, a, {0: 2, 1: 1})
    assert pmt_feasible(t, a, {0: 0, 1: 3})


def test_one_hole_on_a_path_is_stuck():
    t = path_tree(3)
    a = Configuration.with_holes_elsewhere(3, {0: 0, 1: 1})
    assert not pmt_feasible(t, a, {0: 1, 1: 0})


def test_one_hole_on_cycles():
    assert one_hole_feasible(cycle_adjacency(3), 3, {0: 0, 1: 1}, {0: 1, 1: 0})
    assert one_hole_feasible(cycle_adjacency(4), 4, {0: 0, 1: 1, 2: 2}, {0: 1, 1: 2, 2: 0})
    assert not one_hole_feasible(cycle_adjacency(4), 4, {0: 0, 1: 1, 2: 2}, {0: 1, 1: 0, 2: 2})


def test_permutation_group_membership():
    s3 = PermutationGroup([(1, 0, 2), (1, 2, 0)], 3)
    assert s3.order == 6
    assert s3.contains((0, 2, 1))
    c3 = PermutationGroup([(1, 2, 0)], 3)
    assert c3.order == 3
    assert not c3.contains((1, 0, 2))
    assert c3.contains((2, 0, 1))


def test_convert_path_keeps_the_tree_outcome(component_chain, chain_tree):
    pebbles = {0: 0, 1: 1, 2: 12}
    targets = {0: 6, 1: 11, 2: 3}
    a = Configuration.with_holes_elsewhere(13, pebbles)
    tree_plan = solve_pmt(chain_tree, a, targets)
    plan = convert_path(tree_plan, component_chain, decompose(component_chain), chain_tree, a)
    assert apply_plan(a, plan, component_chain).pebbles == targets


def test_convert_path_needs_two_holes(component_chain, chain_tree):
    a = Configuration.with_holes_elsewhere(13, {v: v for v in range(12)})
    with pytest.raises(TooFewHoles):
        convert_path(TreePlan(), component_chain, decompose(component_chain), chain_tree, a)


def test_transposition_through_a_star_with_crowded_arms():
    # triangle 4-5-6 with arms 4-3, 5-2-1 and 6-0
    g = UndirectedGraph(vertex_count=7, edges={(4, 5), (5, 6), (4, 6), (3, 4), (1, 2), (2, 5), (0, 6)})
    t = build_bct(g)
    positions = {0: 3, 1: 0, 2: 5, 3: 1}
    targets = {0: 1, 1: 0, 2: 5, 3: 3}
    board = TreeBoard(t, positions)
    board.replay(ppt_solve(t, PermutationInstance(positions=positions, targets=targets)))
    assert board.where == targets


def test_convert_path_swaps_on_a_cycle_through_its_two_way_edge(caplog):
    # directed 5-cycle, vertex 5 hangs off 0 in both directions
    d = Digraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 0)])
    t = build_bct(underlying_graph(d))
    star = next(t.original_count + i for i, s in enumerate(t.stars) if set(s) == set(range(5)))
    a = Configuration.with_holes_elsewhere(6, {0: 1})
    with caplog.at_level(logging.DEBUG, logger="project.tree_solver"):
        plan = convert_path(TreePlan(moves=[TreeMove(1, 3, star)]), d, decompose(d), t, a)
    assert apply_plan(a, plan, d).pebbles == {0: 3}
    assert "'attached_edge': 1" in caplog.text


def test_convert_path_falls_back_when_the_component_lacks_holes(component_chain, chain_tree, caplog):
    # only one hole inside the regular block 5..10, the other waits on the 3-cycle
    pebbles = {v: v for v in range(13) if v not in (8, 12)}
    a = Configuration.with_holes_elsewhere(13, pebbles)
    star = next(chain_tree.original_count + i for i, s in enumerate(chain_tree.stars) if 8 in s)
    dec = decompose(component_chain)
    with caplog.at_level(logging.DEBUG, logger="project.tree_solver"):
        plan = convert_path(TreePlan(moves=[TreeMove(6, 8, star)]), component_chain, dec, chain_tree, a)
    moved = apply_plan(a, plan, component_chain)
    assert moved.pebbles == {p: 8 if p == 6 else p for p in pebbles}
    assert "'exchange': 1" in caplog.text


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_tree_feasibility_agrees_with_search(n):
    rng = np.random.default_rng(n)
    for tree in nx.nonisomorphic_trees(n):
        edges = sorted(tuple(sorted(e)) for e in tree.edges)
        t = build_bct(UndirectedGraph(vertex_count=n, edges=set(edges)))
        d = Digraph.from_edges(n, [*edges, *((v, u) for u, v in edges)])
        for holes in (1, 2, 3):
            k = n - holes
            if k < 1:
                continue
            a = Configuration.with_holes_elsewhere(n, {p: p for p in range(k)})
            placements = list(permutations(range(n), k))
            sample = 40 if n <= 5 else 10
            if len(placements) > sample:
                placements = [placements[i] for i in rng.choice(len(placements), size=sample, replace=False)]
            for ends in placements:
                targets = dict(enumerate(ends))
                expected = oracle_solve(Instance(digraph=d, start=a, targets=targets)).kind is OutcomeKind.FEASIBLE
                assert pmt_feasible(t, a, targets) == expected, (edges, targets)
