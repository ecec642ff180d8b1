"""
Top-level solver for MAPF on strongly connected digraphs.

The digraph is reduced to pebble motion on the tree of its underlying graph;
the tree plan is then converted back into digraph moves, one exact exchange
per tree move.
"""

import logging
from collections import Counter
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from project.errors import InfeasibleInstance, InfeasibleSwap, InvalidIntermediate, MapfError, NotStronglyConnected
from project.graph_core import (
    Digraph,
    decompose,
    is_partially_bidirectional_cycle,
    is_strongly_connected,
    principal_cycle,
    underlying_graph,
)
from project.plan_engine import AgentKind, Board, Configuration, Move, Plan, check_configuration
from project.sbd_solver import cyclic_order_matches, solve_pb_cycle
from project.tree_solver import build_bct, convert_path, lift_config, one_hole_feasible, pmt_feasible, solve_pmt

logger = logging.getLogger(__name__)


class Instance(BaseModel):
    """
    A MAPF instance: roadmap, start configuration and pebble targets.

    Holes have no targets; wherever they end up is fine.
    """

    digraph: Digraph
    start: Configuration
    targets: dict[int, int]

    @model_validator(mode="after")
    def _consistent(self) -> "Instance":
        check_configuration(self.start, self.digraph)
        if set(self.targets) != set(self.start.pebbles):
            raise ValueError("every pebble needs exactly one target")
        if len(set(self.targets.values())) != len(self.targets):
            raise ValueError("two pebbles share a target vertex")
        for p, v in self.targets.items():
            if not 0 <= v < self.digraph.vertex_count:
                raise ValueError(f"target {v} of pebble {p} is not a vertex")
        return self

    @property
    def hole_count(self) -> int:
        return len(self.start.holes)

    def solved_by(self, config: Configuration) -> bool:
        return all(config.pebbles.get(p) == v for p, v in self.targets.items())


class OutcomeKind(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNSUPPORTED = "Unsupported"


class PlanStats(BaseModel):
    moves: int = 0
    pebble_moves: int = 0
    hole_moves: int = 0
    per_pebble: dict[int, int] = Field(default_factory=dict)
    tree_moves: Optional[int] = None


class SolveOutcome(BaseModel):
    kind: OutcomeKind
    plan: Optional[Plan] = None
    stats: Optional[PlanStats] = None
    reason: str = ""

    @classmethod
    def feasible(cls, plan: Plan, stats: PlanStats) -> "SolveOutcome":
        return cls(kind=OutcomeKind.FEASIBLE, plan=plan, stats=stats)

    @classmethod
    def infeasible(cls, reason: str) -> "SolveOutcome":
        return cls(kind=OutcomeKind.INFEASIBLE, reason=reason)

    @classmethod
    def unsupported(cls, reason: str) -> "SolveOutcome":
        return cls(kind=OutcomeKind.UNSUPPORTED, reason=reason)


class VerifyReport(BaseModel):
    valid: bool
    failed_index: Optional[int] = None
    reason: Optional[str] = None
    misplaced: list[int] = Field(default_factory=list)


def _require_strongly_connected(d: Digraph) -> None:
    if not is_strongly_connected(d):
        raise NotStronglyConnected("the roadmap must be strongly connected")


def decide_feasibility(inst: Instance) -> tuple[bool, str]:
    """
    Feasibility verdict together with the method that produced it.

    Returns:
        tuple[bool, str]: The verdict and one of ``trivial``, ``no-holes``,
        ``cyclic-order``, ``one-hole-group`` or ``tree``.
    """
    d = inst.digraph
    _require_strongly_connected(d)
    pebbles = inst.start.pebbles
    if inst.solved_by(inst.start):
        return True, "trivial"
    if inst.hole_count == 0:
        return False, "no-holes"
    if is_partially_bidirectional_cycle(d):
        return cyclic_order_matches(principal_cycle(d), pebbles, inst.targets), "cyclic-order"
    if inst.hole_count == 1:
        adjacency = {v: list(d.neighbors(v)) for v in range(d.vertex_count)}
        return one_hole_feasible(adjacency, d.vertex_count, pebbles, inst.targets), "one-hole-group"
    t = build_bct(underlying_graph(d))
    return pmt_feasible(t, lift_config(inst.start), inst.targets), "tree"


def check_feasibility(inst: Instance) -> bool:
    """
    Decides whether some plan takes every pebble to its target.

    Partially-bidirectional cycles keep the cyclic order of their pebbles.
    Otherwise the instance is feasible exactly when it is feasible on the
    underlying graph, which is decided on its biconnected component tree (or
    by group membership when only one hole is free).

    Args:
        inst (Instance): The instance.

    Returns:
        bool: The verdict.

    Example:
        check_feasibility(example_one)
        > True
    """
    feasible, method = decide_feasibility(inst)
    logger.debug("feasibility %s decided by %s", feasible, method)
    return feasible


def plan_stats(inst: Instance, f: Plan) -> PlanStats:
    board = Board(inst.digraph, inst.start)
    per_pebble: Counter[int] = Counter()
    holes = 0
    for u, v in f.moves:
        label = board.occupant(u)
        if label.kind is AgentKind.PEBBLE:
            per_pebble[label.id] += 1
        else:
            holes += 1
        board.move(u, v)
    return PlanStats(
        moves=len(f),
        pebble_moves=sum(per_pebble.values()),
        hole_moves=holes,
        per_pebble=dict(sorted(per_pebble.items())),
    )


def verify_report(inst: Instance, f: Plan) -> VerifyReport:
    board = Board(inst.digraph, inst.start)
    try:
        board.replay(f)
    except MapfError as e:
        return VerifyReport(valid=False, failed_index=e.index, reason=str(e))
    final = board.configuration()
    misplaced = sorted(p for p, v in inst.targets.items() if final.pebbles[p] != v)
    if misplaced:
        return VerifyReport(valid=False, reason=f"pebbles {misplaced} are not on their targets", misplaced=misplaced)
    return VerifyReport(valid=True)


def verify(inst: Instance, f: Plan) -> bool:
    return verify_report(inst, f).valid


def compress(f: Plan, inst: Instance) -> Plan:
    """
    Drops hole-to-hole moves and cancels each move immediately undone by its reverse.

    Both kinds of removal leave the pebble occupancy unchanged after every
    remaining move, so a valid plan stays valid.
    """
    board = Board(inst.digraph, inst.start)
    kept: list[Move] = []
    for m in f.moves:
        moves_pebble = not board.is_hole(m.src)
        board.move(*m)
        if not moves_pebble:
            continue
        if kept and kept[-1] == Move(m.dst, m.src):
            kept.pop()
        else:
            kept.append(m)
    out = Plan(moves=kept)
    if not verify(inst, out):
        logger.warning("compressed plan does not verify, keeping the original")
        return f
    return out


def _feasible(inst: Instance, plan: Plan, tree_moves: Optional[int] = None) -> SolveOutcome:
    report = verify_report(inst, plan)
    if not report.valid:
        raise InvalidIntermediate(f"solver produced an invalid plan: {report.reason}", index=report.failed_index)
    stats = plan_stats(inst, plan)
    stats.tree_moves = tree_moves
    logger.info("solved with %d moves (%d pebble moves)", stats.moves, stats.pebble_moves)
    return SolveOutcome.feasible(plan, stats)


def solve(inst: Instance) -> SolveOutcome:
    """
    Solves a MAPF instance on a strongly connected digraph.

    Partially-bidirectional cycles are solved directly by forward moves, even
    with a single hole. Every other digraph needs two holes and runs the tree
    pipeline: build the component tree, solve pebble motion there, and convert
    each tree move into an exact exchange on the digraph.

    Args:
        inst (Instance): The instance.

    Returns:
        SolveOutcome: A verified plan, an infeasibility witness, or the reason
        the instance is out of reach.
    """
    d = inst.digraph
    feasible, method = decide_feasibility(inst)
    if not feasible:
        logger.info("instance is infeasible (%s)", method)
        return SolveOutcome.infeasible(f"no plan exists ({method} check)")
    if inst.solved_by(inst.start):
        return _feasible(inst, Plan())
    if is_partially_bidirectional_cycle(d):
        plan = solve_pb_cycle(d.subgraph(d.vertex_ids()), inst.start, inst.targets)
        if plan is None:
            return SolveOutcome.infeasible("pebbles are in the wrong cyclic order")
        return _feasible(inst, plan)
    if inst.hole_count < 2:
        return SolveOutcome.unsupported("diSC requires at least 2 holes")
    dec = decompose(d)
    t = build_bct(underlying_graph(d))
    try:
        tree_plan = solve_pmt(t, lift_config(inst.start), inst.targets)
    except (InfeasibleInstance, InfeasibleSwap) as e:
        raise InvalidIntermediate(f"tree solver failed on an instance judged feasible: {e}") from e
    logger.debug("tree plan has %d moves", len(tree_plan))
    plan = convert_path(tree_plan, d, dec, t, inst.start)
    return _feasible(inst, plan, tree_moves=len(tree_plan))
