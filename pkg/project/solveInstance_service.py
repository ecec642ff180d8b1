from typing import Optional

from fastapi.concurrency import run_in_threadpool
from pydantic import BaseModel

from project.disc_solver import OutcomeKind, PlanStats, compress, plan_stats, solve
from project.formats import parse_instance, write_plan


class SolveRequest(BaseModel):
    """
    An instance in the text format, optionally asking for a compressed plan.
    """

    instance: str
    compress: bool = False


class SolveResponse(BaseModel):
    """
    Outcome of solving an instance: the plan in the text format when one exists, otherwise the reason.
    """

    outcome: OutcomeKind
    reason: str = ""
    moves: int = 0
    plan: Optional[str] = None
    stats: Optional[PlanStats] = None


async def solveInstance(instance: str, compress_plan: bool = False) -> SolveResponse:
    """
    Parses an instance and solves it on a worker thread.

    Args:
        instance (str): Instance text with `n`, `e`, `p`, optional `h`, and `t` lines.
        compress_plan (bool): Drop cancelling moves and hole shuffles from the plan.

    Returns:
        SolveResponse: The outcome, with plan text and statistics for feasible instances.

    Example:
        solveInstance("n 5\\ne 0 1\\ne 1 2\\ne 2 3\\ne 3 4\\ne 4 0\\np 0 1\\nt 0 4\\n")
        > SolveResponse(outcome=OutcomeKind.FEASIBLE, moves=3, plan="m 1 2\\nm 2 3\\nm 3 4\\n# moves=3\\n# pebble_moves=3\\n", ...)
    """
    inst = parse_instance(instance)
    outcome = await run_in_threadpool(solve, inst)
    if outcome.kind is not OutcomeKind.FEASIBLE:
        return SolveResponse(outcome=outcome.kind, reason=outcome.reason)
    plan = compress(outcome.plan, inst) if compress_plan else outcome.plan
    stats = plan_stats(inst, plan)
    stats.tree_moves = outcome.stats.tree_moves
    return SolveResponse(outcome=outcome.kind, moves=len(plan), plan=write_plan(plan, stats), stats=stats)
