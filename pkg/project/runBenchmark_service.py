from typing import Optional

from fastapi.concurrency import run_in_threadpool
from pydantic import BaseModel, Field

from project.formats import parse_graph
from project.instance_lab import BenchRecord, BenchSummary, BenchSweep, run_bench, summarize


class BenchmarkRequest(BaseModel):
    """
    A small benchmark grid; `graph` (graph text) replaces generated roadmaps.
    """

    nodes: list[int] = Field(default_factory=lambda: [20])
    agents: list[int] = Field(default_factory=lambda: [10])
    repetitions: int = Field(default=5, ge=1)
    seed: int = Field(default=0, ge=0)
    graph: Optional[str] = None


class BenchmarkResponse(BaseModel):
    records: list[BenchRecord]
    summary: list[BenchSummary]


async def runBenchmark(
    nodes: list[int], agents: list[int], repetitions: int, seed: int, graph: Optional[str] = None
) -> BenchmarkResponse:
    """
    Runs a benchmark sweep on the worker pool and returns raw records with per-cell medians.

    Args:
        nodes (list[int]): Node counts, ignored when `graph` is given.
        agents (list[int]): Agent counts.
        repetitions (int): Instances per cell.
        seed (int): Base seed.
        graph (Optional[str]): Graph text to benchmark on.

    Returns:
        BenchmarkResponse: Records ordered by node count, agent count and seed, and their summary.
    """
    sweep = BenchSweep(
        node_counts=nodes,
        agent_counts=agents,
        repetitions=repetitions,
        seed=seed,
        graph=parse_graph(graph) if graph else None,
    )
    records = await run_in_threadpool(run_bench, sweep)
    return BenchmarkResponse(records=records, summary=summarize(records))
