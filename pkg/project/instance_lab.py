"""
Random roadmaps and instances, the brute-force oracle and the benchmark runner.
"""

import logging
import math
import statistics
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from itertools import groupby
from operator import attrgetter
from typing import Optional, Sequence

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field

from project.config import get_settings
from project.disc_solver import Instance, OutcomeKind, SolveOutcome, check_feasibility, compress, plan_stats, solve
from project.errors import DegenerateParams, InfeasibleInstance, MapfError, StateSpaceTooLarge, TooManyAgents
from project.graph_core import Digraph, Edge
from project.plan_engine import Configuration, Move, Plan, lift_undirected_plan

logger = logging.getLogger(__name__)

DEFAULT_NODE_COUNTS = list(range(20, 101, 5))


class GenParams(BaseModel):
    """
    Parameters of the random roadmap generator.

    Args:
        node_count (int): Number of vertices, at least 3.
        seed (int): Seed for both the small-world graph and the tree transformation.
        ws_k (int): Each vertex starts joined to its ``ws_k`` nearest ring neighbours; even and below ``node_count``.
        ws_p (float): Rewiring probability.
    """

    node_count: int
    seed: int = Field(default=0, ge=0, lt=2**64)
    ws_k: int = Field(default_factory=lambda: get_settings().ws_k)
    ws_p: float = Field(default_factory=lambda: get_settings().ws_p)


class BenchRecord(BaseModel):
    node_count: int
    agent_count: int
    seed: int
    move_count: int = Field(ge=0)
    runtime_ms: float
    check_ms: float = 0.0
    feasible: bool
    error: Optional[str] = None


class BenchSweep(BaseModel):
    """
    Grid of benchmark cells; ``graph`` replaces generation with a fixed roadmap.
    """

    node_counts: list[int] = Field(default_factory=lambda: list(DEFAULT_NODE_COUNTS))
    agent_counts: list[int] = Field(default_factory=lambda: [10])
    repetitions: int = Field(default=200, ge=1)
    seed: int = Field(default=0, ge=0)
    ws_k: Optional[int] = None
    ws_p: Optional[float] = None
    graph: Optional[Digraph] = None
    workers: Optional[int] = Field(default=None, ge=1)


class BenchSummary(BaseModel):
    node_count: int
    agent_count: int
    runs: int
    median_moves: float
    median_ms: float
    median_check_ms: float


class TrendFit(BaseModel):
    degree: int
    coefficients: list[float]
    r_squared: float


def digraph_from_tree(tree: nx.Graph, root: int, rng: np.random.Generator) -> Digraph:
    """
    Turns a tree on vertices ``0..n-1`` into a strongly connected digraph.

    Walking the tree breadth-first from ``root``, a vertex with a single child
    keeps that edge in both directions. A vertex with several children forms,
    together with them, a directed cycle of random size (at least 3) over a
    random order of the group, and the rest of the group is attached by
    directed ears of random length between two distinct vertices already placed.

    Args:
        tree (nx.Graph): A tree whose nodes are ``0..n-1``.
        root (int): Root of the traversal.
        rng (np.random.Generator): Source of randomness.

    Returns:
        Digraph: The strongly connected digraph.
    """
    edges: set[Edge] = set()
    for v, kids in nx.bfs_successors(tree, root):
        if len(kids) == 1:
            edges.update({(v, kids[0]), (kids[0], v)})
            continue
        order = [int(x) for x in rng.permutation([v, *kids])]
        size = int(rng.integers(3, len(order) + 1))
        edges.update((order[i], order[(i + 1) % size]) for i in range(size))
        used = order[:size]
        i = size
        while i < len(order):
            length = int(rng.integers(1, len(order) - i + 1))
            a, b = (int(x) for x in rng.choice(used, size=2, replace=False))
            middle = order[i : i + length]
            path = [a, *middle, b]
            edges.update(zip(path, path[1:]))
            used.extend(middle)
            i += length
    return Digraph.from_edges(tree.number_of_nodes(), edges)


def gen_digraph(params: GenParams) -> Digraph:
    """
    Random strongly connected roadmap.

    A connected small-world graph is reduced to its maximum spanning tree, with
    each edge weighted by the degree sum of its endpoints, and the tree is
    turned into a digraph by ``digraph_from_tree`` rooted at vertex 0.

    Raises:
        DegenerateParams: When the parameters do not describe a usable graph.

    Example:
        gen_digraph(GenParams(node_count=20, seed=7))
        > Digraph(vertex_count=20, edges=frozenset({...}))
    """
    n, k, p = params.node_count, params.ws_k, params.ws_p
    if n < 3:
        raise DegenerateParams(f"node count {n} is below 3")
    if k < 2 or k % 2 or k >= n:
        raise DegenerateParams(f"ring parameter {k} must be even, at least 2 and below {n}")
    if not 0.0 <= p <= 1.0:
        raise DegenerateParams(f"rewiring probability {p} is outside [0, 1]")
    try:
        g = nx.connected_watts_strogatz_graph(n, k, p, tries=100, seed=params.seed)
    except nx.NetworkXError as e:
        raise DegenerateParams(str(e)) from e
    for u, v in g.edges:
        g[u][v]["weight"] = g.degree[u] + g.degree[v]
    tree = nx.maximum_spanning_tree(g, weight="weight")
    d = digraph_from_tree(tree, 0, np.random.default_rng(params.seed))
    logger.debug("generated digraph with %d vertices and %d edges", d.vertex_count, len(d.edges))
    return d


def gen_instance(d: Digraph, agent_count: int, seed: int) -> Instance:
    """
    Distinct random start and target vertices for ``agent_count`` pebbles; the rest are holes.

    Raises:
        TooManyAgents: When fewer than two holes would be left.
    """
    n = d.vertex_count
    if agent_count < 0:
        raise DegenerateParams("agent count must be non-negative")
    if agent_count > n - 2:
        raise TooManyAgents(f"{agent_count} agents leave fewer than 2 holes on {n} vertices")
    rng = np.random.default_rng(seed)
    starts = rng.choice(n, size=agent_count, replace=False)
    targets = rng.choice(n, size=agent_count, replace=False)
    return Instance(
        digraph=d,
        start=Configuration.with_holes_elsewhere(n, {i: int(v) for i, v in enumerate(starts)}),
        targets={i: int(v) for i, v in enumerate(targets)},
    )


def oracle_solve(inst: Instance, cap: Optional[int] = None) -> SolveOutcome:
    """
    Breadth-first search over pebble placements.

    Holes are interchangeable for the search, so a state records which pebble
    (if any) sits on each vertex. The first goal state reached yields a
    shortest plan.

    Args:
        inst (Instance): The instance.
        cap (Optional[int]): Largest number of placements the search may face;
            defaults to the configured oracle cap.

    Raises:
        StateSpaceTooLarge: When the placement count exceeds the cap.
    """
    d = inst.digraph
    n = d.vertex_count
    cap = cap if cap is not None else get_settings().oracle_state_cap
    size = math.perm(n, len(inst.start.pebbles))
    if size > cap:
        raise StateSpaceTooLarge(f"{size} placements exceed the cap of {cap}")
    start = [-1] * n
    for p, v in inst.start.pebbles.items():
        start[v] = p
    goal = [-1] * n
    for p, v in inst.targets.items():
        goal[v] = p
    first = tuple(start)
    prev: dict[tuple[int, ...], Optional[tuple[tuple[int, ...], Move]]] = {first: None}
    queue = deque([first])
    found = None
    while queue:
        state = queue.popleft()
        if all(state[v] == p for v, p in enumerate(goal) if p >= 0):
            found = state
            break
        for u in range(n):
            if state[u] < 0:
                continue
            for v in d.successors(u):
                if state[v] >= 0:
                    continue
                nxt = list(state)
                nxt[u], nxt[v] = -1, state[u]
                key = tuple(nxt)
                if key not in prev:
                    prev[key] = (state, Move(u, v))
                    queue.append(key)
    if found is None:
        return SolveOutcome.infeasible(f"no plan exists (searched {len(prev)} placements)")
    moves = []
    while prev[found] is not None:
        found, m = prev[found]
        moves.append(m)
    plan = Plan(moves=moves[::-1])
    return SolveOutcome.feasible(plan, plan_stats(inst, plan))


def reduction_plan(inst: Instance) -> Plan:
    """
    Baseline plan: a shortest plan on the underlying graph, lifted onto the digraph.

    Every move against an edge direction becomes a cycle completion, so the
    result is usually much longer than a direct solution.
    """
    d = inst.digraph
    both = Digraph.from_edges(d.vertex_count, {e for u, v in d.edges for e in ((u, v), (v, u))})
    outcome = oracle_solve(inst.model_copy(update={"digraph": both}))
    if outcome.kind is not OutcomeKind.FEASIBLE:
        raise InfeasibleInstance(outcome.reason)
    return compress(lift_undirected_plan(d, inst.start, outcome.plan), inst)


def _instance_seed(base: int, *cell: int) -> int:
    return int(np.random.SeedSequence([base, *cell]).generate_state(1)[0])


def _run_one(sweep: BenchSweep, nodes: int, agents: int, rep: int) -> BenchRecord:
    seed = _instance_seed(sweep.seed, nodes, agents, rep)
    attempt = time.perf_counter()
    try:
        d = sweep.graph
        if d is None:
            overrides = {k: v for k, v in (("ws_k", sweep.ws_k), ("ws_p", sweep.ws_p)) if v is not None}
            d = gen_digraph(GenParams(node_count=nodes, seed=seed, **overrides))
        inst = gen_instance(d, agents, seed)
        started = time.perf_counter()
        check_feasibility(inst)
        check_ms = (time.perf_counter() - started) * 1000
        started = time.perf_counter()
        outcome = solve(inst)
        runtime_ms = (time.perf_counter() - started) * 1000
    except MapfError as e:
        logger.warning("benchmark instance nodes=%d agents=%d seed=%d failed: %s", nodes, agents, seed, e)
        return BenchRecord(
            node_count=nodes,
            agent_count=agents,
            seed=seed,
            move_count=0,
            runtime_ms=(time.perf_counter() - attempt) * 1000,
            feasible=False,
            error=str(e),
        )
    feasible = outcome.kind is OutcomeKind.FEASIBLE
    return BenchRecord(
        node_count=nodes,
        agent_count=agents,
        seed=seed,
        move_count=len(outcome.plan) if feasible else 0,
        runtime_ms=runtime_ms,
        check_ms=check_ms,
        feasible=feasible,
    )


def run_bench(sweep: BenchSweep) -> list[BenchRecord]:
    """
    Solves ``repetitions`` random instances per (node count, agent count) cell.

    Cells run on a thread pool. An instance that fails with a solver error is
    logged and kept as a record carrying the error message.
    Records come back ordered by node count, agent count and seed.

    Args:
        sweep (BenchSweep): The grid; with ``graph`` set every cell uses that
            roadmap and its vertex count.

    Returns:
        list[BenchRecord]: One record per instance.
    """
    node_counts = [sweep.graph.vertex_count] if sweep.graph is not None else sweep.node_counts
    jobs = [
        (nodes, agents, rep)
        for nodes in node_counts
        for agents in sweep.agent_counts
        for rep in range(sweep.repetitions)
    ]
    workers = sweep.workers or get_settings().bench_workers
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda job: _run_one(sweep, *job), jobs))
    records = sorted(results, key=lambda r: (r.node_count, r.agent_count, r.seed))
    failed = sum(r.error is not None for r in records)
    if failed:
        logger.warning("%d of %d benchmark instances failed", failed, len(records))
    for (nodes, agents), cell in groupby(records, key=attrgetter("node_count", "agent_count")):
        logger.info("cell nodes=%d agents=%d finished %d runs", nodes, agents, len(list(cell)))
    return records


def summarize(records: Sequence[BenchRecord]) -> list[BenchSummary]:
    """Per-cell medians of moves, solve time and feasibility-check time; failed runs are left out."""
    cell_key = attrgetter("node_count", "agent_count")
    completed = [r for r in records if r.error is None]
    out = []
    for (nodes, agents), cell in groupby(sorted(completed, key=cell_key), key=cell_key):
        rows = list(cell)
        out.append(
            BenchSummary(
                node_count=nodes,
                agent_count=agents,
                runs=len(rows),
                median_moves=statistics.median(r.move_count for r in rows),
                median_ms=statistics.median(r.runtime_ms for r in rows),
                median_check_ms=statistics.median(r.check_ms for r in rows),
            )
        )
    return out


def fit_trend(xs: Sequence[float], ys: Sequence[float], degree: int) -> TrendFit:
    """
    Least-squares polynomial fit with its coefficient of determination.

    Coefficients run from the highest power down, as ``numpy.polyfit`` returns them.
    """
    if degree < 0 or len(xs) != len(ys) or len(xs) <= degree:
        raise DegenerateParams(f"cannot fit degree {degree} to {len(xs)} points")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    coefficients = np.polyfit(x, y, degree)
    residual = float(np.sum((y - np.polyval(coefficients, x)) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - residual / total if total > 0 else float(residual == 0.0)
    return TrendFit(degree=degree, coefficients=[float(c) for c in coefficients], r_squared=r_squared)
