import networkx as nx
import numpy as np
import pytest

from project.config import get_settings
from project.disc_solver import Instance
from project.graph_core import Digraph
from project.plan_engine import Configuration


def one_based(n: int, edges: list[tuple[int, int]]) -> Digraph:
    return Digraph.from_edges(n, [(u - 1, v - 1) for u, v in edges])


def make_roadmap(n: int, extra: int, seed: int) -> Digraph:
    """A random Hamiltonian cycle plus ``extra`` random chords; always strongly connected."""
    rng = np.random.default_rng(seed)
    order = [int(x) for x in rng.permutation(n)]
    edges = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for _ in range(extra):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        edges.add((u, v))
    return Digraph.from_edges(n, edges)


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def five_cycle() -> Digraph:
    return Digraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


@pytest.fixture
def one_pebble_ring(five_cycle) -> Instance:
    """One pebble on vertex 1 of the directed 5-cycle that must reach vertex 4."""
    return Instance(
        digraph=five_cycle,
        start=Configuration.with_holes_elsewhere(5, {0: 1}),
        targets={0: 4},
    )


@pytest.fixture
def eared_cycle() -> Digraph:
    """A directed 5-cycle, one ear across it and a second ear ending on the first."""
    return one_based(
        10,
        [
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
            (3, 6), (6, 7), (7, 4),
            (1, 8), (8, 9), (9, 10), (10, 7),
        ],
    )


@pytest.fixture
def component_chain() -> Digraph:
    """A 4-cycle, a corridor of two bridges, a regular block and a 3-cycle, in a chain."""
    return one_based(
        13,
        [
            (1, 2), (2, 3), (3, 4), (4, 1),
            (3, 5), (5, 3), (5, 6), (6, 5),
            (6, 7), (7, 8), (8, 9), (9, 6), (9, 10), (10, 11), (11, 7),
            (11, 12), (12, 13), (13, 11),
        ],
    )


@pytest.fixture
def rotation_rings() -> tuple[Digraph, list[tuple[int, ...]]]:
    """Three directed cycles of lengths 5, 5 and 4 where consecutive ones share an edge."""
    d = one_based(
        11,
        [
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2),
            (6, 7), (7, 8), (8, 9), (9, 5),
            (8, 10), (10, 11), (11, 7),
        ],
    )
    return d, [(1, 2, 3, 4, 5), (4, 5, 6, 7, 8), (6, 7, 9, 10)]


@pytest.fixture
def small_tree() -> nx.Graph:
    return nx.Graph([(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (3, 7)])


@pytest.fixture
def roadmaps() -> list[Digraph]:
    return [make_roadmap(7, 3, seed) for seed in range(12)]


@pytest.fixture
def glued_roadmaps() -> list[Digraph]:
    """A random 4-vertex roadmap and a random 5-vertex roadmap sharing vertex 3."""
    glued = []
    for seed in range(6):
        first = make_roadmap(4, 1, seed)
        second = make_roadmap(5, 2, seed + 50)
        edges = set(first.edges) | {(u + 3, v + 3) for u, v in second.edges}
        glued.append(Digraph.from_edges(8, edges))
    return glued
