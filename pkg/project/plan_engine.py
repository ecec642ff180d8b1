"""
Configurations, the partial transition function and plans.

Holes are labelled agents just like pebbles, so a plan permutes holes too;
MAPF success only looks at pebbles.
"""

import logging
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from project.errors import (
    InvalidConfiguration,
    InvalidPlan,
    MapfError,
    NoSuchEdge,
    NotStronglyConnected,
    TargetOccupied,
)
from project.graph_core import Digraph, _Roadmap, is_strongly_connected

logger = logging.getLogger(__name__)


class AgentKind(str, Enum):
    PEBBLE = "p"
    HOLE = "h"


class AgentLabel(NamedTuple):
    kind: AgentKind
    id: int

    def __str__(self) -> str:
        return f"{self.kind.value}{self.id}"


def pebble(i: int) -> AgentLabel:
    return AgentLabel(AgentKind.PEBBLE, i)


def hole(i: int) -> AgentLabel:
    return AgentLabel(AgentKind.HOLE, i)


class Configuration(BaseModel):
    """
    One-to-one assignment of pebble and hole labels to vertices.

    Args:
        pebbles (dict[int, int]): Pebble id to vertex.
        holes (dict[int, int]): Hole id to vertex.
    """

    model_config = ConfigDict(frozen=True)

    pebbles: dict[int, int] = Field(default_factory=dict)
    holes: dict[int, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _one_to_one(self) -> "Configuration":
        seen: dict[int, AgentLabel] = {}
        for label, v in self.assignment().items():
            if v in seen:
                raise ValueError(f"vertex {v} holds both {seen[v]} and {label}")
            seen[v] = label
        return self

    def assignment(self) -> dict[AgentLabel, int]:
        out = {pebble(p): v for p, v in self.pebbles.items()}
        out.update({hole(h): v for h, v in self.holes.items()})
        return out

    def occupancy(self) -> dict[int, AgentLabel]:
        return {v: label for label, v in self.assignment().items()}

    def position(self, label: AgentLabel) -> int:
        table = self.pebbles if label.kind is AgentKind.PEBBLE else self.holes
        return table[label.id]

    def occupant(self, v: int) -> Optional[AgentLabel]:
        return self.occupancy().get(v)

    @property
    def size(self) -> int:
        return len(self.pebbles) + len(self.holes)

    @classmethod
    def from_occupancy(cls, occupancy: Mapping[int, AgentLabel]) -> "Configuration":
        pebbles = {}
        holes = {}
        for v, label in occupancy.items():
            (pebbles if label.kind is AgentKind.PEBBLE else holes)[label.id] = v
        return cls(pebbles=pebbles, holes=holes)

    @classmethod
    def with_holes_elsewhere(cls, vertex_count: int, pebbles: Mapping[int, int]) -> "Configuration":
        """Pebbles as given, holes numbered 0.. on the remaining vertices in vertex order."""
        taken = set(pebbles.values())
        free = [v for v in range(vertex_count) if v not in taken]
        return cls(pebbles=dict(pebbles), holes={i: v for i, v in enumerate(free)})


def check_configuration(a: Configuration, d: Digraph) -> None:
    """Raises InvalidConfiguration unless ``a`` is total over the vertices of ``d``."""
    vertices = set(a.occupancy())
    if vertices != set(range(d.vertex_count)):
        missing = sorted(set(range(d.vertex_count)) - vertices)
        extra = sorted(vertices - set(range(d.vertex_count)))
        raise InvalidConfiguration(
            f"configuration must cover every vertex exactly once (missing {missing}, unknown {extra})"
        )


class Move(NamedTuple):
    src: int
    dst: int


class Plan(BaseModel):
    moves: list[Move] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.moves)

    def then(self, other: "Plan") -> "Plan":
        return Plan(moves=[*self.moves, *other.moves])

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "Plan":
        return cls(moves=[Move(u, v) for u, v in pairs])


class Board:
    """
    Mutable simulator for the partial transition function.

    ``move`` is the raw transition (edge required, target must hold a hole);
    ``exact_move`` realises the swap ``A[a, b]`` along an edge in either
    direction, completing a directed cycle when only ``(b, a)`` exists. Every
    raw move is recorded in ``moves``.
    """

    def __init__(self, graph: _Roadmap, config: Configuration):
        self.graph = graph
        self.at: dict[int, AgentLabel] = config.occupancy()
        self.where: dict[AgentLabel, int] = config.assignment()
        self.moves: list[Move] = []

    def occupant(self, v: int) -> AgentLabel:
        return self.at[v]

    def is_hole(self, v: int) -> bool:
        return self.at[v].kind is AgentKind.HOLE

    def position(self, label: AgentLabel) -> int:
        return self.where[label]

    def hole_vertices(self, among: Optional[Iterable[int]] = None) -> list[int]:
        vertices = self.at if among is None else among
        return sorted(v for v in vertices if self.is_hole(v))

    def _swap(self, u: int, v: int) -> None:
        a, b = self.at[u], self.at[v]
        self.at[u], self.at[v] = b, a
        self.where[a], self.where[b] = v, u

    def move(self, u: int, v: int) -> None:
        if not self.graph.has_edge(u, v):
            raise NoSuchEdge(f"no edge {u}->{v}", index=len(self.moves))
        if not self.is_hole(v):
            raise TargetOccupied(f"vertex {v} holds {self.at[v]}", index=len(self.moves))
        self._swap(u, v)
        self.moves.append(Move(u, v))

    def exact_move(self, a: int, b: int) -> None:
        if not self.is_hole(b):
            raise TargetOccupied(f"vertex {b} holds {self.at[b]}", index=len(self.moves))
        if self.graph.has_edge(a, b):
            self.move(a, b)
            return
        if not self.graph.has_edge(b, a):
            raise NoSuchEdge(f"{a} and {b} are not adjacent", index=len(self.moves))
        path = self.graph.shortest_path(a, b)
        ring = (b, *path[:-1])
        size = len(ring)
        for j in range(size - 1, 1, -1):
            self.move(ring[j], ring[(j + 1) % size])
        i = 2
        for _ in range(size - 1):
            for s in range(1, size):
                self.move(ring[(i - s) % size], ring[(i - s + 1) % size])
            i = (i + 1) % size

    def replay(self, plan: Plan) -> None:
        start = len(self.moves)
        for i, (u, v) in enumerate(plan.moves):
            try:
                self.move(u, v)
            except MapfError as e:
                e.index = i
                del self.moves[start + i :]
                raise

    def configuration(self) -> Configuration:
        return Configuration.from_occupancy(self.at)

    def plan(self, start: int = 0) -> Plan:
        return Plan(moves=self.moves[start:])


def swap_config(a: Configuration, u: int, v: int) -> Configuration:
    """
    Exchanges whatever occupies ``u`` and ``v``.

    Example:
        swap_config(Configuration(pebbles={0: 1}, holes={0: 2}), 1, 2)
        > Configuration(pebbles={0: 2}, holes={0: 1})
    """
    if u == v:
        return a
    occupancy = a.occupancy()
    first, second = occupancy.get(u), occupancy.get(v)
    occupancy.pop(u, None)
    occupancy.pop(v, None)
    if first is not None:
        occupancy[v] = first
    if second is not None:
        occupancy[u] = second
    return Configuration.from_occupancy(occupancy)


def apply_move(a: Configuration, m: Move, d: Digraph) -> Configuration:
    board = Board(d, a)
    board.move(*m)
    return board.configuration()


def apply_plan(a: Configuration, f: Plan, d: Digraph) -> Configuration:
    """
    Left fold of ``apply_move``; errors carry the index of the first failing move.
    """
    board = Board(d, a)
    board.replay(f)
    return board.configuration()


def reverse_plan(d: Digraph, a: Configuration, f: Plan) -> Plan:
    """
    Builds a plan that brings every pebble and hole back to where it was before ``f``.

    Moves of ``f`` are undone in reverse order; each move ``u -> v`` is undone by
    the exact swap ``v -> u``, which completes a directed cycle through ``(u, v)``
    when the reverse edge is missing.

    Args:
        d (Digraph): A strongly connected digraph.
        a (Configuration): Configuration ``f`` starts from.
        f (Plan): A plan defined on ``a``.

    Returns:
        Plan: ``f^-1`` with ``apply_plan(apply_plan(a, f, d), f^-1, d) == a``.
    """
    if not is_strongly_connected(d):
        raise NotStronglyConnected("reverse plans need a strongly connected digraph")
    board = Board(d, a)
    try:
        board.replay(f)
    except MapfError as e:
        raise InvalidPlan(f"plan is not defined on the configuration: {e}", index=e.index) from e
    mark = len(board.moves)
    for u, v in reversed(f.moves):
        board.exact_move(v, u)
    return board.plan(mark)


def _trace(d: Digraph, f: Plan, holes: frozenset[int]) -> Optional[tuple[int, ...]]:
    occupant = list(range(d.vertex_count))
    for u, v in f.moves:
        if not d.has_edge(u, v) or occupant[v] not in holes:
            return None
        occupant[u], occupant[v] = occupant[v], occupant[u]
    return tuple(occupant)


def plans_equivalent(d: Digraph, f: Plan, g: Plan, where_defined: bool = False) -> bool:
    """
    Exhaustive check that two plans act identically on every configuration.

    A plan's effect only depends on which vertices start as holes, so every hole
    subset is enumerated once; labels are then tracked by their start vertex.
    Exponential in the vertex count, meant for small test graphs.

    Args:
        d (Digraph): The roadmap.
        f (Plan): First plan.
        g (Plan): Second plan.
        where_defined (bool): Only compare on configurations where ``f`` is defined.
            Concrete rotation plans depend on where their hole sits, so identities
            such as a full rotation being equivalent to the empty plan hold on
            that domain.

    Returns:
        bool: True when both plans agree on definedness and outcome.
    """
    n = d.vertex_count
    for size in range(n + 1):
        for chosen in combinations(range(n), size):
            holes = frozenset(chosen)
            left = _trace(d, f, holes)
            if where_defined and left is None:
                continue
            if left != _trace(d, g, holes):
                return False
    return True


def lift_undirected_plan(d: Digraph, a: Configuration, f_und: Plan) -> Plan:
    """
    Realises a plan of the underlying undirected graph on ``d``.

    A move along an existing edge is kept; any other move ``u -> v`` becomes the
    reverse plan of ``v -> u``. Every agent ends where ``f_und`` puts it.
    """
    board = Board(d, a)
    for i, (u, v) in enumerate(f_und.moves):
        if not d.adjacent(u, v):
            raise NoSuchEdge(f"{u} and {v} are not adjacent", index=i)
        try:
            board.exact_move(u, v)
        except MapfError as e:
            e.index = i
            raise
    logger.debug("lifted %d undirected moves into %d moves", len(f_und), len(board.moves))
    return board.plan()
