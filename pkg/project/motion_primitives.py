"""
Hole routing and rotation plan builders shared by every lemma plan.
"""

import logging
from typing import Optional, Sequence

from pydantic import BaseModel, model_validator

from project.errors import NoHoleOnCycle, Unreachable, VertexNotHole
from project.graph_core import (
    CycleSequence,
    Digraph,
    Path,
    Subgraph,
    cycle_edges,
)
from project.plan_engine import AgentLabel, Board, Configuration, Move, Plan, reverse_plan

logger = logging.getLogger(__name__)


class RotationSpec(BaseModel):
    """
    Rotation amounts for a chain of directed cycles.

    Args:
        cycles (list[Path]): Vertex rings in cycle order.
        amounts (list[int]): ``amounts[i]`` one-step rotations of ``cycles[i]``,
            each between 0 and the cycle length.
    """

    cycles: list[Path]
    amounts: list[int]

    @model_validator(mode="after")
    def _amounts_fit(self) -> "RotationSpec":
        if len(self.cycles) != len(self.amounts):
            raise ValueError(
                f"{len(self.amounts)} amounts given for {len(self.cycles)} cycles"
            )
        for i, (ring, k) in enumerate(zip(self.cycles, self.amounts)):
            if not 0 <= k <= len(ring):
                raise ValueError(f"amount {k} for cycle {i} is outside 0..{len(ring)}")
        return self

    @classmethod
    def over(cls, sequence: CycleSequence, amounts: Sequence[int]) -> "RotationSpec":
        return cls(cycles=list(sequence.cycles), amounts=list(amounts))


def ring_graph(*rings: Sequence[int]) -> Subgraph:
    """The directed subgraph made of the edges of the given cycles."""
    vertices = sorted({v for ring in rings for v in ring})
    edges = frozenset(e for ring in rings for e in cycle_edges(ring))
    return Subgraph(vertices=tuple(vertices), edges=edges)


def _first_hole_index(board: Board, ring: Sequence[int]) -> int:
    holes = [i for i, v in enumerate(ring) if board.is_hole(v)]
    if not holes:
        raise NoHoleOnCycle(f"no hole on cycle {tuple(ring)}")
    return min(holes, key=lambda i: ring[i])


def _rotate_cycle(board: Board, ring: Sequence[int], k: int) -> None:
    size = len(ring)
    for _ in range(k):
        i = _first_hole_index(board, ring)
        for s in range(1, size):
            board.move(ring[(i - s) % size], ring[(i - s + 1) % size])


def route_hole(board: Board, v: int, w: int) -> Path:
    """Runs ``h_{v,w}`` on ``board`` and returns the path it used."""
    if not board.is_hole(v):
        raise VertexNotHole(f"vertex {v} holds {board.occupant(v)}")
    if v == w:
        return (w,)
    path = board.graph.shortest_path(w, v)
    if path is None:
        raise Unreachable(f"no directed path from {w} to {v}")
    for i in range(len(path) - 1, 0, -1):
        board.move(path[i - 1], path[i])
    return path


def bring_hole(a: Configuration, d: Digraph, v: int, w: int) -> Plan:
    """
    Moves the hole at ``v`` to ``w`` along a shortest directed path from ``w`` to ``v``.

    Every occupant of the path shifts one step towards ``v``; nothing off the path moves.

    Args:
        a (Configuration): Current configuration.
        d (Digraph): The roadmap.
        v (int): Vertex holding the hole.
        w (int): Vertex the hole should reach.

    Returns:
        Plan: ``(u_{n-1} -> u_n) ... (u_1 -> u_2)`` for the path ``w = u_1, ..., u_n = v``.

    Example:
        bring_hole(a, five_cycle, v=0, w=3)
        > Plan(moves=[Move(src=4, dst=0), Move(src=3, dst=4)])
    """
    board = Board(d, a)
    route_hole(board, v, w)
    return board.plan()


def bring_back_hole(d: Digraph, a: Configuration, h_plan: Plan) -> Plan:
    return reverse_plan(d, a, h_plan)


def bring_hole_to_successor(a: Configuration, d: Digraph, v: int, w: int) -> tuple[Plan, int]:
    """
    Like ``bring_hole`` but stops on ``w``'s successor along the path, so that ``w`` keeps its occupant.
    """
    path = d.shortest_path(w, v)
    if path is None:
        raise Unreachable(f"no directed path from {w} to {v}")
    if len(path) < 2:
        raise Unreachable(f"vertex {w} already holds the hole and has no successor on the path")
    landing = path[1]
    return bring_hole(a, d, v, landing), landing


def cycle_rotation(a: Configuration, c: Sequence[int], k: int) -> Plan:
    """
    ``k`` one-step rotations of the directed cycle ``c``.

    Each step takes the hole on the cycle with the smallest vertex id and brings
    it to its cycle successor, which shifts every occupant of the cycle one
    vertex forward.
    """
    board = Board(ring_graph(c), a)
    _rotate_cycle(board, c, k)
    return board.plan()


def composite_rotation(a: Configuration, spec: RotationSpec) -> Plan:
    board = Board(ring_graph(*spec.cycles), a)
    for index, (ring, k) in enumerate(zip(spec.cycles, spec.amounts)):
        try:
            _rotate_cycle(board, ring, k)
        except NoHoleOnCycle as e:
            e.index = index
            raise
    return board.plan()


def inverse_rotation(spec: RotationSpec) -> RotationSpec:
    """Complementary rotations in reverse cycle order; composing both is the identity."""
    return RotationSpec(
        cycles=list(reversed(spec.cycles)),
        amounts=[len(ring) - k for ring, k in zip(reversed(spec.cycles), reversed(spec.amounts))],
    )


class ExactMover:
    """
    Exact swaps on top of a ``Board``.

    Every primitive here is built from ``Board.exact_move``, so each logged swap
    can be undone exactly by swapping back. ``mark`` and ``undo_segment`` give
    the conjugation ``g f g^-1`` used by all exchange constructions.
    """

    def __init__(self, board: Board):
        self.board = board
        self.log: list[Move] = []

    def swap(self, a: int, b: int) -> None:
        self.board.exact_move(a, b)
        self.log.append(Move(a, b))

    def mark(self) -> int:
        return len(self.log)

    def undo_segment(self, start: int, end: int) -> None:
        for a, b in reversed(self.log[start:end]):
            self.swap(b, a)

    def rotate(self, ring: Sequence[int], steps: int, driver: Optional[AgentLabel] = None) -> None:
        """
        Shifts every occupant of an undirected ring ``steps`` positions forward.

        The driving hole is ``driver`` when given, otherwise the hole on the ring
        with the smallest vertex id.
        """
        size = len(ring)
        steps %= size
        for _ in range(steps):
            if driver is None:
                i = _first_hole_index(self.board, ring)
            else:
                at = self.board.position(driver)
                if at not in ring:
                    raise NoHoleOnCycle(f"{driver} is not on ring {tuple(ring)}")
                i = ring.index(at)
            for s in range(1, size):
                self.swap(ring[(i - s) % size], ring[(i - s + 1) % size])

    def walk(self, path: Sequence[int]) -> None:
        """Carries the hole at ``path[0]`` to ``path[-1]``."""
        for i in range(1, len(path)):
            self.swap(path[i], path[i - 1])

    def hole_swap(self, path: Sequence[int]) -> None:
        """Exchanges the holes at both ends of ``path``; interior occupants end where they started."""
        last = len(path) - 1
        for i in range(1, last + 1):
            self.swap(path[i], path[i - 1])
        for i in range(last - 2, -1, -1):
            self.swap(path[i], path[i + 1])
