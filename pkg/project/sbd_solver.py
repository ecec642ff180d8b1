"""
Plans inside strongly biconnected components.

The workhorse is ``exchange``: an exact swap of a pebble and a hole that are
not adjacent, built from ring rotations and a hole parked in a pocket next to
the ring, then conjugated so that every other agent returns home. The entry
and attached-edge swaps are composed from the hole routing and cycle rotation
primitives; stay-in and two-component swaps run ``exchange`` in the world
their preconditions pick.
"""

import logging
from collections import deque
from enum import Enum
from typing import Mapping, Optional, Sequence

import networkx as nx
from pydantic import BaseModel, field_validator

from project.errors import (
    InvalidConfiguration,
    InvalidIntermediate,
    NoHoles,
    NotAttached,
    NotJoinedByArticulationPoint,
    TooFewHoles,
    Unreachable,
    VertexNotHole,
    VertexNotInComponent,
    WrongKind,
)
from project.graph_core import (
    ComponentKind,
    Decomposition,
    Digraph,
    Path,
    Subgraph,
    _Roadmap,
    classify_component,
    cycle_sequence,
    open_ear_decomposition,
    principal_cycle,
)
from project.motion_primitives import (
    ExactMover,
    RotationSpec,
    bring_back_hole,
    bring_hole,
    bring_hole_to_successor,
    composite_rotation,
    cycle_rotation,
    inverse_rotation,
)
from project.plan_engine import AgentKind, AgentLabel, Board, Configuration, Plan

logger = logging.getLogger(__name__)

Block = frozenset[int]


class AttachMode(str, Enum):
    ENTRY_EDGE = "EntryEdge"
    ATTACHED_EDGE = "AttachedEdge"


class AttachedComponent(BaseModel):
    """
    A strongly biconnected component plus one outside vertex ``v`` joined to ``z``.

    Args:
        component (Subgraph): The component ``B``.
        external_vertex (int): ``v``, not in ``B``.
        attach_vertex (int): ``z``, in ``B``.
        mode (AttachMode): ``EntryEdge`` adds ``(v, z)`` only, ``AttachedEdge`` adds both directions.
    """

    component: Subgraph
    external_vertex: int
    attach_vertex: int
    mode: AttachMode

    def world(self) -> Subgraph:
        v, z = self.external_vertex, self.attach_vertex
        edges = set(self.component.edges) | {(v, z)}
        if self.mode is AttachMode.ATTACHED_EDGE:
            edges.add((z, v))
        return Subgraph(
            vertices=tuple(sorted((*self.component.vertices, v))),
            edges=frozenset(edges),
        )


def _require_attached(ac: AttachedComponent, mode: AttachMode) -> None:
    if ac.mode is not mode:
        raise NotAttached(f"expected a component with mode {mode.value}, got {ac.mode.value}")
    if ac.component.contains(ac.external_vertex):
        raise NotAttached(f"vertex {ac.external_vertex} belongs to the component")
    if not ac.component.contains(ac.attach_vertex):
        raise NotAttached(f"vertex {ac.attach_vertex} is not in the component")


class SwapGadget(BaseModel):
    """A basic cycle together with a non-trivial ear whose ends both lie on it."""

    basic_cycle: Path
    ear: Path

    @field_validator("basic_cycle")
    @classmethod
    def _long_enough(cls, ring: Path) -> Path:
        if len(ring) < 3:
            raise ValueError("a swap gadget needs a basic cycle of at least three vertices")
        return ring


def swap_gadget(c: Subgraph) -> SwapGadget:
    if classify_component(c) is ComponentKind.PARTIALLY_BIDIRECTIONAL_CYCLE:
        raise WrongKind("partially-bidirectional cycles have no swap gadget")
    ed = open_ear_decomposition(c)
    ring = ed.basic_cycle
    on_ring = set(ring)
    for ear in ed.ears[1:]:
        if not ear.is_trivial and ear.path[0] in on_ring and ear.path[-1] in on_ring:
            return SwapGadget(basic_cycle=ring, ear=ear.path)
    raise WrongKind("component has no regular open ear decomposition")


def blocks_of(graph: _Roadmap) -> list[Block]:
    return [frozenset(b) for b in nx.biconnected_components(graph.underlying_networkx())]


def ring_through(g: nx.Graph, x: int, y: int) -> Path:
    """
    A simple cycle of the biconnected graph ``g`` passing through ``x`` and ``y``,
    starting at ``x``.
    """
    if g.has_edge(x, y):
        back = nx.shortest_path(nx.restricted_view(g, [], [(x, y)]), y, x)
        return (x, *back[:-1])
    first, second = sorted(nx.node_disjoint_paths(g, x, y), key=lambda p: (len(p), p))[:2]
    return (*first[:-1], *second[::-1][:-1])


def _second_hole(board: Board, h1: AgentLabel, x: int) -> AgentLabel:
    candidates = [
        board.occupant(v)
        for v in board.hole_vertices(board.graph.vertex_ids())
        if v != x and board.occupant(v) != h1
    ]
    if not candidates:
        raise TooFewHoles("the exchange needs a second hole")
    return min(candidates, key=lambda label: label.id)


def exchange(
    mover: ExactMover, x: int, y: int, blocks: Optional[Sequence[Block]] = None
) -> None:
    """
    Exchanges the occupants of ``x`` and ``y`` exactly; ``y`` must hold a hole.

    Both vertices have to share a biconnected block of the world's underlying
    graph and the world must hold a second hole. When the ring through ``x``
    and ``y`` visits every vertex of the world, a chord splits it and the swap
    runs on the shorter sub-ring after a rotation that brings both endpoints
    onto it.

    Args:
        mover (ExactMover): Board of the world the swap runs in; receives the moves.
        x (int): Vertex of the first occupant.
        y (int): Vertex holding the hole.
        blocks (Optional[Sequence[Block]]): Precomputed biconnected blocks of the world.
    """
    board = mover.board
    if not board.is_hole(y):
        raise VertexNotHole(f"vertex {y} holds {board.occupant(y)}")
    if board.graph.adjacent(x, y):
        mover.swap(x, y)
        return
    first, h1 = board.occupant(x), board.occupant(y)
    h2 = _second_hole(board, h1, x)
    block = next((b for b in (blocks or blocks_of(board.graph)) if x in b and y in b), None)
    if block is None:
        raise VertexNotInComponent(f"vertices {x} and {y} share no biconnected block")
    ring = ring_through(board.graph.underlying_networkx().subgraph(block), x, y)
    if len(ring) < len(board.graph.vertex_ids()):
        _exchange_on_ring(mover, ring, x, y, h2)
        return

    size = len(ring)
    chord = next(
        (
            (i, j)
            for i in range(size)
            for j in range(i + 2, size)
            if not (i == 0 and j == size - 1) and board.graph.adjacent(ring[i], ring[j])
        ),
        None,
    )
    if chord is None:
        raise WrongKind("the world is a single cycle, occupants cannot be exchanged")
    ia, ib = chord
    ix, iy = ring.index(x), ring.index(y)
    gap = (iy - ix) % size
    shift = start = length = 0
    for a, b in ((ia, ib), (ib, ia + size)):
        length = b - a
        if gap <= length:
            shift, start = a - ix, a
            break
        if size - gap <= length:
            shift, start = a - iy, a
            break
    mk = mover.mark()
    mover.rotate(ring, shift, driver=h2)
    mk2 = mover.mark()
    sub_ring = tuple(ring[(start + s) % size] for s in range(length + 1))
    _exchange_on_ring(mover, sub_ring, board.position(first), board.position(h1), h2)
    mover.undo_segment(mk, mk2)


def _exchange_on_ring(mover: ExactMover, ring: Path, x: int, y: int, h2: AgentLabel) -> None:
    board = mover.board
    graph = board.graph
    on_ring = set(ring)
    first, h1 = board.occupant(x), board.occupant(y)
    size = len(ring)
    mk = mover.mark()
    q = board.position(h2)
    if q not in on_ring:
        prev: dict[int, Optional[int]] = {q: None}
        queue = deque([q])
        pocket = z = None
        while queue:
            a = queue.popleft()
            touching = [b for b in graph.neighbors(a) if b in on_ring]
            if touching:
                pocket, z = a, min(touching)
                break
            for b in graph.neighbors(a):
                if b not in on_ring and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if pocket is None:
            raise Unreachable("second hole cannot reach the ring")
        path = []
        cur: Optional[int] = pocket
        while cur is not None:
            path.append(cur)
            cur = prev[cur]
        mover.walk(path[::-1])
    else:
        iq = ring.index(q)
        best: Optional[tuple[int, int, int]] = None
        for j, u in enumerate(ring):
            for b in graph.neighbors(u):
                if b in on_ring:
                    continue
                dist = min((j - iq) % size, (iq - j) % size)
                if best is None or dist < best[0]:
                    best = (dist, j, b)
        if best is None:
            raise WrongKind("no vertex off the ring to park the second hole")
        _, j, pocket = best
        z = ring[j]
        forward = (j - iq) % size
        if forward <= size - forward:
            path = [ring[(iq + s) % size] for s in range(forward + 1)]
        else:
            path = [ring[(iq - s) % size] for s in range(size - forward + 1)]
        mover.walk([*path, pocket])
    mk2 = mover.mark()
    _gadget(mover, ring, z, pocket, first, h1)
    mover.undo_segment(mk, mk2)


def _gadget(
    mover: ExactMover, ring: Path, z: int, pocket: int, first: AgentLabel, h1: AgentLabel
) -> None:
    """Swaps ``first`` and ``h1`` on the ring using the hole parked in ``pocket`` next to ``z``."""
    board = mover.board
    size = len(ring)
    iz = ring.index(z)
    ix, iy = ring.index(board.position(first)), ring.index(board.position(h1))
    d1 = (iz - ix) % size
    mover.rotate(ring, d1)
    mover.swap(z, pocket)
    k = (iz - (iy + d1)) % size
    mover.rotate(ring, k)
    mover.swap(pocket, z)
    mover.rotate(ring, -d1 - k)
    e = (iz - ix) % size
    mover.rotate(ring, e)
    mover.swap(pocket, z)
    mover.rotate(ring, size - e)


def check_exchange(board: Board, before: Configuration, x: int, y: int) -> None:
    expected = before.occupancy()
    expected[x], expected[y] = expected[y], expected[x]
    if board.at != expected:
        raise InvalidIntermediate(f"exchange of {x} and {y} disturbed other agents")


def cyclic_order_matches(ring: Sequence[int], starts: Mapping[int, int], targets: Mapping[int, int]) -> bool:
    """
    True when the pebbles appear in the same cyclic order along ``ring`` at
    their start and target vertices.
    """
    index = {v: i for i, v in enumerate(ring)}
    by_start = sorted(starts, key=lambda p: index[starts[p]])
    by_target = sorted(starts, key=lambda p: index[targets[p]])
    if not by_start:
        return True
    offset = by_target.index(by_start[0])
    k = len(by_start)
    return all(by_target[(offset + j) % k] == p for j, p in enumerate(by_start))


def solve_pb_cycle(c: Subgraph, a_start: Configuration, targets: Mapping[int, int]) -> Optional[Plan]:
    """
    Solves MAPF on a partially-bidirectional cycle by forward moves along its covering cycle.

    Pebbles can never overtake each other on the cycle, so the instance is
    feasible exactly when the cyclic order of pebbles is the same at start and
    target. Each pebble gets an unrolled final position (the smallest position
    at or after its start congruent to its target, strictly after its
    predecessor's) and pebbles are then advanced greedily into free vertices.

    Args:
        c (Subgraph): A partially-bidirectional cycle.
        a_start (Configuration): Start configuration.
        targets (Mapping[int, int]): Pebble id to target vertex.

    Returns:
        Optional[Plan]: The plan, or None when the cyclic orders differ.
    """
    ring = principal_cycle(c)
    size = len(ring)
    board = Board(c, a_start)
    if not board.hole_vertices(ring):
        raise NoHoles("a partially-bidirectional cycle needs at least one hole")
    index = {v: i for i, v in enumerate(ring)}
    order = [board.occupant(v).id for v in ring if not board.is_hole(v)]
    if not order:
        return Plan()
    starts = {p: a_start.pebbles[p] for p in order}
    for p in order:
        if targets.get(p) not in index:
            raise InvalidConfiguration(f"pebble {p} has no target on the cycle")
    if not cyclic_order_matches(ring, starts, targets):
        logger.info("pebbles are in the wrong cyclic order, instance is infeasible")
        return None

    def up(base: int, t: int) -> int:
        return base + (t - base) % size

    s = [index[starts[p]] for p in order]
    t = [index[targets[p]] for p in order]
    k = len(order)
    f0 = up(s[0], t[0])
    finals: Optional[list[int]] = None
    for _ in range(k + 2):
        finals = [f0]
        for j in range(1, k):
            finals.append(up(max(s[j], finals[j - 1] + 1), t[j]))
        if finals[-1] < f0 + size:
            break
        f0 += size
        finals = None
    if finals is None:
        raise InvalidIntermediate("could not unroll the pebble order")

    remaining = [f - x for f, x in zip(finals, s)]
    current = list(s)
    while any(remaining):
        moved = False
        for j in range(k):
            if not remaining[j]:
                continue
            u, v = ring[current[j] % size], ring[(current[j] + 1) % size]
            if board.is_hole(v):
                board.move(u, v)
                current[j] += 1
                remaining[j] -= 1
                moved = True
        if not moved:
            raise InvalidIntermediate("pebbles deadlocked on the cycle")
    return board.plan()


def _nearest_hole_path(board: Board, start: int, avoid: int) -> Optional[Path]:
    prev: dict[int, Optional[int]] = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if board.is_hole(x):
            path = []
            cur: Optional[int] = x
            while cur is not None:
                path.append(cur)
                cur = prev[cur]
            return tuple(path[::-1])
        for y in board.graph.successors(x):
            if y != avoid and y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def mpp_solve(c: Subgraph, a: Configuration, p: int, v: int) -> Plan:
    """
    Moves pebble ``p`` to ``v`` inside a strongly biconnected component; other agents may move.

    Rotates each cycle of a cycle sequence from the pebble's vertex to ``v`` in
    turn, fetching a hole onto the cycle first when it has none.

    Args:
        c (Subgraph): A strongly biconnected component.
        a (Configuration): Current configuration.
        p (int): Pebble id.
        v (int): Destination vertex in ``c``.

    Returns:
        Plan: A plan after which ``p`` sits on ``v``.
    """
    board = Board(c, a)
    mover = ExactMover(board)
    label = AgentLabel(AgentKind.PEBBLE, p)
    if not c.contains(v):
        raise VertexNotInComponent(f"vertex {v} is not in the component")
    if not board.hole_vertices(c.vertices):
        raise NoHoles("moving a pebble needs at least one hole")
    x = board.position(label)
    if x == v:
        return Plan()
    sequence = cycle_sequence(c, open_ear_decomposition(c), x, v)
    for j, ring in enumerate(sequence.cycles):
        x = board.position(label)
        dst = sequence.links[j][0] if j + 1 < len(sequence.cycles) else v
        if not board.hole_vertices(ring):
            paths = [_nearest_hole_path(board, u, x) for u in ring if u != x]
            fetched = min((q for q in paths if q is not None), key=len, default=None)
            if fetched is not None:
                for i in range(len(fetched) - 2, -1, -1):
                    board.move(fetched[i], fetched[i + 1])
            else:
                target = next(u for u in ring if u != x)
                path = c.undirected_path(
                    board.hole_vertices(c.vertices)[0], target, lambda y: y != x
                )
                if path is None:
                    raise Unreachable(f"no hole can reach cycle {ring}")
                mover.walk(path)
        size = len(ring)
        mover.rotate(ring, (ring.index(dst) - ring.index(board.position(label))) % size)
    if board.position(label) != v:
        raise InvalidIntermediate(f"pebble {p} did not reach {v}")
    return board.plan()


def entry_swap(ac: AttachedComponent, a: Configuration, w: int) -> Plan:
    """
    Brings the pebble on the external vertex into the component at ``w``.

    A second hole of the component is first brought onto a successor ``u`` of
    ``w`` unless one already sits there. The cycles of a cycle sequence from
    ``w`` to ``z`` whose first cycle uses ``(w, u)`` are then rotated in turn so
    that the hole at ``w`` reaches ``z`` with the second hole right behind it.
    The pebble enters through ``(v, z)``, the complementary rotations in
    reverse cycle order carry it back to ``w`` and the second hole is brought
    back. A partially-bidirectional cycle is rotated as a whole instead.

    Args:
        ac (AttachedComponent): Component with its entry edge ``(v, z)``.
        a (Configuration): A pebble on ``v``, a hole on ``w`` and a second hole in the component.
        w (int): Vertex of the component holding a hole.

    Returns:
        Plan: Plan whose result is ``A[v, w]``.

    Example:
        entry_swap(ac, a, w=9)  # holes on 9 and 10, entry edge (0, 1)
        > Plan with 53 moves; Move(src=0, dst=1) is move 26
    """
    _require_attached(ac, AttachMode.ENTRY_EDGE)
    board = Board(ac.world(), a)
    v, z = ac.external_vertex, ac.attach_vertex
    component = ac.component
    if not component.contains(w):
        raise VertexNotInComponent(f"vertex {w} is not in the component")
    if board.is_hole(v):
        raise InvalidConfiguration(f"external vertex {v} must hold a pebble")
    if not board.is_hole(w):
        raise VertexNotHole(f"vertex {w} holds {board.occupant(w)}")
    if w == z:
        board.move(v, z)
        return board.plan()
    others = [board.occupant(u) for u in board.hole_vertices(component.vertices) if u != w]
    if not others:
        raise TooFewHoles("entering a component needs a second hole inside it")
    h2 = min(others, key=lambda label: label.id)

    if classify_component(component) is ComponentKind.PARTIALLY_BIDIRECTIONAL_CYCLE:
        ring = principal_cycle(component)
        size = len(ring)
        d = (ring.index(z) - ring.index(w)) % size
        board.replay(cycle_rotation(board.configuration(), ring, d))
        board.move(v, z)
        board.replay(cycle_rotation(board.configuration(), ring, size - d))
        check_exchange(board, a, v, w)
        return board.plan()

    before = board.configuration()
    fetch = Plan()
    q = board.position(h2)
    u = q
    if not component.has_edge(w, q):
        fetch, u = bring_hole_to_successor(before, component, q, w)
        board.replay(fetch)
    sequence = cycle_sequence(component, open_ear_decomposition(component), w, z, via=u)
    stops = [w, *(link[0] for link in sequence.links), z]
    amounts = [
        (ring.index(stops[j + 1]) - ring.index(stops[j])) % len(ring)
        for j, ring in enumerate(sequence.cycles)
    ]
    rotation = RotationSpec.over(sequence, amounts)
    board.replay(composite_rotation(board.configuration(), rotation))
    board.move(v, z)
    board.replay(composite_rotation(board.configuration(), inverse_rotation(rotation)))
    if fetch.moves:
        board.replay(bring_back_hole(component, before, fetch))
    check_exchange(board, a, v, w)
    logger.debug(
        "entry swap through %d->%d over %d cycles took %d moves",
        v, z, len(sequence.cycles), len(board.moves),
    )
    return board.plan()


def stay_in_swap(c: Subgraph, a: Configuration, v: int, w: int) -> Plan:
    """Exact swap of the pebble at ``v`` with the hole at ``w`` inside a component with a regular ear decomposition."""
    swap_gadget(c)
    for x in (v, w):
        if not c.contains(x):
            raise VertexNotInComponent(f"vertex {x} is not in the component")
    board = Board(c, a)
    if len(board.hole_vertices(c.vertices)) < 2:
        raise TooFewHoles("a swap inside a component needs two holes in it")
    exchange(ExactMover(board), v, w)
    check_exchange(board, a, v, w)
    return board.plan()


def attached_edge_swap(ac: AttachedComponent, a: Configuration, u: int, w: int) -> Plan:
    """
    Exact swap of the pebble at ``u`` with the hole at ``w`` using the attached edge as a pocket.

    A component with a regular ear decomposition swaps inside itself when it
    holds both holes, otherwise the swap runs on the component plus ``v``. On a
    partially-bidirectional cycle a second hole is brought onto ``v``; the
    cycle is rotated until the pebble reaches ``y``, the pebble steps out onto
    ``v``, the cycle turns until the hole from ``w`` reaches ``y``, the pebble
    steps back and a last rotation carries it to ``w``. The two holes then
    trade places along a path from ``v`` and the second hole is brought back.

    Args:
        ac (AttachedComponent): Component with its attached edge ``(v, y)``.
        a (Configuration): Current configuration; the world needs two holes.
        u (int): Vertex of the pebble.
        w (int): Vertex holding a hole.

    Returns:
        Plan: Plan whose result is ``A[u, w]``.
    """
    _require_attached(ac, AttachMode.ATTACHED_EDGE)
    component = ac.component
    for x in (u, w):
        if not component.contains(x):
            raise VertexNotInComponent(f"vertex {x} is not in the component")
    world = ac.world()
    board = Board(world, a)
    if not board.is_hole(w):
        raise VertexNotHole(f"vertex {w} holds {board.occupant(w)}")
    holes = board.hole_vertices(world.vertex_ids())
    if classify_component(component) is ComponentKind.REGULAR_OED:
        if len(board.hole_vertices(component.vertices)) >= 2:
            return stay_in_swap(component, a, u, w)
        if len(holes) < 2:
            raise TooFewHoles("an attached-edge swap needs two holes")
        exchange(ExactMover(board), u, w)
        check_exchange(board, a, u, w)
        return board.plan()
    if len(holes) < 2:
        raise TooFewHoles("an attached-edge swap needs two holes")

    v, y = ac.external_vertex, ac.attach_vertex
    first, h1 = board.occupant(u), board.occupant(w)
    before = board.configuration()
    fetch = Plan()
    if not board.is_hole(v):
        q = min((x for x in holes if x != w), key=lambda x: board.occupant(x).id)
        fetch = bring_hole(before, world, q, v)
        board.replay(fetch)
    ring = principal_cycle(component)
    size = len(ring)
    index = {x: i for i, x in enumerate(ring)}
    u1, w1 = board.position(first), board.position(h1)
    d1 = (index[y] - index[u1]) % size
    k = (index[u1] - index[w1]) % size
    board.replay(cycle_rotation(board.configuration(), ring, d1))
    board.move(y, v)
    board.replay(cycle_rotation(board.configuration(), ring, k))
    board.move(v, y)
    board.replay(cycle_rotation(board.configuration(), ring, (index[w1] - index[y]) % size))
    ExactMover(board).hole_swap(world.undirected_path(v, u1))
    if fetch.moves:
        board.replay(bring_back_hole(world, before, fetch))
    check_exchange(board, a, u, w)
    logger.debug("attached-edge swap through %d<->%d took %d moves", y, v, len(board.moves))
    return board.plan()


def two_bcc_swap(d: Digraph, dec: Decomposition, a: Configuration, a_v: int, b_v: int) -> Plan:
    """
    Exact swap of the pebble at ``a_v`` and the hole at ``b_v`` across two
    components sharing an articulation point.

    The pebble is exchanged onto the articulation point, then into ``b_v``,
    and the two holes involved are swapped back; if the articulation point
    holds a pebble, a third hole is walked onto it first and returned after.

    Args:
        d (Digraph): The roadmap.
        dec (Decomposition): Its decomposition.
        a (Configuration): Current configuration.
        a_v (int): Vertex of the pebble.
        b_v (int): Vertex of the hole.

    Returns:
        Plan: Plan whose result is ``A[a_v, b_v]``.
    """
    board = Board(d, a)
    mover = ExactMover(board)
    if not board.is_hole(b_v):
        raise VertexNotHole(f"vertex {b_v} holds {board.occupant(b_v)}")
    blocks = blocks_of(d)
    if dec.component_containing(a_v, b_v) is not None:
        exchange(mover, a_v, b_v, blocks)
        check_exchange(board, a, a_v, b_v)
        return board.plan()
    joint = next(
        (
            x
            for first in dec.components_of(a_v)
            for second in dec.components_of(b_v)
            for x in sorted(set(first.vertices) & set(second.vertices))
            if x in dec.junctions
        ),
        None,
    )
    if joint is None:
        raise NotJoinedByArticulationPoint(f"vertices {a_v} and {b_v} are not in adjacent components")
    h1 = board.occupant(b_v)

    def core() -> None:
        exchange(mover, a_v, joint, blocks)
        exchange(mover, joint, b_v, blocks)
        if d.adjacent(a_v, joint):
            mover.swap(a_v, joint)
        else:
            mover.hole_swap(d.undirected_path(a_v, joint))

    if board.is_hole(joint):
        core()
    else:
        walks = [
            d.undirected_path(u, joint, lambda y: y not in (a_v, b_v))
            for u in board.hole_vertices()
            if board.occupant(u) != h1
        ]
        walks = [p for p in walks if p is not None]
        if not walks:
            raise TooFewHoles("a swap across components needs a second hole")
        mk = mover.mark()
        mover.walk(min(walks, key=len))
        mk2 = mover.mark()
        core()
        mover.undo_segment(mk, mk2)
    check_exchange(board, a, a_v, b_v)
    logger.debug("swap across articulation point %d took %d moves", joint, len(board.moves))
    return board.plan()
