"""
Roadmap graphs and their structure: strong connectivity, biconnected
decomposition into components and corridors, component classification,
open ear decompositions and cycle sequences.
"""

import logging
from collections import deque
from enum import Enum
from itertools import islice
from typing import Any, Callable, Iterable, Optional, Sequence

import networkx as nx
from pydantic import BaseModel, Field, PrivateAttr, ValidationInfo, field_validator

from project.errors import (
    NotStronglyBiconnected,
    NotStronglyConnected,
    VertexNotInComponent,
)

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
Path = tuple[int, ...]

SIMPLE_CYCLE_CAP = 2000


class _Roadmap(BaseModel):
    """
    Adjacency queries shared by whole digraphs and their induced subgraphs.

    Subclasses declare ``edges`` and a vertex field; adjacency is built once
    after validation and kept in private attributes.
    """

    _out: dict[int, tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _in: dict[int, tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _und: dict[int, tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _vertex_set: frozenset[int] = PrivateAttr(default_factory=frozenset)
    _paths: dict[Edge, Optional[Path]] = PrivateAttr(default_factory=dict)
    _nx_underlying: Optional[nx.Graph] = PrivateAttr(default=None)
    _nx_search: dict[bool, nx.Graph] = PrivateAttr(default_factory=dict)

    def vertex_ids(self) -> Sequence[int]:
        raise NotImplementedError

    def model_post_init(self, __context: Any) -> None:
        out: dict[int, list[int]] = {v: [] for v in self.vertex_ids()}
        inn: dict[int, list[int]] = {v: [] for v in self.vertex_ids()}
        und: dict[int, set[int]] = {v: set() for v in self.vertex_ids()}
        for u, v in self.edges:
            out[u].append(v)
            inn[v].append(u)
            und[u].add(v)
            und[v].add(u)
        self._out = {v: tuple(sorted(a)) for v, a in out.items()}
        self._in = {v: tuple(sorted(a)) for v, a in inn.items()}
        self._und = {v: tuple(sorted(a)) for v, a in und.items()}
        self._vertex_set = frozenset(self.vertex_ids())

    def __eq__(self, other: object) -> bool:
        # private caches are not part of the value
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def contains(self, v: int) -> bool:
        return v in self._vertex_set

    def successors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours in the underlying undirected graph."""
        return self._und[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def shortest_path(
        self, src: int, dst: int, avoid: Iterable[int] = ()
    ) -> Optional[Path]:
        """
        Breadth-first directed path from ``src`` to ``dst``.

        Runs ``networkx`` breadth-first search over a view without the avoided
        vertices. Successors are expanded in increasing id order, so ties are
        broken by the smallest vertex id. Paths without an ``avoid`` set are memoised.

        Args:
            src (int): First vertex of the path.
            dst (int): Last vertex of the path.
            avoid (Iterable[int]): Vertices the path may not enter.

        Returns:
            Optional[Path]: The vertex sequence ``src..dst`` or None when unreachable.
        """
        blocked = frozenset(avoid)
        if not blocked and (src, dst) in self._paths:
            return self._paths[(src, dst)]
        path = _bfs(self._search_graph(directed=True), src, dst, lambda y: y not in blocked)
        if not blocked:
            self._paths[(src, dst)] = path
        return path

    def undirected_path(
        self, src: int, dst: int, allowed: Optional[Callable[[int], bool]] = None
    ) -> Optional[Path]:
        return _bfs(self._search_graph(directed=False), src, dst, allowed or (lambda y: True))

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertex_ids())
        g.add_edges_from(sorted(self.edges))
        return g

    def underlying_networkx(self) -> nx.Graph:
        if self._nx_underlying is None:
            g = nx.Graph()
            g.add_nodes_from(self.vertex_ids())
            g.add_edges_from(sorted(self.edges))
            self._nx_underlying = g
        return self._nx_underlying

    def _search_graph(self, directed: bool) -> nx.Graph:
        # built from the sorted adjacency, so breadth-first search meets smaller ids first
        if directed not in self._nx_search:
            self._nx_search[directed] = nx.from_dict_of_lists(
                self._out if directed else self._und,
                create_using=nx.DiGraph if directed else nx.Graph,
            )
        return self._nx_search[directed]


def _bfs(
    g: nx.Graph,
    src: int,
    dst: int,
    allowed: Callable[[int], bool],
) -> Optional[Path]:
    if src == dst:
        return (src,)
    view = nx.subgraph_view(g, filter_node=lambda y: y == src or allowed(y))
    prev: dict[int, int] = {}
    for x, y in nx.bfs_edges(view, src):
        prev[y] = x
        if y == dst:
            break
    else:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


class Digraph(_Roadmap):
    """
    A directed roadmap on vertices ``0..vertex_count-1``.
    """

    vertex_count: int = Field(ge=0)
    edges: frozenset[Edge] = frozenset()

    @field_validator("edges")
    @classmethod
    def _check_edges(cls, edges: frozenset[Edge], info: ValidationInfo) -> frozenset[Edge]:
        n = info.data.get("vertex_count")
        if n is None:
            return edges
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        return edges

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Edge]) -> "Digraph":
        return cls(vertex_count=vertex_count, edges=frozenset(tuple(e) for e in edges))

    def vertex_ids(self) -> Sequence[int]:
        return range(self.vertex_count)

    def subgraph(self, vertices: Iterable[int]) -> "Subgraph":
        keep = frozenset(vertices)
        return Subgraph(
            vertices=tuple(sorted(keep)),
            edges=frozenset((u, v) for u, v in self.edges if u in keep and v in keep),
        )


class UndirectedGraph(BaseModel):
    """Edges are stored as ordered pairs ``(min, max)``."""

    vertex_count: int = Field(ge=0)
    edges: frozenset[Edge] = frozenset()

    @field_validator("edges")
    @classmethod
    def _normalise(cls, edges: frozenset[Edge], info: ValidationInfo) -> frozenset[Edge]:
        n = info.data.get("vertex_count")
        normalised = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if n is not None and not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {{{u}, {v}}} references a vertex outside 0..{n - 1}")
            normalised.add((min(u, v), max(u, v)))
        return frozenset(normalised)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(sorted(self.edges))
        return g


class ComponentKind(str, Enum):
    PARTIALLY_BIDIRECTIONAL_CYCLE = "PartiallyBidirectionalCycle"
    REGULAR_OED = "RegularOed"


class Subgraph(_Roadmap):
    """An induced directed subgraph that keeps the ids of its parent digraph."""

    vertices: tuple[int, ...]
    edges: frozenset[Edge] = frozenset()

    @field_validator("edges")
    @classmethod
    def _check_edges(cls, edges: frozenset[Edge], info: ValidationInfo) -> frozenset[Edge]:
        members = set(info.data.get("vertices", ()))
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in members or v not in members:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
        return edges

    def vertex_ids(self) -> Sequence[int]:
        return self.vertices


class StronglyBiconnectedComponent(Subgraph):
    kind: ComponentKind


class Decomposition(BaseModel):
    """
    Non-trivial strongly biconnected components, articulation points and the
    corridors (chains of bidirectional bridge pairs) that glue them together.

    ``articulation_points`` are all cut vertices of the underlying graph, so
    they include the interior vertices of corridors as well as the vertices
    where components meet.
    """

    components: list[StronglyBiconnectedComponent]
    articulation_points: frozenset[int]
    corridors: list[Path]

    _by_vertex: dict[int, list[int]] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context: Any) -> None:
        index: dict[int, list[int]] = {}
        for i, component in enumerate(self.components):
            for v in component.vertices:
                index.setdefault(v, []).append(i)
        self._by_vertex = index

    @property
    def junctions(self) -> frozenset[int]:
        """Articulation points that are not interior to a corridor."""
        interior = {v for corridor in self.corridors for v in corridor[1:-1]}
        return self.articulation_points - interior

    def components_of(self, v: int) -> list[StronglyBiconnectedComponent]:
        return [self.components[i] for i in self._by_vertex.get(v, [])]

    def component_containing(self, *vertices: int) -> Optional[StronglyBiconnectedComponent]:
        """The component holding all given vertices, if any."""
        if not vertices:
            return None
        shared = set(self._by_vertex.get(vertices[0], []))
        for v in vertices[1:]:
            shared &= set(self._by_vertex.get(v, []))
        return self.components[min(shared)] if shared else None


class Ear(BaseModel):
    """
    A directed path; the basic cycle is stored closed (first vertex repeated last).
    """

    path: Path

    @property
    def is_cycle(self) -> bool:
        return len(self.path) > 1 and self.path[0] == self.path[-1]

    @property
    def is_trivial(self) -> bool:
        return len(self.path) == 2

    @property
    def endpoints(self) -> Edge:
        return self.path[0], self.path[-1]

    @property
    def internal(self) -> Path:
        return self.path[1:-1]

    @property
    def edges(self) -> list[Edge]:
        return list(zip(self.path, self.path[1:]))


class EarDecomposition(BaseModel):
    ears: list[Ear]
    is_open: bool = True
    is_regular: bool = False

    @property
    def basic_cycle(self) -> Path:
        return self.ears[0].path[:-1]


class CycleSequence(BaseModel):
    """
    Directed cycles ``C_1..C_n`` (vertex rings in cycle order) where consecutive
    cycles share the linking edge ``links[j] = (a_j, b_j)``.
    """

    cycles: list[Path]
    links: list[Edge]

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


def underlying_graph(d: Digraph) -> UndirectedGraph:
    return UndirectedGraph(vertex_count=d.vertex_count, edges=d.edges)


def is_strongly_connected(d: _Roadmap) -> bool:
    if len(d.vertex_ids()) <= 1:
        return True
    return nx.is_strongly_connected(d.to_networkx())


def is_partially_bidirectional_cycle(g: _Roadmap) -> bool:
    """True when the underlying graph is a single cycle on at least three vertices."""
    vertices = g.vertex_ids()
    return len(vertices) >= 3 and all(len(g.neighbors(v)) == 2 for v in vertices) and nx.is_connected(
        g.underlying_networkx()
    )


def decompose(d: Digraph) -> Decomposition:
    """
    Splits a strongly connected digraph into its non-trivial strongly biconnected
    components, articulation points and corridors.

    Components come from the biconnected components of the underlying graph;
    two-vertex blocks are bridges and are merged into maximal corridors.

    Args:
        d (Digraph): A strongly connected digraph.

    Returns:
        Decomposition: Components ordered by their smallest vertex, corridors as
        vertex sequences with the smaller endpoint first.

    Example:
        decompose(Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0)]))
        > Decomposition(components=[<one cycle>], articulation_points=frozenset(), corridors=[])
    """
    if not is_strongly_connected(d):
        raise NotStronglyConnected("digraph is not strongly connected")
    g = d.underlying_networkx()
    blocks = sorted(tuple(sorted(b)) for b in nx.biconnected_components(g))
    components = []
    bridges = []
    for block in blocks:
        if len(block) == 2:
            bridges.append(block)
            continue
        sub = d.subgraph(block)
        components.append(
            StronglyBiconnectedComponent(
                vertices=sub.vertices, edges=sub.edges, kind=classify_component(sub)
            )
        )
    decomposition = Decomposition(
        components=components,
        articulation_points=frozenset(nx.articulation_points(g)),
        corridors=_corridors(g, bridges),
    )
    logger.debug(
        "decomposed %d vertices into %d components and %d corridors",
        d.vertex_count,
        len(components),
        len(decomposition.corridors),
    )
    return decomposition


def _corridors(g: nx.Graph, bridges: list[Path]) -> list[Path]:
    bridge_set = {frozenset(b) for b in bridges}

    def inner(x: int) -> bool:
        return g.degree(x) == 2 and all(frozenset((x, y)) in bridge_set for y in g[x])

    seen: set[frozenset[int]] = set()
    corridors = []
    for u, v in bridges:
        if frozenset((u, v)) in seen:
            continue
        seen.add(frozenset((u, v)))
        chain = [u, v]
        while inner(chain[-1]):
            nxt = next(y for y in g[chain[-1]] if y != chain[-2])
            seen.add(frozenset((chain[-1], nxt)))
            chain.append(nxt)
        while inner(chain[0]):
            nxt = next(y for y in g[chain[0]] if y != chain[1])
            seen.add(frozenset((chain[0], nxt)))
            chain.insert(0, nxt)
        if chain[0] > chain[-1]:
            chain.reverse()
        corridors.append(tuple(chain))
    return sorted(corridors)


def _require_strongly_biconnected(c: _Roadmap) -> None:
    if len(c.vertex_ids()) < 3:
        raise NotStronglyBiconnected("a non-trivial component needs at least three vertices")
    if not nx.is_strongly_connected(c.to_networkx()):
        raise NotStronglyBiconnected("component is not strongly connected")
    if not nx.is_biconnected(c.underlying_networkx()):
        raise NotStronglyBiconnected("underlying graph of the component has a cut vertex")


def classify_component(c: Subgraph) -> ComponentKind:
    _require_strongly_biconnected(c)
    if is_partially_bidirectional_cycle(c):
        return ComponentKind.PARTIALLY_BIDIRECTIONAL_CYCLE
    return ComponentKind.REGULAR_OED


def principal_cycle(c: _Roadmap) -> Path:
    """
    The directed cycle through every vertex of a partially-bidirectional cycle,
    starting at its smallest vertex.
    """
    start = min(c.vertex_ids())
    for first in c.neighbors(start):
        ring = [start]
        prev, cur = start, first
        while cur != start:
            ring.append(cur)
            prev, cur = cur, next(y for y in c.neighbors(cur) if y != prev)
        if all(c.has_edge(v, ring[(i + 1) % len(ring)]) for i, v in enumerate(ring)):
            return tuple(ring)
    raise NotStronglyBiconnected("no directed cycle covers the component")


def _find_ear(c: _Roadmap, vertices: Sequence[int], attached: set[int]) -> Optional[list[int]]:
    """Shortest-branch open ear with both ends in ``attached`` and a fresh interior."""
    for w in vertices:
        if w in attached:
            continue
        back: dict[int, Optional[int]] = {w: None}
        ins: dict[int, int] = {}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in c.predecessors(x):
                if y in attached:
                    ins.setdefault(y, x)
                elif y not in back:
                    back[y] = x
                    queue.append(y)
        fwd: dict[int, Optional[int]] = {w: None}
        outs: dict[int, int] = {}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in c.successors(x):
                if y in attached:
                    outs.setdefault(y, x)
                elif y not in fwd:
                    fwd[y] = x
                    queue.append(y)
        for x in sorted(ins):
            for y in sorted(outs):
                if x == y:
                    continue
                first = _chain(ins[x], back)
                second = _chain(outs[y], fwd)[::-1]
                position = {v: i for i, v in enumerate(second)}
                cut = next(i for i, v in enumerate(first) if v in position)
                return [x, *first[:cut], *second[position[first[cut]] :], y]
    return None


def _chain(start: int, links: dict[int, Optional[int]]) -> list[int]:
    out = []
    cur: Optional[int] = start
    while cur is not None:
        out.append(cur)
        cur = links[cur]
    return out


def _grow_ears(c: _Roadmap, ring: Sequence[int], first: list[list[int]]) -> Optional[list[Ear]]:
    vertices = sorted(c.vertex_ids())
    paths = [[*ring, ring[0]], *first]
    attached = {v for p in paths for v in p}
    while True:
        ear = _find_ear(c, vertices, attached)
        if ear is None:
            break
        attached.update(ear)
        paths.append(ear)
    if len(attached) != len(vertices):
        return None
    used = {e for p in paths for e in zip(p, p[1:])}
    paths.extend([u, v] for u, v in sorted(c.edges) if (u, v) not in used)
    return [Ear(path=tuple(p)) for p in paths]


def _basic_cycle_candidates(c: _Roadmap) -> Iterable[Path]:
    seen = set()
    candidates = []
    for u, v in sorted(c.edges):
        back = c.shortest_path(v, u)
        if back is None:
            continue
        cycle = (u, *back[:-1])
        if len(cycle) >= 3 and cycle not in seen:
            seen.add(cycle)
            candidates.append(cycle)
    candidates.sort(key=lambda cyc: (len(cyc), min(cyc)))
    yield from candidates
    for cycle in islice(nx.simple_cycles(c.to_networkx()), SIMPLE_CYCLE_CAP):
        if len(cycle) >= 3 and tuple(cycle) not in seen:
            yield tuple(cycle)


def open_ear_decomposition(c: Subgraph) -> EarDecomposition:
    """
    Computes an open ear decomposition of a strongly biconnected component.

    A partially-bidirectional cycle gets its covering directed cycle as ``L_0``
    followed by trivial ears for the reversed edges. Any other component gets a
    regular decomposition: the shortest basic cycle (ties by smallest vertex)
    that admits a non-trivial ear with both ends on it, then greedily attached
    ears, then the remaining edges as trivial ears.

    Args:
        c (Subgraph): A strongly biconnected component.

    Returns:
        EarDecomposition: Ears in attachment order; ``ears[0]`` is the closed basic cycle.
    """
    kind = classify_component(c)
    if kind is ComponentKind.PARTIALLY_BIDIRECTIONAL_CYCLE:
        ears = _grow_ears(c, principal_cycle(c), [])
        assert ears is not None
        return EarDecomposition(ears=ears, is_regular=False)
    vertices = sorted(c.vertex_ids())
    for ring in _basic_cycle_candidates(c):
        first = _find_ear(c, vertices, set(ring))
        if first is None:
            continue
        ears = _grow_ears(c, ring, [first])
        if ears is not None:
            return EarDecomposition(ears=ears, is_regular=True)
    raise NotStronglyBiconnected("component admits no regular open ear decomposition")


def ear_decomposition_violation(c: _Roadmap, ed: EarDecomposition) -> Optional[str]:
    """Replays the open ear decomposition conditions; returns the first violation."""
    basic = ed.ears[0]
    if not basic.is_cycle:
        return "basic cycle is not closed"
    ring = basic.path[:-1]
    if len(set(ring)) != len(ring):
        return "basic cycle repeats a vertex"
    used: set[Edge] = set()
    for e in basic.edges:
        if not c.has_edge(*e):
            return f"basic cycle uses missing edge {e}"
        used.add(e)
    attached = set(ring)
    for ear in ed.ears[1:]:
        p = ear.path
        if ear.is_cycle:
            return f"closed ear {p}"
        if p[0] not in attached or p[-1] not in attached:
            return f"ear {p} is not attached at both ends"
        if any(v in attached for v in ear.internal):
            return f"ear {p} reuses an attached vertex"
        if len(set(p)) != len(p):
            return f"ear {p} is not simple"
        for e in ear.edges:
            if not c.has_edge(*e):
                return f"ear {p} uses missing edge {e}"
            if e in used:
                return f"ear {p} reuses edge {e}"
            used.add(e)
        attached.update(p)
    if attached != set(c.vertex_ids()) or used != set(c.edges):
        return "ears do not cover the component"
    if ed.is_regular:
        on_basic = set(ring)
        if len(ring) < 3:
            return "regular basic cycle has fewer than three vertices"
        if not any(
            not ear.is_trivial and ear.path[0] in on_basic and ear.path[-1] in on_basic
            for ear in ed.ears[1:]
        ):
            return "no non-trivial ear with both ends on the basic cycle"
    return None


def cycle_edges(ring: Sequence[int]) -> list[Edge]:
    return [(v, ring[(i + 1) % len(ring)]) for i, v in enumerate(ring)]


def _link(first: Sequence[int], second: Sequence[int]) -> Optional[Edge]:
    shared = set(cycle_edges(second))
    return next((e for e in cycle_edges(first) if e in shared), None)


def _greedy_cycles(c: _Roadmap, pi: Path) -> Optional[list[Path]]:
    cycles: list[Path] = []
    s = 0
    last = len(pi) - 1
    while True:
        best: Optional[tuple[int, Path]] = None
        for t in range(last, s, -1):
            back = c.shortest_path(pi[t], pi[s], avoid=pi[s + 1 : t])
            if back is None:
                continue
            segment = pi[s : t + 1]
            inner = back[1:-1]
            if any(v in segment for v in inner):
                continue
            best = (t, (*segment, *inner))
            break
        if best is None:
            return None
        t, cycle = best
        if cycles and _link(cycles[-1], cycle) is None:
            return None
        cycles.append(cycle)
        if t == last:
            return cycles
        if t - 1 <= s:
            return None
        s = t - 1


def _edge_cycle_search(c: _Roadmap, v: int, w: int, first: Optional[Edge] = None) -> Optional[list[Path]]:
    candidates: list[Path] = []
    for a, b in sorted(c.edges):
        back = c.shortest_path(b, a)
        cycle = (a, *back[:-1]) if back else None
        if cycle and cycle not in candidates:
            candidates.append(cycle)
    edge_sets = [set(cycle_edges(cyc)) for cyc in candidates]
    prev: dict[int, int] = {}
    queue: deque[int] = deque()
    for i, cyc in enumerate(candidates):
        if v in cyc and (first is None or first in edge_sets[i]):
            prev[i] = -1
            queue.append(i)
    while queue:
        i = queue.popleft()
        if w in candidates[i]:
            chain = []
            while i != -1:
                chain.append(candidates[i])
                i = prev[i]
            return chain[::-1]
        for j in range(len(candidates)):
            if j not in prev and edge_sets[i] & edge_sets[j]:
                prev[j] = i
                queue.append(j)
    return None


def _rotate_to(ring: Path, v: int) -> Path:
    i = ring.index(v)
    return ring[i:] + ring[:i]


def cycle_sequence(
    c: Subgraph, ed: EarDecomposition, v: int, w: int, via: Optional[int] = None
) -> CycleSequence:
    """
    Chains directed cycles from ``v`` to ``w`` inside a component.

    Walks a shortest path ``v = u_1, ..., u_m = w``; each cycle takes the longest
    prefix of the remaining path that closes with a return path avoiding the
    prefix, and the next cycle restarts one vertex before the end of that
    prefix so that consecutive cycles share an edge. When the greedy walk cannot
    link two cycles, a breadth-first search over edge cycles sharing an edge is
    used instead.

    Args:
        c (Subgraph): A strongly biconnected component.
        ed (EarDecomposition): Its open ear decomposition; its basic cycle serves the ``v == w`` case.
        v (int): Start vertex.
        w (int): End vertex.
        via (Optional[int]): A successor of ``v``; when given the first cycle
            leaves ``v`` through the edge ``(v, via)``.

    Returns:
        CycleSequence: Cycles with ``v`` on the first (which starts at ``v``) and
        ``w`` on the last; ``links[j]`` is the first edge of ``cycles[j]`` that
        also belongs to ``cycles[j + 1]``.

    Example:
        cycle_sequence(c, ed, v=9, w=1, via=10)
        > CycleSequence(cycles=[(9, 10, 6, 7), (6, 7, 8, 4, 5), (4, 5, 1, 2, 3)], links=[(6, 7), (4, 5)])
    """
    for x in (v, w):
        if not c.contains(x):
            raise VertexNotInComponent(f"vertex {x} is not in the component")
    if via is not None and not c.has_edge(v, via):
        raise VertexNotInComponent(f"({v}, {via}) is not an edge of the component")
    if v == w:
        basic = ed.basic_cycle
        if via is None and v in basic:
            return CycleSequence(cycles=[_rotate_to(basic, v)], links=[])
        back = c.shortest_path(c.successors(v)[0] if via is None else via, v)
        return CycleSequence(cycles=[(v, *back[:-1])], links=[])
    if via is None:
        pi = c.shortest_path(v, w)
        if pi is None:
            raise VertexNotInComponent(f"vertex {w} is not reachable from {v} inside the component")
    else:
        tail = c.shortest_path(via, w, avoid=[v])
        pi = (v, *tail) if tail else None
    cycles = (pi and _greedy_cycles(c, pi)) or _edge_cycle_search(
        c, v, w, None if via is None else (v, via)
    )
    if not cycles:
        raise NotStronglyBiconnected(f"no cycle sequence joins {v} and {w}")
    cycles[0] = _rotate_to(cycles[0], v)
    links = [_link(a, b) for a, b in zip(cycles, cycles[1:])]
    return CycleSequence(cycles=cycles, links=links)


def cycle_sequence_violation(c: _Roadmap, seq: CycleSequence, v: int, w: int) -> Optional[str]:
    for ring in seq.cycles:
        if len(set(ring)) != len(ring):
            return f"cycle {ring} is not simple"
        for e in cycle_edges(ring):
            if not c.has_edge(*e):
                return f"cycle {ring} uses missing edge {e}"
    if v not in seq.cycles[0] or w not in seq.cycles[-1]:
        return "endpoints are not on the first and last cycle"
    if len(seq.links) != len(seq.cycles) - 1:
        return "wrong number of links"
    for j, link in enumerate(seq.links):
        if link is None or link not in cycle_edges(seq.cycles[j]) or link not in cycle_edges(seq.cycles[j + 1]):
            return f"link {j} is not shared by consecutive cycles"
    return None
