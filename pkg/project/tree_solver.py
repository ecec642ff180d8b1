"""
Pebble motion on the biconnected component tree.

Each biconnected component of the underlying graph with three or more vertices
becomes a star around a trans-shipment vertex that pebbles may cross but never
rest on. A pebble may move to any tree neighbour that is an original vertex,
or through a star to another leaf of it; the graph of those moves is called
the tree move graph below.

Feasibility and routing use a search over abstract states made of the
tracked pebble's vertex and the number of other pebbles in each branch
around it: untracked pebbles inside a branch can always be rearranged, so
only their counts matter.
"""

import logging
from collections import Counter, deque
from typing import Callable, Iterator, Mapping, NamedTuple, Optional, Sequence

import networkx as nx
from pydantic import BaseModel, Field, PrivateAttr, model_validator

from project.config import get_settings
from project.errors import (
    InfeasibleInstance,
    InfeasibleSwap,
    InvalidIntermediate,
    InvalidPlan,
    NoSuchEdge,
    NotConnected,
    TargetOccupied,
    TooFewHoles,
    VertexNotHole,
)
from project.graph_core import ComponentKind, Decomposition, Digraph, Edge, UndirectedGraph
from project.motion_primitives import ExactMover
from project.plan_engine import Board, Configuration, Plan
from project.sbd_solver import (
    AttachedComponent,
    AttachMode,
    attached_edge_swap,
    check_exchange,
    exchange,
    stay_in_swap,
)

logger = logging.getLogger(__name__)


class BctTree(BaseModel):
    """
    Biconnected component tree.

    Original vertices keep their ids ``0..original_count-1``; the star of
    ``stars[i]`` is the trans-shipment vertex ``original_count + i``. Bridges of
    the underlying graph stay tree edges between original vertices.
    """

    original_count: int = Field(ge=0)
    stars: list[tuple[int, ...]] = Field(default_factory=list)
    bridges: list[Edge] = Field(default_factory=list)

    _adj: dict[int, tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _moves: dict[int, tuple[tuple[int, Optional[int]], ...]] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        adj: dict[int, list[int]] = {x: [] for x in range(self.node_count)}
        for u, v in self.tree_edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {x: tuple(sorted(ys)) for x, ys in adj.items()}

    @property
    def node_count(self) -> int:
        return self.original_count + len(self.stars)

    @property
    def original_vertices(self) -> range:
        return range(self.original_count)

    @property
    def trans_shipment_vertices(self) -> range:
        return range(self.original_count, self.node_count)

    @property
    def star_map(self) -> dict[int, tuple[int, ...]]:
        return {self.original_count + i: members for i, members in enumerate(self.stars)}

    @property
    def tree_edges(self) -> list[Edge]:
        edges = list(self.bridges)
        for s, members in self.star_map.items():
            edges.extend((v, s) for v in members)
        return edges

    def is_star(self, x: int) -> bool:
        return x >= self.original_count

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._adj[x]

    def move_targets(self, u: int) -> tuple[tuple[int, Optional[int]], ...]:
        """Vertices a pebble on ``u`` can move to, with the star crossed (None for a bridge)."""
        if u not in self._moves:
            out: list[tuple[int, Optional[int]]] = []
            for y in self._adj[u]:
                if self.is_star(y):
                    out.extend((w, y) for w in self._adj[y] if w != u)
                else:
                    out.append((y, None))
            self._moves[u] = tuple(out)
        return self._moves[u]

    def distances(self, src: int) -> dict[int, int]:
        dist = {src: 0}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def dump(self) -> str:
        lines = [f"t {s}" for s in self.trans_shipment_vertices]
        lines.extend(f"e {u} {v}" for u, v in sorted(self.tree_edges))
        return "\n".join(lines) + "\n"


def build_bct(g: UndirectedGraph) -> BctTree:
    """
    Collapses every biconnected component with three or more vertices into a star.

    Args:
        g (UndirectedGraph): A connected graph.

    Returns:
        BctTree: Stars ordered by their sorted member tuples; bridges as ``(min, max)``.

    Example:
        build_bct(UndirectedGraph(vertex_count=3, edges={(0, 1), (1, 2), (0, 2)}))
        > BctTree(original_count=3, stars=[(0, 1, 2)], bridges=[])
    """
    graph = g.to_networkx()
    if g.vertex_count > 1 and not nx.is_connected(graph):
        raise NotConnected("the underlying graph is not connected")
    blocks = sorted(tuple(sorted(b)) for b in nx.biconnected_components(graph))
    tree = BctTree(
        original_count=g.vertex_count,
        stars=[b for b in blocks if len(b) > 2],
        bridges=[b for b in blocks if len(b) == 2],
    )
    logger.debug("built tree with %d stars and %d bridges", len(tree.stars), len(tree.bridges))
    return tree


def lift_config(a: Configuration) -> Configuration:
    return a.model_copy()


class TreeMove(NamedTuple):
    src: int
    dst: int
    star: Optional[int] = None


class TreePlan(BaseModel):
    moves: list[TreeMove] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.moves)


class PermutationInstance(BaseModel):
    """Pebble positions that already cover exactly the target vertices."""

    positions: dict[int, int]
    targets: dict[int, int]

    @model_validator(mode="after")
    def _is_permutation(self) -> "PermutationInstance":
        if set(self.positions) != set(self.targets):
            raise ValueError("positions and targets name different pebbles")
        if set(self.positions.values()) != set(self.targets.values()):
            raise ValueError("pebbles do not occupy the target vertices")
        return self


class TreeBoard:
    """Unlabelled-hole simulator on the tree; ``at`` maps original vertices to pebble ids."""

    def __init__(self, tree: BctTree, positions: Mapping[int, int]):
        self.tree = tree
        self.at: dict[int, Optional[int]] = {v: None for v in tree.original_vertices}
        self.where: dict[int, int] = dict(positions)
        for p, v in positions.items():
            self.at[v] = p
        self.moves: list[TreeMove] = []

    def occupied(self, v: int) -> bool:
        return self.at[v] is not None

    def move(self, u: int, v: int) -> None:
        if self.at.get(u) is None:
            raise InvalidPlan(f"no pebble on {u}", index=len(self.moves))
        if self.at.get(v) is not None:
            raise TargetOccupied(f"vertex {v} holds pebble {self.at[v]}", index=len(self.moves))
        via = next((s for w, s in self.tree.move_targets(u) if w == v), -1)
        if via == -1:
            raise NoSuchEdge(f"{u} and {v} are not joined in the tree", index=len(self.moves))
        self._shift(u, v)
        self.moves.append(TreeMove(u, v, via))

    def _shift(self, u: int, v: int) -> None:
        p = self.at[u]
        self.at[v], self.at[u] = p, None
        self.where[p] = v

    def replay(self, plan: TreePlan) -> None:
        for i, m in enumerate(plan.moves):
            try:
                self.move(m.src, m.dst)
            except (InvalidPlan, TargetOccupied, NoSuchEdge) as e:
                e.index = i
                raise

    def mark(self) -> int:
        return len(self.moves)

    def rollback(self, mark: int) -> None:
        for u, v, _ in reversed(self.moves[mark:]):
            self._shift(v, u)
        del self.moves[mark:]

    def replay_reverse(self, start: int, end: int) -> None:
        for u, v, _ in reversed(self.moves[start:end]):
            self.move(v, u)

    def plan(self, start: int = 0) -> TreePlan:
        return TreePlan(moves=self.moves[start:])


State = tuple[int, tuple[int, ...]]


def _splits(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        yield ()
        return
    for x in range(min(caps[0], total) + 1):
        for rest in _splits(total - x, caps[1:]):
            yield (x, *rest)


class _TrackedSearch:
    """Abstract moves of one tracked pebble while ``frozen`` vertices stay put."""

    def __init__(self, tree: BctTree, frozen: Sequence[int] = ()):
        self.tree = tree
        self.frozen = frozenset(frozen)
        self._memo: dict[tuple[int, int], tuple[int, ...]] = {}

    def nbrs(self, v: int) -> list[int]:
        return [y for y in self.tree.neighbors(v) if y not in self.frozen]

    def comp(self, v: int, y: int) -> tuple[int, ...]:
        """Original vertices of the branch hanging off ``v`` through ``y``."""
        key = (v, y)
        if key not in self._memo:
            seen = {v, y}
            stack = [y]
            out = [] if self.tree.is_star(y) else [y]
            while stack:
                x = stack.pop()
                for z in self.tree.neighbors(x):
                    if z not in seen and z not in self.frozen:
                        seen.add(z)
                        stack.append(z)
                        if not self.tree.is_star(z):
                            out.append(z)
            self._memo[key] = tuple(out)
        return self._memo[key]

    def cap(self, v: int, y: int) -> int:
        return len(self.comp(v, y))

    def counts_at(self, v: int, occupied: set[int]) -> tuple[int, ...]:
        return tuple(sum(1 for x in self.comp(v, y) if x in occupied) for y in self.nbrs(v))

    def successors(self, v: int, counts: tuple[int, ...]) -> Iterator[tuple[int, tuple[int, ...], int]]:
        total = sum(counts)
        for i, y in enumerate(self.nbrs(v)):
            c = counts[i]
            if c >= self.cap(v, y):
                continue
            rest = total - c
            star = self.tree.is_star(y)
            targets = [w for w in self.tree.neighbors(y) if w != v and w not in self.frozen] if star else [y]
            back = y if star else v
            for w in targets:
                around = self.nbrs(w)
                forward = [z for z in around if z != back]
                caps = [self.cap(w, z) for z in forward]
                behind = self.cap(v, y) - 1 - sum(caps)
                for split in _splits(c, caps):
                    left = c - sum(split)
                    if left > behind:
                        continue
                    spread = iter(split)
                    yield w, tuple(rest + left if z == back else next(spread) for z in around), y

    def search(
        self, v0: int, occupied: set[int], goal: Callable[[int, tuple[int, ...]], bool]
    ) -> Optional[list[tuple[int, int, tuple[int, ...], int]]]:
        """Breadth-first search to a goal state; returns ``(v, w, counts at w, via)`` steps."""
        start = (v0, self.counts_at(v0, occupied))
        if goal(*start):
            return []
        prev: dict[State, Optional[tuple[State, int]]] = {start: None}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            for w, counts, via in self.successors(*state):
                nxt = (w, counts)
                if nxt in prev:
                    continue
                prev[nxt] = (state, via)
                if goal(*nxt):
                    steps = []
                    cur = nxt
                    while prev[cur] is not None:
                        before, through = prev[cur]
                        steps.append((before[0], cur[0], cur[1], through))
                        cur = before
                    return steps[::-1]
                queue.append(nxt)
        return None

    def reachable(self, v0: int, occupied: set[int]) -> set[State]:
        start = (v0, self.counts_at(v0, occupied))
        seen = {start}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            for w, counts, _ in self.successors(*state):
                if (w, counts) not in seen:
                    seen.add((w, counts))
                    queue.append((w, counts))
        return seen


def _tree_path(
    board: TreeBoard, region: set[int], src: int, accept: Callable[[int], bool]
) -> Optional[list[int]]:
    prev: dict[int, Optional[int]] = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x != src and accept(x):
            path = []
            cur: Optional[int] = x
            while cur is not None:
                path.append(cur)
                cur = prev[cur]
            return path[::-1]
        for y, _ in board.tree.move_targets(x):
            if y in region and y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def _rearrange(board: TreeBoard, region: set[int], wanted: set[int]) -> None:
    """Moves pebbles inside ``region`` until exactly the ``wanted`` vertices are occupied."""
    while True:
        free = next((v for v in sorted(wanted) if not board.occupied(v)), None)
        if free is None:
            return
        path = _tree_path(board, region, free, lambda x: board.occupied(x) and x not in wanted)
        if path is None:
            raise InvalidIntermediate(f"no pebble can be brought to {free}")
        dst = 0
        for i in [i for i, x in enumerate(path) if i > 0 and board.occupied(x)]:
            for j in range(i, dst, -1):
                board.move(path[j], path[j - 1])
            dst = i


def _pick_set(board: TreeBoard, parts: list[tuple[Sequence[int], int]], keep_free: int) -> set[int]:
    wanted: set[int] = set()
    for vertices, count in parts:
        full = [v for v in vertices if board.occupied(v) and v != keep_free]
        empty = [v for v in vertices if not board.occupied(v) and v != keep_free]
        chosen = (full + empty)[:count]
        if len(chosen) < count:
            raise InvalidIntermediate("branch cannot hold its share of pebbles")
        wanted.update(chosen)
    return wanted


Goal = Callable[[int, tuple[int, ...], _TrackedSearch], bool]


def _route(board: TreeBoard, frozen: Sequence[int], v0: int, goal: Goal) -> Optional[State]:
    """
    Carries the pebble on ``v0`` to a goal state, keeping ``frozen`` occupants in place.

    Returns the abstract state reached, or None when no goal state is reachable.
    """
    tree = board.tree
    search = _TrackedSearch(tree, frozen)
    occupied = {
        x for x in tree.original_vertices if board.occupied(x) and x != v0 and x not in search.frozen
    }
    steps = search.search(v0, occupied, lambda v, c: goal(v, c, search))
    if steps is None:
        return None
    for v, w, counts, via in steps:
        branch = search.comp(v, via)
        back = via if tree.is_star(via) else v
        parts: list[tuple[Sequence[int], int]] = []
        used = {w}
        for i, z in enumerate(search.nbrs(w)):
            if z == back:
                continue
            vertices = search.comp(w, z)
            used.update(vertices)
            parts.append((vertices, counts[i]))
        behind = [x for x in branch if x not in used]
        total = sum(1 for x in branch if board.occupied(x))
        parts.append((behind, total - sum(n for _, n in parts)))
        _rearrange(board, set(branch), _pick_set(board, parts, w))
        board.move(v, w)
    if not steps:
        return v0, search.counts_at(v0, occupied)
    return steps[-1][1], steps[-1][2]


def _attempt(board: TreeBoard, frozen: Sequence[int], v0: int, goal: Goal) -> Optional[State]:
    mk = board.mark()
    try:
        return _route(board, frozen, v0, goal)
    except InvalidIntermediate as e:
        logger.debug("route from %d abandoned: %s", v0, e)
        board.rollback(mk)
        return None


def _arrivals(
    board: TreeBoard, frozen: Sequence[int], v0: int, goal: Goal, thorough: bool = True
) -> Iterator[None]:
    """
    Carries the pebble on ``v0`` to each distinct goal state in turn.

    The first arrival is the nearest one; unless ``thorough`` is off, the
    others follow in sorted order. The board is rolled back before every
    further arrival and once more when the states run out, so a caller that
    stops iterating keeps the last one.
    """
    mk = board.mark()
    first = _attempt(board, frozen, v0, goal)
    if first is not None:
        yield
        board.rollback(mk)
    if not thorough:
        return
    search = _TrackedSearch(board.tree, frozen)
    occupied = {
        x
        for x in board.tree.original_vertices
        if board.occupied(x) and x != v0 and x not in search.frozen
    }
    states = sorted(s for s in search.reachable(v0, occupied) if s != first and goal(*s, search))
    for state in states:
        if _attempt(board, frozen, v0, lambda v, c, s: (v, c) == state) is not None:
            yield
        board.rollback(mk)


def _free_member(board: TreeBoard, region: Sequence[int], candidates: Sequence[int]) -> Optional[int]:
    """A vertex of ``candidates`` emptied by rearranging ``region``, or None when it has no room."""
    if not candidates:
        return None
    free = next((w for w in candidates if not board.occupied(w)), None)
    if free is not None:
        return free
    chosen = candidates[0]
    spare = next((v for v in region if not board.occupied(v) and v != chosen), None)
    if spare is None:
        return None
    wanted = {v for v in region if board.occupied(v) and v != chosen}
    wanted.add(spare)
    _rearrange(board, set(region), wanted)
    return chosen


def _swap_at_star(board: TreeBoard, x: int, y: int, star: int, thorough: bool) -> bool:
    """
    Swaps the pebbles on ``x`` and ``y`` on three leaves of ``star``.

    Either pebble may go first. With ``thorough`` set every way the first one
    can arrive on a leaf is tried, as where the others end up decides whether
    the second one can follow.
    """
    tree = board.tree
    mk = board.mark()
    members = tree.neighbors(star)
    labels = (board.at[x], board.at[y])
    for first, second in (labels, labels[::-1]):
        for a in members:

            def beside(v: int, counts: tuple[int, ...], search: _TrackedSearch) -> bool:
                if v == a or v not in members:
                    return False
                around = search.nbrs(v)
                return star in around and counts[around.index(star)] < search.cap(v, star)

            for _ in _arrivals(board, (), board.where[first], lambda v, c, s: v == a, thorough):
                if _attempt(board, (a,), board.where[second], beside) is None:
                    continue
                b = board.where[second]
                region = _TrackedSearch(tree, (a,)).comp(b, star)
                free = _free_member(
                    board, region, [z for z in members if z not in (a, b) and z in region]
                )
                if free is None:
                    continue
                pre = board.mark()
                board.move(a, free)
                board.move(b, a)
                board.move(free, b)
                board.replay_reverse(mk, pre)
                return True
    return False


def _swap_at_junction(board: TreeBoard, x: int, y: int, c: int, thorough: bool) -> bool:
    tree = board.tree
    mk = board.mark()
    joined = {w: s for w, s in tree.move_targets(c)}
    labels = (board.at[x], board.at[y])
    for first, second in (labels, labels[::-1]):
        for _ in _arrivals(board, (), board.where[first], lambda v, cnt, s: v == c, thorough):
            for _ in _arrivals(
                board, (c,), board.where[second], lambda v, cnt, s: v in joined, thorough
            ):
                a = board.where[second]
                via = joined[a] if joined[a] is not None else a
                search = _TrackedSearch(tree, (c, a))
                roomy = [
                    z
                    for z in tree.neighbors(c)
                    if z != via and any(not board.occupied(v) for v in search.comp(c, z))
                ]
                if len(roomy) < 2:
                    continue
                ends = []
                for z in roomy[:2]:
                    candidates = [w for w in tree.neighbors(z) if w != c] if tree.is_star(z) else [z]
                    ends.append(_free_member(board, search.comp(c, z), candidates))
                if None in ends:
                    continue
                b, e = ends
                pre = board.mark()
                for u, w in ((c, b), (a, c), (c, e), (b, c), (c, a), (e, c)):
                    board.move(u, w)
                board.replay_reverse(mk, pre)
                return True
    return False


def _transpose(board: TreeBoard, x: int, y: int) -> bool:
    """
    Exchanges the pebbles on ``x`` and ``y``, everything else ends where it started.

    Sites are tried nearest first, once with the nearest arrivals only and
    then with every arrival the abstract search can reach.
    """
    tree = board.tree
    dx, dy = tree.distances(x), tree.distances(y)
    sites = [s for s in range(tree.node_count) if tree.is_star(s) or len(tree.neighbors(s)) >= 3]
    sites.sort(key=lambda s: dx[s] + dy[s])
    for thorough in (False, True):
        for s in sites:
            mk = board.mark()
            try:
                if tree.is_star(s):
                    swapped = _swap_at_star(board, x, y, s, thorough)
                else:
                    swapped = _swap_at_junction(board, x, y, s, thorough)
            except InvalidIntermediate as e:
                logger.debug("swap of %d and %d at %d abandoned: %s", x, y, s, e)
                board.rollback(mk)
                continue
            if swapped:
                return True
    return False


def pmt_to_ppt(
    t: BctTree, a_start: Configuration, targets: Mapping[int, int]
) -> tuple[TreePlan, PermutationInstance]:
    """
    Occupies the target vertices with pebbles regardless of labels.

    Returns:
        tuple[TreePlan, PermutationInstance]: The prefix plan and the residual
        instance whose pebbles sit on a permutation of their targets.
    """
    board = TreeBoard(t, a_start.pebbles)
    try:
        _rearrange(board, set(t.original_vertices), set(targets.values()))
    except InvalidIntermediate as e:
        raise InfeasibleInstance(f"pebbles cannot reach the target vertices: {e}") from e
    return board.plan(), PermutationInstance(positions=dict(board.where), targets=dict(targets))


def ppt_solve(t: BctTree, perm_instance: PermutationInstance) -> TreePlan:
    """
    Realises a permutation instance by pairwise exchanges, deepest targets first.

    A target whose pebble cannot be swapped in directly is reached through a
    third target vertex ``r``: swap into ``r``, swap ``r`` with the target, and
    swap the first pair back.
    """
    board = TreeBoard(t, perm_instance.positions)
    depth = t.distances(0) if t.original_count else {}
    owner = {v: p for p, v in perm_instance.targets.items()}
    for target in sorted(owner, key=lambda v: (-depth.get(v, 0), v)):
        p = owner[target]
        if board.at[target] == p:
            continue
        x = board.where[p]
        if _transpose(board, x, target):
            continue
        done = False
        for r in sorted(owner):
            if r in (x, target):
                continue
            mk = board.mark()
            if _transpose(board, x, r) and _transpose(board, r, target) and _transpose(board, x, r):
                done = True
                break
            board.rollback(mk)
        if not done:
            raise InfeasibleSwap(f"pebble {p} cannot be exchanged onto {target}")
    logger.debug("permutation solved with %d tree moves", len(board.moves))
    return board.plan()


def solve_pmt(t: BctTree, a: Configuration, targets: Mapping[int, int]) -> TreePlan:
    prefix, residual = pmt_to_ppt(t, a, targets)
    return TreePlan(moves=[*prefix.moves, *ppt_solve(t, residual).moves])


def _compose(g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
    """``g`` first, then ``h``."""
    return tuple(h[x] for x in g)


def _invert(g: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def _moved_point(g: tuple[int, ...]) -> int:
    return next(i for i, x in enumerate(g) if x != i)


class PermutationGroup:
    """
    Base and strong generating set of a permutation group (Schreier-Sims),
    supporting membership tests.
    """

    def __init__(self, generators: Sequence[tuple[int, ...]], degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        gens = [g for g in generators if g != self.identity]
        self.base: list[int] = []
        self.strong: list[list[tuple[int, ...]]] = []
        self.transversals: list[dict[int, tuple[int, ...]]] = []
        for g in gens:
            if all(g[b] == b for b in self.base):
                self.base.append(_moved_point(g))
        for i in range(len(self.base)):
            self.strong.append([g for g in gens if all(g[b] == b for b in self.base[:i])])
            self.transversals.append({})
            self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            i = self._extend(i)

    def _orbit(self, i: int) -> None:
        b = self.base[i]
        table = {b: self.identity}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            for s in self.strong[i]:
                y = s[x]
                if y not in table:
                    table[y] = _compose(table[x], s)
                    queue.append(y)
        self.transversals[i] = table

    def _strip(self, g: tuple[int, ...], start: int) -> tuple[tuple[int, ...], int]:
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            if x not in self.transversals[i]:
                return g, i
            g = _compose(g, _invert(self.transversals[i][x]))
        return g, len(self.base)

    def _extend(self, i: int) -> int:
        for beta, ub in list(self.transversals[i].items()):
            for s in self.strong[i]:
                h = _compose(_compose(ub, s), _invert(self.transversals[i][s[beta]]))
                rest, j = self._strip(h, i + 1)
                if j < len(self.base) or rest != self.identity:
                    if j == len(self.base):
                        self.base.append(_moved_point(rest))
                        self.strong.append([])
                        self.transversals.append({})
                    for level in range(i + 1, j + 1):
                        self.strong[level].append(rest)
                        self._orbit(level)
                    return j
        return i - 1

    @property
    def order(self) -> int:
        size = 1
        for table in self.transversals:
            size *= len(table)
        return size

    def contains(self, g: Sequence[int]) -> bool:
        rest, j = self._strip(tuple(g), 0)
        return j == len(self.base) and rest == self.identity


def hole_group(adjacency: Mapping[int, Sequence[int]], n: int, t: int) -> PermutationGroup:
    """
    Group of pebble permutations reachable with one hole that starts and ends on ``t``.

    Generated by one hole loop per non-tree edge of a breadth-first tree rooted at ``t``.
    """
    parent = {t: t}
    order = [t]
    for x in order:
        for y in adjacency[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)

    def path_to(u: int) -> list[int]:
        out = []
        while u != t:
            out.append(u)
            u = parent[u]
        return out[::-1]

    generators = []
    for u in range(n):
        for v in adjacency[u]:
            if u > v or parent.get(u) == v or parent.get(v) == u:
                continue
            walk = [*path_to(u), v, *path_to(v)[::-1][1:], t]
            at = list(range(n))
            h = t
            for w in walk:
                at[h], at[w] = at[w], -1
                h = w
            g = list(range(n))
            for x in range(n):
                if at[x] >= 0:
                    g[at[x]] = x
            g[t] = t
            generators.append(tuple(g))
    return PermutationGroup(generators, n)


def one_hole_feasible(
    adjacency: Mapping[int, Sequence[int]], n: int, pebbles: Mapping[int, int], targets: Mapping[int, int]
) -> bool:
    """
    Exact feasibility of a connected undirected instance with a single hole.

    The hole is first walked from its start to its final vertex; the instance is
    feasible when the remaining pebble permutation lies in the hole group there.
    """
    s = next(v for v in range(n) if v not in set(pebbles.values()))
    t = next(v for v in range(n) if v not in set(targets.values()))
    parent = {s: s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = []
    x = t
    while x != s:
        path.append(x)
        x = parent[x]
    at = {v: p for p, v in pebbles.items()}
    h = s
    for w in reversed(path):
        at[h] = at.pop(w)
        h = w
    g = list(range(n))
    for v, p in at.items():
        g[v] = targets[p]
    g[t] = t
    return hole_group(adjacency, n, t).contains(g)


def pmt_feasible(t: BctTree, a_start: Configuration, targets: Mapping[int, int]) -> bool:
    """
    Decides whether a tree plan takes every pebble to its target.

    With one hole the answer is group membership over the tree move graph;
    with two or more, each pebble must reach its target state in the tracked
    search while the other pebbles only need their counts to fit.
    """
    pebbles = a_start.pebbles
    if not pebbles:
        return True
    holes = t.original_count - len(pebbles)
    if holes == 0:
        return all(targets[p] == v for p, v in pebbles.items())
    if holes == 1:
        adjacency = {v: [w for w, _ in t.move_targets(v)] for v in t.original_vertices}
        return one_hole_feasible(adjacency, t.original_count, pebbles, targets)
    search = _TrackedSearch(t)
    starts = set(pebbles.values())
    ends = set(targets.values())
    for p, v in pebbles.items():
        goal = targets[p]
        if (goal, search.counts_at(goal, ends - {goal})) not in search.reachable(v, starts - {v}):
            logger.debug("pebble %d cannot reach %d", p, goal)
            return False
    return True


def _lemma_kind(d: Digraph, dec: Decomposition, u: int, v: int) -> str:
    if d.adjacent(u, v):
        return "corridor"
    component = dec.component_containing(u, v)
    if component is not None and component.kind is ComponentKind.REGULAR_OED:
        return "stay_in"
    return "attached_edge"


def _component_swap(d: Digraph, dec: Decomposition, board: Board, kind: str, u: int, w: int) -> Optional[Plan]:
    """The lemma plan for a tree move through a star, or None when its hole conditions fail."""
    component = dec.component_containing(u, w)
    if component is None:
        return None
    a = board.configuration()
    if kind == "stay_in":
        if len(board.hole_vertices(component.vertices)) < 2:
            return None
        return stay_in_swap(component, a, u, w)
    inside = set(component.vertices)
    for z in component.vertices:
        for x in d.neighbors(z):
            if x in inside or not (d.has_edge(x, z) and d.has_edge(z, x)):
                continue
            ac = AttachedComponent(
                component=component, external_vertex=x, attach_vertex=z, mode=AttachMode.ATTACHED_EDGE
            )
            if len(board.hole_vertices(ac.world().vertex_ids())) >= 2:
                return attached_edge_swap(ac, a, u, w)
    return None


def convert_path(tp: TreePlan, d: Digraph, dec: Decomposition, t: BctTree, a: Configuration) -> Plan:
    """
    Turns a tree plan into a digraph plan with the same pebble outcome.

    A move between adjacent vertices is an exact swap (native, or completed
    around a cycle when only the reverse edge exists). A move through the star
    of a component with a regular ear decomposition is a stay-in swap when the
    component holds two holes; through a partially-bidirectional cycle it is an
    attached-edge swap over a two-way edge leaving the cycle. When neither
    applies the move becomes an exchange on the whole roadmap. Every variant
    brings all other agents home.

    Args:
        tp (TreePlan): Tree plan valid from ``a``.
        d (Digraph): Strongly connected roadmap.
        dec (Decomposition): Decomposition of ``d``.
        t (BctTree): Tree of ``d``'s underlying graph.
        a (Configuration): Start configuration.

    Returns:
        Plan: The digraph plan.
    """
    board = Board(d, a)
    if len(board.hole_vertices()) < 2:
        raise TooFewHoles("converting a tree plan needs at least two holes")
    mover = ExactMover(board)
    blocks = [frozenset(s) for s in t.stars] + [frozenset(e) for e in t.bridges]
    check = get_settings().check_intermediate
    kinds: Counter[str] = Counter()
    for i, m in enumerate(tp.moves):
        before = board.configuration() if check else None
        kind = _lemma_kind(d, dec, m.src, m.dst)
        try:
            plan = None if kind == "corridor" else _component_swap(d, dec, board, kind, m.src, m.dst)
            if plan is None:
                exchange(mover, m.src, m.dst, blocks)
                if kind != "corridor":
                    kind = "exchange"
            else:
                board.replay(plan)
        except (TargetOccupied, NoSuchEdge, VertexNotHole) as e:
            raise InvalidPlan(f"tree move {i} does not apply: {e}", index=i) from e
        kinds[kind] += 1
        if before is not None:
            check_exchange(board, before, m.src, m.dst)
    logger.debug("converted %d tree moves into %d moves (%s)", len(tp), len(board.moves), dict(kinds))
    return board.plan()
