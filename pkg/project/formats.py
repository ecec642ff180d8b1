"""
Line-oriented text formats for graphs, instances, configurations, plans and benchmark tables.

Each line is a one-letter directive followed by integers; ``#`` starts a comment.

    n <vertex count>
    e <from> <to>
    p <pebble id> <vertex>
    h <hole id> <vertex>
    t <pebble id> <target vertex>
    m <from> <to>
"""

import csv
import io
from typing import Iterable, Iterator, Optional, Sequence

from pydantic import ValidationError

from project.disc_solver import Instance, PlanStats
from project.errors import FormatError, MapfError
from project.graph_core import Digraph
from project.instance_lab import BenchRecord, BenchSummary
from project.plan_engine import Configuration, Move, Plan

ARITY = {"n": 1, "e": 2, "p": 2, "h": 2, "t": 2, "m": 2}
BENCH_HEADER = ["nodes", "agents", "seed", "moves", "ms", "feasible", "error"]
SUMMARY_HEADER = ["nodes", "agents", "median_moves", "median_ms"]


def _directives(text: str, allowed: str) -> Iterator[tuple[int, str, list[int]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *fields = line.split()
        if kind not in allowed:
            raise FormatError(f"unknown directive {kind!r}", line=number)
        if len(fields) != ARITY[kind]:
            raise FormatError(f"{kind!r} takes {ARITY[kind]} integers, got {len(fields)}", line=number)
        try:
            values = [int(x) for x in fields]
        except ValueError:
            raise FormatError(f"non-integer field in {line!r}", line=number) from None
        yield number, kind, values


def _vertex(v: int, count: Optional[int], number: int) -> int:
    if count is None:
        raise FormatError("'n' must come before any vertex reference", line=number)
    if not 0 <= v < count:
        raise FormatError(f"vertex {v} is outside 0..{count - 1}", line=number)
    return v


class _Reader:
    """Collects directives for one document, checking each line as it arrives."""

    def __init__(self) -> None:
        self.count: Optional[int] = None
        self.edges: set[tuple[int, int]] = set()
        self.pebbles: dict[int, int] = {}
        self.holes: dict[int, int] = {}
        self.targets: dict[int, int] = {}
        self.moves: list[Move] = []
        self.taken: set[int] = set()

    def feed(self, number: int, kind: str, values: list[int]) -> None:
        if kind == "n":
            if self.count is not None:
                raise FormatError("vertex count given twice", line=number)
            if values[0] < 0:
                raise FormatError("vertex count must be non-negative", line=number)
            self.count = values[0]
        elif kind == "e":
            u, v = (_vertex(x, self.count, number) for x in values)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", line=number)
            self.edges.add((u, v))
        elif kind in "ph":
            label, v = values
            table = self.pebbles if kind == "p" else self.holes
            if label in table:
                raise FormatError(f"{kind}{label} placed twice", line=number)
            if self.count is not None:
                _vertex(v, self.count, number)
            if v in self.taken:
                raise FormatError(f"vertex {v} already holds an agent", line=number)
            self.taken.add(v)
            table[label] = v
        elif kind == "t":
            p, v = values
            if p in self.targets:
                raise FormatError(f"pebble {p} has two targets", line=number)
            self.targets[p] = _vertex(v, self.count, number)
        else:
            self.moves.append(Move(*values))

    def digraph(self) -> Digraph:
        if self.count is None:
            raise FormatError("missing 'n' line")
        return Digraph.from_edges(self.count, self.edges)


def _read(text: str, allowed: str) -> _Reader:
    reader = _Reader()
    for number, kind, values in _directives(text, allowed):
        reader.feed(number, kind, values)
    return reader


def parse_graph(text: str) -> Digraph:
    return _read(text, "ne").digraph()


def parse_configuration(text: str) -> Configuration:
    reader = _read(text, "ph")
    return Configuration(pebbles=reader.pebbles, holes=reader.holes)


def parse_plan(text: str) -> Plan:
    return Plan(moves=_read(text, "m").moves)


def parse_instance(text: str) -> Instance:
    """
    Reads a graph with pebble starts, optional hole placements and pebble targets.

    Without any ``h`` line every vertex not holding a pebble gets a hole,
    numbered from 0 in vertex order.

    Raises:
        FormatError: On malformed lines, or when the pieces do not form a valid instance.
    """
    reader = _read(text, "nepht")
    d = reader.digraph()
    missing = sorted(set(reader.pebbles) - set(reader.targets))
    if missing:
        raise FormatError(f"pebbles {missing} have no target")
    unknown = sorted(set(reader.targets) - set(reader.pebbles))
    if unknown:
        raise FormatError(f"targets given for unknown pebbles {unknown}")
    if reader.holes:
        start = Configuration(pebbles=reader.pebbles, holes=reader.holes)
    else:
        start = Configuration.with_holes_elsewhere(d.vertex_count, reader.pebbles)
    try:
        return Instance(digraph=d, start=start, targets=reader.targets)
    except (ValidationError, MapfError) as e:
        raise FormatError(f"invalid instance: {e}") from e


def write_graph(d: Digraph) -> str:
    lines = [f"n {d.vertex_count}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(d.edges))
    return "\n".join(lines) + "\n"


def write_configuration(a: Configuration) -> str:
    lines = [f"p {p} {v}" for p, v in sorted(a.pebbles.items())]
    lines.extend(f"h {h} {v}" for h, v in sorted(a.holes.items()))
    return "\n".join(lines) + "\n" if lines else ""


def write_instance(inst: Instance) -> str:
    targets = "".join(f"t {p} {v}\n" for p, v in sorted(inst.targets.items()))
    return write_graph(inst.digraph) + write_configuration(inst.start) + targets


def write_plan(plan: Plan, stats: Optional[PlanStats] = None) -> str:
    lines = [f"m {u} {v}" for u, v in plan.moves]
    lines.append(f"# moves={len(plan)}")
    if stats is not None:
        lines.append(f"# pebble_moves={stats.pebble_moves}")
    return "\n".join(lines) + "\n"


def _table(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def write_bench_csv(records: Iterable[BenchRecord]) -> str:
    return _table(
        BENCH_HEADER,
        (
            (
                r.node_count,
                r.agent_count,
                r.seed,
                r.move_count,
                f"{r.runtime_ms:.3f}",
                int(r.feasible),
                r.error or "",
            )
            for r in records
        ),
    )


def write_summary_csv(summaries: Iterable[BenchSummary]) -> str:
    return _table(
        SUMMARY_HEADER,
        ((s.node_count, s.agent_count, f"{s.median_moves:g}", f"{s.median_ms:.3f}") for s in summaries),
    )
