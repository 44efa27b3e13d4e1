"""Annotation graph data model.

An annotation graph is a set of arcs ``<src, record, dst>`` over a node set,
where each record is a fielded ``type/label/class`` triple.  Some nodes carry
a time reference; the time map must be order-preserving and the underlying
digraph acyclic.  Graphs here are immutable values: construction never
validates, :func:`validate` reports every violation it finds.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Callable, Collection, Iterable, Iterator, Mapping, Optional, Union

from .errors import AnchorConflict, CycleError, DuplicateNodeId
from .timepoint import TimePoint

__all__ = [
    "Node",
    "Record",
    "Arc",
    "AnnotationGraph",
    "TimeInterval",
    "ViolationKind",
    "Violation",
    "ValidationReport",
    "node_sort_key",
    "build_graph",
    "validate",
    "union",
    "union_all",
    "subgraph",
    "arc_extent",
    "topological_order",
    "connected_components",
    "rename_nodes",
    "merge_strands",
]

_DIGITS = re.compile(r"(\d+)")


def node_sort_key(node_id: str) -> tuple:
    """Natural ordering for node ids, so that ``n2`` sorts before ``n10``.

    The raw id is the final tie-breaker, which keeps the order total.
    """
    parts = tuple(
        (0, int(p), "") if p.isdigit() else (1, 0, p)
        for p in _DIGITS.split(node_id)
        if p
    )
    return parts, node_id


@dataclass(frozen=True)
class Node:
    id: str
    time: Optional[TimePoint] = None

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise ValueError(f"node id must be a non-empty string, got {self.id!r}")
        if self.time is not None and not isinstance(self.time, TimePoint):
            object.__setattr__(self, "time", TimePoint(self.time))

    @property
    def anchored(self) -> bool:
        return self.time is not None


@dataclass(frozen=True)
class Record:
    """The fielded label on an arc: ``type/label/class``."""

    type: str
    label: str = ""
    cls: Optional[str] = None

    def __post_init__(self) -> None:
        if not isinstance(self.type, str) or not self.type:
            raise ValueError("record type must be a non-empty string")
        if not isinstance(self.label, str):
            raise TypeError("record label must be a string")

    def sort_key(self) -> tuple:
        return (self.type, self.label, self.cls is not None, self.cls or "")

    def __str__(self) -> str:
        return f"{self.type}/{self.label}/{self.cls or ''}"


@dataclass(frozen=True)
class Arc:
    src: str
    record: Record
    dst: str

    @classmethod
    def make(cls, src: str, type: str, label: str, dst: str, klass: str | None = None) -> Arc:
        return cls(src, Record(type, label, klass), dst)

    @property
    def type(self) -> str:
        return self.record.type

    @property
    def label(self) -> str:
        return self.record.label

    @property
    def cls(self) -> Optional[str]:
        return self.record.cls

    def __str__(self) -> str:
        return f"<{self.src}, {self.record}, {self.dst}>"


@dataclass(frozen=True)
class TimeInterval:
    """A closed interval; either bound may be unknown (``None``)."""

    lo: Optional[TimePoint] = None
    hi: Optional[TimePoint] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", TimePoint.coerce(self.lo))
        object.__setattr__(self, "hi", TimePoint.coerce(self.hi))
        if self.lo is not None and self.hi is not None and self.hi < self.lo:
            raise ValueError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def intersects(self, other: TimeInterval) -> bool:
        """Closed-interval intersection; a missing bound on either side is unbounded."""
        if self.lo is not None and other.hi is not None and other.hi < self.lo:
            return False
        if other.lo is not None and self.hi is not None and self.hi < other.lo:
            return False
        return True

    def __str__(self) -> str:
        lo = "?" if self.lo is None else self.lo.text
        hi = "?" if self.hi is None else self.hi.text
        return f"[{lo},{hi}]"


class AnnotationGraph:
    """An immutable annotation graph.

    ``nodes`` maps node id to :class:`Node`; ``arcs`` is a frozenset, so
    duplicate triples collapse.  Equality ignores insertion order.
    Derived structures (topological order, reachability, time bounds) are
    computed on first use and cached.
    """

    def __init__(self, nodes: Iterable[Node] = (), arcs: Iterable[Arc] = ()) -> None:
        table: dict[str, Node] = {}
        for n in nodes:
            table[n.id] = n
        self._nodes = MappingProxyType(dict(sorted(table.items(), key=lambda kv: node_sort_key(kv[0]))))
        self._arcs = frozenset(arcs)

    @property
    def nodes(self) -> Mapping[str, Node]:
        return self._nodes

    @property
    def arcs(self) -> frozenset[Arc]:
        return self._arcs

    def time(self, node_id: str) -> Optional[TimePoint]:
        node = self._nodes.get(node_id)
        return None if node is None else node.time

    @property
    def anchors(self) -> dict[str, TimePoint]:
        """The partial time map, as ``{node id: time}``."""
        return {n.id: n.time for n in self._nodes.values() if n.time is not None}

    @property
    def types(self) -> set[str]:
        return {a.type for a in self._arcs}

    @property
    def labels(self) -> set[str]:
        return {a.label for a in self._arcs}

    @property
    def classes(self) -> set[str]:
        return {a.cls for a in self._arcs if a.cls is not None}

    def sorted_arcs(self) -> list[Arc]:
        """Arcs ordered by position of src, then record, then position of dst."""
        pos = self._position
        return sorted(
            self._arcs,
            key=lambda a: (pos[a.src], a.record.sort_key(), pos[a.dst]),
        )

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.sorted_arcs())

    def __len__(self) -> int:
        return len(self._arcs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnotationGraph):
            return NotImplemented
        return dict(self._nodes) == dict(other._nodes) and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((frozenset(self._nodes.values()), self._arcs))

    def __repr__(self) -> str:
        return f"<AnnotationGraph |N|={len(self._nodes)} |A|={len(self._arcs)}>"

    # -- derived structure -------------------------------------------------

    @cached_property
    def _vertices(self) -> list[str]:
        ids = set(self._nodes)
        for a in self._arcs:
            ids.add(a.src)
            ids.add(a.dst)
        return sorted(ids, key=node_sort_key)

    @cached_property
    def _succ(self) -> dict[str, list[str]]:
        succ: dict[str, set[str]] = {v: set() for v in self._vertices}
        for a in self._arcs:
            if a.src != a.dst:
                succ[a.src].add(a.dst)
        return {v: sorted(s, key=node_sort_key) for v, s in succ.items()}

    @cached_property
    def _pred(self) -> dict[str, list[str]]:
        pred: dict[str, set[str]] = {v: set() for v in self._vertices}
        for a in self._arcs:
            if a.src != a.dst:
                pred[a.dst].add(a.src)
        return {v: sorted(s, key=node_sort_key) for v, s in pred.items()}

    @cached_property
    def _topo(self) -> Optional[list[str]]:
        indeg = {v: len(p) for v, p in self._pred.items()}
        heap = [(node_sort_key(v), v) for v, d in indeg.items() if d == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, v = heapq.heappop(heap)
            order.append(v)
            for w in self._succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, (node_sort_key(w), w))
        if len(order) != len(indeg):
            return None
        return order

    @cached_property
    def _position(self) -> dict[str, int]:
        order = self._topo
        if order is None:
            order = self._vertices
        return {v: i for i, v in enumerate(order)}

    def _require_acyclic(self) -> list[str]:
        order = self._topo
        if order is None:
            raise CycleError("graph contains a cycle")
        return order

    @cached_property
    def _descendants(self) -> dict[str, int]:
        # bitset over topological positions, reflexive
        order = self._require_acyclic()
        pos = self._position
        desc: dict[str, int] = {}
        for v in reversed(order):
            bits = 1 << pos[v]
            for w in self._succ[v]:
                bits |= desc[w]
            desc[v] = bits
        return desc

    def reaches(self, u: str, v: str) -> bool:
        """True if there is a (possibly empty) directed path from ``u`` to ``v``."""
        return bool(self._descendants[u] >> self._position[v] & 1)

    @cached_property
    def _time_bounds(self) -> dict[str, tuple[Optional[TimePoint], Optional[TimePoint]]]:
        # (greatest anchored time at-or-above, least anchored time at-or-below)
        order = self._require_acyclic()
        lower: dict[str, Optional[TimePoint]] = {}
        for v in order:
            t = self.time(v)
            if t is None:
                cands = [lower[p] for p in self._pred[v] if lower[p] is not None]
                t = max(cands) if cands else None
            lower[v] = t
        upper: dict[str, Optional[TimePoint]] = {}
        for v in reversed(order):
            t = self.time(v)
            if t is None:
                cands = [upper[s] for s in self._succ[v] if upper[s] is not None]
                t = min(cands) if cands else None
            upper[v] = t
        return {v: (lower[v], upper[v]) for v in order}

    def node_bounds(self, node_id: str) -> tuple[Optional[TimePoint], Optional[TimePoint]]:
        """Tightest provable bracket ``(lo, hi)`` on the time of a node."""
        return self._time_bounds[node_id]


# ---------------------------------------------------------------------------
# Construction


def build_graph(nodes: Iterable[Node] = (), arcs: Iterable[Arc] = ()) -> AnnotationGraph:
    """Build a graph from nodes and arcs; duplicate arcs collapse.

    Raises :class:`DuplicateNodeId` when the same id is given twice with
    different times.  Nothing else is checked here.
    """
    table: dict[str, Node] = {}
    for n in nodes:
        seen = table.get(n.id)
        if seen is not None and seen != n:
            raise DuplicateNodeId(
                f"node {n.id!r} given with times {_ttext(seen.time)} and {_ttext(n.time)}",
                node=n.id,
            )
        table.setdefault(n.id, n)
    return AnnotationGraph(table.values(), arcs)


def _ttext(t: Optional[TimePoint]) -> str:
    return "unanchored" if t is None else t.text


# ---------------------------------------------------------------------------
# Validation


class ViolationKind(str, Enum):
    CYCLE = "CYCLE"
    TIME_ORDER = "TIME_ORDER"
    DANGLING_ENDPOINT = "DANGLING_ENDPOINT"
    SELF_LOOP = "SELF_LOOP"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: dict = field(hash=False, compare=True)

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{self.kind.value}: {inner}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate(g: AnnotationGraph) -> ValidationReport:
    """Check acyclicity, order preservation, endpoints and self-loops.

    Every failure is reported.  Self-loops are reported only as
    ``SELF_LOOP`` and excluded from cycle and time-order analysis.
    """
    out: list[Violation] = []
    for a in sorted(g.arcs, key=_arc_key):
        if a.src == a.dst:
            out.append(Violation(ViolationKind.SELF_LOOP, {"arc": str(a), "node": a.src}))
    for a in sorted(g.arcs, key=_arc_key):
        missing = [n for n in (a.src, a.dst) if n not in g.nodes]
        for n in dict.fromkeys(missing):
            out.append(Violation(ViolationKind.DANGLING_ENDPOINT, {"arc": str(a), "node": n}))

    sccs = _strongly_connected(g)
    for comp in sccs:
        if len(comp) > 1:
            out.append(Violation(ViolationKind.CYCLE, {"nodes": comp}))
    out.extend(_time_order_violations(g, sccs))
    return ValidationReport(tuple(out))


def _arc_key(a: Arc) -> tuple:
    return (node_sort_key(a.src), a.record.sort_key(), node_sort_key(a.dst))


def _strongly_connected(g: AnnotationGraph) -> list[list[str]]:
    """Tarjan's algorithm, iterative.  Components come out in topological order."""
    succ = g._succ
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in g._vertices:
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, i = work[-1]
            children = succ[v]
            if i < len(children):
                work[-1] = (v, i + 1)
                w = children[i]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp, key=node_sort_key))
    comps.reverse()
    return comps


def _time_order_violations(g: AnnotationGraph, sccs: list[list[str]]) -> list[Violation]:
    # Walk the condensation in topological order carrying the latest anchored
    # ancestor time; a node inside a non-trivial component is its own ancestor.
    comp_of = {v: i for i, comp in enumerate(sccs) for v in comp}
    best_out: list[Optional[tuple[TimePoint, str]]] = [None] * len(sccs)
    found = []
    for i, comp in enumerate(sccs):
        incoming: Optional[tuple[TimePoint, str]] = None
        for v in comp:
            for p in g._pred[v]:
                j = comp_of[p]
                if j != i and best_out[j] is not None:
                    if incoming is None or best_out[j][0] > incoming[0]:
                        incoming = best_out[j]
        anchored = [(g.time(v), v) for v in comp if g.time(v) is not None]
        internal = max(anchored, key=lambda tv: tv[0]) if anchored else None
        reach_in = incoming
        if len(comp) > 1 and internal is not None:
            if reach_in is None or internal[0] > reach_in[0]:
                reach_in = internal
        for t, v in anchored:
            if reach_in is not None and reach_in[0] > t:
                found.append(
                    Violation(
                        ViolationKind.TIME_ORDER,
                        {
                            "node": v,
                            "time": t.text,
                            "ancestor": reach_in[1],
                            "ancestor_time": reach_in[0].text,
                        },
                    )
                )
        out = incoming
        if internal is not None and (out is None or internal[0] > out[0]):
            out = internal
        best_out[i] = out
    return found


# ---------------------------------------------------------------------------
# Operations


def union(g1: AnnotationGraph, g2: AnnotationGraph) -> AnnotationGraph:
    """Set union of nodes and arcs.

    Shared node ids must agree on their time (or both be unanchored);
    otherwise :class:`AnchorConflict` is raised naming both time texts.
    """
    nodes = dict(g1.nodes)
    for nid, n in g2.nodes.items():
        seen = nodes.get(nid)
        if seen is None:
            nodes[nid] = n
        elif seen != n:
            raise AnchorConflict(
                f"node {nid!r} is anchored at {_ttext(seen.time)} in one graph "
                f"and {_ttext(n.time)} in the other",
                node=nid,
                times=(_ttext(seen.time), _ttext(n.time)),
            )
    return AnnotationGraph(nodes.values(), g1.arcs | g2.arcs)


def union_all(graphs: Iterable[AnnotationGraph]) -> AnnotationGraph:
    result = AnnotationGraph()
    for g in graphs:
        result = union(result, g)
    return result


ArcPredicate = Callable[[Arc], bool]


def subgraph(g: AnnotationGraph, keep: Union[ArcPredicate, Collection[Arc]]) -> AnnotationGraph:
    """The graph induced by a subset of arcs.

    ``keep`` is either a predicate on arcs or a collection of arcs.  Nodes
    are the endpoints of the kept arcs.
    """
    if callable(keep):
        kept = [a for a in g.arcs if keep(a)]
    else:
        members = keep if isinstance(keep, (set, frozenset)) else set(keep)
        kept = [a for a in g.arcs if a in members]
    ids = {a.src for a in kept} | {a.dst for a in kept}
    nodes = [g.nodes.get(i) or Node(i) for i in ids]
    return AnnotationGraph(nodes, kept)


def arc_extent(g: AnnotationGraph, a: Arc) -> TimeInterval:
    """Tightest provable time bracket for an arc.

    The lower bound is the src time, or failing that the latest anchored
    ancestor; the upper bound is the dst time, or the earliest anchored
    descendant.
    """
    lo = g.node_bounds(a.src)[0]
    hi = g.node_bounds(a.dst)[1]
    return TimeInterval(lo, hi)


def topological_order(g: AnnotationGraph) -> list[str]:
    """Node ids in a deterministic topological order (ties by node id)."""
    return list(g._require_acyclic())


def connected_components(g: AnnotationGraph) -> list[set[str]]:
    """Weakly connected components, ordered by their smallest node id."""
    parent = {v: v for v in g._vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in g.arcs:
        ra, rb = find(a.src), find(a.dst)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, set[str]] = {}
    for v in g._vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=lambda s: node_sort_key(min(s, key=node_sort_key)))



def rename_nodes(g: AnnotationGraph, mapping: Mapping[str, str]) -> AnnotationGraph:
    """Rename node ids; ids absent from ``mapping`` are kept.

    Two nodes renamed onto one id must agree on their time.
    """
    if not mapping:
        return g
    nodes: dict[str, Node] = {}
    for n in g.nodes.values():
        new = Node(mapping.get(n.id, n.id), n.time)
        seen = nodes.get(new.id)
        if seen is not None and seen != new:
            raise AnchorConflict(
                f"nodes renamed to {new.id!r} have times {_ttext(seen.time)} and {_ttext(new.time)}",
                node=new.id,
                times=(_ttext(seen.time), _ttext(new.time)),
            )
        nodes[new.id] = new
    arcs = (Arc(mapping.get(a.src, a.src), a.record, mapping.get(a.dst, a.dst)) for a in g.arcs)
    return AnnotationGraph(nodes.values(), arcs)


def merge_strands(
    graphs: Iterable[AnnotationGraph],
    shared: Iterable[tuple[str, str]] = (),
) -> AnnotationGraph:
    """Union independently built strands, identifying registered boundaries.

    ``shared`` lists ``(keep_id, other_id)`` pairs: ``keep_id`` is a node of
    the first graph, and ``other_id`` a node of one of the later graphs that
    is renamed to ``keep_id`` before the union.  Registration is never
    guessed; a mapped pair whose times are not exactly equal raises
    :class:`AnchorConflict`, and an id missing from its side raises
    ``ValueError``.
    """
    graphs = list(graphs)
    pairs = list(shared)
    if not graphs:
        return AnnotationGraph((), ())
    first, rest = graphs[0], graphs[1:]
    for keep, other in pairs:
        if keep not in first.nodes:
            raise ValueError(f"mapped id {keep!r} is not a node of the first graph")
        if not any(other in g.nodes for g in rest):
            raise ValueError(f"mapped id {other!r} is not a node of any later graph")
    mapping = dict((other, keep) for keep, other in pairs)
    return union_all([first] + [rename_nodes(g, mapping) for g in rest])
