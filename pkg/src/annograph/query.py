"""Arc-set queries over a single annotation graph.

Any subset of a graph's arcs is itself a well-formed annotation graph, so
query results are :class:`ArcSet` values closed under union, intersection
and relative complement.  Temporal relations between arcs answer
``True``, ``False`` or ``None`` (unknown): extents of partially anchored
arcs are only brackets, and an answer is given only when it holds for
every consistent assignment of the missing times.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import GraphMismatch
from .graph import AnnotationGraph, Arc, TimeInterval, arc_extent, subgraph
from .timepoint import TimePoint

__all__ = [
    "ArcSet",
    "Selector",
    "TimeIndex",
    "all_arcs",
    "select",
    "set_union",
    "set_intersect",
    "set_complement",
    "precedes",
    "includes",
    "overlaps",
    "coindexed",
    "build_time_index",
    "query_window",
]


class ArcSet:
    """A subset of the arcs of one particular graph object."""

    __slots__ = ("graph", "members")

    def __init__(self, graph: AnnotationGraph, members: Iterable[Arc] = ()) -> None:
        members = frozenset(members)
        stray = members - graph.arcs
        if stray:
            raise ValueError(f"{len(stray)} arc(s) do not belong to the graph, e.g. {next(iter(stray))}")
        self.graph = graph
        self.members = members

    @property
    def graph_id(self) -> int:
        return id(self.graph)

    def _check(self, other: ArcSet) -> None:
        if not isinstance(other, ArcSet):
            raise TypeError(f"expected ArcSet, got {type(other).__name__}")
        if other.graph is not self.graph:
            raise GraphMismatch("arc sets belong to different graphs")

    def __or__(self, other: ArcSet) -> ArcSet:
        self._check(other)
        return ArcSet(self.graph, self.members | other.members)

    def __and__(self, other: ArcSet) -> ArcSet:
        self._check(other)
        return ArcSet(self.graph, self.members & other.members)

    def __sub__(self, other: ArcSet) -> ArcSet:
        self._check(other)
        return ArcSet(self.graph, self.members - other.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArcSet):
            return NotImplemented
        return self.graph is other.graph and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.graph), self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, arc: object) -> bool:
        return arc in self.members

    def __iter__(self) -> Iterator[Arc]:
        # deterministic: the owning graph's arc order
        return (a for a in self.graph.sorted_arcs() if a in self.members)

    def __repr__(self) -> str:
        return f"<ArcSet {len(self.members)} of {len(self.graph.arcs)} arcs>"

    def to_graph(self) -> AnnotationGraph:
        return subgraph(self.graph, self.members)


def all_arcs(g: AnnotationGraph) -> ArcSet:
    return ArcSet(g, g.arcs)


def set_union(a: ArcSet, b: ArcSet) -> ArcSet:
    return a | b


def set_intersect(a: ArcSet, b: ArcSet) -> ArcSet:
    return a & b


def set_complement(a: ArcSet, b: ArcSet) -> ArcSet:
    """Relative complement ``a \\ b``."""
    return a - b


@dataclass(frozen=True)
class Selector:
    """Conjunctive exact-match selector.

    ``label`` ending in ``*`` matches by prefix (``"IOS:*"``); write ``\\*``
    for a literal trailing asterisk.  ``window`` keeps arcs whose extent is
    fully bracketed and intersects the window.
    """

    type: Optional[str] = None
    label: Optional[str] = None
    cls: Optional[str] = None
    window: Optional[TimeInterval] = None

    def __post_init__(self) -> None:
        if self.type is None and self.label is None and self.cls is None and self.window is None:
            raise ValueError("a selector needs at least one field")

    def _label_matches(self, label: str) -> bool:
        pat = self.label
        if pat.endswith("\\*"):
            return label == pat[:-2] + "*"
        if pat.endswith("*"):
            return label.startswith(pat[:-1])
        return label == pat

    def matches(self, g: AnnotationGraph, a: Arc) -> bool:
        if self.type is not None and a.type != self.type:
            return False
        if self.cls is not None and a.cls != self.cls:
            return False
        if self.label is not None and not self._label_matches(a.label):
            return False
        if self.window is not None:
            ext = arc_extent(g, a)
            if not ext.bounded or not ext.intersects(self.window):
                return False
        return True


def select(g: AnnotationGraph, s: Selector) -> ArcSet:
    return ArcSet(g, (a for a in g.arcs if s.matches(g, a)))


def coindexed(g: AnnotationGraph, class_name: str) -> ArcSet:
    """All arcs in the equivalence class ``class_name``."""
    return ArcSet(g, (a for a in g.arcs if a.cls == class_name))


# ---------------------------------------------------------------------------
# Temporal relations
#
# Each node's time lies in the bracket g.node_bounds(n) in every consistent
# completion of the time map.  An answer is returned only when the brackets
# force it; structural evidence (paths through shared nodes) comes first.


def _gt(x: Optional[TimePoint], y: Optional[TimePoint]) -> bool:
    return x is not None and y is not None and x > y


def _le(x: Optional[TimePoint], y: Optional[TimePoint]) -> bool:
    return x is not None and y is not None and x <= y


def precedes(g: AnnotationGraph, a: Arc, b: Arc) -> Optional[bool]:
    """Does ``a`` end no later than ``b`` starts?

    Two distinct zero-width arcs at the same instant are simultaneous, so
    neither precedes the other unless a path orders them.
    """
    if a == b:
        return False
    if g.reaches(a.dst, b.src):
        return True
    if g.reaches(b.dst, a.src):
        return False
    a_src, a_dst = g.node_bounds(a.src), g.node_bounds(a.dst)
    b_src, b_dst = g.node_bounds(b.src), g.node_bounds(b.dst)
    if _le(a_dst[1], b_src[0]) and _gt(b_dst[0], a_src[1]):
        return True
    if _gt(a_dst[0], b_src[1]) or _le(b_dst[1], a_src[0]):
        return False
    return None


def includes(g: AnnotationGraph, a: Arc, b: Arc) -> Optional[bool]:
    """Does the extent of ``a`` contain the extent of ``b``?"""
    if a == b:
        return True
    if g.reaches(a.src, b.src) and g.reaches(b.dst, a.dst):
        return True
    a_src, a_dst = g.node_bounds(a.src), g.node_bounds(a.dst)
    b_src, b_dst = g.node_bounds(b.src), g.node_bounds(b.dst)
    if _le(a_src[1], b_src[0]) and _le(b_dst[1], a_dst[0]):
        return True
    if _gt(a_src[0], b_src[1]) or _gt(b_dst[0], a_dst[1]):
        return False
    return None


def overlaps(g: AnnotationGraph, a: Arc, b: Arc) -> Optional[bool]:
    """Do the extents share more than a single point?"""
    a_src, a_dst = g.node_bounds(a.src), g.node_bounds(a.dst)
    b_src, b_dst = g.node_bounds(b.src), g.node_bounds(b.dst)
    late_start = _max(a_src[1], b_src[1])
    early_end = _min(a_dst[0], b_dst[0])
    if late_start is not None and early_end is not None and late_start < early_end:
        return True
    late_start = _max(a_src[0], b_src[0])
    early_end = _min(a_dst[1], b_dst[1])
    if _le(early_end, late_start):
        return False
    return None


def _max(x: Optional[TimePoint], y: Optional[TimePoint]) -> Optional[TimePoint]:
    if x is None or y is None:
        return None
    return max(x, y)


def _min(x: Optional[TimePoint], y: Optional[TimePoint]) -> Optional[TimePoint]:
    if x is None or y is None:
        return None
    return min(x, y)


# ---------------------------------------------------------------------------
# Time index


class TimeIndex:
    """Static interval tree over the extents of fully bracketed arcs.

    Entries are sorted by lower bound; an implicit balanced tree over that
    array carries the maximum upper bound of every subtree, so a window
    lookup prunes whole subtrees that end before the window starts.
    """

    def __init__(self, g: AnnotationGraph) -> None:
        self.graph = g
        entries = []
        for a in g.sorted_arcs():
            ext = arc_extent(g, a)
            if ext.bounded:
                entries.append((ext.lo.value, ext.hi.value, a))
        entries.sort(key=lambda e: (e[0], e[1]))
        self._lo = [e[0] for e in entries]
        self._hi = [e[1] for e in entries]
        self._arcs = [e[2] for e in entries]
        self._maxhi = list(self._hi)
        self._build(0, len(entries))

    def _build(self, lo: int, hi: int):
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        best = self._hi[mid]
        for child in (self._build(lo, mid), self._build(mid + 1, hi)):
            if child is not None and child > best:
                best = child
        self._maxhi[mid] = best
        return best

    def __len__(self) -> int:
        return len(self._arcs)

    def query(self, window: TimeInterval) -> ArcSet:
        wlo = None if window.lo is None else window.lo.value
        whi = None if window.hi is None else window.hi.value
        found: list[Arc] = []
        stack = [(0, len(self._arcs))]
        while stack:
            lo, hi = stack.pop()
            if lo >= hi:
                continue
            mid = (lo + hi) // 2
            if wlo is not None and self._maxhi[mid] < wlo:
                continue
            stack.append((lo, mid))
            if whi is not None and self._lo[mid] > whi:
                continue
            if wlo is None or self._hi[mid] >= wlo:
                found.append(self._arcs[mid])
            stack.append((mid + 1, hi))
        return ArcSet(self.graph, found)


def build_time_index(g: AnnotationGraph) -> TimeIndex:
    return TimeIndex(g)


def query_window(idx: TimeIndex, w: TimeInterval) -> ArcSet:
    return idx.query(w)
