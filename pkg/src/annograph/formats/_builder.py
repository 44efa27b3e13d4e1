from __future__ import annotations

from typing import Optional

from ..graph import AnnotationGraph, Arc, Node, Record
from ..timepoint import TimePoint


class GraphBuilder:
    """Accumulates nodes and arcs for an importer.

    Node ids are ``{prefix}n{k}`` in creation order, which keeps importer
    output deterministic and lets callers namespace strands before union.
    """

    def __init__(self, prefix: str = "") -> None:
        self.prefix = prefix
        self._nodes: list[Node] = []
        self._arcs: list[Arc] = []

    def node(self, time: Optional[TimePoint] = None) -> str:
        nid = f"{self.prefix}n{len(self._nodes)}"
        self._nodes.append(Node(nid, time))
        return nid

    def arc(self, src: str, type: str, label: str, dst: str, cls: Optional[str] = None) -> Arc:
        a = Arc(src, Record(type, label, cls), dst)
        self._arcs.append(a)
        return a

    def chain(self, src: str, dst: str, type: str, labels: list[str]) -> list[Arc]:
        """Link ``labels`` as consecutive arcs from ``src`` to ``dst``.

        Interior nodes are fresh and unanchored.  With no labels nothing is
        added.
        """
        out = []
        cur = src
        for i, label in enumerate(labels):
            nxt = dst if i == len(labels) - 1 else self.node()
            out.append(self.arc(cur, type, label, nxt))
            cur = nxt
        return out

    def build(self) -> AnnotationGraph:
        return AnnotationGraph(self._nodes, self._arcs)
