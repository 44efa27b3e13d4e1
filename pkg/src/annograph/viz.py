"""Render an annotation graph as Graphviz DOT.

Layout: the graph's nodes form one row in topological order (with times
when known); below it, each arc type gets its own row holding a box per
arc, headed by the type name.  A box hangs from its source node and
points at its destination node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import AnnotationGraph, topological_order

__all__ = ["VizOptions", "render", "layer_types"]


@dataclass(frozen=True)
class VizOptions:
    layer_order: Sequence[str] = ()
    show_times: bool = True
    show_classes: bool = False

    def __post_init__(self) -> None:
        order = tuple(self.layer_order)
        if len(set(order)) != len(order):
            raise ValueError(f"duplicate entries in layer_order: {order}")
        object.__setattr__(self, "layer_order", order)


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def layer_types(g: AnnotationGraph, opts: VizOptions) -> list[str]:
    present = g.types
    listed = [t for t in opts.layer_order if t in present]
    return listed + sorted(present - set(listed))


def render(g: AnnotationGraph, opts: VizOptions = VizOptions()) -> bytes:
    out = ["digraph AG {", "  rankdir=TB;", '  node [fontname="Helvetica"];']
    order = topological_order(g)
    if order:
        out.append("  // nodes")
        row = []
        for nid in order:
            label = nid
            t = g.time(nid)
            if opts.show_times and t is not None:
                label = f"{nid}\n{t.text}"
            row.append(f"{_q('n:' + nid)} [label={_q(label)}, shape=circle];")
        out.append("  { rank=same; " + " ".join(row) + " }")
        if len(order) > 1:
            chain = " -> ".join(_q("n:" + nid) for nid in order)
            out.append(f"  {chain} [style=invis];")

    arcs = g.sorted_arcs()
    layers = layer_types(g, opts)
    ids = {a: f"a:{i}" for i, a in enumerate(arcs)}
    for layer in layers:
        out.append(f"  // layer {layer}")
        row = [f"{_q('layer:' + layer)} [label={_q(layer)}, shape=plaintext];"]
        for a in arcs:
            if a.type != layer:
                continue
            cls = a.cls if opts.show_classes and a.cls is not None else ""
            row.append(f"{_q(ids[a])} [label={_q(f'{a.type}/{a.label}/{cls}')}, shape=box];")
        out.append("  { rank=same; " + " ".join(row) + " }")
    if layers:
        heads = [_q("layer:" + t) for t in layers]
        if order:
            heads.insert(0, _q("n:" + order[0]))
        if len(heads) > 1:
            out.append("  " + " -> ".join(heads) + " [style=invis];")
    for a in arcs:
        box = _q(ids[a])
        out.append(f"  {_q('n:' + a.src)} -> {box} [arrowhead=none];")
        out.append(f"  {box} -> {_q('n:' + a.dst)} [constraint=false];")
    out.append("}")
    return ("\n".join(out) + "\n").encode("utf-8")
