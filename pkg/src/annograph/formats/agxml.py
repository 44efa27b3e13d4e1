"""AG-XML: the XML exchange encoding.

::

    <annotation>
      <arc>
        <begin id="1" time="52.46"/>
        <label type="W" name="oh"/>
        <end id="2"/>
      </arc>
      ...
    </annotation>

Anchored nodes repeat their ``time`` on every ``begin``/``end`` that names
them.  Nodes that touch no arc are written as ``<node id=.. time=../>``
after the arcs so that the encoding is lossless.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Union
from xml.sax.saxutils import quoteattr

from ..errors import AnchorConflict, ParseError, SchemaError
from ..graph import AnnotationGraph, Arc, Node, Record
from ..timepoint import TimePoint
from .sgml import Tag, scan

__all__ = ["to_xml", "from_xml"]


def _attr(name: str, value: str) -> str:
    return f" {name}={quoteattr(value)}"


def _endpoint(tag: str, g: AnnotationGraph, node_id: str) -> str:
    t = g.time(node_id)
    time = "" if t is None else _attr("time", t.text)
    return f"<{tag}{_attr('id', node_id)}{time}/>"


def to_xml(g: AnnotationGraph) -> bytes:
    """Serialize a graph; arcs in topological order of src, then by record."""
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    arcs = g.sorted_arcs()
    used = {a.src for a in arcs} | {a.dst for a in arcs}
    isolated = [n for nid, n in g.nodes.items() if nid not in used]
    if not arcs and not isolated:
        lines.append("<annotation/>")
    else:
        lines.append("<annotation>")
        for a in arcs:
            rec = a.record
            label = _attr("type", rec.type) + _attr("name", rec.label)
            if rec.cls is not None:
                label += _attr("class", rec.cls)
            lines += [
                "  <arc>",
                "    " + _endpoint("begin", g, a.src),
                f"    <label{label}/>",
                "    " + _endpoint("end", g, a.dst),
                "  </arc>",
            ]
        for n in isolated:
            lines.append("  " + _endpoint("node", g, n.id))
        lines.append("</annotation>")
    return ("\n".join(lines) + "\n").encode("utf-8")


class _Collector:
    def __init__(self) -> None:
        self.times: dict[str, Optional[TimePoint]] = {}
        self.arcs: list[Arc] = []

    def endpoint(self, attrs: dict[str, str], where: str) -> str:
        nid = attrs.get("id")
        if not nid:
            raise SchemaError(f"{where}: endpoint without id")
        raw = attrs.get("time")
        t = None
        if raw is not None:
            try:
                t = TimePoint(raw)
            except ValueError as exc:
                raise ParseError(f"{where}: bad time {raw!r}") from exc
        seen = self.times.get(nid)
        if t is not None:
            if seen is not None and seen != t:
                raise AnchorConflict(
                    f"{where}: node {nid!r} has times {seen.text} and {t.text}",
                    node=nid,
                    times=(seen.text, t.text),
                )
            if seen is None:
                self.times[nid] = t
        else:
            self.times.setdefault(nid, None)
        return nid

    def arc(self, begin: Optional[dict], label: Optional[dict], end: Optional[dict], where: str) -> None:
        if begin is None or end is None:
            raise SchemaError(f"{where}: arc is missing its begin or end endpoint")
        if label is None or not label.get("type"):
            raise SchemaError(f"{where}: arc label is missing its type")
        src = self.endpoint(begin, where)
        dst = self.endpoint(end, where)
        self.arcs.append(Arc(src, Record(label["type"], label.get("name", ""), label.get("class")), dst))

    def graph(self) -> AnnotationGraph:
        return AnnotationGraph((Node(i, t) for i, t in self.times.items()), self.arcs)


def _decode(doc: Union[bytes, str]) -> str:
    if isinstance(doc, str):
        return doc
    try:
        return doc.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"document is not UTF-8: {exc}") from exc


def from_xml(doc: Union[bytes, str], lenient: bool = False) -> AnnotationGraph:
    """Parse AG-XML.

    With ``lenient=True`` the document is read with a tag scanner instead of
    an XML parser, which accepts unquoted attribute values and unclosed
    ``begin``/``label``/``end`` tags as in hand-written listings.
    """
    if lenient:
        return _from_sgml(_decode(doc))
    data = doc.encode("utf-8") if isinstance(doc, str) else doc
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}") from exc
    if root.tag != "annotation":
        raise SchemaError(f"root element is <{root.tag}>, expected <annotation>")
    out = _Collector()
    for i, child in enumerate(root):
        where = f"element {i + 1}"
        if child.tag == "arc":
            parts: dict[str, dict] = {}
            for part in child:
                if part.tag not in ("begin", "label", "end"):
                    raise SchemaError(f"{where}: unexpected <{part.tag}> in <arc>")
                if part.tag in parts:
                    raise SchemaError(f"{where}: repeated <{part.tag}> in <arc>")
                parts[part.tag] = dict(part.attrib)
            out.arc(parts.get("begin"), parts.get("label"), parts.get("end"), where)
        elif child.tag == "node":
            out.endpoint(dict(child.attrib), where)
        else:
            raise SchemaError(f"{where}: unexpected <{child.tag}>")
    return out.graph()


def _from_sgml(text: str) -> AnnotationGraph:
    out = _Collector()
    in_annotation = False
    current: Optional[dict[str, Optional[dict]]] = None
    current_line = 0
    for tok in scan(text):
        if not isinstance(tok, Tag):
            if tok.text.strip():
                raise ParseError(f"line {tok.line}: unexpected text {tok.text.strip()[:30]!r}")
            continue
        name = tok.name
        if name == "annotation":
            if tok.closing:
                in_annotation = False
            else:
                in_annotation = not tok.empty
            continue
        if not in_annotation:
            raise SchemaError(f"line {tok.line}: <{name}> outside <annotation>")
        if name == "arc":
            if tok.closing:
                if current is None:
                    raise ParseError(f"line {tok.line}: </arc> without <arc>")
                out.arc(current["begin"], current["label"], current["end"], f"arc at line {current_line}")
                current = None
            else:
                if current is not None:
                    raise ParseError(f"line {tok.line}: nested <arc>")
                current = {"begin": None, "label": None, "end": None}
                current_line = tok.line
        elif name in ("begin", "label", "end"):
            if tok.closing:
                continue
            if current is None:
                raise SchemaError(f"line {tok.line}: <{name}> outside <arc>")
            current[name] = tok.attrs
        elif name == "node" and not tok.closing:
            out.endpoint(tok.attrs, f"line {tok.line}")
        elif not tok.closing:
            raise SchemaError(f"line {tok.line}: unexpected <{name}>")
    if current is not None:
        raise ParseError("unterminated <arc>")
    return out.graph()
