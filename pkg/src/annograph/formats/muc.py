"""MUC-7 SGML: coreference (``<COREF ID REF MIN TYPE>``) and named entities
(``<b_enamex TYPE=..>`` ... ``<e_enamex>`` empty-tag pairs).

Both importers lay the document's tokens out as a chain of ``W/`` arcs over
unanchored nodes and hang the markup on that chain, so nested and
cross-cutting spans simply share nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..errors import DanglingRef, DuplicateId, MalformedMarkup, UnbalancedTags
from ..graph import AnnotationGraph
from ._builder import GraphBuilder
from .sgml import Tag, scan, tokenize

__all__ = ["CorefEntity", "CorefResult", "coref_classes", "parse_muc_coref", "parse_muc_ne"]


@dataclass(frozen=True)
class CorefEntity:
    id: int
    ref: Optional[int]
    min: Optional[str]
    text_span: tuple[int, int]  # token indices, end exclusive
    type: Optional[str] = None


@dataclass
class CorefResult:
    entities: list[CorefEntity]
    classes: list[frozenset[int]]
    graph: AnnotationGraph

    def class_name(self, entity_id: int) -> str:
        for c in self.classes:
            if entity_id in c:
                return str(min(c))
        raise KeyError(entity_id)


def _decode(sgml: Union[bytes, str]) -> str:
    return sgml.decode("utf-8") if isinstance(sgml, bytes) else sgml


def _int_attr(tag: Tag, name: str) -> Optional[int]:
    for key, value in tag.attrs.items():
        if key.upper() == name:
            try:
                return int(value)
            except ValueError:
                raise MalformedMarkup(f"line {tag.line}: {name}={value!r} is not an integer") from None
    return None


def _str_attr(tag: Tag, name: str) -> Optional[str]:
    for key, value in tag.attrs.items():
        if key.upper() == name:
            return value
    return None


def coref_classes(pairs: list[tuple[int, Optional[int]]]) -> list[frozenset[int]]:
    """Connected components of the ID/REF relation (union-find).

    ``pairs`` are ``(id, ref)``; ``ref`` may be ``None``.  Components are
    ordered by their smallest member.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, ref in pairs:
        find(i)
        if ref is not None:
            ri, rr = find(i), find(ref)
            if ri != rr:
                parent[max(ri, rr)] = min(ri, rr)
    groups: dict[int, set[int]] = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def parse_muc_coref(sgml: Union[bytes, str], prefix: str = "") -> CorefResult:
    """Read COREF markup into entities, equivalence classes and a graph.

    The graph has one ``coref/<ID>/<class>`` arc per entity over its tokens,
    where the class is named by the smallest ID in its equivalence class.
    ``TYPE`` values are kept on the entities but not interpreted.
    """
    tokens: list[str] = []
    open_: list[tuple[Tag, int]] = []
    spans: list[tuple[Tag, int, int]] = []
    for tok in scan(_decode(sgml)):
        if not isinstance(tok, Tag):
            tokens.extend(tokenize(tok.text))
            continue
        if tok.name.upper() != "COREF":
            continue
        if tok.closing:
            if not open_:
                raise MalformedMarkup(f"line {tok.line}: </COREF> without an open COREF")
            start_tag, start = open_.pop()
            spans.append((start_tag, start, len(tokens)))
        else:
            open_.append((tok, len(tokens)))
    if open_:
        raise MalformedMarkup(f"line {open_[-1][0].line}: COREF is never closed")

    entities: list[CorefEntity] = []
    seen: set[int] = set()
    for tag, start, end in sorted(spans, key=lambda s: (s[1], -s[2])):
        ident = _int_attr(tag, "ID")
        if ident is None:
            raise MalformedMarkup(f"line {tag.line}: COREF without ID")
        if ident in seen:
            raise DuplicateId(f"line {tag.line}: ID {ident} is used twice", id=ident)
        if start == end:
            raise MalformedMarkup(f"line {tag.line}: COREF ID={ident} encloses no tokens")
        seen.add(ident)
        entities.append(
            CorefEntity(ident, _int_attr(tag, "REF"), _str_attr(tag, "MIN"), (start, end), _str_attr(tag, "TYPE"))
        )
    for e in entities:
        if e.ref is not None and e.ref not in seen:
            raise DanglingRef(f"COREF ID={e.id} refers to undeclared ID {e.ref}", id=e.id, ref=e.ref)

    classes = coref_classes([(e.id, e.ref) for e in entities])
    name = {i: str(min(c)) for c in classes for i in c}

    b = GraphBuilder(prefix)
    nodes = _word_chain(b, tokens)
    for e in entities:
        s, t = e.text_span
        b.arc(nodes[s], "coref", str(e.id), nodes[t], name[e.id])
    return CorefResult(entities, classes, b.build())


def _word_chain(b: GraphBuilder, tokens: list[str]) -> list[str]:
    nodes = [b.node() for _ in range(len(tokens) + 1)] if tokens else []
    for i, w in enumerate(tokens):
        b.arc(nodes[i], "W", w, nodes[i + 1])
    return nodes


def parse_muc_ne(sgml: Union[bytes, str], prefix: str = "") -> AnnotationGraph:
    """Read named-entity empty-tag pairs into ``NE/<TYPE>`` arcs.

    ``<b_X ...>`` opens and ``<e_X>`` closes an entity of kind ``X``
    (``enamex``, ``numex``, ``timex``); each kind must balance on its own.
    """
    tokens: list[str] = []
    stacks: dict[str, list[tuple[Tag, int]]] = {}
    spans: list[tuple[str, int, int]] = []
    for tok in scan(_decode(sgml)):
        if not isinstance(tok, Tag):
            tokens.extend(tokenize(tok.text))
            continue
        low = tok.name.lower()
        if tok.closing or not (low.startswith("b_") or low.startswith("e_")):
            continue
        kind = low[2:]
        if low.startswith("b_"):
            stacks.setdefault(kind, []).append((tok, len(tokens)))
            continue
        stack = stacks.get(kind)
        if not stack:
            raise UnbalancedTags(f"line {tok.line}: <{tok.name}> without a matching <b_{kind}>", line=tok.line)
        open_tag, start = stack.pop()
        ne_type = _str_attr(open_tag, "TYPE")
        if not ne_type:
            raise MalformedMarkup(f"line {open_tag.line}: <{open_tag.name}> without TYPE")
        if start == len(tokens):
            raise MalformedMarkup(f"line {open_tag.line}: <{open_tag.name}> encloses no tokens")
        spans.append((ne_type, start, len(tokens)))
    for kind, stack in stacks.items():
        if stack:
            raise UnbalancedTags(f"line {stack[-1][0].line}: <b_{kind}> is never closed", line=stack[-1][0].line)

    b = GraphBuilder(prefix)
    nodes = _word_chain(b, tokens)
    for ne_type, s, t in spans:
        b.arc(nodes[s], "NE", ne_type, nodes[t])
    return b.build()
