"""DAMSL dialogue-act SGML (as used for the TRAINS dialogues).

``<Turn>`` and ``<Utt>`` tags carry attribute lists; the text after an
``<Utt>`` tag is the utterance.  Times come from ``Speech="-s B -e E"``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import MalformedSpeechAttr, UnknownResponseTarget
from ..graph import AnnotationGraph, Arc
from ..timepoint import TimePoint
from ._builder import GraphBuilder
from .sgml import Tag, Text, scan

__all__ = ["parse_damsl", "utterance_attributes", "ABBREVIATIONS", "WORD_NOISE"]

_SPEECH_RE = re.compile(r"^\s*-s\s+(\S+)\s+-e\s+(\S+)\s*$")

ABBREVIATIONS = {"Influence-on-speaker": "IOS"}
_EXPAND = {v: k for k, v in ABBREVIATIONS.items()}

# utterance-text material that is not a word
WORD_NOISE = frozenset({"+", "[sil]", "<sil>", "...", "[click]", "<click>"})

_STRUCTURAL = {"Id", "Speech", "Response-to"}


@dataclass
class _Utt:
    tag: Tag
    text: list[str] = field(default_factory=list)


@dataclass
class _Turn:
    tag: Optional[Tag]
    utts: list[_Utt] = field(default_factory=list)


def _speech(tag: Tag) -> tuple[TimePoint, TimePoint]:
    raw = tag.attrs.get("Speech")
    m = _SPEECH_RE.match(raw or "")
    if m is None:
        raise MalformedSpeechAttr(f"line {tag.line}: <{tag.name}> Speech={raw!r} is not '-s BEGIN -e END'", line=tag.line)
    try:
        return TimePoint(m[1]), TimePoint(m[2])
    except ValueError:
        raise MalformedSpeechAttr(f"line {tag.line}: <{tag.name}> Speech={raw!r} has a non-decimal time", line=tag.line) from None


def _read(sgml: str) -> list[_Turn]:
    turns: list[_Turn] = []
    current: Optional[_Utt] = None
    for tok in scan(sgml):
        if isinstance(tok, Text):
            if current is not None:
                # a line holding only "..." marks elided material, not speech
                lines = [ln for ln in tok.text.splitlines(keepends=True) if ln.strip() != "..."]
                current.text.append("".join(lines))
            continue
        if tok.closing:
            current = None
            continue
        if tok.name == "Turn":
            turns.append(_Turn(tok))
            current = None
        elif tok.name == "Utt":
            if not turns:
                turns.append(_Turn(None))
            current = _Utt(tok)
            turns[-1].utts.append(current)
        else:
            current = None
    return turns


def _d_label(attr: str, value: str) -> str:
    return f"{ABBREVIATIONS.get(attr, attr)}:{value}"


def parse_damsl(
    sgml: Union[bytes, str],
    include_words: bool = False,
    keep_none: bool = True,
    prefix: str = "",
) -> AnnotationGraph:
    """Import a DAMSL dialogue.

    Each ``Turn`` becomes ``Turn/<Speaker>/<turn Id>``; each ``Utt`` becomes
    ``Utt/<text>/<utt Id>`` and every other attribute a separate
    ``D/<Attr>:<Value>/<utt Id>`` arc over the same nodes
    (``Influence-on-speaker`` is abbreviated ``IOS``).  ``Response-to=uttK``
    becomes ``D/Response-to:uttK/uttK``, coindexing the reply with its
    target.  Within a turn, equal times share one node; different turns
    never share nodes.

    ``include_words`` adds the utterance tokens as ``W/`` arcs (leave it off
    when a separate word strand will be merged).  ``keep_none=False`` drops
    attributes whose value is ``None``.
    """
    if isinstance(sgml, bytes):
        sgml = sgml.decode("utf-8")
    turns = _read(sgml)
    utt_ids = {u.tag.attrs.get("Id") for t in turns for u in t.utts}

    b = GraphBuilder(prefix)
    for turn in turns:
        at: dict[TimePoint, str] = {}

        def node(t: TimePoint) -> str:
            if t not in at:
                at[t] = b.node(t)
            return at[t]

        if turn.tag is not None:
            begin, end = _speech(turn.tag)
            b.arc(node(begin), "Turn", turn.tag.attrs.get("Speaker", ""), node(end), turn.tag.attrs.get("Id"))
        for utt in turn.utts:
            attrs = utt.tag.attrs
            uid = attrs.get("Id")
            if not uid:
                raise MalformedSpeechAttr(f"line {utt.tag.line}: <Utt> without Id", line=utt.tag.line)
            begin, end = _speech(utt.tag)
            src, dst = node(begin), node(end)
            text = " ".join("".join(utt.text).split())
            b.arc(src, "Utt", text, dst, uid)
            for attr, value in attrs.items():
                if attr in _STRUCTURAL:
                    continue
                if value == "None" and not keep_none:
                    continue
                b.arc(src, "D", _d_label(attr, value), dst, uid)
            if "Response-to" in attrs:
                target = attrs["Response-to"]
                if target and target not in utt_ids:
                    raise UnknownResponseTarget(
                        f"line {utt.tag.line}: {uid} responds to unknown utterance {target!r}",
                        line=utt.tag.line,
                    )
                b.arc(src, "D", f"Response-to:{target}", dst, target or uid)
            if include_words:
                words = [w for w in text.split() if w not in WORD_NOISE]
                if words:
                    b.chain(src, dst, "W", words)
    return b.build()


def utterance_attributes(g: AnnotationGraph, utt_id: str) -> Counter:
    """Recover the attribute/value multiset of an utterance from its D arcs.

    Inverse of the maximal splitting done by :func:`parse_damsl` (minus
    ``Id`` and ``Speech``, which live in the Utt arc's class and anchors).
    """
    utt = [a for a in g.arcs if a.type == "Utt" and a.cls == utt_id]
    if len(utt) != 1:
        raise KeyError(utt_id)
    u: Arc = utt[0]
    out: Counter = Counter()
    for a in g.arcs:
        if a.type != "D" or a.src != u.src or a.dst != u.dst:
            continue
        attr, _, value = a.label.partition(":")
        if attr == "Response-to":
            if a.cls == utt_id and value == "" or value and a.cls == value:
                out[(attr, value)] += 1
        elif a.cls == utt_id:
            out[(_EXPAND.get(attr, attr), value)] += 1
    return out
