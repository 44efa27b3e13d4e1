"""Prosodic strands: ToBI tones and break indices, and Tilt F0 events.

Break indices attach to word boundaries purely by equality of time values,
so matching is done on exact decimals: ``0.4885550`` matches ``0.488555``,
``0.48855`` does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Optional, Union

from ..errors import MalformedLine, NegativeDuration, UnmatchedTime
from ..graph import AnnotationGraph, Arc, Node, Record, topological_order
from ..timepoint import TimeLike, TimePoint, parse_decimal

__all__ = ["TonePoint", "BreakPoint", "TiltEvent", "parse_tobi", "parse_tilt", "read_tilt", "tilt_label"]


@dataclass(frozen=True)
class TonePoint:
    time: TimePoint
    label: str


@dataclass(frozen=True)
class BreakPoint:
    time: TimePoint
    index: str


@dataclass(frozen=True)
class TiltEvent:
    t0: TimePoint
    dur: Decimal
    amp: Decimal
    final_delta: Decimal
    kind: str = "accent"
    # source spellings, so labels reproduce the input text
    dur_text: Optional[str] = None
    amp_text: Optional[str] = None
    final_text: Optional[str] = None

    @classmethod
    def from_text(cls, t0: str, dur: str, amp: str, final_delta: str, kind: str = "accent") -> TiltEvent:
        return cls(
            TimePoint(t0),
            parse_decimal(dur),
            parse_decimal(amp),
            parse_decimal(final_delta),
            kind,
            dur.strip(),
            amp.strip(),
            final_delta.strip(),
        )


def _point(p, attr: str):
    if isinstance(p, dict):
        return TimePoint.coerce(p["time"]), str(p[attr])
    if isinstance(p, tuple):
        return TimePoint.coerce(p[0]), str(p[1])
    return p.time, getattr(p, attr)


def parse_tobi(
    tones: Iterable[Union[TonePoint, dict, tuple[TimeLike, str]]],
    breaks: Iterable[Union[BreakPoint, dict, tuple[TimeLike, str]]],
    word_graph: AnnotationGraph,
    prefix: str = "tobi",
) -> AnnotationGraph:
    """Add ToBI annotation to a word graph.

    Each break index becomes a zero-width ``Break/<index>`` arc from the word
    boundary node with exactly the same time to a fresh node at that time.
    Each tone becomes a zero-width ``Tone/<label>`` arc between two fresh
    nodes.  A break with no matching boundary raises :class:`UnmatchedTime`.
    """
    boundary: dict[TimePoint, str] = {}
    for nid in topological_order(word_graph):
        node = word_graph.nodes.get(nid)
        if node is not None and node.time is not None:
            boundary.setdefault(node.time, nid)

    nodes = list(word_graph.nodes.values())
    arcs = set(word_graph.arcs)
    counter = 0

    def fresh(t: TimePoint) -> str:
        nonlocal counter
        while True:
            nid = f"{prefix}n{counter}"
            counter += 1
            if nid not in word_graph.nodes:
                nodes.append(Node(nid, t))
                return nid

    unmatched = []
    for bp in breaks:
        t, index = _point(bp, "index")
        src = boundary.get(t)
        if src is None:
            unmatched.append(t.text)
            continue
        arcs.add(Arc(src, Record("Break", index), fresh(t)))
    if unmatched:
        raise UnmatchedTime(
            f"break index time(s) match no word boundary: {', '.join(unmatched)}",
            times=tuple(unmatched),
        )
    for tp in tones:
        t, label = _point(tp, "label")
        arcs.add(Arc(fresh(t), Record("Tone", label), fresh(t)))
    return AnnotationGraph(nodes, arcs)


def tilt_label(ev: TiltEvent) -> str:
    amp = ev.amp_text or format(ev.amp, "f")
    dur = ev.dur_text or format(ev.dur, "f")
    final = ev.final_text or format(ev.final_delta, "f")
    return f"{ev.kind};a={amp};d={dur};l={final}"


def parse_tilt(events: Iterable[Union[TiltEvent, dict]], prefix: str = "") -> AnnotationGraph:
    """One ``Tilt/<kind;a=..;d=..;l=..>`` arc per event, from t0 to t0+dur."""
    nodes: list[Node] = []
    arcs: list[Arc] = []
    for i, ev in enumerate(events):
        if isinstance(ev, dict):
            ev = TiltEvent.from_text(
                str(ev["t0"]), str(ev["dur"]), str(ev["amp"]), str(ev["final_delta"]), ev.get("kind", "accent")
            )
        if ev.dur < 0:
            raise NegativeDuration(f"event at {ev.t0.text} has negative duration {ev.dur_text or ev.dur}")
        end = ev.t0 + ev.dur
        src, dst = f"{prefix}n{2 * i}", f"{prefix}n{2 * i + 1}"
        nodes += [Node(src, ev.t0), Node(dst, end)]
        arcs.append(Arc(src, Record("Tilt", tilt_label(ev)), dst))
    return AnnotationGraph(nodes, arcs)


def read_tilt(text: Union[bytes, str]) -> list[TiltEvent]:
    """Read a Tilt parameter file.

    One event per line: ``t0 dur amp final_delta [kind]``; ``#`` starts a
    comment.  Kind defaults to ``accent``.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    events = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (4, 5):
            raise MalformedLine(f"line {lineno}: expected 't0 dur amp final_delta [kind]'", line=lineno)
        try:
            events.append(TiltEvent.from_text(*parts))
        except ValueError as exc:
            raise MalformedLine(f"line {lineno}: {exc}", line=lineno) from None
    return events
