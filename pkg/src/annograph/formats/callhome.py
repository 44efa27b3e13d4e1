"""LDC CALLHOME-style transcripts.

A record is ``[+|*] BEGIN END SPEAKER: words...``; following lines that do
not start a new record continue the words.  ``+``/``*`` mark partial/total
overlap with the previous turn.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import EndBeforeBegin, MalformedRecord
from ..graph import AnnotationGraph
from ..timepoint import TimePoint
from ._builder import GraphBuilder
from .sgml import tokenize

__all__ = ["CallhomeRecord", "read_callhome", "parse_callhome"]

_RECORD_RE = re.compile(
    r"^\s*(?P<mark>[+*])?\s*(?P<begin>\d+(?:\.\d*)?)\s+(?P<end>\d+(?:\.\d*)?)\s+(?P<spk>[^\s:]+):(?P<rest>.*)$"
)
_LOOKS_TIMED = re.compile(r"^\s*[+*]?\s*\d+(?:\.\d*)?\s+\d")

OVERLAP = {"+": "partial", "*": "total"}


@dataclass
class CallhomeRecord:
    begin: TimePoint
    end: TimePoint
    speaker: str
    words: list[str] = field(default_factory=list)
    overlap: Optional[str] = None
    line: int = 0


def read_callhome(text: Union[bytes, str]) -> list[CallhomeRecord]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    records: list[CallhomeRecord] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        m = _RECORD_RE.match(line)
        if m:
            begin, end = TimePoint(m["begin"]), TimePoint(m["end"])
            if end < begin:
                raise EndBeforeBegin(
                    f"line {lineno}: turn ends at {end.text} before it begins at {begin.text}",
                    line=lineno,
                )
            records.append(
                CallhomeRecord(begin, end, m["spk"], tokenize(m["rest"]), OVERLAP.get(m["mark"] or ""), lineno)
            )
        elif _LOOKS_TIMED.match(line) or not records:
            raise MalformedRecord(f"line {lineno}: not a transcript record: {line.strip()!r}", line=lineno)
        else:
            records[-1].words.extend(tokenize(line))
    return records


def parse_callhome(text: Union[bytes, str], join_turns: bool = False, prefix: str = "") -> AnnotationGraph:
    """Import a transcript.

    Every record becomes its own piece of graph: a ``speaker/`` arc and a
    chain of ``W/`` arcs between the same two anchored nodes, plus a
    ``D/overlap:...`` arc when the record carries an overlap mark.  Records
    of different speakers never share nodes even when their times coincide.
    With ``join_turns`` a record whose begin time equals the previous
    same-speaker record's end time reuses that node.
    """
    b = GraphBuilder(prefix)
    prev: Optional[tuple[CallhomeRecord, str]] = None
    for rec in read_callhome(text):
        if (
            join_turns
            and prev is not None
            and prev[0].speaker == rec.speaker
            and prev[0].end == rec.begin
        ):
            src = prev[1]
        else:
            src = b.node(rec.begin)
        dst = b.node(rec.end)
        b.arc(src, "speaker", rec.speaker, dst)
        b.chain(src, dst, "W", rec.words)
        if rec.overlap:
            b.arc(src, "D", f"overlap:{rec.overlap}", dst)
        prev = (rec, dst)
    return b.build()
