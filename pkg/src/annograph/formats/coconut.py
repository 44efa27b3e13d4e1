"""COCONUT dialogue tables.

Rows look like::

    Accept, Commit              S1:   (a)  Let's take the blue rug for 250,
                                      (b)  my rug wouldn't match
    Accept(d), Offer, Commit    S1:   (e)  well then let's use mine for 150

A tag column (comma separated, possibly empty), an optional speaker that
carries over to following rows, a piece id in parentheses, and the text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from ..errors import MalformedRecord, UnknownPieceRef
from ..graph import AnnotationGraph
from ._builder import GraphBuilder

__all__ = ["CoconutRow", "read_coconut", "parse_coconut"]

_PIECE_RE = re.compile(r"(?:^|\s)\((?P<pid>[^()\s]+)\)(?:\s+|$)")
_SPEAKER_RE = re.compile(r"(?:^|\s)(?P<spk>[^\s,:]+):\s*$")
_TAG_RE = re.compile(r"^(?P<name>[^()]+?)\s*(?:\((?P<ref>[^()]+)\))?$")


@dataclass
class CoconutRow:
    tags: list[str]
    speaker: str
    piece_id: str
    text: str = ""


@dataclass
class _Piece:
    row: CoconutRow
    plain: list[str] = field(default_factory=list)
    refs: list[tuple[str, str]] = field(default_factory=list)


def read_coconut(text: Union[bytes, str]) -> list[CoconutRow]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[CoconutRow] = []
    speaker = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        m = _PIECE_RE.search(line)
        if m is None:
            raise MalformedRecord(f"line {lineno}: no piece id '(x)' found", line=lineno)
        head, body = line[: m.start()], line[m.end():]
        sm = _SPEAKER_RE.search(head)
        if sm is not None:
            speaker = sm["spk"]
            head = head[: sm.start()]
        if speaker is None:
            raise MalformedRecord(f"line {lineno}: no speaker given yet", line=lineno)
        tags = [t.strip() for t in head.split(",") if t.strip()]
        rows.append(CoconutRow(tags, speaker, m["pid"], body.strip()))
    return rows


def _as_row(row: Union[CoconutRow, dict]) -> CoconutRow:
    if isinstance(row, CoconutRow):
        return row
    return CoconutRow(list(row.get("tags", [])), row["speaker"], row["piece_id"], row.get("text", ""))


def parse_coconut(rows: Iterable[Union[CoconutRow, dict]], prefix: str = "") -> AnnotationGraph:
    """Build the three-layer ``Sp``/``Utt``/``D`` graph.

    Pieces follow each other on one chain of unanchored nodes.  Each piece
    gets ``Utt/<text>/<piece id>``; each tag becomes a ``D`` arc over the
    same span, and a tag referring to another piece (``Accept(d)``) takes
    that piece's id as its class.  Runs of consecutive pieces by one speaker
    share a single ``Sp`` arc.
    """
    pieces = [_Piece(_as_row(r)) for r in rows]
    ids = {p.row.piece_id for p in pieces}
    for p in pieces:
        for tag in p.row.tags:
            m = _TAG_RE.match(tag)
            if m is None:
                raise MalformedRecord(f"piece ({p.row.piece_id}): bad tag {tag!r}")
            if m["ref"] is None:
                p.plain.append(m["name"])
            else:
                ref = m["ref"].strip()
                if ref not in ids:
                    raise UnknownPieceRef(f"piece ({p.row.piece_id}): tag {tag!r} names no piece", ref=ref)
                p.refs.append((m["name"], ref))

    b = GraphBuilder(prefix)
    if not pieces:
        return b.build()
    bounds = [b.node()]
    for p in pieces:
        start = bounds[-1]
        end = b.node()
        bounds.append(end)
        b.arc(start, "Utt", p.row.text, end, p.row.piece_id)
        for name in p.plain:
            b.arc(start, "D", name, end)
        for name, ref in p.refs:
            b.arc(start, "D", name, end, ref)

    run_start = 0
    for i in range(1, len(pieces) + 1):
        if i == len(pieces) or pieces[i].row.speaker != pieces[run_start].row.speaker:
            b.arc(bounds[run_start], "Sp", pieces[run_start].row.speaker, bounds[i])
            run_start = i
    return b.build()
