"""xwaves label files.

Each line is ``offset color label``: the offset (seconds) is where the
labelled interval *ends*; it starts at the previous line's offset, or at 0
for the first line.  An optional header is terminated by a line holding a
single ``#``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import MalformedLine, NonmonotonicTime
from ..graph import AnnotationGraph
from ..timepoint import TimePoint
from ._builder import GraphBuilder

__all__ = ["LabeledInterval", "parse_xwaves", "xwaves_to_graph", "read_points", "ZERO"]

ZERO = TimePoint("0.0")


@dataclass(frozen=True)
class LabeledInterval:
    start: TimePoint
    end: TimePoint
    color: int
    label: str

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise ValueError(f"interval ends before it starts: [{self.start}, {self.end}]")


def _lines(text: Union[bytes, str]) -> list[tuple[int, str]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    numbered = list(enumerate(lines, 1))
    # skip an ESPS-style header
    for i, (_, line) in enumerate(numbered):
        if line.strip() == "#":
            numbered = numbered[i + 1:]
            break
    return [(n, line) for n, line in numbered if line.strip()]


def _split(lineno: int, line: str) -> tuple[TimePoint, int, str]:
    parts = line.split(None, 2)
    if len(parts) < 3:
        raise MalformedLine(f"line {lineno}: expected 'offset color label', got {line.strip()!r}", line=lineno)
    try:
        t = TimePoint(parts[0])
    except ValueError:
        raise MalformedLine(f"line {lineno}: bad offset {parts[0]!r}", line=lineno) from None
    try:
        color = int(parts[1])
    except ValueError:
        raise MalformedLine(f"line {lineno}: bad color {parts[1]!r}", line=lineno) from None
    return t, color, parts[2].strip()


def parse_xwaves(text: Union[bytes, str], type_tag: str = "W") -> list[LabeledInterval]:
    """Reconstruct intervals from an xwaves label file.

    ``type_tag`` is accepted for symmetry with the other importers; the
    intervals themselves are untyped.
    """
    out: list[LabeledInterval] = []
    prev = ZERO
    for lineno, line in _lines(text):
        t, color, label = _split(lineno, line)
        if t < prev:
            raise NonmonotonicTime(
                f"line {lineno}: offset {t.text} is earlier than the previous offset {prev.text}",
                line=lineno,
                time=t.text,
            )
        out.append(LabeledInterval(prev, t, color, label))
        prev = t
    return out


def xwaves_to_graph(
    intervals: Iterable[LabeledInterval],
    type_tag: str = "W",
    silence_label: str = "<sil>",
    prefix: str = "",
) -> AnnotationGraph:
    """Turn intervals into arcs between anchored nodes.

    Adjacent labelled intervals share their boundary node; a silence
    interval leaves a gap, so the labels on either side of it get distinct
    nodes.
    """
    b = GraphBuilder(prefix)
    last_end: str | None = None
    for iv in intervals:
        if iv.label == silence_label:
            last_end = None
            continue
        src = last_end if last_end is not None else b.node(iv.start)
        dst = b.node(iv.end)
        b.arc(src, type_tag, iv.label, dst)
        last_end = dst
    return b.build()


def read_points(text: Union[bytes, str]) -> list[tuple[TimePoint, str]]:
    """Read an xwaves file as point events (``time label`` pairs).

    Used for tier files that mark instants rather than intervals, such as
    ToBI tones and break indices.
    """
    return [(t, label) for t, _, label in (_split(n, line) for n, line in _lines(text))]
