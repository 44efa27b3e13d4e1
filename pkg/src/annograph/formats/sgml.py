"""A minimal tag scanner for the SGML dialects used by the importers.

No DTD processing: start tags, end tags and text are reported in document
order.  Attribute values may be double-quoted, single-quoted, or bare
(``Id=utt17``), and tags may span lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from ..errors import ParseError

_TAG_RE = re.compile(
    r"<(?P<close>/)?(?P<name>[A-Za-z_][\w.\-:]*)(?P<attrs>(?:\s+[^\s=<>/]+(?:\s*=\s*(?:\"[^\"]*\"|'[^']*'|[^\s\"'<>]+))?)*)\s*(?P<empty>/)?>",
    re.S,
)
_ATTR_RE = re.compile(r"([^\s=<>/]+)(?:\s*=\s*(\"[^\"]*\"|'[^']*'|[^\s\"'<>]+))?")
_DECL_RE = re.compile(r"<\?.*?\?>|<!--.*?-->|<!DOCTYPE[^>]*>", re.S)


@dataclass
class Tag:
    name: str
    attrs: dict[str, str] = field(default_factory=dict)
    closing: bool = False
    empty: bool = False
    line: int = 0


@dataclass
class Text:
    text: str
    line: int = 0


Token = Union[Tag, Text]


def parse_attrs(raw: str) -> dict[str, str]:
    attrs: dict[str, str] = {}
    for name, value in _ATTR_RE.findall(raw):
        if value[:1] in ("'", '"'):
            value = value[1:-1]
        attrs[name] = value
    return attrs


def scan(doc: str) -> Iterator[Token]:
    """Yield tags and the text between them.

    A stray ``<`` that does not start a recognizable tag is an error.
    """
    pos = 0
    line = 1
    n = len(doc)
    while pos < n:
        lt = doc.find("<", pos)
        if lt < 0:
            yield Text(doc[pos:], line)
            return
        if lt > pos:
            chunk = doc[pos:lt]
            yield Text(chunk, line)
            line += chunk.count("\n")
        m = _DECL_RE.match(doc, lt)
        if m:
            line += m.group(0).count("\n")
            pos = m.end()
            continue
        m = _TAG_RE.match(doc, lt)
        if not m:
            raise ParseError(f"line {line}: unrecognized markup near {doc[lt:lt + 30]!r}", line=line)
        yield Tag(
            name=m.group("name"),
            attrs=parse_attrs(m.group("attrs") or ""),
            closing=bool(m.group("close")),
            empty=bool(m.group("empty")),
            line=line,
        )
        line += m.group(0).count("\n")
        pos = m.end()


_WORD_RE = re.compile(
    r"(?:[A-Za-z]\.){2,}"  # abbreviations: U.S., A.F.D.C.
    r"|[&\w]+(?:['’\-][\w]+)*"  # words, contractions, hyphenated
    r"|'\w+"  # split-off clitics: 's
    r"|[^\w\s]"  # single punctuation marks
)


def tokenize(text: str) -> list[str]:
    """Split running text into word and punctuation tokens.

    >>> tokenize("Whatever's helpful.")
    ["Whatever's", 'helpful', '.']
    >>> tokenize("a U.S. citizen")
    ['a', 'U.S.', 'citizen']
    """
    return _WORD_RE.findall(text)
