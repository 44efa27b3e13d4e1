"""Exact decimal time references.

Times in annotation files are ASCII decimal strings, and the only link
between some annotation strands (word boundaries and break indices, for
instance) is identity of those strings' values.  Reading them into binary
floats and printing them back out silently breaks that link, so a
:class:`TimePoint` keeps both the exact :class:`~decimal.Decimal` value and
the text it was read from.
"""

from __future__ import annotations

import re
from decimal import Decimal
from functools import total_ordering
from typing import Union

_DECIMAL_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)")

TimeLike = Union["TimePoint", str, Decimal, int]


@total_ordering
class TimePoint:
    """A time in seconds, compared by exact decimal value.

    >>> TimePoint("0.10") == TimePoint("0.100000")
    True
    >>> str(TimePoint("0.100000"))
    '0.100000'
    """

    __slots__ = ("text", "value")

    def __init__(self, text: str | Decimal | int) -> None:
        if isinstance(text, bool) or isinstance(text, float):
            raise TypeError("TimePoint does not accept binary floating point values")
        if isinstance(text, Decimal):
            if not text.is_finite():
                raise ValueError(f"not a finite decimal: {text!r}")
            text = format(text, "f")
        elif isinstance(text, int):
            text = str(text)
        elif isinstance(text, str):
            text = text.strip()
        else:
            raise TypeError(f"cannot make a TimePoint from {type(text).__name__}")
        if not _DECIMAL_RE.fullmatch(text):
            raise ValueError(f"not a plain decimal number: {text!r}")
        object.__setattr__(self, "text", text)
        object.__setattr__(self, "value", Decimal(text))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TimePoint is immutable")

    @classmethod
    def coerce(cls, t: TimeLike | None) -> TimePoint | None:
        if t is None or isinstance(t, TimePoint):
            return t
        return cls(t)

    @property
    def canonical_text(self) -> str:
        return self.text

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TimePoint):
            return self.value == other.value
        return NotImplemented

    def __lt__(self, other: TimePoint) -> bool:
        if isinstance(other, TimePoint):
            return self.value < other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __add__(self, other: Decimal | TimePoint) -> TimePoint:
        if isinstance(other, TimePoint):
            other = other.value
        if not isinstance(other, Decimal):
            return NotImplemented
        return TimePoint(self.value + other)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"TimePoint({self.text!r})"

    def __reduce__(self):
        return (TimePoint, (self.text,))


def parse_decimal(text: str) -> Decimal:
    """Parse a plain decimal literal (no exponent, no NaN/inf)."""
    text = text.strip()
    if not _DECIMAL_RE.fullmatch(text):
        raise ValueError(f"not a plain decimal number: {text!r}")
    return Decimal(text)
