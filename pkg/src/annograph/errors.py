"""Exception hierarchy.

Every error carries a stable ``code`` string so callers (and the CLI) can
dispatch on the failure kind without matching message text.
"""

from __future__ import annotations


class AGError(Exception):
    code = "AG_ERROR"

    def __init__(self, message: str, **detail: object) -> None:
        super().__init__(message)
        self.detail = detail

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"


# --- graph-level errors ---------------------------------------------------


class GraphError(AGError):
    code = "GRAPH_ERROR"


class DuplicateNodeId(GraphError):
    code = "DUPLICATE_NODE_ID"


class AnchorConflict(GraphError):
    code = "ANCHOR_CONFLICT"


class CycleError(GraphError):
    code = "CYCLE"


class GraphMismatch(GraphError):
    code = "GRAPH_MISMATCH"


# --- importer / parser errors ---------------------------------------------


class FormatError(AGError):
    """Base for everything an importer can reject its input with."""

    code = "FORMAT_ERROR"


class ParseError(FormatError):
    code = "PARSE_ERROR"


class SchemaError(FormatError):
    code = "SCHEMA_ERROR"


class MalformedLine(FormatError):
    code = "MALFORMED_LINE"


class NonmonotonicTime(FormatError):
    code = "NONMONOTONIC_TIME"


class MalformedRecord(FormatError):
    code = "MALFORMED_RECORD"


class EndBeforeBegin(FormatError):
    code = "END_BEFORE_BEGIN"


class UnknownPieceRef(FormatError):
    code = "UNKNOWN_PIECE_REF"


class MalformedMarkup(FormatError):
    code = "MALFORMED_MARKUP"


class DanglingRef(FormatError):
    code = "DANGLING_REF"


class DuplicateId(FormatError):
    code = "DUPLICATE_ID"


class UnbalancedTags(FormatError):
    code = "UNBALANCED_TAGS"


class MalformedSpeechAttr(FormatError):
    code = "MALFORMED_SPEECH_ATTR"


class UnknownResponseTarget(FormatError):
    code = "UNKNOWN_RESPONSE_TARGET"


class UnmatchedTime(FormatError):
    code = "UNMATCHED_TIME"


class NegativeDuration(FormatError):
    code = "NEGATIVE_DURATION"


class AlignmentMismatch(FormatError):
    code = "ALIGNMENT_MISMATCH"


class MalformedBracketing(FormatError):
    code = "MALFORMED_BRACKETING"
