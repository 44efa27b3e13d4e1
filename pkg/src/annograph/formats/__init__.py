"""Importers for source annotation formats, and the AG-XML exchange encoding."""

from enum import Enum

from .agxml import from_xml, to_xml
from .callhome import CallhomeRecord, parse_callhome, read_callhome
from .coconut import CoconutRow, parse_coconut, read_coconut
from .damsl import parse_damsl, utterance_attributes
from .muc import CorefEntity, CorefResult, coref_classes, parse_muc_coref, parse_muc_ne
from .prosody import BreakPoint, TiltEvent, TonePoint, parse_tilt, parse_tobi, read_tilt, tilt_label
from .treebank import Tree, align_terminals, parse_treebank, read_bracketed, word_sequence
from .xwaves import LabeledInterval, parse_xwaves, read_points, xwaves_to_graph


class FormatKind(str, Enum):
    AGXML = "AGXML"
    XWAVES = "XWAVES"
    CALLHOME = "CALLHOME"
    COCONUT = "COCONUT"
    MUC_COREF = "MUC_COREF"
    MUC_NE = "MUC_NE"
    DAMSL = "DAMSL"
    TOBI = "TOBI"
    TILT = "TILT"
    TREEBANK = "TREEBANK"

    @classmethod
    def parse(cls, name: str) -> "FormatKind":
        key = name.strip().upper().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown format {name!r}; expected one of {', '.join(k.value.lower() for k in cls)}") from None


__all__ = [
    "FormatKind",
    "from_xml",
    "to_xml",
    "CallhomeRecord",
    "parse_callhome",
    "read_callhome",
    "CoconutRow",
    "parse_coconut",
    "read_coconut",
    "parse_damsl",
    "utterance_attributes",
    "CorefEntity",
    "CorefResult",
    "coref_classes",
    "parse_muc_coref",
    "parse_muc_ne",
    "BreakPoint",
    "TiltEvent",
    "TonePoint",
    "parse_tilt",
    "parse_tobi",
    "read_tilt",
    "tilt_label",
    "Tree",
    "align_terminals",
    "parse_treebank",
    "word_sequence",
    "read_bracketed",
    "LabeledInterval",
    "parse_xwaves",
    "read_points",
    "xwaves_to_graph",
]
