"""``annograph`` command line.

Exit status: 0 success, 1 input could not be parsed or imported, 2 graph
is invalid (including anchor conflicts), 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .errors import AGError, FormatError, GraphError
from .formats import FormatKind
from .graph import (
    AnnotationGraph,
    Arc,
    TimeInterval,
    arc_extent,
    connected_components,
    merge_strands,
    validate,
)
from .query import Selector, includes, overlaps, precedes, select
from .timepoint import TimePoint
from .viz import VizOptions, render

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, lenient: bool) -> AnnotationGraph:
    return formats.from_xml(_read(path), lenient=lenient)


def _emit(data: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _print(text: str) -> None:
    sys.stdout.write(text + "\n")


# --- subcommands ----------------------------------------------------------


def _import(args: argparse.Namespace) -> AnnotationGraph:
    try:
        kind = FormatKind.parse(args.source_format)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = _read(args.input)
    prefix = args.prefix
    if kind is FormatKind.AGXML:
        return formats.from_xml(data, lenient=args.lenient)
    if kind is FormatKind.XWAVES:
        return formats.xwaves_to_graph(
            formats.parse_xwaves(data, args.type_tag), args.type_tag, args.silence, prefix
        )
    if kind is FormatKind.CALLHOME:
        return formats.parse_callhome(data, join_turns=args.join_turns, prefix=prefix)
    if kind is FormatKind.COCONUT:
        return formats.parse_coconut(formats.read_coconut(data), prefix=prefix)
    if kind is FormatKind.MUC_COREF:
        return formats.parse_muc_coref(data, prefix=prefix).graph
    if kind is FormatKind.MUC_NE:
        return formats.parse_muc_ne(data, prefix=prefix)
    if kind is FormatKind.DAMSL:
        return formats.parse_damsl(data, include_words=args.damsl_words, keep_none=not args.drop_none, prefix=prefix)
    if kind is FormatKind.TILT:
        return formats.parse_tilt(formats.read_tilt(data), prefix=prefix)
    if kind is FormatKind.TOBI:
        tones = formats.read_points(_read(args.tones)) if args.tones else []
        breaks = formats.read_points(_read(args.breaks)) if args.breaks else []
        word_graph = formats.from_xml(data, lenient=args.lenient)
        return formats.parse_tobi(tones, breaks, word_graph, prefix=prefix or "tobi")
    if kind is FormatKind.TREEBANK:
        if not args.words:
            raise UsageError("--from treebank needs --words WORDS.xml")
        word_graph = _load(args.words, args.lenient)
        return formats.parse_treebank(
            data,
            word_graph,
            skip_terminals=set(args.skip_terminal or ["-NONE-"]),
            skip_words=set(args.skip_word or []),
            type_tag=args.type_tag,
        )
    raise UsageError(f"unsupported format {kind.value}")  # pragma: no cover


def cmd_convert(args: argparse.Namespace) -> int:
    g = _import(args)
    report = validate(g)
    if not report.ok:
        sys.stderr.write(f"imported graph is invalid:\n{report}\n")
        return EXIT_INVALID
    _emit(formats.to_xml(g), args.out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate(_load(args.input, args.lenient))
    _print(str(report))
    return EXIT_OK if report.ok else EXIT_INVALID


def _read_mapping(path: str) -> list[tuple[str, str]]:
    pairs = []
    for lineno, line in enumerate(_read(path).decode("utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        parts = [p.strip() for p in parts]
        if len(parts) != 2 or not all(parts):
            raise UsageError(f"{path}:{lineno}: expected 'graphA-id<TAB>graphB-id'")
        pairs.append((parts[0], parts[1]))
    return pairs


def cmd_merge(args: argparse.Namespace) -> int:
    if args.map and not args.unify_times:
        raise UsageError("--map is only used together with --unify-times")
    if args.unify_times and not args.map:
        raise UsageError("--unify-times needs an id mapping file (--map)")
    shared = _read_mapping(args.map) if args.map else []
    graphs = [_load(p, args.lenient) for p in args.inputs]
    try:
        merged = merge_strands(graphs, shared)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = validate(merged)
    if not report.ok:
        sys.stderr.write(f"merged graph is invalid:\n{report}\n")
        return EXIT_INVALID
    _emit(formats.to_xml(merged), args.out)
    return EXIT_OK


def _parse_window(text: str) -> TimeInterval:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise UsageError(f"window must be LO:HI, got {text!r}")
    try:
        return TimeInterval(TimePoint(lo) if lo.strip() else None, TimePoint(hi) if hi.strip() else None)
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from None


def _parse_arcspec(g: AnnotationGraph, spec: str) -> Arc:
    parts = spec.split(None, 2)
    if len(parts) != 3 or "/" not in parts[2]:
        raise UsageError(f"ARCSPEC must be 'SRC DST TYPE/LABEL/CLASS', got {spec!r}")
    src, dst, rec = parts
    type_, _, rest = rec.partition("/")
    if "/" in rest:
        label, _, cls = rest.rpartition("/")
    else:
        label, cls = rest, ""
    for a in g.arcs:
        if (a.src, a.dst, a.type, a.label, a.cls or "") == (src, dst, type_, label, cls):
            return a
    raise UsageError(f"no arc matches {spec!r}")


def _fmt_result(r: Optional[bool]) -> str:
    return "unknown" if r is None else str(r).lower()


def cmd_query(args: argparse.Namespace) -> int:
    g = _load(args.input, args.lenient)
    selecting = any(v is not None for v in (args.type, args.label, args.cls, args.window))
    if args.rel:
        if selecting:
            raise UsageError("--rel cannot be combined with selection flags")
        if not args.a or not args.b:
            raise UsageError("--rel needs --a and --b")
        a, b = _parse_arcspec(g, args.a), _parse_arcspec(g, args.b)
        rel = {"precedes": precedes, "includes": includes, "overlaps": overlaps}[args.rel]
        _print(_fmt_result(rel(g, a, b)))
        return EXIT_OK
    if not selecting:
        raise UsageError("give at least one of --type/--label/--class/--window, or --rel")
    window = _parse_window(args.window) if args.window is not None else None
    hits = select(g, Selector(args.type, args.label, args.cls, window))
    for a in hits:
        _print(f"{a.src} {a.dst} {a.record} {arc_extent(g, a)}")
    return EXIT_OK


def cmd_viz(args: argparse.Namespace) -> int:
    g = _load(args.input, args.lenient)
    layers = [t for t in (args.layers or "").split(",") if t]
    try:
        opts = VizOptions(layers, show_times=not args.no_times, show_classes=args.show_classes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = validate(g)
    if not report.ok:
        sys.stderr.write(f"graph is invalid:\n{report}\n")
        return EXIT_INVALID
    _emit(render(g, opts), args.out)
    return EXIT_OK


def cmd_info(args: argparse.Namespace) -> int:
    g = _load(args.input, args.lenient)
    anchors = g.anchors
    _print(f"nodes: {len(g.nodes)} ({len(anchors)} anchored)")
    _print(f"arcs: {len(g.arcs)}")
    for t, n in sorted(Counter(a.type for a in g.arcs).items()):
        _print(f"  {t}: {n}")
    _print(f"classes: {len(g.classes)}")
    report = validate(g)
    if report.ok:
        _print(f"components: {len(connected_components(g))}")
    if anchors:
        times = sorted(anchors.values())
        _print(f"time span: [{times[0].text}, {times[-1].text}]")
    _print(f"valid: {'yes' if report.ok else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="annograph", description="Annotation graph conversion, merging and querying.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--lenient", action="store_true", help="accept unquoted AG-XML attributes")

    c = sub.add_parser("convert", help="import a source format and write AG-XML")
    c.add_argument("input")
    c.add_argument("--from", dest="source_format", required=True, help="source format, e.g. callhome, xwaves, damsl")
    c.add_argument("--type-tag", default="W")
    c.add_argument("--silence", default="<sil>", help="xwaves silence label")
    c.add_argument("--prefix", default="", help="node id prefix")
    c.add_argument("--join-turns", action="store_true", help="callhome: share nodes between abutting same-speaker turns")
    c.add_argument("--damsl-words", action="store_true", help="damsl: add W arcs for utterance tokens")
    c.add_argument("--drop-none", action="store_true", help="damsl: drop attributes whose value is None")
    c.add_argument("--words", help="treebank: AG-XML word strand to align to")
    c.add_argument("--tones", help="tobi: xwaves-format tone tier")
    c.add_argument("--breaks", help="tobi: xwaves-format break-index tier")
    c.add_argument("--skip-terminal", action="append", help="treebank: terminal token or category to skip")
    c.add_argument("--skip-word", action="append", help="treebank: word label to skip")
    c.add_argument("--out")
    common(c)
    c.set_defaults(func=cmd_convert)

    v = sub.add_parser("validate", help="check an AG-XML graph")
    v.add_argument("input")
    common(v)
    v.set_defaults(func=cmd_validate)

    m = sub.add_parser("merge", help="union AG-XML graphs")
    m.add_argument("inputs", nargs="+")
    m.add_argument("--unify-times", action="store_true", help="identify the node pairs listed in --map")
    m.add_argument("--map", help="id mapping file: 'graphA-id<TAB>graphB-id' per line")
    m.add_argument("--out")
    common(m)
    m.set_defaults(func=cmd_merge)

    q = sub.add_parser("query", help="select arcs or test a temporal relation")
    q.add_argument("input")
    q.add_argument("--type")
    q.add_argument("--label", help="exact label, or prefix ending in '*'")
    q.add_argument("--class", dest="cls")
    q.add_argument("--window", help="LO:HI in seconds; either side may be empty")
    q.add_argument("--rel", choices=["precedes", "includes", "overlaps"])
    q.add_argument("--a", help="ARCSPEC 'SRC DST TYPE/LABEL/CLASS'")
    q.add_argument("--b", help="ARCSPEC 'SRC DST TYPE/LABEL/CLASS'")
    common(q)
    q.set_defaults(func=cmd_query)

    z = sub.add_parser("viz", help="render as Graphviz DOT")
    z.add_argument("input")
    z.add_argument("--format", choices=["dot"], default="dot")
    z.add_argument("--layers", help="comma separated type order, top to bottom")
    z.add_argument("--no-times", action="store_true")
    z.add_argument("--show-classes", action="store_true")
    z.add_argument("--out")
    common(z)
    z.set_defaults(func=cmd_viz)

    i = sub.add_parser("info", help="summarize an AG-XML graph")
    i.add_argument("input")
    common(i)
    i.set_defaults(func=cmd_info)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"annograph: error: {exc}\n")
        return EXIT_USAGE
    except FormatError as exc:
        sys.stderr.write(f"annograph: {exc}\n")
        return EXIT_PARSE
    except GraphError as exc:
        sys.stderr.write(f"annograph: {exc}\n")
        return EXIT_INVALID
    except AGError as exc:  # pragma: no cover
        sys.stderr.write(f"annograph: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
