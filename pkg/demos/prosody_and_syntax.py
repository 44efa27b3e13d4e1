"""
Prosody and syntax over a shared word tier
==========================================

Tones and break indices attach to an xwaves word graph; a treebank parse
is aligned to a second word tier, skipping the trace and the breath.
"""

from pathlib import Path

from annograph import arc_extent, includes, validate
from annograph.errors import AlignmentMismatch
from annograph.formats import parse_tobi, parse_treebank, parse_xwaves, read_points, xwaves_to_graph

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def read(name: str) -> str:
    return (FIXTURES / name).read_text()


words = xwaves_to_graph(parse_xwaves(read("speaker0.words")))
g = parse_tobi(read_points(read("speaker0.tones")), read_points(read("speaker0.breaks")), words)
print(validate(g))

hello = next(a for a in g.arcs if a.label == "hello")
for a in sorted((a for a in g.arcs if a.type in ("Tone", "Break")), key=lambda a: g.time(a.src)):
    print(a.type, a.label, g.time(a.src), "inside hello" if includes(g, hello, a) else "")

bu = xwaves_to_graph(parse_xwaves(read("bu_words.words")))
tree = read("bu_tree.mrg")

# without skip lists the breath token is the first thing that fails to align
try:
    parse_treebank(tree, bu, skip_terminals=set(), skip_words=set())
except AlignmentMismatch as err:
    print("mismatch:", err.detail)

syn = parse_treebank(tree, bu, skip_terminals={"-NONE-"}, skip_words={"<breath>"})
print(validate(syn))
for a in sorted((a for a in syn.arcs if a.type == "Syn" and a.label.startswith(("S", "NP-"))), key=str):
    print(a.label, arc_extent(syn, a))
