"""
Merging a word strand with a dialogue-act strand
================================================

Both speakers' word tiers and the DAMSL markup for the same passage are
imported separately, then joined at one registered boundary.
"""

from pathlib import Path

from annograph import (
    Selector,
    TimeInterval,
    build_time_index,
    coindexed,
    merge_strands,
    overlaps,
    query_window,
    select,
    union,
    validate,
)
from annograph.errors import AnchorConflict
from annograph.formats import parse_damsl, parse_xwaves, xwaves_to_graph

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def read(name: str) -> str:
    return (FIXTURES / name).read_text()


words = union(
    xwaves_to_graph(parse_xwaves(read("trains_s.words")), prefix="s"),
    xwaves_to_graph(parse_xwaves(read("trains_u.words")), prefix="u"),
)
acts = parse_damsl(read("damsl.sgml"), prefix="d")

# utt17 ends on the word "Elmira"; that is the boundary to share
elmira = next(a for a in words.arcs if a.label == "Elmira")
utt17 = next(a for a in acts.arcs if a.type == "Utt" and a.cls == "utt17")
pair = (elmira.dst, utt17.dst)

# as transcribed, the two listings disagree about that instant by 0.2s,
# and the merge refuses to guess
try:
    merge_strands([words, acts], shared=[pair])
except AnchorConflict as err:
    print("refused:", err)

# with utt17's end registered to the word tier the merge goes through
acts = parse_damsl(read("damsl_registered.sgml"), prefix="d")
g = merge_strands([words, acts], shared=[pair])
print(validate(g), len(g.nodes), "nodes,", len(g.arcs), "arcs")

# utt18 and utt19 both respond to utt17: one class
for a in sorted(coindexed(g, "utt17"), key=str):
    print("utt17 class:", a)

# what is going on between 52.0 and 52.5 seconds?
idx = build_time_index(g)
for a in sorted(query_window(idx, TimeInterval("52.0", "52.5")), key=str):
    print("window:", a)

# the two speakers' turns overlap
t9, t10 = (next(a for a in g.arcs if a.type == "Turn" and a.cls == t) for t in ("T9", "T10"))
print("T9 overlaps T10:", overlaps(g, t9, t10))
print("accepts:", len(select(g, Selector(type="D", label="Agreement:Accept"))))
