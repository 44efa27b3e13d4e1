"""
Coreference chains as arc classes
=================================

MUC-7 ID/REF links become equivalence classes; every mention arc carries
its class name, so a chain is one query away.
"""

from pathlib import Path

from annograph import coindexed, validate
from annograph.formats import parse_muc_coref

text = (Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "muc_coref.sgml").read_text()
r = parse_muc_coref(text)
print(validate(r.graph))

for c in r.classes:
    if len(c) > 1:
        print("class", r.class_name(min(c)), sorted(c))

# mentions of "General Relief", in text order; token spans are end-exclusive
for e in sorted((e for e in r.entities if r.class_name(e.id) == "5"), key=lambda e: e.text_span):
    print(e.id, e.text_span)
print(len(coindexed(r.graph, "5")), "arcs in class 5")
