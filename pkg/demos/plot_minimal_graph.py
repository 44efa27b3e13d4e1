"""
A first annotation graph
========================

Two words and one dialogue act over the same stretch of speech.
"""

from annograph import AnnotationGraph, Arc, Node, arc_extent, validate
from annograph.formats import from_xml, to_xml
from annograph.viz import VizOptions, render

# nodes 1 and 3 carry times; node 2, the word boundary, does not
g = AnnotationGraph(
    [Node("1", "52.46"), Node("2"), Node("3", "53.14")],
    [
        Arc.make("1", "W", "oh", "2"),
        Arc.make("2", "W", "okay", "3"),
        Arc.make("1", "D", "IOS:Commit", "3"),
    ],
)
print(validate(g))

# the unanchored boundary still gets a provable bracket from its neighbours
for a in g.sorted_arcs():
    print(a, arc_extent(g, a))

# AG-XML is the exchange format; reading it back gives the same graph
doc = to_xml(g)
print(doc.decode())
assert from_xml(doc) == g

# DOT output, words drawn above the dialogue act
print(render(g, VizOptions(layer_order=["W", "D"])).decode())
