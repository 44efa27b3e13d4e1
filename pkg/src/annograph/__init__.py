"""Annotation graphs: labelled acyclic digraphs with fielded arc records and
a partial, order-preserving time map, plus importers for common annotation
formats, an XML exchange encoding, and an arc-set query algebra.
"""

from .errors import AGError
from .graph import (
    AnnotationGraph,
    Arc,
    Node,
    Record,
    TimeInterval,
    ValidationReport,
    Violation,
    ViolationKind,
    arc_extent,
    build_graph,
    connected_components,
    merge_strands,
    rename_nodes,
    subgraph,
    topological_order,
    union,
    union_all,
    validate,
)
from .query import (
    ArcSet,
    Selector,
    TimeIndex,
    all_arcs,
    build_time_index,
    coindexed,
    includes,
    overlaps,
    precedes,
    query_window,
    select,
    set_complement,
    set_intersect,
    set_union,
)
from .timepoint import TimePoint

__version__ = "0.1.0"
