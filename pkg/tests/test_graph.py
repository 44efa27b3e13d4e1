from __future__ import annotations

from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annograph import (
    AnnotationGraph,
    Arc,
    Node,
    TimeInterval,
    TimePoint,
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
from annograph.errors import AnchorConflict, CycleError, DuplicateNodeId

from conftest import valid_graphs


def W(src, label, dst, cls=None):
    return Arc.make(src, "W", label, dst, cls)


# --- construction ---------------------------------------------------------


def test_build_minimal(minimal_graph):
    g = build_graph(minimal_graph.nodes.values(), list(minimal_graph.arcs) * 2)
    assert len(g.nodes) == 3 and len(g.arcs) == 3
    assert g == minimal_graph


def test_build_empty_is_valid():
    g = build_graph([], [])
    assert len(g.nodes) == 0 and len(g.arcs) == 0
    assert validate(g).ok


def test_build_duplicate_node_id():
    with pytest.raises(DuplicateNodeId) as exc:
        build_graph([Node("1", "0.0"), Node("1", "1.0")], [])
    assert exc.value.code == "DUPLICATE_NODE_ID"


def test_build_accepts_identical_repeat():
    g = build_graph([Node("1", "0.0"), Node("1", "0.00")], [])
    assert len(g.nodes) == 1


def test_node_rejects_float_time():
    with pytest.raises(TypeError):
        Node("1", 0.5)


def test_record_string_form():
    assert str(W("1", "oh", "2").record) == "W/oh/"
    assert str(Arc.make("a", "D", "Accept", "b", "d").record) == "D/Accept/d"


def test_graph_equality_ignores_order(minimal_graph):
    arcs = list(minimal_graph.arcs)
    nodes = list(minimal_graph.nodes.values())
    assert AnnotationGraph(reversed(nodes), reversed(arcs)) == minimal_graph
    assert hash(AnnotationGraph(reversed(nodes), reversed(arcs))) == hash(minimal_graph)


# --- validation -----------------------------------------------------------


def test_validate_minimal(minimal_graph):
    assert validate(minimal_graph).ok


def test_validate_two_cycle():
    g = AnnotationGraph([Node("1"), Node("2")], [Arc.make("1", "x", "", "2"), Arc.make("2", "x", "", "1")])
    report = validate(g)
    assert report.kinds == {ViolationKind.CYCLE}
    assert report.violations[0].detail["nodes"] == ["1", "2"]


def test_validate_time_inversion():
    g = AnnotationGraph([Node("1", "2.0"), Node("2", "1.0")], [W("1", "a", "2")])
    report = validate(g)
    assert report.kinds == {ViolationKind.TIME_ORDER}
    v = report.violations[0].detail
    assert (v["node"], v["time"], v["ancestor_time"]) == ("2", "1.0", "2.0")


def test_validate_transitive_inversion_through_unanchored():
    g = AnnotationGraph([Node("1", "5"), Node("2"), Node("3", "4.99")], [W("1", "a", "2"), W("2", "b", "3")])
    assert validate(g).kinds == {ViolationKind.TIME_ORDER}


def test_validate_equal_times_on_path_allowed():
    g = AnnotationGraph([Node("1", "1.0"), Node("2", "1.000")], [Arc.make("1", "Tone", "H*", "2")])
    assert validate(g).ok


def test_validate_dangling_and_self_loop():
    g = AnnotationGraph([Node("1")], [W("1", "a", "ghost"), W("1", "b", "1")])
    report = validate(g)
    assert report.kinds == {ViolationKind.DANGLING_ENDPOINT, ViolationKind.SELF_LOOP}


def test_validate_reports_every_violation():
    g = AnnotationGraph(
        [Node("a", "3"), Node("b", "1"), Node("c"), Node("d")],
        [W("a", "", "b"), W("c", "", "d"), W("d", "", "c"), W("a", "", "a")],
    )
    assert validate(g).kinds == {ViolationKind.TIME_ORDER, ViolationKind.CYCLE, ViolationKind.SELF_LOOP}


@st.composite
def seeded(draw):
    g = draw(valid_graphs(max_nodes=10, fancy_ids=False))
    kind = draw(st.sampled_from(list(ViolationKind)))
    nodes = dict(g.nodes)
    arcs = set(g.arcs)
    ids = list(nodes)
    if kind is ViolationKind.CYCLE:
        if len(ids) < 2:
            nodes["x"], nodes["y"] = Node("x"), Node("y")
            arcs.add(W("x", "", "y"))
            ids = list(nodes)
        forward = sorted((a for a in arcs if a.src != a.dst), key=str)
        a = draw(st.sampled_from(forward)) if forward else None
        if a is None:
            u, v = ids[0], ids[1]
            arcs.add(W(u, "", v))
        else:
            u, v = a.src, a.dst
        # strip anchors on the would-be cycle so no inversion comes along
        on_cycle = [w for w in nodes if g_reach(arcs, u, w) and g_reach(arcs, w, v)]
        for w in on_cycle:
            nodes[w] = Node(w)
        arcs.add(W(v, "back", u))
    elif kind is ViolationKind.TIME_ORDER:
        nodes["hi"] = Node("hi", "100")
        nodes["lo"] = Node("lo", "0.5")
        arcs.add(W("hi", "inv", "lo"))
    elif kind is ViolationKind.DANGLING_ENDPOINT:
        arcs.add(W(draw(st.sampled_from(ids)), "", "ghost"))
    else:
        u = draw(st.sampled_from(ids))
        arcs.add(W(u, "loop", u))
    return kind, AnnotationGraph(nodes.values(), arcs)


def g_reach(arcs, u, v) -> bool:
    seen, todo = {u}, [u]
    while todo:
        x = todo.pop()
        for a in arcs:
            if a.src == x and a.dst not in seen:
                seen.add(a.dst)
                todo.append(a.dst)
    return v in seen


@settings(max_examples=400)
@given(seeded())
def test_seeded_violation_detected(case):
    kind, g = case
    assert validate(g).kinds == {kind}


@settings(max_examples=300)
@given(valid_graphs())
def test_generated_graphs_are_valid(g):
    assert validate(g).ok


# --- union ----------------------------------------------------------------


def test_union_identity_and_idempotence(minimal_graph):
    assert union(minimal_graph, AnnotationGraph()) == minimal_graph
    assert union(minimal_graph, minimal_graph) == minimal_graph


def test_union_anchor_conflict_names_both_texts():
    g1 = AnnotationGraph([Node("2", "52.46")], [])
    g2 = AnnotationGraph([Node("2", "99.0")], [])
    with pytest.raises(AnchorConflict) as exc:
        union(g1, g2)
    assert "52.46" in str(exc.value) and "99.0" in str(exc.value)


def test_union_equal_values_different_spelling_is_not_conflict():
    g = union(AnnotationGraph([Node("1", "0.10")]), AnnotationGraph([Node("1", "0.100000")]))
    assert g.time("1") == TimePoint("0.1")


@st.composite
def three_parts(draw):
    g = draw(valid_graphs(max_nodes=9))
    arcs = g.sorted_arcs()
    parts = []
    for _ in range(3):
        keep_a = draw(st.lists(st.booleans(), min_size=len(arcs), max_size=len(arcs)))
        keep_n = draw(st.lists(st.booleans(), min_size=len(g.nodes), max_size=len(g.nodes)))
        sub_arcs = [a for a, k in zip(arcs, keep_a) if k]
        used = {a.src for a in sub_arcs} | {a.dst for a in sub_arcs}
        sub_nodes = [n for n, k in zip(g.nodes.values(), keep_n) if k or n.id in used]
        parts.append(AnnotationGraph(sub_nodes, sub_arcs))
    return parts


@settings(max_examples=300)
@given(three_parts())
def test_union_associative_and_commutative(parts):
    g1, g2, g3 = parts
    assert union(g1, union(g2, g3)) == union(union(g1, g2), g3)
    assert union(g1, g2) == union(g2, g1)
    u = union_all(parts)
    assert set(u.arcs) == set(g1.arcs) | set(g2.arcs) | set(g3.arcs)
    assert set(u.nodes) == set(g1.nodes) | set(g2.nodes) | set(g3.nodes)


def test_union_shared_boundary_node_count():
    words = AnnotationGraph([Node("w0", "51.54"), Node("w1", "51.975728")], [W("w0", "Elmira", "w1")])
    disc = AnnotationGraph(
        [Node("w1", "51.975728"), Node("u0", "45.87")], [Arc.make("u0", "Utt", "...", "w1", "utt17")]
    )
    g = union(words, disc)
    assert len(g.nodes) == len(words.nodes) + len(disc.nodes) - 1
    assert validate(g).ok


# --- subgraph -------------------------------------------------------------


def test_subgraph_by_type(minimal_graph):
    s = subgraph(minimal_graph, lambda a: a.type == "W")
    assert len(s.arcs) == 2 and set(s.nodes) == {"1", "2", "3"}
    assert s.time("1") == TimePoint("52.46")


def test_subgraph_false_and_true(minimal_graph):
    assert subgraph(minimal_graph, lambda a: False) == AnnotationGraph()
    g = AnnotationGraph(list(minimal_graph.nodes.values()) + [Node("lonely", "1")], minimal_graph.arcs)
    assert subgraph(g, lambda a: True) == minimal_graph


def test_subgraph_from_arc_collection(minimal_graph):
    a = W("1", "oh", "2")
    assert subgraph(minimal_graph, [a]).arcs == {a}


# --- extent ---------------------------------------------------------------


def test_extent_minimal(minimal_graph):
    assert arc_extent(minimal_graph, W("1", "oh", "2")) == TimeInterval(TimePoint("52.46"), TimePoint("53.14"))
    assert arc_extent(minimal_graph, W("2", "okay", "3")) == TimeInterval(TimePoint("52.46"), TimePoint("53.14"))


def test_extent_fully_anchored_keeps_text():
    g = AnnotationGraph([Node("a", "0.110000"), Node("b", "0.488555")], [W("a", "hello", "b")])
    ext = arc_extent(g, W("a", "hello", "b"))
    assert (ext.lo.text, ext.hi.text) == ("0.110000", "0.488555")
    assert str(ext) == "[0.110000,0.488555]"


def test_extent_unanchored_graph():
    g = AnnotationGraph([Node("a"), Node("b")], [W("a", "x", "b")])
    ext = arc_extent(g, W("a", "x", "b"))
    assert ext.lo is None and ext.hi is None and not ext.bounded


def brute_bounds(g: AnnotationGraph, v: str):
    """Anchored ancestors and descendants by exhaustive path search."""
    anc = [g.time(u) for u in g.nodes if g.time(u) is not None and g_reach(g.arcs, u, v)]
    desc = [g.time(w) for w in g.nodes if g.time(w) is not None and g_reach(g.arcs, v, w)]
    return (max(anc) if anc else None, min(desc) if desc else None)


@settings(max_examples=400)
@given(valid_graphs(max_nodes=12, fancy_ids=False))
def test_extent_tight_against_brute_force(g):
    for a in g.arcs:
        ext = arc_extent(g, a)
        assert ext.lo == brute_bounds(g, a.src)[0]
        assert ext.hi == brute_bounds(g, a.dst)[1]


# --- order and components -------------------------------------------------


def test_topological_order_examples(minimal_graph):
    assert topological_order(minimal_graph) == ["1", "2", "3"]
    assert topological_order(AnnotationGraph([Node("x")])) == ["x"]
    with pytest.raises(CycleError):
        topological_order(AnnotationGraph([Node("1"), Node("2")], [W("1", "", "2"), W("2", "", "1")]))


@settings(max_examples=300)
@given(valid_graphs())
def test_topological_order_respects_arcs(g):
    pos = {v: i for i, v in enumerate(topological_order(g))}
    assert set(pos) == set(g.nodes)
    for a in g.arcs:
        assert pos[a.src] < pos[a.dst]


def test_connected_components():
    g = AnnotationGraph([Node(x) for x in "abcde"], [W("a", "", "b"), W("c", "", "b"), W("d", "", "e")])
    assert sorted(map(sorted, connected_components(g))) == [["a", "b", "c"], ["d", "e"]]


# --- renaming and strand merging ------------------------------------------


def test_rename_nodes_conflict():
    g = AnnotationGraph([Node("a", "1"), Node("b", "2")], [])
    with pytest.raises(AnchorConflict):
        rename_nodes(g, {"b": "a"})
    assert rename_nodes(g, {}) is g


def test_merge_strands_identifies_mapped_pair():
    g1 = AnnotationGraph([Node("w0", "1"), Node("w1", "2.5")], [W("w0", "x", "w1")])
    g2 = AnnotationGraph([Node("d0", "0"), Node("d1", "2.50")], [Arc.make("d0", "Utt", "y", "d1", "u1")])
    g = merge_strands([g1, g2], [("w1", "d1")])
    assert set(g.nodes) == {"w0", "w1", "d0"}
    assert Arc.make("d0", "Utt", "y", "w1", "u1") in g.arcs


def test_merge_strands_only_renames_later_graphs():
    g1 = AnnotationGraph([Node("n0", "1"), Node("n1", "2")], [W("n0", "x", "n1")])
    g2 = AnnotationGraph([Node("m0", "0"), Node("m1", "2")], [W("m0", "y", "m1")])
    g = merge_strands([g1, g2], [("n1", "m1")])
    assert set(g.nodes) == {"n0", "n1", "m0"}


def test_merge_strands_unknown_ids():
    g1 = AnnotationGraph([Node("a", "1")])
    g2 = AnnotationGraph([Node("b", "1")])
    with pytest.raises(ValueError):
        merge_strands([g1, g2], [("zz", "b")])
    with pytest.raises(ValueError):
        merge_strands([g1, g2], [("a", "zz")])


def test_merge_strands_unequal_times():
    g1 = AnnotationGraph([Node("a", "51.975728")])
    g2 = AnnotationGraph([Node("b", "52.175728")])
    with pytest.raises(AnchorConflict) as exc:
        merge_strands([g1, g2], [("a", "b")])
    assert exc.value.detail["times"] == ("51.975728", "52.175728")


# --- time points ----------------------------------------------------------


def test_timepoint_exact_equality():
    a, b = TimePoint("0.10"), TimePoint("0.100000")
    assert a == b and hash(a) == hash(b)
    assert (a.canonical_text, b.canonical_text) == ("0.10", "0.100000")
    assert TimePoint("0.48855") != TimePoint("0.488555")


@pytest.mark.parametrize("bad", ["1e3", "nan", "inf", "", "1.2.3", "abc"])
def test_timepoint_rejects(bad):
    with pytest.raises(ValueError):
        TimePoint(bad)


def test_timepoint_arithmetic_is_exact():
    assert (TimePoint("1.25") + Decimal("0.30")).text == "1.55"
    assert TimePoint("0.1") + Decimal("0.2") == TimePoint("0.3")


@settings(max_examples=300)
@given(st.decimals(allow_nan=False, allow_infinity=False, places=6, min_value=0, max_value=10**6))
def test_timepoint_text_roundtrip(d):
    t = TimePoint(format(d, "f"))
    assert t.value == d and TimePoint(t.text) == t
