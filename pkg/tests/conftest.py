from __future__ import annotations

from decimal import Decimal
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from annograph import AnnotationGraph, Arc, Node, Record, TimePoint

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def minimal_graph() -> AnnotationGraph:
    return AnnotationGraph(
        [Node("1", "52.46"), Node("2"), Node("3", "53.14")],
        [
            Arc.make("1", "W", "oh", "2"),
            Arc.make("2", "W", "okay", "3"),
            Arc.make("1", "D", "IOS:Commit", "3"),
        ],
    )


# --- strategies -----------------------------------------------------------

# XML-safe text, including markup-significant characters and non-ASCII
_safe_chars = st.characters(
    blacklist_categories=("Cs", "Cc"),
    blacklist_characters="￾￿",
)
text_fields = st.one_of(
    st.sampled_from(["oh", "okay", "IOS:Commit", "a&b", "<sil>", 'say "hi"', "it's", "x/y", "pre*", "Zürich", ""]),
    st.text(_safe_chars, max_size=8),
)
types = st.sampled_from(["W", "D", "speaker", "Utt", "coref", "T&<>", "x y"])
classes = st.one_of(st.none(), st.sampled_from(["d", "5", "utt17", "c/1", "é"]))


def decimal_texts(value: Decimal) -> st.SearchStrategy[str]:
    """Several spellings of one decimal value."""
    base = format(value, "f")
    spellings = {base}
    if "." in base:
        spellings.add(base + "0")
        spellings.add(base + "000")
    else:
        spellings.add(base + ".0")
    return st.sampled_from(sorted(spellings))


@st.composite
def times_sorted(draw, n: int) -> list[Decimal]:
    cents = draw(st.lists(st.integers(0, 5000), min_size=n, max_size=n))
    return [Decimal(c).scaleb(-2) for c in sorted(cents)]


@st.composite
def node_ids(draw, n: int, fancy: bool) -> list[str]:
    if not fancy:
        return [str(i) for i in range(n)]
    prefixes = draw(st.lists(st.sampled_from(["n", "a&", "<x>", "q'", 'd"', "é", "n 1", ""]), min_size=n, max_size=n))
    return [f"{p}{i}" for i, p in enumerate(prefixes)]


@st.composite
def valid_graphs(
    draw,
    max_nodes: int = 10,
    max_arcs: int = 16,
    anchor_prob: float | None = None,
    fancy_ids: bool = True,
    allow_isolated: bool = True,
) -> AnnotationGraph:
    """Random well-formed graphs.

    Nodes get a hidden random order; arcs only run forward in it, and
    anchored times are non-decreasing in it, so the result is acyclic and
    order-preserving by construction.
    """
    n = draw(st.integers(1, max_nodes))
    ids = draw(node_ids(n, fancy_ids))
    ts = draw(times_sorted(n))
    p = anchor_prob if anchor_prob is not None else draw(st.sampled_from([0.0, 0.3, 0.7, 1.0]))
    anchored = draw(st.lists(st.floats(0, 1, exclude_max=True), min_size=n, max_size=n))
    nodes = []
    for i, nid in enumerate(ids):
        time = draw(decimal_texts(ts[i])) if anchored[i] < p else None
        nodes.append(Node(nid, time))
    arcs = []
    if n >= 2:
        pairs = st.tuples(st.integers(0, n - 2), st.integers(1, n - 1)).map(lambda t: (min(t), max(t))).filter(lambda t: t[0] != t[1])
        for i, j in draw(st.lists(pairs, max_size=max_arcs)):
            arcs.append(Arc(ids[i], Record(draw(types), draw(text_fields), draw(classes)), ids[j]))
    if not allow_isolated:
        used = {a.src for a in arcs} | {a.dst for a in arcs}
        nodes = [x for x in nodes if x.id in used]
    return AnnotationGraph(nodes, arcs)


@st.composite
def graph_and_subset(draw, **kw):
    g = draw(valid_graphs(**kw))
    arcs = g.sorted_arcs()
    mask = draw(st.lists(st.booleans(), min_size=len(arcs), max_size=len(arcs)))
    return g, [a for a, m in zip(arcs, mask) if m]


def tp(text: str) -> TimePoint:
    return TimePoint(text)


# --- fixture graphs -------------------------------------------------------


def callhome_graph() -> AnnotationGraph:
    from annograph.formats import parse_callhome

    return parse_callhome(fixture_text("callhome.txt"))


def coconut_graph() -> AnnotationGraph:
    from annograph.formats import parse_coconut, read_coconut

    return parse_coconut(read_coconut(fixture_text("coconut.txt")))


def muc_coref():
    from annograph.formats import parse_muc_coref

    return parse_muc_coref(fixture_text("muc_coref.sgml"))


def speaker0_graph() -> AnnotationGraph:
    from annograph.formats import parse_xwaves, xwaves_to_graph

    return xwaves_to_graph(parse_xwaves(fixture_text("speaker0.words")))


def trains_word_graph() -> AnnotationGraph:
    """Both speakers' word tiers from the overlap listing, one strand."""
    from annograph import union
    from annograph.formats import parse_xwaves, xwaves_to_graph

    s = xwaves_to_graph(parse_xwaves(fixture_text("trains_s.words")), prefix="s")
    u = xwaves_to_graph(parse_xwaves(fixture_text("trains_u.words")), prefix="u")
    return union(s, u)


def damsl_graph(text: str | None = None, **kw) -> AnnotationGraph:
    from annograph.formats import parse_damsl

    return parse_damsl(text if text is not None else fixture_text("damsl.sgml"), prefix="d", **kw)


def tobi_graph() -> AnnotationGraph:
    from annograph.formats import parse_tobi, read_points

    return parse_tobi(
        read_points(fixture_text("speaker0.tones")),
        read_points(fixture_text("speaker0.breaks")),
        speaker0_graph(),
    )


def tilt_graph() -> AnnotationGraph:
    from annograph.formats import parse_tilt, read_tilt

    return parse_tilt(read_tilt(fixture_text("events.tilt")))


def anchored_fixture_graphs() -> dict[str, AnnotationGraph]:
    return {
        "callhome": callhome_graph(),
        "speaker0": speaker0_graph(),
        "trains-words": trains_word_graph(),
        "damsl": damsl_graph(),
        "tobi": tobi_graph(),
        "tilt": tilt_graph(),
    }


# --- acceptance reporting -------------------------------------------------

# criterion number -> (title, "PASS" | "FAIL"), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter) -> None:
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, verdict = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} {verdict}: {title}")
