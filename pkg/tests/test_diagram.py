import pytest
from hypothesis import given, strategies as st

from linkdyn import diagram as dg
from linkdyn.errors import (
    AffineComponentError,
    DiagramSyntaxError,
    UnknownTypeError,
    ValidationError,
)


def test_parse_two_linked_a2s():
    d = dg.parse_diagram("edge 1 2 single\nedge 3 4 single\nlink 1 3\nlink 2 4")
    assert d.vertex_count == 4
    assert d.components() == [(1, 2), (3, 4)]
    assert len(d.dotted_links) == 2


def test_parse_rejects_self_loop_link():
    with pytest.raises((ValidationError, DiagramSyntaxError)):
        dg.parse_diagram("link 1 1")


def test_parse_rejects_shared_dotted_vertex():
    with pytest.raises(ValidationError):
        dg.parse_diagram("edge 1 2 single\nedge 3 4 single\nedge 5 6 single\nlink 1 3\nlink 1 5")


def test_parse_rejects_self_link_without_flag():
    with pytest.raises(ValidationError):
        dg.parse_diagram("edge 1 2 single\nedge 2 3 single\nlink 1 3")
    d = dg.parse_diagram("allow_self_links\nedge 1 2 single\nedge 2 3 single\nlink 1 3")
    assert d.allow_self_links


def test_double_edge_cartan_convention():
    d = dg.parse_diagram("edge 1 2 double 2")
    a = dg.to_cartan(d)
    assert a[0][1] == -1 and a[1][0] == -2


def test_b2_g2_selflink_cartans():
    b2 = dg.compose(["B2"], [(1, 2)], allow_self_links=True)
    assert dg.to_cartan(b2) == ((2, -1), (-2, 2))
    g2 = dg.compose(["G2"], [(1, 2)], allow_self_links=True)
    assert dg.to_cartan(g2) == ((2, -3), (-1, 2))


def test_single_vertex_cartan():
    d = dg.parse_diagram("vertex 1")
    assert dg.to_cartan(d) == ((2,),)


def test_cartan_round_trip_over_catalog():
    names = ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "D5",
             "E6", "E7", "E8", "F4", "G2", "A1(1)", "A2(2)", "A2(1)", "A4(2)",
             "A5(2)", "B3(1)", "C2(1)", "D3(2)", "D4(1)", "G2(1)", "D4(3)",
             "F4(1)", "E6(2)", "E6(1)", "E7(1)", "E8(1)"]
    for name in names:
        d = dg.compose([name])
        a = dg.to_cartan(d)
        d2 = dg.from_cartan(a)
        assert dg.to_cartan(d2) == a
        # and it classifies back to the same catalog entry
        [(comp, ctype)] = dg.classify_components(d2)
        assert ctype.name == name, f"{name} reclassified as {ctype.name}"


def test_classify_two_linked_a3s():
    d = dg.compose(["A3", "A3"], [(1, 4), (3, 6)])
    comps = dg.classify_components(d)
    assert [c.name for _, c in comps] == ["A3", "A3"]


def test_classify_c3_by_arrow_direction():
    # 1-2 single, 2=>3 double with arrow at 2: arrow points inward, so C3
    d = dg.parse_diagram("edge 1 2 single\nedge 2 3 double 2")
    [(comp, ctype)] = dg.classify_components(d)
    assert ctype.name == "C3"
    # arrow at the end vertex gives B3
    d = dg.parse_diagram("edge 1 2 single\nedge 2 3 double 3")
    [(comp, ctype)] = dg.classify_components(d)
    assert ctype.name == "B3"


def test_classify_a1aff():
    d = dg.parse_diagram("edge 1 2 a1aff")
    [(comp, ctype)] = dg.classify_components(d)
    assert ctype.name == "A1(1)"
    assert dg.to_cartan(d) == ((2, -2), (-2, 2))


def test_classify_unknown_component():
    with pytest.raises(UnknownTypeError):
        # triangle of single edges with a chord cannot be any Dynkin diagram
        dg.LinkableDynkinDiagram(
            4,
            tuple(dg.Edge(u, v, dg.single()) for u, v in [(1, 2), (2, 3), (3, 1), (1, 4)]),
            frozenset(),
        )


def test_positive_root_counts():
    assert dg.ComponentType("A", 4).positive_root_count() == 10
    assert dg.ComponentType("B", 3).positive_root_count() == 9
    assert dg.ComponentType("C", 4).positive_root_count() == 16
    assert dg.ComponentType("D", 4).positive_root_count() == 12
    assert dg.ComponentType("E", 6).positive_root_count() == 36
    assert dg.ComponentType("E", 7).positive_root_count() == 63
    assert dg.ComponentType("E", 8).positive_root_count() == 120
    assert dg.ComponentType("F", 4).positive_root_count() == 24
    assert dg.ComponentType("G", 2).positive_root_count() == 6


def test_hopf_dimension_examples():
    a2 = dg.compose(["A2"])
    assert dg.hopf_dimension(a2, 25, 5) == 5**5
    assert dg.hopf_dimension(a2, 9, 3) == 3**5 == 243
    b2 = dg.compose(["B2"])
    for m in (7, 20, 33):
        assert dg.hopf_dimension(b2, m, 5) == 5**4 * m
    with pytest.raises(AffineComponentError):
        dg.hopf_dimension(dg.compose(["A1(1)"]), 5, 5)
    with pytest.raises(ValidationError):
        dg.hopf_dimension(a2, 5, 2)


def test_print_parse_round_trip_handmade():
    texts = [
        "edge 1 2 single\nedge 3 4 single\nlink 1 3\nlink 2 4",
        "edge 1 2 double 1\nvertex 3",
        "allow_self_links\nedge 1 2 triple 1\nlink 1 2",
        "edge 1 2 a1aff\nedge 3 4 a1aff\nlink 1 3",
    ]
    for text in texts:
        d = dg.parse_diagram(text)
        assert dg.parse_diagram(dg.print_diagram(d)) == d


catalog_pool = ["A1", "A2", "A3", "B2", "B3", "G2"]


@st.composite
def random_diagrams(draw):
    comps = draw(st.lists(st.sampled_from(catalog_pool), min_size=1, max_size=3))
    d0 = dg.compose(comps)
    th = d0.vertex_count
    comp_of = {}
    for idx, comp in enumerate(d0.components()):
        for v in comp:
            comp_of[v] = idx
    pairs = [(a, b) for a in range(1, th + 1) for b in range(a + 1, th + 1)
             if comp_of[a] != comp_of[b]]
    chosen = []
    used = set()
    for pair in draw(st.permutations(pairs)) if pairs else []:
        if len(chosen) >= 2:
            break
        if pair[0] in used or pair[1] in used:
            continue
        if draw(st.booleans()):
            chosen.append(pair)
            used.update(pair)
    return dg.LinkableDynkinDiagram(th, d0.solid_edges,
                                    frozenset(frozenset(p) for p in chosen))


@given(random_diagrams())
def test_print_parse_round_trip_random(d):
    assert dg.parse_diagram(dg.print_diagram(d)) == d


def test_dot_export_mentions_dashed_links():
    d = dg.compose(["A2", "A2"], [(1, 3)])
    dot = dg.to_dot(d)
    assert "style=dashed" in dot
    assert dot.count("--") == 3


def test_vertex_ids_must_be_contiguous():
    with pytest.raises(ValidationError):
        dg.parse_diagram("edge 2 3 single")
