import random
from fractions import Fraction

import pytest

from resgraph.catalog import load_catalog
from resgraph.graph import (
    Cycle,
    DslSyntaxError,
    DuplicateId,
    DualGraph,
    SelfIntOnTransversal,
    TransversalInSubset,
    UnknownVertex,
    Vertex,
    VertexKind,
    ade_graph,
    cycle_dot,
    cycle_pairing,
    parse,
    serialize,
)


def test_parse_single_central_vertex():
    result = parse("graph g\nv a -1 cen\n")
    g = result.graph
    assert len(g.vertices) == 1
    v = g.vertex("a")
    assert v.kind is VertexKind.CENTRAL
    assert v.self_int == -1


def test_parse_omitted_weight_means_minus_two():
    g = parse("graph g\nv a\nv b cen\n").graph
    assert g.vertex("a").self_int == -2
    assert g.vertex("b").self_int == -2
    assert g.vertex("b").kind is VertexKind.CENTRAL


def test_parse_transversal_has_no_self_int():
    g = parse("graph g\nv a ~\nv b ~ tra label=section\n").graph
    assert g.vertex("a").kind is VertexKind.TRANSVERSAL
    assert g.vertex("a").self_int is None
    assert g.vertex("b").label == "section"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DslSyntaxError) as err:
        parse("graph g\nv a -2\nbogus line\n")
    assert err.value.line == 3

    with pytest.raises(DuplicateId):
        parse("graph g\nv a -2\nv a -3\n")

    with pytest.raises(UnknownVertex):
        parse("graph g\nv a -2\ne a b\n")

    with pytest.raises(SelfIntOnTransversal):
        parse("graph g\nv a -3 tra\n")

    with pytest.raises(DslSyntaxError):
        parse("v a -2\n")  # missing graph directive


def test_parse_rejects_nonnegative_self_int():
    with pytest.raises(DslSyntaxError):
        parse("graph g\nv a 0\n")


def test_parse_warns_on_disconnected_complete_part():
    result = parse("graph g\nv a -2\nv b -2\n")
    assert result.warnings


def test_edge_multiplicity_accumulates():
    g = parse("graph g\nv a -2\nv b -2\ne a b\ne a b m=2\n").graph
    assert g.multiplicity("a", "b") == 3


def test_intersection_matrix_a2_chain():
    g = parse("graph g\nv a -2\nv b -2\ne a b\n").graph
    m, order = g.intersection_matrix()
    assert order == ["a", "b"]
    assert m.rows() == [[-2, 1], [1, -2]]


def test_intersection_matrix_single_minus_three():
    g = parse("graph g\nv a -3\n").graph
    m, _ = g.intersection_matrix()
    assert m.rows() == [[-3]]


def test_intersection_matrix_rejects_transversal():
    g = parse("graph g\nv a -2\nv t ~\ne a t\n").graph
    with pytest.raises(TransversalInSubset):
        g.intersection_matrix(["a", "t"])
    m, _ = g.intersection_matrix()
    assert m.dimension == 1  # transversal excluded from the default subset


def test_intersection_matrix_offdiagonal_nonnegative_on_catalog():
    for entry in load_catalog():
        m, order = entry.graph.intersection_matrix()
        for i in range(len(order)):
            for j in range(len(order)):
                if i != j:
                    assert m[i, j] >= 0


def test_cycle_dot_zero_cycle():
    g = parse("graph g\nv a -2\nv b -3\ne a b\n").graph
    assert cycle_dot(g, Cycle({}), "a") == 0


def test_cycle_dot_counts_multiplicity_and_weight():
    g = parse("graph g\nv a -2\nv b -3\ne a b m=2\n").graph
    z = Cycle({"a": Fraction(1), "b": Fraction(1, 2)})
    # a: 1*(-2) + 2*(1/2) = -1
    assert cycle_dot(g, z, "a") == Fraction(-1)
    with pytest.raises(UnknownVertex):
        cycle_dot(g, z, "missing")


def test_cycle_dot_is_bilinear():
    rng = random.Random(4321)
    g = parse(
        "graph g\nv a -2\nv b -3\nv c -2\nv d -4\ne a b\ne b c\ne c d\ne b d m=2\n"
    ).graph
    ids = g.ids()
    for _ in range(40):
        y = Cycle({vid: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for vid in ids})
        z = Cycle({vid: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for vid in ids})
        s = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        for vid in ids:
            assert cycle_dot(g, y + z, vid) == cycle_dot(g, y, vid) + cycle_dot(g, z, vid)
            assert cycle_dot(g, y.scale(s), vid) == s * cycle_dot(g, y, vid)


def test_cycle_pairing_is_symmetric():
    g = parse("graph g\nv a -2\nv b -3\ne a b\n").graph
    y = Cycle({"a": Fraction(2), "b": Fraction(1, 3)})
    z = Cycle({"a": Fraction(-1), "b": Fraction(5)})
    assert cycle_pairing(g, y, z) == cycle_pairing(g, z, y)


def test_roundtrip_on_full_catalog():
    for entry in load_catalog():
        text = serialize(entry.graph, entry.cycles, entry.expects)
        again = parse(text)
        assert again.graph == entry.graph
        assert again.cycles == entry.cycles
        assert again.expects == entry.expects
        # serialization is a fixed point
        assert serialize(again.graph, again.cycles, again.expects) == text


def test_serialize_orders_edges_lexicographically():
    g = DualGraph(
        "g",
        [Vertex("b", VertexKind.EXCEPTIONAL, -2), Vertex("a", VertexKind.EXCEPTIONAL, -2)],
        [("b", "a")],
    )
    text = serialize(g)
    assert "e a b" in text


def test_ade_graph_shapes():
    a3 = ade_graph("A", 3)
    assert len(a3.vertices) == 3 and len(a3.edges()) == 2
    d4 = ade_graph("D", 4)
    assert max(len(d4.neighbors(v)) for v in d4.ids()) == 3
    e8 = ade_graph("E", 8)
    assert len(e8.vertices) == 8
    with pytest.raises(ValueError):
        ade_graph("E", 9)
    with pytest.raises(ValueError):
        ade_graph("D", 3)


def test_components():
    g = parse("graph g\nv a -2\nv b -2\nv c -2\ne a b\n").graph
    comps = g.components()
    assert comps == [{"a", "b"}, {"c"}]
