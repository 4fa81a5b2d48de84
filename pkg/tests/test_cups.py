import itertools

import pytest
from hypothesis import given, settings, strategies as st

from springer_cups.cups import (CupDiagram, DiagramError, IntersectionType, admissible_shapes_D,
                                circle_diagram, diagram_names, diagrams_for_shape,
                                enumerate_cup_diagrams, format_diagram, intersection_graph,
                                intersection_type, parse_diagram)

# |B^{n-k,k}| and its odd part, from a brute-force oracle that runs over every
# set of disjoint pairs and every dot subset and keeps the valid diagrams.
BRUTE_COUNTS = {
    (1, 1): (2, 1), (3, 1): (2, 1), (2, 2): (2, 1), (5, 1): (2, 1), (3, 3): (6, 3),
    (7, 1): (2, 1), (5, 3): (8, 4), (4, 4): (6, 3), (9, 1): (2, 1), (7, 3): (10, 5),
    (5, 5): (20, 10), (11, 1): (2, 1), (9, 3): (12, 6), (7, 5): (30, 15), (6, 6): (20, 10),
    (13, 1): (2, 1), (11, 3): (14, 7), (9, 5): (42, 21), (7, 7): (70, 35), (15, 1): (2, 1),
    (13, 3): (16, 8), (11, 5): (56, 28), (9, 7): (112, 56), (8, 8): (70, 35),
}

B53 = ["(1,2) |3 |4", "|1 (2,3) |4", "|1 |2 (3,4)", "|1 |2* (3,4)*",
       "(1,2) |3 |4*", "|1 (2,3) |4*", "|1 |2* (3,4)", "|1 |2 (3,4)*"]


def test_b53_matches_listing():
    got = diagrams_for_shape(5, 3)
    assert [str(a) for a in got] == B53
    assert [a.parity for a in got] == ["even"] * 4 + ["odd"] * 4
    assert diagram_names(got) == list("abcdefgh")


def test_no_cups_gives_two():
    for m in range(1, 7):
        got = enumerate_cup_diagrams(m, 0)
        assert len(got) == 2
        assert got[1].rays[-1][1] and not any(d for _, d in got[1].rays[:-1])


def test_single_cup_m2():
    assert [str(a) for a in enumerate_cup_diagrams(2, 1)] == ["(1,2)", "(1,2)*"]


def test_counts_against_brute_force():
    assert set(admissible_shapes_D(16)) == set(BRUTE_COUNTS)
    for shape, (total, odd) in BRUTE_COUNTS.items():
        got = diagrams_for_shape(*shape)
        assert len(got) == total
        assert sum(a.parity == "odd" for a in got) == odd
        assert len(set(got)) == total


@pytest.mark.parametrize("text,parity", [
    ("|1 |2* (3,4)*", "even"), ("(1,2) |3 |4", "even"), ("(1,2) |3 |4*", "odd")])
def test_parity(text, parity):
    assert parse_diagram(text).parity == parity


@pytest.mark.parametrize("bad", [
    "(1,3) (2,4)",        # crossing
    "(1,3) |2",           # ray under a cup
    "(1,2)* |3",          # dotted cup with a ray to its right
    "(1,4) (2,3)*",       # dotted nested cup
    "|1* |2",             # dotted ray that is not rightmost
    "(1,2) |2",           # vertex used twice
    "(1,2",               # syntax
    "|1 |3",              # vertex 2 missing
])
def test_invalid_diagrams(bad):
    with pytest.raises(DiagramError):
        parse_diagram(bad)


def test_inadmissible_shape_rejected():
    for shape in [(6, 2), (3, 2), (4, 0)]:
        with pytest.raises(DiagramError):
            diagrams_for_shape(*shape)


def test_k_and_shape():
    assert parse_diagram("(1,2) |3 |4").shape == (5, 3)
    assert parse_diagram("(1,2) (3,4)").shape == (4, 4)
    assert parse_diagram("(1,2) |3").shape == (3, 3)
    assert parse_diagram("|1 |2 |3").shape == (5, 1)


def test_circle_diagram_example():
    a = parse_diagram("(1,2) |3* (4,5) (6,7)*")
    b = parse_diagram("|1 (2,3)* (4,7)* (5,6)")
    cd = circle_diagram(a, b)
    closed = [c for c in cd.components if c.closed]
    lines = [c for c in cd.components if not c.closed]
    assert len(closed) == 1 and len(lines) == 1
    assert lines[0].propagating
    assert sorted(closed[0].vertices) == [4, 5, 6, 7]


def test_non_propagating_segment():
    a, d = parse_diagram("(1,2) |3 |4"), parse_diagram("|1 |2* (3,4)*")
    cd = circle_diagram(a, d)
    assert any(not c.closed and not c.propagating for c in cd.components)
    assert intersection_type(a, d).empty


def test_worked_intersections():
    a, b, c = (parse_diagram(t) for t in B53[:3])
    assert str(intersection_type(a, b)) == "NonEmpty(0)"
    assert intersection_type(a, c).empty
    assert intersection_type(a, a) == IntersectionType(False, 1)


def test_graph_is_two_d4_stars():
    diagrams = diagrams_for_shape(5, 3)
    g = intersection_graph(diagrams)
    assert g.components() == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert g.neighbours(1) == [0, 2, 3]
    assert g.neighbours(5) == [4, 6, 7]
    for leaf in (0, 2, 3):
        assert g.neighbours(leaf) == [1]
    for leaf in (4, 6, 7):
        assert g.neighbours(leaf) == [5]
    assert all(str(g.edges[(min(1, j), max(1, j))]) == "NonEmpty(0)" for j in (0, 2, 3))
    dot = g.to_dot()
    assert dot.startswith("graph") and "b -- c" in dot


def test_singleton_graph():
    a = parse_diagram("(1,2) |3 |4")
    g = intersection_graph([a])
    assert str(g.edges[(0, 0)]) == "NonEmpty(1)"


def test_intersection_type_parse():
    for t in ("Empty", "NonEmpty(3)"):
        assert str(IntersectionType.parse(t)) == t


shapes = st.sampled_from(sorted(BRUTE_COUNTS))


@st.composite
def diagram_pairs(draw):
    shape = draw(shapes)
    ds = diagrams_for_shape(*shape)
    return draw(st.sampled_from(ds)), draw(st.sampled_from(ds))


@settings(max_examples=200)
@given(diagram_pairs())
def test_text_and_json_round_trip(pair):
    a, _ = pair
    assert parse_diagram(format_diagram(a)) == a
    assert CupDiagram.from_json(a.to_json()) == a


@settings(max_examples=200)
@given(diagram_pairs())
def test_intersection_symmetric(pair):
    a, b = pair
    assert intersection_type(a, b) == intersection_type(b, a)


@settings(max_examples=200)
@given(diagram_pairs())
def test_closed_components_even(pair):
    cd = circle_diagram(*pair)
    assert sorted(v for c in cd.components for v in c.vertices) == list(range(1, pair[0].m + 1))
    for c in cd.components:
        if c.closed:
            assert len(c.vertices) % 2 == 0


def test_cross_parity_vanishing_exhaustive():
    for shape in BRUTE_COUNTS:
        ds = diagrams_for_shape(*shape)
        even = [a for a in ds if a.parity == "even"]
        odd = [a for a in ds if a.parity == "odd"]
        for a, b in itertools.product(even, odd):
            assert intersection_type(a, b).empty


def test_self_intersection_is_cup_count():
    for shape in BRUTE_COUNTS:
        for a in diagrams_for_shape(*shape):
            assert intersection_type(a, a) == IntersectionType(False, len(a.cups))
