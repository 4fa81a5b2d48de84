import pytest
from hypothesis import given, settings, strategies as st

from springer_cups.cups import diagrams_for_shape, intersection_type, parse_diagram
from springer_cups.exact import I, LINE_E, LINE_F, ProjLine
from springer_cups.spheres import (CONVENTIONS, Consistent, flip_dot_relations,
                                   oracle_cross_check, relations_of, solve, translate_to_p1)
from springer_cups.tableaux import admissible_shapes


def _strs(rels):
    return sorted(str(r) for r in rels)


@pytest.mark.parametrize("text,expected", [
    ("(1,2) |3 |4", ["Const(3,q)", "Const(4,-p)", "Negate(1,2)"]),
    ("|1*", ["Const(1,p)"]),
    ("|1 |2* (3,4)*", ["Const(1,q)", "Const(2,p)", "Equal(3,4)"]),
])
def test_relations_of(text, expected):
    assert _strs(relations_of(parse_diagram(text))) == expected


def test_swapped_convention():
    rels = relations_of(parse_diagram("(1,2) |3 |4"), "swapped")
    assert _strs(rels) == ["Const(3,p)", "Const(4,-q)", "Negate(1,2)"]
    with pytest.raises(ValueError):
        relations_of(parse_diagram("|1"), "other")


def test_solve_examples():
    a, b, c = (parse_diagram(t) for t in ("(1,2) |3 |4", "|1 (2,3) |4", "|1 |2 (3,4)"))
    res = solve(a, b)
    assert res == Consistent(0, ("q", "-q", "q", "-p"))
    assert solve(a, b, "swapped").witness == ("p", "-p", "p", "-q")
    assert not solve(a, c).consistent
    same = solve(a, a)
    assert same.free == 1 and same.witness == ("-s1", "s1", "q", "-p")


def test_witness_satisfies_constraints():
    for shape in admissible_shapes(10, "D"):
        ds = diagrams_for_shape(*shape)
        for a in ds:
            for b in ds:
                res = solve(a, b)
                if not res.consistent:
                    continue
                w = dict(enumerate(res.witness, 1))
                neg = lambda s: s[1:] if s.startswith("-") else "-" + s
                for rel in relations_of(a) + relations_of(b):
                    if rel.kind == "Equal":
                        assert w[rel.i] == w[rel.j]
                    elif rel.kind == "Negate":
                        assert w[rel.i] == neg(w[rel.j])
                    else:
                        sym, sign = rel.const
                        assert w[rel.i] == (sym if sign > 0 else "-" + sym)


def test_oracle_agrees_exhaustively():
    for shape in admissible_shapes(16, "D"):
        ds = diagrams_for_shape(*shape)
        for i, a in enumerate(ds):
            for b in ds[i:]:
                check = oracle_cross_check(a, b)
                assert check.ok, check.report()


def test_cross_check_report_flags_mismatch():
    a, c = parse_diagram("(1,2) |3 |4"), parse_diagram("|1 |2 (3,4)")
    check = oracle_cross_check(a, c)
    assert check.ok and "Empty" in check.report()
    check.ok = False
    assert check.report().startswith("MISMATCH")


@settings(max_examples=100)
@given(st.sampled_from(admissible_shapes(12, "D")).flatmap(
    lambda s: st.tuples(st.sampled_from(diagrams_for_shape(*s)), st.sampled_from(diagrams_for_shape(*s)))))
def test_convention_invariance(pair):
    a, b = pair
    r1, r2 = (solve(a, b, c) for c in CONVENTIONS)
    assert r1.consistent == r2.consistent
    if r1.consistent:
        assert r1.free == r2.free == intersection_type(a, b).circ


@pytest.mark.parametrize("text,expected", [
    ("(1,2) |3 |4", ["Fixed(3,e)", "Fixed(4,ie-f)", "Perp(1,2)"]),
    ("|1*", ["Fixed(1,e)"]),
    ("|1", ["Fixed(1,f)"]),
    ("|1 |2* (3,4)*", ["Fixed(1,e)", "Fixed(2,ie+f)", "Same(3,4)"]),
    ("|1 |2 |3*", ["Fixed(1,e)", "Fixed(2,e)", "Fixed(3,e+f)"]),
    ("(1,2) |3*", ["Fixed(3,e)", "Perp(1,2)"]),
])
def test_translate_to_p1(text, expected):
    assert _strs(translate_to_p1(parse_diagram(text))) == expected


def test_translation_is_local():
    """Each cup or ray maps to its relation independently of the rest."""
    a = parse_diagram("|1 |2 (3,4) (5,6)*")
    rels = {(r.i, r.j): r.kind for r in translate_to_p1(a) if r.kind != "Fixed"}
    assert rels == {(3, 4): "Perp", (5, 6): "Same"}


def test_relation_holds():
    rels = translate_to_p1(parse_diagram("(1,2) |3 |4"))
    ell = ProjLine(1, 2)
    good = (ell, ell.perp(), LINE_E, ProjLine(I, -1))
    assert all(r.holds(good) for r in rels)
    bad = (ell, ell, LINE_E, LINE_F)
    assert not all(r.holds(bad) for r in rels)


def test_flip_dot_relations():
    a = parse_diagram("(1,2) |3 |4")
    assert _strs(flip_dot_relations(a, 1)) == ["Fixed(3,e)", "Fixed(4,ie-f)", "Same(1,2)"]
    assert _strs(flip_dot_relations(a, 4)) == ["Fixed(3,e)", "Fixed(4,ie+f)", "Perp(1,2)"]
    assert _strs(flip_dot_relations(parse_diagram("|1"), 1)) == ["Fixed(1,e)"]
