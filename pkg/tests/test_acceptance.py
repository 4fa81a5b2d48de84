"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL criterion N: ...`` line (visible
with ``pytest -s`` or in the -v log) before asserting.
"""
import time

import pytest

from springer_cups.cups import diagrams_for_shape, intersection_graph, intersection_type, parse_diagram
from springer_cups.exact import I, Subspace, vadd, vscale
from springer_cups.spheres import CONVENTIONS, flip_dot_relations, oracle_cross_check, solve
from springer_cups.springer import (Flag, isotropy_propagation, make_form, spaltenstein_data,
                                    verify_component, verify_theorem2)
from springer_cups.tableaux import (Domino, Psi, Psi_inverse, SignedDominoTableau, admissible_shapes,
                                    enumerate_adt, enumerate_signed, enumerate_syt)

SHAPES_16 = admissible_shapes(16, "D")
SHAPES_12 = admissible_shapes(12, "D")


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_golden_counts(verdict):
    start = time.perf_counter()
    diagrams = diagrams_for_shape(5, 3)
    got = {
        "SYT(3,2)": len(enumerate_syt((3, 2))),
        "ADT_D(5,3)": len(enumerate_adt((5, 3), "D")),
        "ADT_C(4,2)": len(enumerate_adt((4, 2), "C")),
        "signed D(5,3)": len(enumerate_signed((5, 3), "D")),
        "signed C(4,2)": len(enumerate_signed((4, 2), "C")),
        "B(5,3)": len(diagrams),
        "B(5,3) even": sum(a.parity == "even" for a in diagrams),
        "B(5,3) odd": sum(a.parity == "odd" for a in diagrams),
    }
    want = {"SYT(3,2)": 5, "ADT_D(5,3)": 3, "ADT_C(4,2)": 3, "signed D(5,3)": 8,
            "signed C(4,2)": 4, "B(5,3)": 8, "B(5,3) even": 4, "B(5,3) odd": 4}
    listing = ["(1,2) |3 |4", "|1 (2,3) |4", "|1 |2 (3,4)", "|1 |2* (3,4)*",
               "(1,2) |3 |4*", "|1 (2,3) |4*", "|1 |2* (3,4)", "|1 |2 (3,4)*"]
    elapsed = time.perf_counter() - start
    ok = got == want and [str(a) for a in diagrams] == listing and elapsed < 1
    verdict(1, ok, f"{got} in {elapsed:.2f}s")


def test_criterion_2_bijections(verdict):
    start = time.perf_counter()
    bad = []
    for a, b in SHAPES_16:
        B = diagrams_for_shape(a, b)
        S = enumerate_signed((a, b), "D")
        if len(B) != len(S) or {Psi(T) for T in S} != set(B):
            bad.append(((a, b), "Psi image"))
        if any(Psi_inverse(Psi(T)) != T for T in S) or any(Psi(Psi_inverse(x)) != x for x in B):
            bad.append(((a, b), "round trip"))
        odd = [x for x in B if x.parity == "odd"]
        if len(odd) != len(enumerate_signed((a - 1, b - 1), "C")):
            bad.append(((a, b), "odd count"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    verdict(2, ok, f"{len(SHAPES_16)} shapes, problems {bad}, {elapsed:.1f}s")


def test_criterion_3_intersections(verdict):
    start = time.perf_counter()
    pairs, mismatches = 0, []
    for shape in SHAPES_16:
        ds = diagrams_for_shape(*shape)
        for i, a in enumerate(ds):
            for b in ds[i:]:
                pairs += 1
                check = oracle_cross_check(a, b)
                if not check.ok:
                    mismatches.append(check.report())
    diagrams = diagrams_for_shape(5, 3)
    g = intersection_graph(diagrams)
    stars = g.components() == [[0, 1, 2, 3], [4, 5, 6, 7]] and all(
        sorted(len(g.neighbours(v)) for v in comp) == [1, 1, 1, 3] for comp in g.components())
    a, b, c = diagrams[:3]
    point = str(intersection_type(a, b)) == "NonEmpty(0)" and all(
        solve(a, b, conv).consistent and solve(a, b, conv).free == 0 for conv in CONVENTIONS)
    empty = intersection_type(a, c).empty and not any(solve(a, c, conv).consistent for conv in CONVENTIONS)
    elapsed = time.perf_counter() - start
    ok = not mismatches and stars and point and empty and elapsed < 120
    verdict(3, ok, f"{pairs} pairs x {len(CONVENTIONS)} conventions, {len(mismatches)} mismatches, "
                   f"D4 stars {stars}, a.b point {point}, a.c empty {empty}, {elapsed:.1f}s")


def test_criterion_4_spaltenstein_golden(verdict):
    form = make_form("D", 8, 3)
    A = form.ambient
    vs = [A.e(1), A.f(1), A.e(2), vadd(vscale(I, A.e(3)), A.f(2))]
    flag = Flag([Subspace(A.dim, vs[:i]) for i in range(1, 5)])
    data = spaltenstein_data(flag, form)
    expected = SignedDominoTableau((5, 3), "D", (
        Domino(4, 1, 1, True), Domino(3, 1, 2, False), Domino(2, 2, 2, False), Domino(1, 1, 4, False)))
    seq = data.shapes[1:]
    ok = seq == [(1, 1), (3, 1), (3, 3), (5, 3)] and data.tableau == expected
    verdict(4, ok, f"Jordan types {seq}, tableau\n{data.tableau}")


def _run_all(fn, diagrams):
    failures, checks = [], 0
    for a in diagrams:
        rep = fn(a, 5, 1)
        checks += rep.checks
        failures += rep.failures
    return checks, failures


def test_criterion_5_theorem_1(verdict):
    start = time.perf_counter()
    diagrams = [a for s in SHAPES_12 for a in diagrams_for_shape(*s)]
    checks, failures = _run_all(verify_component, diagrams)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    verdict(5, ok, f"{len(diagrams)} diagrams, 5 samples each, {checks} checks, "
                   f"{len(failures)} failures, {elapsed:.1f}s")


def test_criterion_6_theorem_2(verdict):
    start = time.perf_counter()
    diagrams = [a for s in SHAPES_12 for a in diagrams_for_shape(*s) if a.parity == "odd"]
    checks, failures = _run_all(verify_theorem2, diagrams)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    verdict(6, ok, f"{len(diagrams)} odd diagrams, 5 samples each, {checks} checks, "
                   f"{len(failures)} failures, {elapsed:.1f}s")


def test_criterion_7_isotropy_propagation(verdict):
    start = time.perf_counter()
    checks, failures, skipped = 0, [], []
    for a, b in SHAPES_12:
        for flavor in ("D", "C"):
            rep = isotropy_propagation(a + b, b, flavor, instances=100, seed=1)
            checks += rep.checks
            failures += rep.failures
            if rep.notes:
                skipped.append(f"{flavor}({a},{b})")
    elapsed = time.perf_counter() - start
    ok = not failures and checks > 0
    verdict(7, ok, f"{checks} checks, {len(failures)} failures, {elapsed:.1f}s; "
                   f"vacuous (no smaller shape): {', '.join(skipped)}")


def test_criterion_8_negative_controls(verdict):
    diagrams = diagrams_for_shape(5, 3)
    form = make_form("D", 8, 3)
    bad_form = form.tampered(0, 0)
    gram_failures = [f for a in diagrams for f in verify_component(a, 2, 1, form=bad_form).failures]

    a = parse_diagram("(1,2) |3 |4")
    bad_dot = verify_component(a, 2, 1, relations=flip_dot_relations(a, 1))
    control = verify_component(a, 2, 1)
    report = gram_failures[0].to_json() if gram_failures else None
    ok = bool(gram_failures) and not bad_dot.ok and control.ok and report["flag"] is not None
    verdict(8, ok, f"tampered Gram entry: {len(gram_failures)} failures, first {report and report['check']}; "
                   f"flipped dot: {len(bad_dot.failures)} failures ({bad_dot.failures[0].check if bad_dot.failures else '-'}); "
                   f"untouched control passes {control.ok}")
