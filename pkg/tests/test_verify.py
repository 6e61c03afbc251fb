import dataclasses
import random

import pytest
import randgen

from polydescent.arith import GF
from polydescent.descent import DescentKind, descend_map
from polydescent.errors import UsageError
from polydescent.parser import parse_problem, parse_rational_function
from polydescent.verify import (
    EXHAUSTIVE,
    fibre_witness_search,
    frobenius_power,
    identity_residues,
    is_fibre_witness,
    sample_certificate,
    symbolic_certificate,
)


def problem(field, source, target, phi, f, ideal=""):
    text = f"field {field}\nsource vars {source}\ntarget vars {target}\nphi: {phi}\nf: {f}\n"
    if ideal:
        text += f"X ideal: {ideal}\n"
    return parse_problem(text)


def corrupt(prob, result, shift="1"):
    h = tuple(c + parse_rational_function(shift, prob.target_ring) for c in result.h)
    return dataclasses.replace(result, h=h)


SYM = problem("Q", "x y", "Y1 Y2", "Y1 = x + y, Y2 = x*y", "x^2 + y^2")


# symbolic certificate


def test_symbolic_examples():
    ident = problem("Q", "x y", "Y1 Y2", "Y1 = x, Y2 = y", "x^2*y - 7")
    assert symbolic_certificate(ident, descend_map(ident))
    r = descend_map(SYM)
    assert symbolic_certificate(SYM, r)
    assert not symbolic_certificate(SYM, corrupt(SYM, r))


def test_symbolic_residues_name_the_failure():
    r = descend_map(SYM)
    residues = identity_residues(SYM, corrupt(SYM, r, "Y1"))
    assert [str(p) for p in residues] == ["x + y"]


def test_symbolic_modulo_the_variety(fixture_problem):
    # y^2 = 1 - x^2 only holds on the circle
    circle = fixture_problem("circle.dp")
    r = descend_map(circle)
    assert symbolic_certificate(circle, r)
    plane = dataclasses.replace(circle, ideal=())
    assert not symbolic_certificate(plane, r)


def test_symbolic_rejects_bad_inputs(fixture_problem):
    with pytest.raises(UsageError):
        symbolic_certificate(SYM, descend_map(problem("Q", "x y", "Y1 Y2", "Y1 = x + y, Y2 = x*y", "x")))
    r = descend_map(SYM)
    with pytest.raises(UsageError):
        symbolic_certificate(SYM, dataclasses.replace(r, h=r.h * 2))


def test_frobenius_power_matches_repeated_multiplication():
    prob = problem("Fp 3", "x y", "Y1", "Y1 = x", "x")
    p = parse_rational_function("x*y + 2*x + 1", prob.source_ring).num
    assert frobenius_power(p, 2) == p**9
    assert frobenius_power(p, 0) == p


def test_twisted_results_certify(fixture_problem):
    for name in ("frobenius_p2.dp", "frobenius_p3.dp", "frobenius_p5.dp", "frobenius_sum_f3.dp", "mixed_char2.dp"):
        prob = fixture_problem(name)
        r = descend_map(prob)
        assert r.kind is DescentKind.FROBENIUS
        assert symbolic_certificate(prob, r)
        # the untwisted identity fails: f itself is not a function of phi
        assert not symbolic_certificate(prob, dataclasses.replace(r, N=0))


# sampling


def test_sample_examples(fixture_problem):
    prob = fixture_problem("frobenius_p5.dp")
    report = sample_certificate(prob, descend_map(prob), EXHAUSTIVE)
    assert (report.points_tested, report.points_skipped_denominator_zero, report.passed) == (5, 0, True)
    prob = fixture_problem("rational_xy_f5.dp")
    report = sample_certificate(prob, descend_map(prob), EXHAUSTIVE)
    assert (report.points_tested, report.points_skipped_denominator_zero) == (20, 5)
    assert report.verdict == "pass"


def test_sample_detects_corruption(fixture_problem):
    prob = fixture_problem("rational_xy_f5.dp")
    report = sample_certificate(prob, corrupt(prob, descend_map(prob)))
    assert report.verdict == "fail" and len(report.mismatches) == 20
    _, lhs, rhs = report.mismatches[0]
    assert lhs != rhs


def test_sample_budget_errors(fixture_problem):
    prob = fixture_problem("frobenius_p5.dp")
    r = descend_map(prob)
    for bad in (0, -3, "some"):
        with pytest.raises(UsageError):
            sample_certificate(prob, r, bad)
    with pytest.raises(UsageError):
        sample_certificate(SYM, descend_map(SYM), EXHAUSTIVE, box=-1)
    big = problem("Fp 101", "x y z", "Y1", "Y1 = x", "x")
    with pytest.raises(UsageError):
        sample_certificate(big, descend_map(big), EXHAUSTIVE)


def test_sample_is_seeded_and_counts_candidates():
    big = problem("Fp 101", "x y z", "Y1 Y2", "Y1 = x, Y2 = x*y", "y")
    r = descend_map(big)
    a = sample_certificate(big, r, 500, seed=4)
    assert a == sample_certificate(big, r, 500, seed=4)
    assert a.points_tested + a.points_skipped_denominator_zero == 500
    assert a.passed


def test_sample_char0_box():
    report = sample_certificate(SYM, descend_map(SYM), EXHAUSTIVE, box=3)
    assert report.points_tested == 49 and report.passed
    r = descend_map(problem("Q", "x y", "Y1 Y2", "Y1 = x, Y2 = x*y", "y"))
    report = sample_certificate(problem("Q", "x y", "Y1 Y2", "Y1 = x, Y2 = x*y", "y"), r, EXHAUSTIVE, box=2)
    assert (report.points_tested, report.points_skipped_denominator_zero) == (20, 5)


def test_sample_on_a_variety(fixture_problem):
    circle = fixture_problem("circle.dp")
    # integer points of the unit circle: (+-1, 0) and (0, +-1)
    report = sample_certificate(circle, descend_map(circle), EXHAUSTIVE, box=5)
    assert report.points_tested == 4 and report.passed


def test_sampling_never_contradicts_symbolic():
    rng = random.Random(21)
    for _ in range(30):
        field = rng.choice([GF(2), GF(3), GF(5), GF(7)])
        prob = randgen.random_problem(rng, field, max_degree=3, fibre_cap=4)
        r = descend_map(prob)
        if r.kind is DescentKind.NONE:
            continue
        assert symbolic_certificate(prob, r)
        assert sample_certificate(prob, r, EXHAUSTIVE).passed


# fibre witnesses


def test_witness_examples():
    prob = problem("Fp 5", "x y", "Y1 Y2", "Y1 = x + y, Y2 = x*y", "x")
    assert is_fibre_witness(prob, (1, 2), (2, 1))
    assert not is_fibre_witness(prob, (1, 2), (1, 2))
    assert not is_fibre_witness(prob, (1, 2), (2, 2))
    w = fibre_witness_search(prob)
    assert w is not None and is_fibre_witness(prob, w.first, w.second)
    assert w.phi_value == tuple(phi.evaluate(w.first) for phi in prob.phi)
    assert w.f_first != w.f_second
    ident = problem("Fp 5", "x y", "Y1 Y2", "Y1 = x, Y2 = y", "x*y + 1")
    assert fibre_witness_search(ident) is None
    assert fibre_witness_search(problem("Fp 5", "t", "Y1", "Y1 = t^5", "t")) is None


def test_witness_first_in_enumeration_order():
    # points are enumerated lexicographically; (0, 1) and (1, 0) share phi = (1, 0)
    prob = problem("Fp 5", "x y", "Y1 Y2", "Y1 = x + y, Y2 = x*y", "x")
    w = fibre_witness_search(prob)
    assert (w.first, w.second) == ((0, 1), (1, 0))


def test_witness_respects_the_variety():
    # on y = 0 the map (x, y) -> x is injective; without the ideal it is not
    prob = problem("Fp 3", "x y", "Y1", "Y1 = x", "y", ideal="y")
    assert fibre_witness_search(prob) is None
    assert not is_fibre_witness(prob, (0, 0), (0, 1))
    free = dataclasses.replace(prob, ideal=())
    assert fibre_witness_search(free) is not None


def test_witness_search_char0():
    prob = problem("Q", "x y", "Y1 Y2", "Y1 = x + y, Y2 = x*y", "x")
    w = fibre_witness_search(prob, EXHAUSTIVE, box=2)
    assert w is not None and is_fibre_witness(prob, w.first, w.second)


def test_witnesses_found_for_none_results_revalidate():
    rng = random.Random(8)
    found = 0
    for _ in range(40):
        prob = randgen.random_problem(rng, rng.choice([GF(3), GF(5)]), max_degree=3, fibre_cap=4)
        r = descend_map(prob)
        w = fibre_witness_search(prob)
        if w is not None:
            found += 1
            assert is_fibre_witness(prob, w.first, w.second)
            # a witness is only compatible with a descent where h is undefined
            if r.kind is not DescentKind.NONE:
                assert any(prob.field.is_zero(c.den.evaluate(w.phi_value)) for c in r.h)
    assert found >= 5


def test_witness_inside_the_nonregular_locus(fixture_problem):
    # f = y descends as Y2/Y1, yet the fibre over Y1 = 0 is a whole line
    prob = fixture_problem("rational_xy_f5.dp")
    w = fibre_witness_search(prob)
    assert w.phi_value == (0, 0) and w.first[0] == w.second[0] == 0
