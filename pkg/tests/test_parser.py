import random
from pathlib import Path

import pytest
import randgen
from hypothesis import given
from hypothesis import strategies as st

from polydescent.arith import GF, Q
from polydescent.errors import ParseError
from polydescent.parser import (
    load_problem,
    parse_polynomial,
    parse_problem,
    parse_problem_source,
    parse_rational_function,
    render_problem,
    tokenize,
)
from polydescent.poly import PolyRing

FIXTURES = sorted((Path(__file__).parent / "fixtures").glob("*.dp"))

SYM_TEXT = "field Q\nsource vars x y\ntarget vars u v\nphi: u = x + y, v = x*y\nf: x^2 + y^2"
R = PolyRing(Q, ("x", "y"))


def error_at(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_problem(text)
    err = info.value
    assert (err.line, err.column) == (line, column), str(err)
    assert fragment in err.message
    assert str(err).startswith(f"line {line}, column {column}: ")


# problem files


def test_parse_examples():
    prob = parse_problem(SYM_TEXT)
    assert prob.field == Q and prob.source == ("x", "y") and prob.target == ("u", "v")
    assert [str(p) for p in prob.phi] == ["x + y", "x*y"]
    assert [str(p) for p in prob.f] == ["x^2 + y^2"]
    assert prob.ideal == ()
    frob = parse_problem("field Fp 5\nsource vars t\ntarget vars y\nphi: y = t^5\nf: t")
    assert frob.field == GF(5) and str(frob.phi[0]) == "t^5"
    error_at("field Fp 4\nsource vars t\ntarget vars y\nphi: y = t^5\nf: t", 1, 10, "4 is not prime")


def test_phi_assignments_follow_target_order():
    prob = parse_problem("field Q\nsource vars x y\ntarget vars u v\nphi: v = x*y, u = x + y\nf: x")
    assert [str(p) for p in prob.phi] == ["x + y", "x*y"]


def test_comments_blank_lines_and_ideal():
    text = """
    # a comment line
    field Q   # trailing comment
    source vars x y

    target vars u
    X ideal: x^2 + y^2 - 1
    phi: u = x
    f: y^2, (x + 1)*(x - 1)
    """
    src = parse_problem_source(text)
    assert [str(g) for g in src.problem.ideal] == ["x^2 + y^2 - 1"]
    assert [str(p) for p in src.problem.f] == ["y^2", "x^2 - 1"]
    assert src.locations[("f", 1)] == (9, 13)
    assert src.locations[("phi", 0)] == (8, 14)


def test_fractions_and_prime_field_coefficients():
    assert str(parse_problem(SYM_TEXT.replace("x^2 + y^2", "1/2*x - 3/4")).f[0]) == "1/2*x - 3/4"
    # a/b is read as a times the inverse of b modulo p
    prob = parse_problem("field Fp 7\nsource vars t\ntarget vars y\nphi: y = t\nf: 1/3*t + 8")
    assert str(prob.f[0]) == "5*t + 1"
    error_at("field Fp 7\nsource vars t\ntarget vars y\nphi: y = t\nf: 1/7*t", 5, 6, "not reducible mod 7")


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        (SYM_TEXT.replace("x^2 + y^2", "x^2 + z"), 5, 10, "unknown variable 'z'"),
        (SYM_TEXT.replace("x*y", "x**y"), 4, 23, "found '*'"),
        (SYM_TEXT.replace("x^2", "x^-2"), 5, 6, "exponent must be a non-negative integer"),
        (SYM_TEXT.replace("x^2 + y^2", "(x + y"), 5, 10, "')'"),
        (SYM_TEXT.replace("x^2 + y^2", "x $ y"), 5, 6, "unexpected character '$'"),
        (SYM_TEXT + "\nf: x", 6, 1, "duplicate section 'f'"),
        (SYM_TEXT.replace("phi: u = x + y, v = x*y\n", ""), 4, 1, "missing required section 'phi'"),
        (SYM_TEXT.replace("field Q", "fields Q"), 1, 1, "unknown section"),
        (SYM_TEXT.replace("field Q", "field R"), 1, 6, "expected 'field Q'"),
        (SYM_TEXT.replace("v = x*y", "w = x*y"), 4, 17, "'w' is not a target variable"),
        (SYM_TEXT.replace("v = x*y", "u = x*y"), 4, 17, "assigned twice"),
        (SYM_TEXT.replace(", v = x*y", ""), 4, 5, "no value for target variable 'v'"),
        (SYM_TEXT.replace("target vars u v", "target vars u x"), 3, 15, "both a source and a target"),
        (SYM_TEXT.replace("source vars x y", "source vars x x"), 2, 15, "listed twice"),
        (SYM_TEXT.replace("f: x^2 + y^2", "f: x^2,"), 5, 8, "empty entry"),
        (SYM_TEXT.replace("x^2 + y^2", "x y"), 5, 6, "unexpected 'y'"),
    ],
)
def test_errors_carry_locations(text, line, column, fragment):
    error_at(text, line, column, fragment)


def test_unknown_variable_in_ideal():
    error_at(SYM_TEXT + "\nX ideal: q - 1", 6, 10, "unknown variable 'q'")


# round trips


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    src = load_problem(str(path))
    text = render_problem(src.problem)
    assert parse_problem(text) == src.problem
    assert render_problem(parse_problem(text)) == text


def test_random_problem_round_trip():
    rng = random.Random(2)
    for _ in range(30):
        field = rng.choice([Q, GF(2), GF(7)])
        prob = randgen.random_monomial_problem(rng, field)
        assert parse_problem(render_problem(prob)) == prob


@given(st.integers(-50, 50), st.integers(1, 30), st.integers(0, 4))
def test_polynomial_round_trip(a, b, e):
    p = parse_polynomial(f"({a}/{b})*x^{e}*y - {b}x + 1", R)
    assert parse_polynomial(str(p), R) == p


def test_rational_function_round_trip_and_division():
    S = PolyRing(Q, ("u", "v"))
    r = parse_rational_function("(u^2 - v^2)/(u - v) + 1/v", S)
    assert str(r) == "(u*v + v^2 + 1) / (v)"
    assert parse_rational_function(str(r), S) == r
    with pytest.raises(ParseError):
        parse_rational_function("u/(v - v)", S)


def test_polynomial_division_must_be_by_a_constant():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x/y", R)
    assert info.value.column == 3
    assert str(parse_polynomial("(x + y)/2", R)) == "1/2*x + 1/2*y"


def test_implicit_multiplication_only_after_numbers():
    assert str(parse_polynomial("3x^2", R)) == "3*x^2"
    for text in ("2(x + 1)", "x(y)", "x y"):
        with pytest.raises(ParseError):
            parse_polynomial(text, R)


def test_tokenize_columns():
    toks = tokenize("  u = x^2", line=3, column=5)
    assert [(t.kind, t.text, t.column) for t in toks] == [
        ("name", "u", 7),
        ("op", "=", 9),
        ("name", "x", 11),
        ("op", "^", 12),
        ("num", "2", 13),
        ("end", "", 14),
    ]
    assert all(t.line == 3 for t in toks)
