"""
Problem files and polynomial expressions.

A problem file is line oriented::

    # symmetric functions
    field Q
    source vars x y
    target vars u v
    phi: u = x + y, v = x*y
    f: x^2 + y^2

``field Fp 5`` selects a prime field, and an optional ``X ideal: g1, g2``
line cuts X out of affine space.  Expressions use integers, ``a/b``,
variables, ``+ - * ^`` and parentheses.  ``*`` may be left out only between
a number and what follows it (``3x^2``).  Every error names the line and
column where it was detected.
"""

from __future__ import annotations

import re
from collections.abc import Callable
from dataclasses import dataclass, field

from .arith import FieldSpec, is_prime
from .descent import DescentProblem
from .errors import ParseError, UsageError
from .poly import Polynomial, PolyRing, render_polynomial
from .ratfunc import RationalFunction

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),=]))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op" or "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list:
    """Split one line of expression text; ``column`` is where ``text`` starts."""
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column + pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), line, column + start))
        pos = m.end()
    tokens.append(Token("end", "", line, column + len(text)))
    return tokens


class _ExpressionParser:
    """Recursive descent over a token list.

    ``ring`` only needs ``from_int`` and ``gen``, so the same grammar yields
    polynomials or rational functions.
    """

    def __init__(self, tokens: list, ring, divide: Callable):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.divide = divide

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text or tok.kind != "op":
            raise ParseError(f"expected {text!r}, found {_describe(tok)}", tok.line, tok.column)
        return tok

    def expression(self):
        value = self.term()
        while self.peek.kind == "op" and self.peek.text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek
            if tok.kind == "op" and tok.text == "*":
                self.take()
                value = value * self.unary()
            elif tok.kind == "op" and tok.text == "/":
                self.take()
                divisor_tok = self.peek
                value = self.divide(value, self.unary(), divisor_tok)
            else:
                return value

    def unary(self):
        tok = self.peek
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            value = self.unary()
            return -value if tok.text == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek.kind == "op" and self.peek.text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "num":
                raise ParseError(f"exponent must be a non-negative integer, found {_describe(tok)}", tok.line, tok.column)
            base = base ** int(tok.text)
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            value = self.ring.from_int(int(tok.text))
            nxt = self.peek
            # coefficient times monomial: 3x, 3x^2, 3x*y
            if nxt.kind == "name":
                value = value * self.power()
            return value
        if tok.kind == "name":
            try:
                return self.ring.gen(tok.text)
            except UsageError:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.column) from None
        if tok.kind == "op" and tok.text == "(":
            value = self.expression()
            self.expect(")")
            return value
        raise ParseError(f"expected a number, variable or '(', found {_describe(tok)}", tok.line, tok.column)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


def _polynomial_division(ring: PolyRing):
    field = ring.field

    def divide(value: Polynomial, divisor: Polynomial, tok: Token) -> Polynomial:
        if not divisor.is_constant():
            raise ParseError(f"division by the non-constant polynomial {divisor}", tok.line, tok.column)
        c = divisor.constant_value() if not divisor.is_zero() else field.zero()
        if field.is_zero(c):
            if field.characteristic:
                raise ParseError(f"coefficient not reducible mod {field.characteristic}: divisor is 0", tok.line, tok.column)
            raise ParseError("division by zero", tok.line, tok.column)
        return value.scale(field.inv(c))

    return divide


def _rational_division(value: RationalFunction, divisor: RationalFunction, tok: Token) -> RationalFunction:
    if divisor.num.is_zero():
        field = divisor.ring.field
        if field.characteristic and divisor.is_constant():
            raise ParseError(f"coefficient not reducible mod {field.characteristic}: divisor is 0", tok.line, tok.column)
        raise ParseError("division by zero", tok.line, tok.column)
    return value / divisor


def _parse_tokens(tokens: list, ring, divide: Callable):
    parser = _ExpressionParser(tokens, ring, divide)
    value = parser.expression()
    tok = parser.peek
    if tok.kind != "end":
        raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column)
    return value


@dataclass(frozen=True)
class _RationalRingView:
    """Ring-like adapter producing rational functions for the expression parser."""

    ring: PolyRing

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction(self.ring.from_int(n))

    def gen(self, name: str) -> RationalFunction:
        return RationalFunction(self.ring.gen(name))


def parse_polynomial(text: str, ring: PolyRing, line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``text`` as a polynomial of ``ring``; division only by nonzero constants."""
    return _parse_tokens(tokenize(text, line, column), ring, _polynomial_division(ring))


def parse_rational_function(text: str, ring: PolyRing, line: int = 1, column: int = 1) -> RationalFunction:
    """Parse ``text`` as an element of the fraction field of ``ring``."""
    return _parse_tokens(tokenize(text, line, column), _RationalRingView(ring), _rational_division)


# ---------------------------------------------------------------------------
# problem files

SECTIONS = ("field", "source vars", "target vars", "X ideal", "phi", "f")
REQUIRED = ("field", "source vars", "target vars", "phi", "f")
_HEADER = re.compile(r"(field|source vars|target vars|X ideal\s*:|phi\s*:|f\s*:)")


@dataclass(frozen=True)
class _Section:
    name: str
    body: str
    line: int
    column: int  # column where ``body`` starts


@dataclass(frozen=True)
class ProblemSource:
    """A parsed problem file together with where each piece came from.

    ``locations`` maps keys such as ``("phi", 0)`` or ``("f", 1)`` to the
    (line, column) of the corresponding expression.
    """

    text: str
    problem: DescentProblem
    locations: dict = field(default_factory=dict, compare=False, hash=False)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _sections(text: str) -> dict:
    found: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.lstrip()
        if not stripped.strip():
            continue
        indent = len(line) - len(stripped)
        m = _HEADER.match(stripped)
        if m is None:
            word = stripped.split()[0]
            raise ParseError(f"unknown section {word!r}; expected one of {', '.join(SECTIONS)}", lineno, indent + 1)
        name = re.sub(r"\s*:$", "", m.group(1))
        if name in ("field", "source vars", "target vars") and m.end() < len(stripped) and not stripped[m.end()].isspace():
            raise ParseError(f"unknown section {stripped.split()[0]!r}", lineno, indent + 1)
        if name in found:
            first = found[name].line
            raise ParseError(f"duplicate section {name!r} (first given on line {first})", lineno, indent + 1)
        body = stripped[m.end() :]
        found[name] = _Section(name, body, lineno, indent + m.end() + 1)
    return found


def _split_top_level(section: _Section) -> list:
    """Split a section body at commas outside parentheses: [(text, column)]."""
    parts, depth, start = [], 0, 0
    body = section.body
    for k, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((body[start:k], section.column + start))
            start = k + 1
    parts.append((body[start:], section.column + start))
    for text, col in parts:
        if not text.strip():
            raise ParseError(f"empty entry in section {section.name!r}", section.line, col)
    return parts


def _parse_field(section: _Section) -> FieldSpec:
    words = section.body.split()
    if words == ["Q"]:
        return FieldSpec(0)
    if len(words) == 2 and words[0] == "Fp":
        col = section.column + section.body.index(words[1])
        if not words[1].isdigit():
            raise ParseError(f"field characteristic must be a prime number, got {words[1]!r}", section.line, col)
        p = int(words[1])
        if not is_prime(p):
            raise ParseError(f"{p} is not prime", section.line, col)
        return FieldSpec(p)
    raise ParseError(f"expected 'field Q' or 'field Fp <prime>', got 'field{section.body}'", section.line, section.column)


def _parse_names(section: _Section) -> tuple:
    names = []
    for m in re.finditer(r"\S+", section.body):
        word, col = m.group(), section.column + m.start()
        if not _NAME.match(word):
            raise ParseError(f"invalid variable name {word!r}", section.line, col)
        if word in names:
            raise ParseError(f"variable {word!r} listed twice", section.line, col)
        names.append(word)
    if not names:
        raise ParseError(f"section {section.name!r} lists no variables", section.line, section.column)
    return tuple(names)


def _missing(name: str, text: str) -> ParseError:
    last = max(1, len(text.splitlines()))
    return ParseError(f"missing required section {name!r}", last, 1)


def parse_problem_source(text: str) -> ProblemSource:
    """Parse a problem file, keeping the source location of every expression."""
    sections = _sections(text)
    for name in REQUIRED:
        if name not in sections:
            raise _missing(name, text)
    k = _parse_field(sections["field"])
    source = _parse_names(sections["source vars"])
    target = _parse_names(sections["target vars"])
    clash = [v for v in target if v in source]
    if clash:
        sec = sections["target vars"]
        col = sec.column + sec.body.index(clash[0])
        raise ParseError(f"variable {clash[0]!r} is both a source and a target variable", sec.line, col)
    ring = PolyRing(k, source)
    locations = {}

    def polys(name: str) -> tuple:
        sec = sections[name]
        out = []
        for i, (chunk, col) in enumerate(_split_top_level(sec)):
            locations[(name, i)] = (sec.line, col + len(chunk) - len(chunk.lstrip()))
            out.append(parse_polynomial(chunk, ring, sec.line, col))
        return tuple(out)

    ideal = polys("X ideal") if "X ideal" in sections else ()

    sec = sections["phi"]
    assigned: dict = {}
    for chunk, col in _split_top_level(sec):
        tokens = tokenize(chunk, sec.line, col)
        head = tokens[0]
        if head.kind != "name" or len(tokens) < 3 or tokens[1].text != "=":
            raise ParseError("expected '<target variable> = <polynomial>'", head.line, head.column)
        if head.text not in target:
            raise ParseError(f"{head.text!r} is not a target variable", head.line, head.column)
        if head.text in assigned:
            raise ParseError(f"target variable {head.text!r} assigned twice", head.line, head.column)
        rhs = tokens[2:]
        locations[("phi", target.index(head.text))] = (rhs[0].line, rhs[0].column)
        assigned[head.text] = _parse_tokens(rhs, ring, _polynomial_division(ring))
    unassigned = [v for v in target if v not in assigned]
    if unassigned:
        raise ParseError(f"phi gives no value for target variable {unassigned[0]!r}", sec.line, sec.column)
    phi = tuple(assigned[v] for v in target)

    f = polys("f")
    try:
        problem = DescentProblem(k, source, target, phi, f, ideal)
    except UsageError as exc:
        raise ParseError(str(exc), sections["f"].line, sections["f"].column) from None
    return ProblemSource(text, problem, locations)


def parse_problem(text: str) -> DescentProblem:
    return parse_problem_source(text).problem


def render_problem(problem: DescentProblem) -> str:
    """Canonical problem-file text; parsing it gives back ``problem``."""
    k = problem.field
    lines = ["field Q" if k.characteristic == 0 else f"field Fp {k.characteristic}"]
    lines.append("source vars " + " ".join(problem.source))
    lines.append("target vars " + " ".join(problem.target))
    if problem.ideal:
        lines.append("X ideal: " + ", ".join(render_polynomial(g) for g in problem.ideal))
    lines.append("phi: " + ", ".join(f"{y} = {render_polynomial(p)}" for y, p in zip(problem.target, problem.phi)))
    lines.append("f: " + ", ".join(render_polynomial(p) for p in problem.f))
    return "\n".join(lines) + "\n"


def load_problem(path: str) -> ProblemSource:
    with open(path, encoding="utf-8") as fh:
        return parse_problem_source(fh.read())

