"""
Descent of a polynomial map f through a dominant polynomial map phi.

Given X = V(P) in affine n-space, phi: X -> A^m and f: X -> A^r, decide
whether f factors through phi, and how:

* ``regular``   -- f = h(phi) with h a polynomial map,
* ``rational``  -- f = h(phi) with h a rational map,
* ``frobenius`` -- in characteristic p, f^(p^N) = h(phi) componentwise for
  some N >= 1 (coordinatewise p^N-th power is the relative Frobenius over a
  prime field),
* ``none``      -- some component is not purely inseparable over k(phi).

Everything is read off the minimal polynomial of each component of f over
the function field k(Y1..Ym), computed as the generator of an elimination
ideal over k(Y) (or, equivalently and faster, over k[T, Y]).  A minimal polynomial of degree 1 gives a rational witness;
one of shape T^(p^N) - c gives a Frobenius witness; anything else (a
separable factor of degree >= 2, or no algebraic relation at all) shows f
separates points of the generic fibre.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .arith import FieldSpec
from .errors import UsageError
from .groebner import GroebnerBasis, buchberger, normal_form, self_check_enabled
from .poly import GREVLEX, Polynomial, PolyRing, block_order, exact_quotient
from .ratfunc import RationalFunction, RationalFunctionField, lcm_all, multivariate_gcd


@dataclass(frozen=True)
class DescentProblem:
    """X = V(ideal) in k^n, phi: X -> A^m, f: X -> A^r, all polynomial."""

    field: FieldSpec
    source: tuple
    target: tuple
    phi: tuple
    f: tuple
    ideal: tuple = ()

    def __post_init__(self):
        for name in ("source", "target", "phi", "f", "ideal"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.source or not self.target or not self.f:
            raise UsageError("a problem needs source variables, target variables and f")
        if len(self.phi) != len(self.target):
            raise UsageError(f"phi has {len(self.phi)} components but there are {len(self.target)} target variables")
        clash = set(self.source) & set(self.target)
        if clash:
            raise UsageError(f"variables {sorted(clash)} are both source and target variables")
        ring = self.source_ring
        for p in self.phi + self.f + self.ideal:
            if p.ring != ring:
                raise UsageError(f"{p} is not a polynomial in {ring}")

    @property
    def source_ring(self) -> PolyRing:
        return PolyRing(self.field, self.source)

    @property
    def target_ring(self) -> PolyRing:
        return PolyRing(self.field, self.target)

    @property
    def graph_ring(self) -> PolyRing:
        return PolyRing(self.field, self.source + self.target)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def fresh_name(self, base: str = "T") -> str:
        taken = set(self.source) | set(self.target)
        name, k = base, 0
        while name in taken:
            name, k = f"{base}{k}", k + 1
        return name


class DescentKind(enum.Enum):
    REGULAR = "regular"
    RATIONAL = "rational"
    FROBENIUS = "frobenius"
    NONE = "none"


@dataclass(frozen=True)
class MinimalPolynomial:
    """Monic minimal polynomial over k(Y), constant coefficient first.

    ``coefficients is None`` encodes the zero elimination ideal: the
    component is transcendental over k(phi).
    """

    coefficients: tuple | None
    ring: PolyRing
    variable: str = "T"

    @property
    def is_zero_ideal(self) -> bool:
        return self.coefficients is None

    @property
    def degree(self) -> int | None:
        return None if self.coefficients is None else len(self.coefficients) - 1

    def coefficient(self, k: int) -> RationalFunction:
        return self.coefficients[k]

    def display_ring(self) -> PolyRing:
        return PolyRing(self.ring.field, (self.variable,) + self.ring.names)

    def as_rational_function(self) -> RationalFunction:
        """The polynomial as an element of k(T, Y1, ..., Ym)."""
        ring = self.display_ring()
        positions = range(1, ring.nvars)
        t = ring.gen(0)
        total = RationalFunction(ring.zero)
        for k, c in enumerate(self.coefficients or ()):
            if c.is_zero():
                continue
            num = c.num.embed(ring, positions) * t**k
            total = total + RationalFunction(num, c.den.embed(ring, positions))
        return total

    def __str__(self):
        if self.coefficients is None:
            return "0"
        return str(self.as_rational_function())


@dataclass(frozen=True)
class ComponentDescent:
    kind: DescentKind
    N: int = 0
    h: RationalFunction | None = None


@dataclass(frozen=True)
class DescentResult:
    """Outcome of :func:`descend_map`.

    ``h`` is empty for ``NONE``; otherwise it holds one normalized rational
    function per component of f.  For ``NONE``, ``failed_component`` points
    at the minimal polynomial that certifies the failure.
    ``nonregular_locus`` is set by :func:`regular_promotion` when some
    denominator is not constant.
    """

    kind: DescentKind
    N: int
    h: tuple
    minimal_polynomials: tuple
    failed_component: int | None = None
    nonregular_locus: Polynomial | None = field(default=None, compare=True)

    @property
    def certificate(self) -> MinimalPolynomial | None:
        if self.failed_component is None:
            return None
        return self.minimal_polynomials[self.failed_component]

    @property
    def polynomial_h(self) -> tuple | None:
        if self.kind is DescentKind.NONE or not all(c.is_polynomial() for c in self.h):
            return None
        return tuple(c.num for c in self.h)


# ---------------------------------------------------------------------------
# graph ideal in k[x, Y]


def _graph_generators(problem: DescentProblem) -> list:
    ring = problem.graph_ring
    n = len(problem.source)
    xs = range(n)
    gens = [p.embed(ring, xs) for p in problem.ideal]
    gens += [ring.gen(n + i) - phi.embed(ring, xs) for i, phi in enumerate(problem.phi)]
    return gens


@lru_cache(maxsize=256)
def graph_basis(problem: DescentProblem) -> GroebnerBasis:
    """Groebner basis of P + (Yi - phi_i) in k[x, Y] under x >> Y."""
    return buchberger(_graph_generators(problem), block_order(range(len(problem.source))))


def image_relations(problem: DescentProblem) -> list:
    """Generators of the ideal of the closure of phi(X), as polynomials in Y."""
    n, m = len(problem.source), len(problem.target)
    target = problem.target_ring
    out = []
    for g in graph_basis(problem):
        if any(e for m_ in g.terms for e in m_[:n]):
            continue
        out.append(g.restrict(target, range(n, n + m)))
    return out


def dominance_check(problem: DescentProblem) -> bool:
    """True iff phi: X -> A^m is dominant (no polynomial relation on its image)."""
    return not image_relations(problem)


def _require_dominant(problem: DescentProblem):
    relations = image_relations(problem)
    if relations:
        shown = ", ".join(str(r) for r in relations[:3])
        raise UsageError(f"phi is not dominant: its image satisfies {shown}")


# ---------------------------------------------------------------------------
# generic fibre over k(Y)


def _fibre_generators(problem: DescentProblem, ring: PolyRing) -> list:
    """P + (phi_i - Y_i) with the Y_i as scalars of k(Y)."""
    K = ring.field
    n = len(problem.source)
    xs = range(n)
    lift = K.convert
    gens = [p.embed(ring, xs).map_coefficients(ring, lift) for p in problem.ideal]
    for i, phi in enumerate(problem.phi):
        g = phi.embed(ring, xs).map_coefficients(ring, lift)
        gens.append(g - ring.constant(K.gen(problem.target[i])))
    return gens


def _lift(problem: DescentProblem, p: Polynomial, ring: PolyRing) -> Polynomial:
    return p.embed(ring, range(len(problem.source))).map_coefficients(ring, ring.field.convert)


@lru_cache(maxsize=256)
def generic_fibre_basis(problem: DescentProblem) -> GroebnerBasis:
    """Groebner basis of the generic fibre ideal in k(Y)[x] (grevlex)."""
    K = RationalFunctionField(problem.target_ring)
    ring = PolyRing(K, problem.source)
    gens = _fibre_generators(problem, ring)
    return buchberger(gens, GREVLEX)


METHODS = ("auto", "graph", "field")


@lru_cache(maxsize=256)
def minimal_polynomial(problem: DescentProblem, component: int, method: str = "auto") -> MinimalPolynomial:
    """Minimal polynomial of ``f[component]`` over k(Y).

    ``method="field"`` computes a Groebner basis of P + (phi_i - Y_i) +
    (T - f_c) with coefficients in k(Y), variables x1..xn, T and x >> T,
    and keeps the x-free generator.

    ``method="graph"`` computes the same generator without rational
    coefficients: eliminate x from the ideal in k[x, T, Y], then take the
    gcd in k[T, Y] of the surviving generators.  Localizing at k[Y] - {0}
    commutes with elimination, so this gcd, made monic in T, is the
    generator over k(Y).  Much faster when the generic fibre is large.

    ``method="auto"`` first tries subalgebra membership (a polynomial
    witness means the minimal polynomial is T - H) and otherwise uses the
    graph route.
    """
    _require_dominant(problem)
    if not 0 <= component < len(problem.f):
        raise UsageError(f"component {component} out of range for {len(problem.f)} components")
    if method not in METHODS:
        raise UsageError(f"unknown minimal polynomial method {method!r}; expected one of {', '.join(METHODS)}")
    name = problem.fresh_name()
    mu = None
    if method == "auto":
        H = subalgebra_membership(problem, component)
        if H is not None:
            mu = MinimalPolynomial((RationalFunction(-H), RationalFunction(problem.target_ring.one)), problem.target_ring, name)
    if mu is None:
        mu = _minpoly_over_field(problem, component, name) if method == "field" else _minpoly_graph(problem, component, name)
    if self_check_enabled():
        assert cleared_minimal_polynomial_vanishes(problem, component, mu), f"{mu} does not vanish at f"
    return mu


def cleared_minimal_polynomial_vanishes(problem: DescentProblem, component: int, mu: MinimalPolynomial) -> bool:
    """Check D*mu(T = f, Y = phi) lies in P, D clearing the denominators of mu.

    For prime P this is equivalent to :func:`minimal_polynomial_vanishes`
    and needs no arithmetic over k(Y).
    """
    if mu.is_zero_ideal:
        return True
    from .verify import variety_basis

    D = lcm_all([c.den for c in mu.coefficients])
    ring = problem.source_ring
    fc = problem.f[component]
    value = ring.zero
    for c in reversed(mu.coefficients):
        value = value * fc + exact_quotient(c.num * D, c.den).compose(problem.phi, ring)
    basis = variety_basis(problem)
    return (normal_form(value, basis) if basis is not None else value).is_zero()


def _minpoly_over_field(problem: DescentProblem, component: int, name: str) -> MinimalPolynomial:
    K = RationalFunctionField(problem.target_ring)
    n = len(problem.source)
    ring = PolyRing(K, problem.source + (name,))
    t = ring.gen(n)
    gens = _fibre_generators(problem, ring)
    gens.append(t - _lift(problem, problem.f[component], ring))
    gb = buchberger(gens, block_order(range(n)))
    eliminated = [g for g in gb if not any(e for m in g.terms for e in m[:n])]
    if not eliminated:
        return MinimalPolynomial(None, problem.target_ring, name)
    if len(eliminated) != 1 or eliminated[0].is_constant():
        raise AssertionError(f"elimination ideal in k(Y)[{name}] is not proper and principal: {eliminated}")
    g = eliminated[0]
    deg = g.degree(n)
    coeffs = tuple(g.terms.get((0,) * n + (k,), K.zero()) for k in range(deg + 1))
    return MinimalPolynomial(coeffs, problem.target_ring, name)


def _minpoly_graph(problem: DescentProblem, component: int, name: str) -> MinimalPolynomial:
    n, m = len(problem.source), len(problem.target)
    ring = PolyRing(problem.field, problem.source + (name,) + problem.target)
    xs = range(n)
    gens = [p.embed(ring, xs) for p in problem.ideal]
    gens += [ring.gen(n + 1 + i) - phi.embed(ring, xs) for i, phi in enumerate(problem.phi)]
    gens.append(ring.gen(n) - problem.f[component].embed(ring, xs))
    gb = buchberger(gens, block_order(xs))
    low = PolyRing(problem.field, (name,) + problem.target)
    eliminated = [g.restrict(low, range(n, n + 1 + m)) for g in gb if not any(e for mono in g.terms for e in mono[:n])]
    if not eliminated:
        return MinimalPolynomial(None, problem.target_ring, name)
    g = eliminated[0]
    for e in eliminated[1:]:
        if g.degree(0) == 1:
            break
        g = multivariate_gcd(g, e)
    deg = g.degree(0)
    if deg < 1:
        raise AssertionError(f"graph elimination left no relation in {name}: {eliminated}")
    target = problem.target_ring
    coeffs = [target.zero] * (deg + 1)
    for mono, c in g.terms.items():
        k = mono[0]
        coeffs[k] = coeffs[k] + target.monomial(mono[1:], c)
    lead = coeffs[deg]
    return MinimalPolynomial(tuple(RationalFunction(c, lead) for c in coeffs), target, name)


def minimal_polynomial_vanishes(problem: DescentProblem, component: int, mu: MinimalPolynomial) -> bool:
    """Check mu(f_c) lies in the generic fibre ideal (trivially true for the zero ideal)."""
    if mu.is_zero_ideal:
        return True
    gb = generic_fibre_basis(problem)
    ring = gb.ring
    fc = _lift(problem, problem.f[component], ring)
    value = ring.zero
    for c in reversed(mu.coefficients):
        value = value * fc + ring.constant(c)
    return normal_form(value, gb).is_zero()


# ---------------------------------------------------------------------------
# classification and assembly


def _p_power_exponent(d: int, p: int) -> int | None:
    """N with d == p**N (N >= 1), else None."""
    if p < 2 or d < p:
        return None
    N = 0
    while d % p == 0:
        d //= p
        N += 1
    return N if d == 1 else None


def classify_descent(mu: MinimalPolynomial, field: FieldSpec) -> ComponentDescent:
    if mu.is_zero_ideal:
        return ComponentDescent(DescentKind.NONE)
    coeffs = mu.coefficients
    d = len(coeffs) - 1
    if d == 1:
        return ComponentDescent(DescentKind.RATIONAL, 0, -coeffs[0])
    N = _p_power_exponent(d, field.characteristic)
    if N is not None and all(c.is_zero() for c in coeffs[1:d]):
        return ComponentDescent(DescentKind.FROBENIUS, N, -coeffs[0])
    return ComponentDescent(DescentKind.NONE)


def _locus(h: Sequence[RationalFunction]) -> Polynomial | None:
    dens = [c.den for c in h if not c.den.is_constant()]
    return lcm_all(dens) if dens else None


def descend_map(problem: DescentProblem) -> DescentResult:
    """Decide how (and whether) f factors through phi, with witness h and twist N."""
    _require_dominant(problem)
    p = problem.characteristic
    mus, parts = [], []
    # the first failing component is the certificate; later ones are not needed
    for i in range(len(problem.f)):
        mus.append(minimal_polynomial(problem, i))
        parts.append(classify_descent(mus[-1], problem.field))
        if parts[-1].kind is DescentKind.NONE:
            return DescentResult(DescentKind.NONE, 0, (), tuple(mus), failed_component=i)
    mus = tuple(mus)
    N = max(part.N for part in parts)
    if p == 0:
        assert N == 0, "characteristic 0 produced a Frobenius twist"
    h = tuple(part.h if part.N == N else part.h ** (p ** (N - part.N)) for part in parts)
    if N:
        kind = DescentKind.FROBENIUS
    elif all(c.is_polynomial() for c in h):
        kind = DescentKind.REGULAR
    else:
        kind = DescentKind.RATIONAL
    result = DescentResult(kind, N, h, mus)
    if self_check_enabled():
        from .verify import symbolic_certificate

        assert symbolic_certificate(problem, result), "descent witness fails its own identity"
    return result


def regular_promotion(result: DescentResult) -> DescentResult:
    """Promote h to a polynomial map when every denominator is constant.

    On affine space a rational function is regular everywhere exactly when
    its reduced denominator is constant.  Otherwise the result comes back
    unchanged apart from ``nonregular_locus``, the lcm of the denominators,
    whose zero set is where h fails to be defined.
    """
    if result.kind is DescentKind.NONE:
        raise UsageError("cannot promote a result without a witness")
    locus = _locus(result.h)
    if locus is None:
        kind = DescentKind.REGULAR if result.N == 0 else DescentKind.FROBENIUS
        return replace(result, kind=kind, nonregular_locus=None)
    return replace(result, nonregular_locus=locus)


def subalgebra_membership(problem: DescentProblem, component: int) -> Polynomial | None:
    """H in k[Y] with f_c = H(phi) mod P, if f_c lies in k[phi] + P.

    Tag-variable test: reduce f_c modulo the graph basis under x >> Y; the
    remainder is free of x exactly when such an H exists.
    """
    if not 0 <= component < len(problem.f):
        raise UsageError(f"component {component} out of range for {len(problem.f)} components")
    n, m = len(problem.source), len(problem.target)
    ring = problem.graph_ring
    r = normal_form(problem.f[component].embed(ring, range(n)), graph_basis(problem))
    if any(e for mono in r.terms for e in mono[:n]):
        return None
    return r.restrict(problem.target_ring, range(n, n + m))
