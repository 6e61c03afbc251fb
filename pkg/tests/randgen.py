"""Seeded generators of random polynomials and descent problems for the tests."""

from __future__ import annotations

import math
import random

from polydescent.descent import DescentProblem, dominance_check
from polydescent.poly import Polynomial, PolyRing

SOURCE = ("x", "y", "z")
TARGET = ("u", "v", "w")
COEFFS = (-3, -2, -1, 1, 2, 3)


def random_polynomial(rng: random.Random, ring: PolyRing, max_degree: int = 4, max_terms: int = 2) -> Polynomial:
    """Sparse polynomial: up to ``max_terms`` monomials of degree 1..max_degree plus maybe a constant."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(1, max_degree)):
            exps[rng.randrange(ring.nvars)] += 1
        terms[tuple(exps)] = ring.field.from_int(rng.choice(COEFFS))
    if rng.random() < 0.5:
        terms[(0,) * ring.nvars] = ring.field.from_int(rng.randint(-3, 3))
    return ring.from_dict(terms)


def random_dominant_phi(rng: random.Random, ring: PolyRing, m: int, max_degree: int = 4, max_terms: int = 2, fibre_cap: int = 6):
    """Random phi with m components, dominant, with product of degrees at most ``fibre_cap``.

    The degree product bounds the size of a finite generic fibre, which is
    what drives the cost of the minimal-polynomial computation.
    """
    target = TARGET[:m]
    while True:
        phi = tuple(random_polynomial(rng, ring, max_degree, max_terms) for _ in range(m))
        if math.prod(p.degree() for p in phi) > fibre_cap:
            continue
        probe = DescentProblem(ring.field, ring.names, target, phi, (ring.gen(0),))
        if dominance_check(probe):
            return phi


def random_problem(rng: random.Random, field, max_degree: int = 4, max_terms: int = 2, fibre_cap: int = 6) -> DescentProblem:
    """Random dominant phi and random f (one or two components), n and m at most 3."""
    n = rng.randint(1, 3)
    m = rng.randint(1, n)
    ring = PolyRing(field, SOURCE[:n])
    phi = random_dominant_phi(rng, ring, m, max_degree, max_terms, fibre_cap)
    f = tuple(random_polynomial(rng, ring, max_degree, max_terms) for _ in range(rng.randint(1, 2)))
    return DescentProblem(field, ring.names, TARGET[:m], phi, f)


def random_monomial_problem(rng: random.Random, field) -> DescentProblem:
    """phi and f made of single monomials; f then often descends only rationally."""
    n = rng.randint(1, 3)
    m = rng.randint(1, n)
    ring = PolyRing(field, SOURCE[:n])

    def mono(max_degree):
        exps = [0] * n
        for _ in range(rng.randint(1, max_degree)):
            exps[rng.randrange(n)] += 1
        return ring.monomial(tuple(exps), field.from_int(rng.choice(COEFFS)))

    while True:
        phi = tuple(mono(3) for _ in range(m))
        f = tuple(mono(4) for _ in range(rng.randint(1, 2)))
        problem = DescentProblem(field, ring.names, TARGET[:m], phi, f)
        if dominance_check(problem):
            return problem


def random_composite_problem(rng: random.Random, field, max_degree: int = 4) -> tuple:
    """(problem, h) with f = h(phi) for a random polynomial h; deg f stays at most ``max_degree``."""
    n = rng.randint(1, 3)
    m = rng.randint(1, n)
    ring = PolyRing(field, SOURCE[:n])
    target = PolyRing(field, TARGET[:m])
    phi = random_dominant_phi(rng, ring, m, max_degree=2, max_terms=2, fibre_cap=8)
    dphi = max(p.degree() for p in phi)
    while True:
        h = random_polynomial(rng, target, max(1, max_degree // dphi), 2)
        f = h.compose(phi, ring)
        if f.degree() <= max_degree:
            break
    return DescentProblem(field, ring.names, target.names, phi, (f,)), h


def random_ideal(rng: random.Random, field, max_vars: int = 3, max_gens: int = 3, max_degree: int = 4, max_terms: int = 3) -> list:
    """Nonzero generators of a random ideal in at most ``max_vars`` variables."""
    ring = PolyRing(field, SOURCE[: rng.randint(1, max_vars)])
    gens = []
    while len(gens) < rng.randint(1, max_gens):
        p = random_polynomial(rng, ring, max_degree, max_terms)
        if not p.is_zero():
            gens.append(p)
    return gens
