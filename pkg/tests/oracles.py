"""Independent reference computations used to check the package.

Nothing here calls into polydescent's algebra: conversions go through plain
dictionaries and every computation is done by sympy or by brute force.
"""

from __future__ import annotations

from functools import reduce

import sympy

from polydescent.poly import Polynomial, PolyRing


def to_sympy(p: Polynomial, symbols=None):
    syms = symbols or sympy.symbols(p.ring.names)
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        coeff = sympy.Rational(int(c.numerator), int(c.denominator)) if p.ring.field.characteristic == 0 else sympy.Integer(c)
        expr += coeff * reduce(lambda acc, se: acc * se[0] ** se[1], zip(syms, mono), sympy.Integer(1))
    return expr


def from_sympy(expr, ring: PolyRing) -> Polynomial:
    syms = sympy.symbols(ring.names)
    poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    k = ring.field
    return ring.from_dict({tuple(m): k.from_fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c != 0})


def brute_inverse(a: int, p: int) -> int:
    """The x in 1..p-1 with a*x = 1 mod p, by exhaustive search."""
    for x in range(1, p):
        if a * x % p == 1:
            return x
    raise ZeroDivisionError(f"{a} has no inverse mod {p}")


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Res_var(f, g) over Q, computed by sympy."""
    syms = sympy.symbols(f.ring.names)
    x = syms[f.ring.names.index(var)]
    return from_sympy(sympy.resultant(to_sympy(f, syms), to_sympy(g, syms), x), f.ring)


def squarefree_part(p: Polynomial) -> Polynomial:
    syms = sympy.symbols(p.ring.names)
    return from_sympy(sympy.sqf_part(to_sympy(p, syms), *syms), p.ring)


def is_squarefree(p: Polynomial) -> bool:
    syms = sympy.symbols(p.ring.names)
    _, factors = sympy.sqf_list(to_sympy(p, syms), *syms)
    return all(mult == 1 for _, mult in factors)


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    syms = sympy.symbols(a.ring.names)
    return from_sympy(sympy.gcd(to_sympy(a, syms), to_sympy(b, syms)), a.ring)


def groebner_basis(polys, order: str) -> list:
    """Reduced Groebner basis over Q by sympy ('lex' or 'grevlex'), as sympy expressions."""
    ring = polys[0].ring
    syms = sympy.symbols(ring.names)
    G = sympy.groebner([to_sympy(p, syms) for p in polys], *syms, order=order, domain="QQ")
    return list(G.exprs)


def equal_up_to_scalar(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.monic() == b.monic()


def linear_relation_minpoly(problem, component: int, max_degree: int = 3):
    """Minimal polynomial of f_c over Q(Y) by linear algebra, or None above ``max_degree``.

    Reduces 1, f, f^2, ... modulo a sympy Groebner basis of the generic fibre
    (coefficients in Q(Y)) and returns the first monic linear relation as
    sympy expressions in Y, constant coefficient first.  Characteristic 0
    only.
    """
    if problem.field.characteristic != 0:
        raise ValueError("the linear-relation oracle works over Q only")
    xs = sympy.symbols(problem.source)
    ys = sympy.symbols(problem.target)
    K = sympy.QQ.frac_field(*ys)
    gens = [to_sympy(p, xs) for p in problem.ideal]
    gens += [to_sympy(phi, xs) - y for phi, y in zip(problem.phi, ys)]
    G = sympy.groebner(gens, *xs, order="grevlex", domain=K)
    f = to_sympy(problem.f[component], xs)
    vectors = []
    for k in range(max_degree + 1):
        nf = G.reduce(sympy.expand(f**k))[1]
        vectors.append(dict(sympy.Poly(nf, *xs, domain=K).terms()))
        monos = sorted({m for vec in vectors for m in vec})
        M = sympy.Matrix([[vec.get(m, 0) for vec in vectors] for m in monos])
        null = M.nullspace()
        if null:
            rel = null[0]
            lead = rel[k]
            return [sympy.cancel(rel[j] / lead) for j in range(k + 1)]
    return None
