"""
Buchberger's algorithm, reduced Groebner bases, normal forms and elimination.

The engine never looks inside coefficients: it only calls the ring's field
methods, so it runs unchanged over Q, GF(p) and the rational function
fields of :mod:`polydescent.ratfunc`.

Pairs are chosen by the sugar strategy (smallest sugar degree, then lcm
total degree, then the lcm exponent vector compared lexicographically, then
pair indices).  The plain normal strategy is available too; under block
orders it can be slower by orders of magnitude.  Pairs are skipped by Buchberger's coprime criterion and the chain
criterion.  The output is reduced, monic and sorted by decreasing leading
monomial, so equal inputs always give identical bases.
"""

from __future__ import annotations

import heapq
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from operator import add, neg, sub

from .arith import FieldSpec
from .errors import UsageError
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    block_order,
    monomial_div,
    monomial_divides,
    monomial_lcm,
)


def self_check_enabled() -> bool:
    """Post-hoc certificate checks, switched on by ``POLYDESCENT_SELF_CHECK``."""
    return os.environ.get("POLYDESCENT_SELF_CHECK", "") not in ("", "0")


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis together with its order and ring."""

    generators: tuple
    order: MonomialOrder
    ring: PolyRing

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def is_zero_ideal(self) -> bool:
        return not self.generators

    @cached_property
    def _reducer(self) -> _Reducer:
        reducer = _Reducer(self.ring, self.order)
        for g in self.generators:
            reducer.add(g)
        return reducer

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def _check_ring(polys: Sequence[Polynomial]) -> PolyRing:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise UsageError(f"ring mismatch: {ring} vs {p.ring}")
    return ring


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise UsageError("S-polynomial of the zero polynomial")
    _check_ring([f, g])
    field = f.ring.field
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = monomial_lcm(mf, mg)
    return f.mul_term(monomial_div(lcm, mf), field.inv(cf)) - g.mul_term(
        monomial_div(lcm, mg), field.inv(cg)
    )


class _Reducer:
    """Full reduction of polynomials by a growing list of monic divisors."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.field = ring.field
        self.key = order.key_function(ring.nvars)
        self.order = order
        # (leading monomial, tail terms) per divisor; divisors are monic
        self.divisors: list[tuple] = []

    def add(self, g: Polynomial):
        lm = g.leading_monomial(self.order)
        tail = [(m, c) for m, c in g.terms.items() if m != lm]
        self.divisors.append((lm, tail))

    def find(self, m, skip=None):
        for i, (lm, _) in enumerate(self.divisors):
            if i != skip and monomial_divides(lm, m):
                return i
        return None

    def reduce(self, terms: dict, skip=None, tail_only=False, top_only=False) -> dict:
        """Normal form of ``terms``; divisor ``skip`` is ignored.

        With ``tail_only`` the leading term is kept as-is and only the
        remaining terms are reduced (used for inter-reduction).  With
        ``top_only`` reduction stops at the first irreducible term.
        """
        field, key = self.field, self.key
        # arithmetic inlined for Q and GF(p); other fields go through methods
        char = field.characteristic if isinstance(field, FieldSpec) else None
        divisors = self.divisors
        push, pop = heapq.heappush, heapq.heappop
        p = dict(terms)
        heap = [(tuple(map(neg, key(m))), m) for m in p]
        heapq.heapify(heap)
        out = {}
        first = tail_only
        while heap:
            m = pop(heap)[1]
            c = p.pop(m, None)
            if c is None:
                continue
            i = None if first else self.find(m, skip)
            first = False
            if i is None:
                out[m] = c
                if top_only:
                    out.update(p)
                    return out
                continue
            lm, tail = divisors[i]
            shift = tuple(map(sub, m, lm))
            for dm, dc in tail:
                nm = tuple(map(add, dm, shift))
                old = p.get(nm)
                if char is None:
                    v = field.neg(field.mul(c, dc)) if old is None else field.sub(old, field.mul(c, dc))
                    vanished = field.is_zero(v)
                else:
                    v = -c * dc if old is None else old - c * dc
                    if char:
                        v %= char
                    vanished = not v
                if vanished:
                    del p[nm]  # only reachable when old was present
                elif old is None:
                    p[nm] = v
                    push(heap, (tuple(map(neg, key(nm))), nm))
                else:
                    p[nm] = v
        return out


def _monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    return p.monic(order)


STRATEGIES = ("sugar", "normal")


def buchberger(
    generators: Iterable[Polynomial], order: MonomialOrder = GREVLEX, strategy: str = "sugar"
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    ``strategy`` only changes the order in which pairs are processed, and
    so the running time; the reduced basis is unique either way.
    """
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown pair strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    gens = list(generators)
    if not gens:
        raise UsageError("buchberger needs at least one generator to know the ring")
    ring = _check_ring(gens)
    key = order.key_function(ring.nvars)
    basis = [_monic(g, order) for g in gens if not g.is_zero()]
    if not basis:
        return GroebnerBasis((), order, ring)
    if any(g.is_constant() for g in basis):
        return GroebnerBasis((ring.one,), order, ring)

    # drop exact duplicates up front; they only create useless pairs
    seen, unique = set(), []
    for g in basis:
        if g not in seen:
            seen.add(g)
            unique.append(g)
    basis = unique

    reducer = _Reducer(ring, order)
    leads = []
    sugar = []
    for g in basis:
        reducer.add(g)
        leads.append(g.leading_monomial(order))
        sugar.append(g.degree())

    pending: dict[tuple, tuple] = {}

    def add_pairs(j):
        for i in range(j):
            lcm = monomial_lcm(leads[i], leads[j])
            d = sum(lcm)
            sg = max(sugar[i] + d - sum(leads[i]), sugar[j] + d - sum(leads[j]))
            pending[(i, j)] = (sg if strategy == "sugar" else d, d, lcm, i, j, sg)

    for j in range(1, len(basis)):
        add_pairs(j)

    while pending:
        pair = min(pending, key=pending.__getitem__)
        entry = pending.pop(pair)
        lcm, sg = entry[2], entry[5]
        i, j = pair
        li, lj = leads[i], leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_criterion(i, j, lcm, leads, pending):
            continue
        s = s_polynomial(basis[i], basis[j], order)
        r = reducer.reduce(s.terms, top_only=True)
        if not r:
            continue
        r = Polynomial(ring, r).monic(order)
        if r.is_constant():
            return GroebnerBasis((ring.one,), order, ring)
        basis.append(r)
        sugar.append(sg)
        reducer.add(r)
        leads.append(r.leading_monomial(order))
        add_pairs(len(basis) - 1)

    reduced = _interreduce(basis, leads, ring, order)
    reduced.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    result = GroebnerBasis(tuple(reduced), order, ring)
    if self_check_enabled():
        assert is_groebner_basis(result.generators, order, skip_coprime=True), "Buchberger produced a non-basis"
    return result


def _chain_criterion(i, j, lcm, leads, pending) -> bool:
    for k, lk in enumerate(leads):
        if k == i or k == j:
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        if monomial_divides(lk, lcm):
            return True
    return False


def _interreduce(basis, leads, ring, order) -> list:
    # keep one generator per minimal leading monomial
    keep = []
    for i, lm in enumerate(leads):
        redundant = False
        for j, other in enumerate(leads):
            if j == i or not monomial_divides(other, lm):
                continue
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(basis[i])
    reducer = _Reducer(ring, order)
    for g in keep:
        reducer.add(g)
    out = []
    for idx, g in enumerate(keep):
        terms = reducer.reduce(g.terms, skip=idx, tail_only=True)
        out.append(Polynomial(ring, terms).monic(order))
    return out


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo a Groebner basis."""
    if basis.generators and f.ring != basis.ring:
        raise UsageError(f"ring mismatch: {f.ring} vs {basis.ring}")
    if not basis.generators or f.is_zero():
        return f
    return Polynomial(f.ring, basis._reducer.reduce(f.terms))


def reduce_by(f: Polynomial, polys: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Full reduction by an arbitrary list (not necessarily a basis)."""
    reducer = _Reducer(f.ring, order)
    for g in polys:
        reducer.add(g.monic(order))
    return Polynomial(f.ring, reducer.reduce(f.terms))


def is_groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder, skip_coprime: bool = False) -> bool:
    """Check every S-pair reduces to zero.

    By default no criteria are applied.  ``skip_coprime`` leaves out pairs
    with coprime leading monomials, whose S-polynomials always reduce to 0.
    """
    polys = [p.monic(order) for p in polys if not p.is_zero()]
    if not polys:
        return True
    reducer = _Reducer(polys[0].ring, order)
    for g in polys:
        reducer.add(g)
    leads = [lm for lm, _ in reducer.divisors]
    one = polys[0].ring.field.one()
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            la, lb = leads[a], leads[b]
            if skip_coprime and all(x == 0 or y == 0 for x, y in zip(la, lb)):
                continue
            lcm = monomial_lcm(la, lb)
            s = polys[a].mul_term(monomial_div(lcm, la), one) - polys[b].mul_term(monomial_div(lcm, lb), one)
            if reducer.reduce(s.terms, top_only=True):
                return False
    return True


def is_reduced(basis: GroebnerBasis) -> bool:
    order = basis.order
    field = basis.ring.field
    leads = basis.leading_monomials()
    for i, g in enumerate(basis.generators):
        if not field.is_one(g.leading_coefficient(order)):
            return False
        for j, lm in enumerate(leads):
            if j != i and any(monomial_divides(lm, m) for m in g.terms):
                return False
    return True


def elimination_ideal(
    generators: Sequence[Polynomial],
    eliminate: Iterable,
    inner: str = "grevlex",
) -> list:
    """Generators of the ideal intersected with the subring on the kept variables.

    ``eliminate`` holds variable names or indices.  The result polynomials
    stay in the input ring; none of them involves an eliminated variable.
    """
    gens = list(generators)
    if not gens:
        return []
    ring = _check_ring(gens)
    front = sorted({ring.index(v) if isinstance(v, str) else v for v in eliminate})
    gb = buchberger(gens, block_order(front, inner, inner))
    return [g for g in gb if not any(g.degree(i) > 0 for i in front)]
