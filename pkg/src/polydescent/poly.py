"""
Sparse multivariate polynomials over an abstract coefficient field.

A monomial is a plain tuple of exponents.  A :class:`Polynomial` maps
monomials to nonzero coefficients of its ring's field; no zero coefficient
is ever stored, so the empty mapping is the zero polynomial.

Orders are given by :class:`MonomialOrder`, which turns a monomial into an
integer tuple key whose natural tuple ordering is the monomial order.  This
keeps comparisons in the hot loops down to tuple comparisons.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from functools import cache
from typing import Any

from .errors import UsageError

Monomial = tuple  # tuple[int, ...]

_ORDER_KINDS = ("lex", "grevlex")


def _lex_key(m):
    return m


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


_INNER_KEYS = {"lex": _lex_key, "grevlex": _grevlex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a two-block elimination order.

    For ``kind == "block"``, ``front`` lists the indices of the eliminated
    variables; every monomial involving them is larger than every monomial
    in the remaining (back) variables.  Within each block ``inner`` names
    the order used.
    """

    kind: str = "grevlex"
    front: tuple = ()
    inner: tuple = ("grevlex", "grevlex")

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise UsageError(f"unknown monomial order {self.kind!r}")
        if any(k not in _ORDER_KINDS for k in self.inner):
            raise UsageError(f"unknown inner orders {self.inner!r}")
        if len(set(self.front)) != len(self.front):
            raise UsageError("block order lists a variable twice")

    @cache
    def key_function(self, nvars: int) -> Callable[[Monomial], tuple]:
        if self.kind == "lex":
            return _lex_key
        if self.kind == "grevlex":
            return _grevlex_key
        front = tuple(self.front)
        if any(not 0 <= i < nvars for i in front):
            raise UsageError(f"block order {front} does not fit {nvars} variables")
        back = tuple(i for i in range(nvars) if i not in front)
        kf, kb = (_INNER_KEYS[k] for k in self.inner)

        def key(m):
            return kf(tuple(m[i] for i in front)) + kb(tuple(m[i] for i in back))

        return key

    def key(self, m: Monomial) -> tuple:
        return self.key_function(len(m))(m)

    def __str__(self):
        if self.kind != "block":
            return self.kind
        return f"block(front={list(self.front)}, inner={self.inner[0]}/{self.inner[1]})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(front: Iterable[int], inner_front: str = "grevlex", inner_back: str = "grevlex") -> MonomialOrder:
    return MonomialOrder("block", tuple(front), (inner_front, inner_back))


def order_by_name(name: str) -> MonomialOrder:
    if name not in _ORDER_KINDS:
        raise UsageError(f"unknown monomial order {name!r} (expected lex or grevlex)")
    return MonomialOrder(name)


def monomial_compare(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise UsageError(f"monomials of different lengths: {a} vs {b}")
    key = order.key_function(len(a))
    ka, kb = key(a), key(b)
    return (ka > kb) - (ka < kb)


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """k[names]: a coefficient field and an ordered tuple of variable names."""

    field: Any
    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise UsageError(f"duplicate variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(self.field.one())

    def constant(self, c) -> Polynomial:
        if self.field.is_zero(c):
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def from_int(self, n: int) -> Polynomial:
        return self.constant(self.field.from_int(n))

    def gen(self, name_or_index) -> Polynomial:
        i = self.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {m: self.field.one()})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None

    def monomial(self, m: Monomial, c=None) -> Polynomial:
        c = self.field.one() if c is None else c
        return Polynomial(self, {tuple(m): c}) if not self.field.is_zero(c) else self.zero

    def from_dict(self, terms: dict) -> Polynomial:
        f = self.field
        return Polynomial(self, {tuple(m): c for m, c in terms.items() if not f.is_zero(c)})

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"


class Polynomial:
    """An immutable sparse polynomial; ``terms`` maps monomials to coefficients."""

    __slots__ = ("_hash", "ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # coercion -----------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        try:
            return self.ring.constant(self.ring.field.convert(other))
        except (AttributeError, UsageError):
            return NotImplemented

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def is_one(self) -> bool:
        return self.is_constant() and self.terms and self.ring.field.is_one(self.constant_value())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        """The constant coefficient."""
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        o = self._coerce(other) if isinstance(other, int) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # degrees and leading data -------------------------------------------

    def degree(self, var=None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        i = self.ring.index(var) if isinstance(var, str) else var
        return max(m[i] for m in self.terms)

    def degrees(self) -> tuple:
        n = self.ring.nvars
        if not self.terms:
            return (0,) * n
        return tuple(max(m[i] for m in self.terms) for i in range(n))

    def variables(self) -> tuple:
        """Indices of the variables that actually occur."""
        return tuple(i for i, d in enumerate(self.degrees()) if d > 0)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        key = order.key_function(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise UsageError("the zero polynomial has no leading monomial")
        return max(self.terms, key=order.key_function(self.ring.nvars))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if self.ring.field.is_one(lc):
            return self
        return self.scale(self.ring.field.inv(lc))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                s = f.add(terms[m], c)
                if f.is_zero(s):
                    del terms[m]
                else:
                    terms[m] = s
            else:
                terms[m] = c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        if len(other.terms) < len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        terms: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = f.mul(ca, cb)
                if m in terms:
                    terms[m] = f.add(terms[m], c)
                else:
                    terms[m] = c
        return Polynomial(self.ring, {m: c for m, c in terms.items() if not f.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError(f"polynomial exponent must be a non-negative integer, got {n!r}")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero
        return Polynomial(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> Polynomial:
        f = self.ring.field
        return Polynomial(
            self.ring,
            {tuple(x + y for x, y in zip(m, mono)): f.mul(v, c) for m, v in self.terms.items()},
        )

    # evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence) -> Any:
        """Value at a point whose coordinates are field values."""
        f = self.ring.field
        if len(point) != self.ring.nvars:
            raise UsageError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        total = f.zero()
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = f.mul(v, f.pow(x, e))
            total = f.add(total, v)
        return total

    def compose(self, substitutions: Sequence[Polynomial], ring: PolyRing | None = None) -> Polynomial:
        """Substitute ``substitutions[i]`` for variable i.

        The substitutions live in a common ring over the same field; the
        result lives there too.  Powers are cached per variable.
        """
        if len(substitutions) != self.ring.nvars:
            raise UsageError(f"need {self.ring.nvars} substitutions, got {len(substitutions)}")
        if ring is None:
            if not substitutions:
                raise UsageError("cannot infer target ring of an empty substitution")
            ring = substitutions[0].ring
        if any(s.ring != ring for s in substitutions):
            raise UsageError("substitutions must share one ring")
        if ring.field != self.ring.field:
            raise UsageError(f"field mismatch: {self.ring.field} vs {ring.field}")
        powers: list[dict] = [{} for _ in substitutions]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = substitutions[i] ** e
            return cache[e]

        result = ring.zero
        for m, c in self.sorted_terms(LEX):
            t = ring.constant(c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def embed(self, ring: PolyRing, positions: Sequence[int]) -> Polynomial:
        """Move into a larger ring; variable i goes to ``positions[i]``."""
        n = ring.nvars
        terms = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    new[positions[i]] = e
            terms[tuple(new)] = c
        return Polynomial(ring, terms)

    def restrict(self, ring: PolyRing, positions: Sequence[int]) -> Polynomial:
        """Inverse of :meth:`embed`; fails if a dropped variable occurs."""
        keep = set(positions)
        terms = {}
        for m, c in self.terms.items():
            if any(e and i not in keep for i, e in enumerate(m)):
                raise UsageError(f"{self} involves variables outside {ring.names}")
            terms[tuple(m[p] for p in positions)] = c
        return Polynomial(ring, terms)

    def map_coefficients(self, ring: PolyRing, fn: Callable) -> Polynomial:
        f = ring.field
        terms = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not f.is_zero(v):
                terms[m] = v
        return Polynomial(ring, terms)

    # rendering ----------------------------------------------------------

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({render_polynomial(self)!r}, ring={self.ring})"


def render_monomial(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_polynomial(p: Polynomial, order: MonomialOrder = LEX) -> str:
    """Canonical text: terms descending under ``order`` (lex by default)."""
    if not p.terms:
        return "0"
    f = p.ring.field
    out = []
    for m, c in p.sorted_terms(order):
        mono = render_monomial(p.ring.names, m)
        coeff = f.render(c)
        if not mono:
            term = coeff
        elif coeff == "1":
            term = mono
        elif coeff == "-1":
            term = "-" + mono
        else:
            term = f"{coeff}*{mono}"
        if not out:
            out.append(term)
        elif term.startswith("-"):
            out.append(" - " + term[1:])
        else:
            out.append(" + " + term)
    return "".join(out)


def multivariate_divide(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder = GREVLEX):
    """Multivariate division with remainder.

    Returns ``(quotients, remainder)`` with ``f == sum(q*d) + remainder``
    and no term of the remainder divisible by any leading monomial of a
    divisor.  When several divisors apply, the first in list order wins.
    """
    ring = f.ring
    for d in divisors:
        if d.ring != ring:
            raise UsageError(f"ring mismatch: {ring} vs {d.ring}")
        if d.is_zero():
            raise UsageError("division by the zero polynomial")
    field = ring.field
    key = order.key_function(ring.nvars)
    leads = [d.leading_term(order) for d in divisors]
    quotients: list[dict] = [{} for _ in divisors]
    remainder: dict = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (lm, lc) in enumerate(leads):
            if monomial_divides(lm, m):
                shift = monomial_div(m, lm)
                q = field.div(c, lc)
                quotients[i][shift] = field.add(quotients[i].get(shift, field.zero()), q)
                for dm, dc in divisors[i].terms.items():
                    nm = monomial_mul(dm, shift)
                    v = field.sub(p.get(nm, field.zero()), field.mul(q, dc))
                    if field.is_zero(v):
                        p.pop(nm, None)
                    else:
                        p[nm] = v
                break
        else:
            remainder[m] = c
            del p[m]
    return [ring.from_dict(q) for q in quotients], Polynomial(ring, remainder)


def exact_quotient(a: Polynomial, b: Polynomial) -> Polynomial:
    """``a / b`` when ``b`` divides ``a``; raises otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("exact division by the zero polynomial")
    if b.is_constant():
        return a.scale(a.ring.field.inv(b.constant_value()))
    (q,), r = multivariate_divide(a, [b])
    if r:
        raise UsageError(f"{b} does not divide {a}")
    return q
