"""
Rational functions k(Y1, ..., Ym) and multivariate gcd.

Fractions are kept normalized after every operation: numerator and
denominator coprime, denominator monic under grevlex.  Normalization needs
a multivariate gcd, computed recursively: split off contents with respect
to a main variable, then run a subresultant polynomial remainder sequence
on the primitive parts.

:class:`RationalFunctionField` wraps a polynomial ring as a coefficient
domain, so the Groebner engine can work over k(Y).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import UsageError
from .poly import GREVLEX, Polynomial, PolyRing, exact_quotient

# ---------------------------------------------------------------------------
# gcd


def multivariate_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """A gcd of ``a`` and ``b``, monic under grevlex (``gcd(0, 0) == 0``)."""
    if a.ring != b.ring:
        raise UsageError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.is_zero():
        return b.monic(GREVLEX)
    if b.is_zero():
        return a.monic(GREVLEX)
    return _gcd(a, b).monic(GREVLEX)


def _monomial_content(p: Polynomial) -> tuple:
    terms = iter(p.terms)
    low = list(next(terms))
    for m in terms:
        for i, e in enumerate(m):
            low[i] = min(low[i], e)
    return tuple(low)


def _shift_down(p: Polynomial, m: tuple) -> Polynomial:
    if not any(m):
        return p
    return Polynomial(p.ring, {tuple(x - y for x, y in zip(k, m)): c for k, c in p.terms.items()})


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    ring = a.ring
    if a.is_constant() or b.is_constant():
        return ring.one
    ma, mb = _monomial_content(a), _monomial_content(b)
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    a, b = _shift_down(a, ma), _shift_down(b, mb)
    g = _gcd_no_monomial(a, b)
    return g.mul_term(mono, ring.field.one()) if any(mono) else g


def _gcd_no_monomial(a: Polynomial, b: Polynomial) -> Polynomial:
    ring = a.ring
    if a.is_constant() or b.is_constant():
        return ring.one
    if a == b:
        return a
    da, db = a.degrees(), b.degrees()
    # a variable present in only one input cannot occur in the gcd
    for i in range(ring.nvars):
        if da[i] and not db[i]:
            return _gcd_all([b] + list(_coefficients(a, i).values()))
        if db[i] and not da[i]:
            return _gcd_all([a] + list(_coefficients(b, i).values()))
    common = [i for i in range(ring.nvars) if da[i]]
    v = min(common, key=lambda i: (max(da[i], db[i]), i))
    A, B = _coefficients(a, v), _coefficients(b, v)
    ca, cb = _content(A), _content(B)
    c = _gcd(ca, cb)
    A = {k: exact_quotient(x, ca) for k, x in A.items()}
    B = {k: exact_quotient(x, cb) for k, x in B.items()}
    g = _univariate_gcd(A, B, ring)
    return c * _from_coefficients(g, v, ring)


def _gcd_all(polys) -> Polynomial:
    polys = sorted(polys, key=lambda p: (len(p.terms), p.degree()))
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = _gcd(g, p)
    return g


def _coefficients(p: Polynomial, v: int) -> dict:
    """View ``p`` as univariate in variable ``v``: {degree: coefficient}."""
    out: dict = {}
    for m, c in p.terms.items():
        d = m[v]
        rest = m[:v] + (0,) + m[v + 1 :]
        out.setdefault(d, {})[rest] = c
    return {d: Polynomial(p.ring, t) for d, t in out.items()}


def _from_coefficients(coeffs: dict, v: int, ring: PolyRing) -> Polynomial:
    terms = {}
    for d, c in coeffs.items():
        for m, x in c.terms.items():
            terms[m[:v] + (d,) + m[v + 1 :]] = x
    return Polynomial(ring, terms)


def _content(coeffs: dict) -> Polynomial:
    return _gcd_all(list(coeffs.values())).monic(GREVLEX)


def _deg(A: dict) -> int:
    return max(A) if A else -1


def _prem(A: dict, B: dict, ring: PolyRing) -> dict:
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B."""
    dB = _deg(B)
    lcB = B[dB]
    R = dict(A)
    e = _deg(A) - dB + 1
    while R and _deg(R) >= dB:
        dR = _deg(R)
        lcR = R[dR]
        new = {k: c * lcB for k, c in R.items() if k != dR}
        shift = dR - dB
        for k, c in B.items():
            if k == dB:
                continue
            kk = k + shift
            new[kk] = new.get(kk, ring.zero) - lcR * c
        R = {k: c for k, c in new.items() if not c.is_zero()}
        e -= 1
    if e > 0 and R:
        f = lcB**e
        R = {k: c * f for k, c in R.items()}
    return R


def _univariate_gcd(A: dict, B: dict, ring: PolyRing) -> dict:
    """gcd of two primitive polynomials in one main variable."""
    if _deg(A) < _deg(B):
        A, B = B, A
    if all(c.is_constant() for c in A.values()) and all(c.is_constant() for c in B.values()):
        return _euclid(A, B, ring)
    g = h = ring.one
    while True:
        delta = _deg(A) - _deg(B)
        R = _prem(A, B, ring)
        if not R:
            break
        if _deg(R) == 0:
            return {0: ring.one}
        divisor = g * h**delta
        A, B = B, {k: exact_quotient(c, divisor) for k, c in R.items()}
        g = A[_deg(A)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_quotient(g**delta, h ** (delta - 1))
    content = _content(B)
    return {k: exact_quotient(c, content) for k, c in B.items()}


def _euclid(A: dict, B: dict, ring: PolyRing) -> dict:
    field = ring.field
    A = {k: c.constant_value() for k, c in A.items()}
    B = {k: c.constant_value() for k, c in B.items()}
    while B:
        dB = max(B)
        inv = field.inv(B[dB])
        R = dict(A)
        while R and max(R) >= dB:
            dR = max(R)
            q = field.mul(R[dR], inv)
            for k, c in B.items():
                kk = k + dR - dB
                v = field.sub(R.get(kk, field.zero()), field.mul(q, c))
                if field.is_zero(v):
                    R.pop(kk, None)
                else:
                    R[kk] = v
        A, B = B, R
    lead = field.inv(A[max(A)])
    return {k: ring.constant(field.mul(c, lead)) for k, c in A.items()}


# ---------------------------------------------------------------------------
# fractions


class RationalFunction:
    """A normalized fraction ``num / den`` of polynomials over a field."""

    __slots__ = ("_hash", "den", "num")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, normalized: bool = False):
        if den is None:
            den = num.ring.one
            normalized = True
        elif den.ring != num.ring:
            raise UsageError(f"ring mismatch: {num.ring} vs {den.ring}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ring != self.ring:
                raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")
            return RationalFunction(other)
        try:
            return RationalFunction(self.ring.constant(self.ring.field.convert(other)))
        except UsageError:
            return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        """True when the normalized denominator is constant (hence 1)."""
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self, o
        if a.num.is_zero():
            return b
        if b.num.is_zero():
            return a
        if a.den.is_one() and b.den.is_one():
            return RationalFunction(a.num + b.num, a.den, normalized=True)
        if a.den == b.den:
            return RationalFunction(a.num + b.num, a.den)
        g = multivariate_gcd(a.den, b.den)
        da, db = exact_quotient(a.den, g), exact_quotient(b.den, g)
        return RationalFunction(a.num * db + b.num * da, a.den * db)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self, o
        if a.num.is_zero() or b.num.is_zero():
            return RationalFunction(self.ring.zero)
        if a.den.is_one() and b.den.is_one():
            return RationalFunction(a.num * b.num, a.den, normalized=True)
        g1 = multivariate_gcd(a.num, b.den)
        g2 = multivariate_gcd(b.num, a.den)
        num = exact_quotient(a.num, g1) * exact_quotient(b.num, g2)
        den = exact_quotient(a.den, g2) * exact_quotient(b.den, g1)
        return RationalFunction(*_make_monic(num, den), normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(*_make_monic(self.den, self.num), normalized=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num**n, self.den**n, normalized=True)

    def evaluate(self, point):
        """Value at a point; raises ZeroDivisionError where the denominator vanishes."""
        field = self.ring.field
        d = self.den.evaluate(point)
        if field.is_zero(d):
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {tuple(point)}")
        return field.div(self.num.evaluate(point), d)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r}, ring={self.ring})"


def _make_monic(num: Polynomial, den: Polynomial):
    lc = den.leading_coefficient(GREVLEX)
    field = num.ring.field
    if field.is_one(lc):
        return num, den
    inv = field.inv(lc)
    return num.scale(inv), den.scale(inv)


def _normalize(num: Polynomial, den: Polynomial):
    ring = num.ring
    if num.is_zero():
        return num, ring.one
    if not den.is_constant():
        g = multivariate_gcd(num, den)
        if not g.is_one():
            num, den = exact_quotient(num, g), exact_quotient(den, g)
    return _make_monic(num, den)


_RF_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def ratfunc_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Apply ``op`` (add, sub, mul or div) to two rational functions."""
    try:
        fn = _RF_OPS[op]
    except KeyError:
        raise UsageError(f"unknown rational function operation {op!r}") from None
    if a.ring != b.ring:
        raise UsageError(f"ring mismatch: {a.ring} vs {b.ring}")
    return fn(a, b)


@dataclass(frozen=True)
class RationalFunctionField:
    """k(names) as a coefficient domain for polynomial rings over it."""

    ring: PolyRing

    @property
    def characteristic(self) -> int:
        return self.ring.field.characteristic

    @property
    def base(self):
        return self.ring.field

    @property
    def name(self) -> str:
        return f"{self.ring.field}({', '.join(self.ring.names)})"

    def __str__(self):
        return self.name

    def zero(self):
        return RationalFunction(self.ring.zero)

    def one(self):
        return RationalFunction(self.ring.one)

    def from_int(self, n: int):
        return RationalFunction(self.ring.from_int(n))

    def convert(self, value):
        if isinstance(value, RationalFunction):
            if value.ring != self.ring:
                raise UsageError(f"ring mismatch: {self.ring} vs {value.ring}")
            return value
        if isinstance(value, Polynomial):
            return RationalFunction(value)
        try:
            return RationalFunction(self.ring.constant(self.ring.field.convert(value)))
        except UsageError:
            raise UsageError(f"cannot convert {value!r} into {self.name}") from None

    def gen(self, name) -> RationalFunction:
        return RationalFunction(self.ring.gen(name))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def pow(self, a, n: int):
        return a**n

    def is_zero(self, a) -> bool:
        return a.num.is_zero()

    def is_one(self, a) -> bool:
        return a.den.is_one() and a.num.is_one()

    def render(self, a) -> str:
        if a.den.is_one() and len(a.num.terms) <= 1:
            return str(a.num)
        return f"({a})"


def lcm_all(polys) -> Polynomial:
    """Monic lcm of a nonempty list of nonzero polynomials."""

    def lcm(a, b):
        return exact_quotient(a * b, multivariate_gcd(a, b)).monic(GREVLEX)

    polys = list(polys)
    if not polys:
        raise UsageError("lcm of an empty list")
    return reduce(lcm, polys).monic(GREVLEX)
