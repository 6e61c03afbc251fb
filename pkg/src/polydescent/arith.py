"""
Exact coefficient fields.

Two concrete fields are provided: the rationals (characteristic 0, values
are ``gmpy2.mpq``) and prime fields GF(p) (values are ints in ``[0, p)``).  Both are described by a :class:`FieldSpec`, which acts as a
*domain*: it owns the arithmetic and operates on raw values, so that
polynomials can store bare coefficients without per-term wrapper objects.

Any object with the same method set can serve as a coefficient domain for
:mod:`polydescent.poly` and :mod:`polydescent.groebner`; the rational
function field in :mod:`polydescent.ratfunc` is the other implementation.

:class:`FieldElement` is a checked, operator-friendly wrapper for callers
who want to mix values from different fields and get an error instead of
silent nonsense.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Protocol

from gmpy2 import mpq

from .errors import UsageError

_MPQ = type(mpq())

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field(Protocol):
    """The coefficient-domain interface used by polynomials and Groebner bases."""

    characteristic: int

    def zero(self) -> Any: ...
    def one(self) -> Any: ...
    def from_int(self, n: int) -> Any: ...
    def add(self, a: Any, b: Any) -> Any: ...
    def sub(self, a: Any, b: Any) -> Any: ...
    def mul(self, a: Any, b: Any) -> Any: ...
    def neg(self, a: Any) -> Any: ...
    def inv(self, a: Any) -> Any: ...
    def div(self, a: Any, b: Any) -> Any: ...
    def pow(self, a: Any, n: int) -> Any: ...
    def is_zero(self, a: Any) -> bool: ...
    def is_one(self, a: Any) -> bool: ...
    def render(self, a: Any) -> str: ...


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``characteristic == 0``) or the prime field GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool):
            raise UsageError(f"characteristic must be an integer, got {p!r}")
        if p != 0 and not is_prime(p):
            raise UsageError(f"characteristic {p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __str__(self):
        return self.name

    # construction -------------------------------------------------------

    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def from_int(self, n: int):
        p = self.characteristic
        return mpq(n) if p == 0 else n % p

    def from_fraction(self, num: int, den: int = 1):
        """Map ``num/den`` into the field; ``den`` must be invertible."""
        p = self.characteristic
        if den == 0 or (p and den % p == 0):
            raise ZeroDivisionError(f"{num}/{den} is not defined in {self.name}")
        if p == 0:
            return mpq(num, den)
        return num * pow(den, -1, p) % p

    def convert(self, value):
        """Canonical form of an int, Fraction or field value."""
        if isinstance(value, (Fraction, _MPQ)):
            return self.from_fraction(value.numerator, value.denominator)
        if isinstance(value, int):
            return self.from_int(value)
        raise UsageError(f"cannot convert {value!r} into {self.name}")

    # arithmetic ---------------------------------------------------------

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else a * b % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else -a % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        p = self.characteristic
        return 1 / a if p == 0 else pow(int(a), -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        p = self.characteristic
        if n < 0:
            return self.pow(self.inv(a), -n)
        return a**n if p == 0 else pow(a, n, p)

    def is_zero(self, a) -> bool:
        return not a

    def is_one(self, a) -> bool:
        return a == 1

    def render(self, a) -> str:
        return str(a)

    def element(self, value) -> FieldElement:
        return FieldElement(self, value)

    def elements(self):
        """All elements of a prime field in increasing order."""
        if self.characteristic == 0:
            raise UsageError("Q has infinitely many elements")
        return range(self.characteristic)


Q = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


@dataclass(frozen=True)
class FieldElement:
    """A value tagged with its field; arithmetic refuses to mix fields."""

    field: FieldSpec
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.convert(self.value))

    def _other(self, other) -> Any:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError(f"cannot mix elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction, _MPQ)):
            return self.field.convert(other)
        return NotImplemented

    def _wrap(self, value) -> FieldElement:
        return FieldElement(self.field, value)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __str__(self):
        return self.field.render(self.value)


_OPS = {
    "add": FieldSpec.add,
    "sub": FieldSpec.sub,
    "mul": FieldSpec.mul,
    "div": FieldSpec.div,
}


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` (one of add, sub, mul, div) to two elements of one field."""
    if a.field != b.field:
        raise UsageError(f"cannot mix elements of {a.field} and {b.field}")
    try:
        fn = _OPS[op]
    except KeyError:
        raise UsageError(f"unknown field operation {op!r}") from None
    return FieldElement(a.field, fn(a.field, a.value, b.value))


def field_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()
