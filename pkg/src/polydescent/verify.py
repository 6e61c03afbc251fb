"""
Independent checks of descent results.

* :func:`symbolic_certificate` re-derives the identity
  num(h_i)(phi) - f_i^(p^N) * den(h_i)(phi) = 0 modulo P exactly.
* :func:`sample_certificate` evaluates both sides at points of V(P):
  all of GF(p)^n, a seeded sample of it, or integer points of a box in
  characteristic 0.  Points where a denominator vanishes are skipped.
* :func:`fibre_witness_search` looks for two points in one fibre of phi on
  which f differs.  Finding none proves nothing: over GF(p) the map
  t -> t^p is a bijection on points although t does not descend.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .descent import DescentKind, DescentProblem, DescentResult
from .errors import UsageError
from .groebner import GroebnerBasis, buchberger, normal_form
from .poly import Polynomial

EXHAUSTIVE = "all"
MAX_EXHAUSTIVE = 10**6

Budget = int | str


@dataclass(frozen=True)
class SampleReport:
    points_tested: int
    points_skipped_denominator_zero: int
    mismatches: tuple

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class FibreWitness:
    """Two points of X(k) with equal phi-values and different f-values."""

    first: tuple
    second: tuple
    phi_value: tuple
    f_first: tuple
    f_second: tuple


@lru_cache(maxsize=256)
def variety_basis(problem: DescentProblem) -> GroebnerBasis | None:
    """Groebner basis of P, or None when X is all of affine space."""
    gens = [p for p in problem.ideal if not p.is_zero()]
    if not gens:
        return None
    return buchberger(gens)


def frobenius_power(p: Polynomial, N: int) -> Polynomial:
    """``p ** (char ** N)`` computed termwise; valid over a prime field."""
    q = p.ring.field.characteristic ** N
    if N == 0:
        return p
    f = p.ring.field
    return Polynomial(p.ring, {tuple(e * q for e in m): f.pow(c, q) for m, c in p.terms.items()})


def identity_residues(problem: DescentProblem, result: DescentResult) -> list:
    """Per component, num(h)(phi) - f^(p^N) * den(h)(phi) reduced modulo P."""
    if result.kind is DescentKind.NONE:
        raise UsageError("a 'none' result carries no witness to check")
    if len(result.h) != len(problem.f):
        raise UsageError(f"result has {len(result.h)} components, problem has {len(problem.f)}")
    ring = problem.source_ring
    basis = variety_basis(problem)
    out = []
    for fi, hi in zip(problem.f, result.h):
        if hi.ring != problem.target_ring:
            raise UsageError(f"witness {hi} is not in k({', '.join(problem.target)})")
        lhs = frobenius_power(fi, result.N) if problem.characteristic else fi
        r = hi.num.compose(problem.phi, ring) - lhs * hi.den.compose(problem.phi, ring)
        out.append(normal_form(r, basis) if basis is not None else r)
    return out


def symbolic_certificate(problem: DescentProblem, result: DescentResult) -> bool:
    """Exact check of F_N(f) = h(phi) on X, component by component."""
    return all(r.is_zero() for r in identity_residues(problem, result))


def _candidate_points(problem: DescentProblem, budget: Budget, box: int, seed: int):
    field = problem.field
    n = len(problem.source)
    if budget != EXHAUSTIVE and (not isinstance(budget, int) or budget <= 0):
        raise UsageError(f"point budget must be a positive integer or {EXHAUSTIVE!r}, got {budget!r}")
    if field.characteristic:
        values = [field.from_int(v) for v in range(field.characteristic)]
    else:
        if box < 0:
            raise UsageError(f"sampling box must be non-negative, got {box}")
        values = [field.from_int(v) for v in range(-box, box + 1)]
    size = len(values) ** n
    if budget == EXHAUSTIVE or budget >= size:
        if size > MAX_EXHAUSTIVE:
            raise UsageError(f"exhaustive enumeration of {size} points exceeds {MAX_EXHAUSTIVE}")
        return itertools.product(values, repeat=n)
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(size), budget))
    base = len(values)

    def decode(k):
        coords = []
        for _ in range(n):
            k, r = divmod(k, base)
            coords.append(values[r])
        return tuple(reversed(coords))

    return (decode(k) for k in picks)


def _on_variety(problem: DescentProblem, x) -> bool:
    field = problem.field
    return all(field.is_zero(p.evaluate(x)) for p in problem.ideal)


def sample_certificate(
    problem: DescentProblem,
    result: DescentResult,
    budget: Budget = EXHAUSTIVE,
    box: int = 10,
    seed: int = 0,
) -> SampleReport:
    """Evaluate f^(p^N) and h(phi) at points of V(P) and compare."""
    if result.kind is DescentKind.NONE:
        raise UsageError("a 'none' result carries no witness to sample")
    field = problem.field
    q = field.characteristic**result.N if result.N else 1
    tested = skipped = 0
    mismatches = []
    for x in _candidate_points(problem, budget, box, seed):
        if not _on_variety(problem, x):
            continue
        y = tuple(phi.evaluate(x) for phi in problem.phi)
        dens = [h.den.evaluate(y) for h in result.h]
        if any(field.is_zero(d) for d in dens):
            skipped += 1
            continue
        tested += 1
        lhs = tuple(field.pow(fi.evaluate(x), q) for fi in problem.f)
        rhs = tuple(field.div(h.num.evaluate(y), d) for h, d in zip(result.h, dens))
        if lhs != rhs:
            mismatches.append((x, lhs, rhs))
    return SampleReport(tested, skipped, tuple(mismatches))


def fibre_witness_search(
    problem: DescentProblem,
    budget: Budget = EXHAUSTIVE,
    box: int = 10,
    seed: int = 0,
) -> FibreWitness | None:
    """First pair of points (in enumeration order) refuting fibre-constancy."""
    seen: dict = {}
    for x in _candidate_points(problem, budget, box, seed):
        if not _on_variety(problem, x):
            continue
        y = tuple(phi.evaluate(x) for phi in problem.phi)
        fx = tuple(fi.evaluate(x) for fi in problem.f)
        if y not in seen:
            seen[y] = (x, fx)
        elif seen[y][1] != fx:
            first, f_first = seen[y]
            return FibreWitness(first, x, y, f_first, fx)
    return None


def is_fibre_witness(problem: DescentProblem, a, b) -> bool:
    """Both points on X, same image under phi, different values of f."""
    field = problem.field
    a = tuple(field.convert(v) for v in a)
    b = tuple(field.convert(v) for v in b)
    if not (_on_variety(problem, a) and _on_variety(problem, b)):
        return False
    same_fibre = all(phi.evaluate(a) == phi.evaluate(b) for phi in problem.phi)
    return same_fibre and any(fi.evaluate(a) != fi.evaluate(b) for fi in problem.f)
