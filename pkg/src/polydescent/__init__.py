"""Descent of polynomial maps through dominant maps, decided with Groebner bases."""

from .arith import GF, FieldElement, FieldSpec, Q, field_arith, field_inverse
from .descent import (
    ComponentDescent,
    DescentKind,
    DescentProblem,
    DescentResult,
    MinimalPolynomial,
    classify_descent,
    descend_map,
    dominance_check,
    minimal_polynomial,
    regular_promotion,
    subalgebra_membership,
)
from .errors import DescentError, ParseError, UsageError
from .groebner import (
    GroebnerBasis,
    buchberger,
    elimination_ideal,
    normal_form,
    s_polynomial,
)
from .parser import (
    parse_polynomial,
    parse_problem,
    parse_rational_function,
    render_problem,
)
from .poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    block_order,
    monomial_compare,
)
from .ratfunc import RationalFunction, RationalFunctionField, multivariate_gcd
from .report import Certificates, emit_report
from .verify import (
    FibreWitness,
    SampleReport,
    fibre_witness_search,
    sample_certificate,
    symbolic_certificate,
)

__all__ = [
    "GF",
    "GREVLEX",
    "LEX",
    "Certificates",
    "ComponentDescent",
    "DescentError",
    "DescentKind",
    "DescentProblem",
    "DescentResult",
    "FibreWitness",
    "FieldElement",
    "FieldSpec",
    "GroebnerBasis",
    "MinimalPolynomial",
    "MonomialOrder",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "Q",
    "RationalFunction",
    "RationalFunctionField",
    "SampleReport",
    "UsageError",
    "block_order",
    "buchberger",
    "classify_descent",
    "descend_map",
    "dominance_check",
    "elimination_ideal",
    "emit_report",
    "fibre_witness_search",
    "field_arith",
    "field_inverse",
    "minimal_polynomial",
    "monomial_compare",
    "multivariate_gcd",
    "normal_form",
    "parse_polynomial",
    "parse_problem",
    "parse_rational_function",
    "regular_promotion",
    "render_problem",
    "s_polynomial",
    "sample_certificate",
    "subalgebra_membership",
    "symbolic_certificate",
]
