"""Text and JSON renderings of descent results."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .descent import DescentKind, DescentProblem, DescentResult
from .poly import render_polynomial
from .verify import FibreWitness, SampleReport

_NO_WITNESS = object()


@dataclass(frozen=True)
class Certificates:
    """Checks attached to a report.

    ``witness`` is left at its sentinel default when no fibre-witness
    search was requested, and is ``None`` when a search found nothing.
    """

    symbolic: bool
    samples: SampleReport | None = None
    witness: object = _NO_WITNESS

    @property
    def witness_requested(self) -> bool:
        return self.witness is not _NO_WITNESS


def _point(field, values) -> list:
    return [field.render(v) for v in values]


def _witness_json(problem: DescentProblem, w: FibreWitness | None):
    if w is None:
        return None
    k = problem.field
    return {
        "first": _point(k, w.first),
        "second": _point(k, w.second),
        "phi_value": _point(k, w.phi_value),
        "f_first": _point(k, w.f_first),
        "f_second": _point(k, w.f_second),
    }


def report_dict(problem: DescentProblem, result: DescentResult | None, certificates: Certificates) -> dict:
    """The JSON report as an ordered dict; ``result`` is None when phi is not dominant."""
    if result is None:
        out = {
            "status": DescentKind.NONE.value,
            "N": 0,
            "h": [],
            "minimal_polynomials": [],
            "certificates": {"symbolic": False, "samples": None},
            "dominant": False,
        }
    else:
        samples = certificates.samples
        out = {
            "status": result.kind.value,
            "N": result.N,
            "h": [{"num": render_polynomial(c.num), "den": render_polynomial(c.den)} for c in result.h],
            "minimal_polynomials": [str(mu) for mu in result.minimal_polynomials],
            "certificates": {
                "symbolic": certificates.symbolic,
                "samples": None
                if samples is None
                else {
                    "tested": samples.points_tested,
                    "skipped": samples.points_skipped_denominator_zero,
                    "mismatches": len(samples.mismatches),
                },
            },
            "dominant": True,
        }
    if certificates.witness_requested:
        out["witness"] = _witness_json(problem, certificates.witness)
    return out


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _rational_text(num: str, den: str) -> str:
    if den == "1":
        return num
    return f"({num}) / ({den})"


def render_text(problem: DescentProblem, report: dict, result: DescentResult | None = None) -> str:
    lines = [f"status: {report['status']}"]
    if not report["dominant"]:
        lines.append("dominant: no (phi has a polynomial relation on its image; nothing to decide)")
        return "\n".join(lines) + "\n"
    lines.append(f"N: {report['N']}")
    if report["h"]:
        lines.append("h:")
        for i, c in enumerate(report["h"], start=1):
            lines.append(f"  h{i} = {_rational_text(c['num'], c['den'])}")
    if report["status"] == DescentKind.FROBENIUS.value:
        p = problem.characteristic
        q = f"{p}^{report['N']}"
        lines.append(f"note: f^({q}) = h(phi) componentwise, so h lands in the Frobenius twist W^({q}) of the target")
    if result is not None and result.nonregular_locus is not None:
        lines.append(f"non-regular locus: {render_polynomial(result.nonregular_locus)} = 0")
    lines.append("minimal polynomials:")
    failed = result.failed_component if result is not None else None
    for i, mu in enumerate(report["minimal_polynomials"]):
        tag = "  (certificate)" if i == failed else ""
        lines.append(f"  f{i + 1}: {mu}{tag}")
    certs = report["certificates"]
    lines.append(f"symbolic certificate: {'pass' if certs['symbolic'] else 'FAIL'}")
    s = certs["samples"]
    if s is not None:
        verdict = "pass" if s["mismatches"] == 0 else "FAIL"
        lines.append(f"samples: {s['tested']} tested, {s['skipped']} skipped, {s['mismatches']} mismatches ({verdict})")
    if "witness" in report:
        w = report["witness"]
        if w is None:
            lines.append("fibre witness: none found (this proves nothing)")
        else:
            lines.append(
                "fibre witness: "
                f"phi({', '.join(w['first'])}) = phi({', '.join(w['second'])}) = ({', '.join(w['phi_value'])}) "
                f"but f = ({', '.join(w['f_first'])}) vs ({', '.join(w['f_second'])})"
            )
    lines.append("dominant: yes")
    return "\n".join(lines) + "\n"


def emit_report(problem: DescentProblem, result: DescentResult | None, certificates: Certificates) -> tuple:
    """(text, json) renderings of one decided problem."""
    report = report_dict(problem, result, certificates)
    return render_text(problem, report, result), render_json(report)
