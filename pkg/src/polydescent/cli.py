"""Command-line interface: ``polydescent <subcommand> problem.dp [options]``.

Exit status 0 means the question was decided (a ``none`` answer included),
1 means the input was rejected and 2 means an internal check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .descent import (
    DescentKind,
    DescentResult,
    descend_map,
    dominance_check,
    graph_basis,
    image_relations,
    minimal_polynomial,
    minimal_polynomial_vanishes,
    regular_promotion,
)
from .errors import DescentError, UsageError
from .groebner import buchberger, normal_form
from .parser import load_problem, parse_polynomial, parse_rational_function
from .poly import block_order, order_by_name, render_polynomial
from .report import Certificates, emit_report, render_json
from .verify import (
    EXHAUSTIVE,
    fibre_witness_search,
    sample_certificate,
    symbolic_certificate,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _budget(text: str):
    if text == EXHAUSTIVE:
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or {EXHAUSTIVE!r}, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polydescent", description="Decide whether a polynomial map factors through another.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file")
    common.add_argument("--json", action="store_true", help="print a JSON report")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--check-samples", type=_budget, metavar="N|all", help="evaluate the witness at N points (or all)")
    sampling.add_argument("--box", type=int, default=10, metavar="B", help="char-0 sampling box [-B, B] (default 10)")
    sampling.add_argument("--seed", type=int, default=0, help="seed for sampled points (default 0)")

    ordering = argparse.ArgumentParser(add_help=False)
    ordering.add_argument("--order", choices=("lex", "grevlex"), default="grevlex", help="monomial order (default grevlex)")

    p = sub.add_parser("descend", parents=[common, sampling], help="decide descent of f through phi")
    p.add_argument("--witness-budget", type=_budget, metavar="N|all", help="search N points for two in one fibre with different f")

    p = sub.add_parser("minpoly", parents=[common], help="minimal polynomial of each component of f over k(Y)")
    p.add_argument("--component", type=int, metavar="I", help="only component I (1-based)")

    p = sub.add_parser("gb", parents=[common, ordering], help="Groebner basis of P, or of the graph ideal")
    p.add_argument("--graph", action="store_true", help="basis of P + (Y_i - phi_i) under x >> Y")

    p = sub.add_parser("nf", parents=[common, ordering], help="normal form of a polynomial modulo P")
    p.add_argument("--poly", required=True, help="polynomial in the source variables")

    sub.add_parser("verify", parents=[common, sampling], help="re-check a stored JSON result").add_argument(
        "result", help="JSON report written by 'descend --json'"
    )
    return parser


# ---------------------------------------------------------------------------
# subcommands


def _print(text: str):
    sys.stdout.write(text)


def _cmd_descend(args) -> int:
    source = load_problem(args.problem)
    problem = source.problem
    if not dominance_check(problem):
        certs = Certificates(symbolic=False)
        if args.witness_budget is not None:
            certs = Certificates(False, None, fibre_witness_search(problem, args.witness_budget, args.box, args.seed))
        text, js = emit_report(problem, None, certs)
        _print(js if args.json else text)
        shown = ", ".join(render_polynomial(r) for r in image_relations(problem)[:3])
        print(f"polydescent: error: phi is not dominant; its image satisfies {shown}", file=sys.stderr)
        return 1
    result = descend_map(problem)
    samples = None
    if result.kind is DescentKind.NONE:
        symbolic = all(
            minimal_polynomial_vanishes(problem, i, mu) for i, mu in enumerate(result.minimal_polynomials)
        )
    else:
        result = regular_promotion(result)
        symbolic = symbolic_certificate(problem, result)
        if args.check_samples is not None:
            samples = sample_certificate(problem, result, args.check_samples, args.box, args.seed)
    if args.witness_budget is not None:
        certs = Certificates(symbolic, samples, fibre_witness_search(problem, args.witness_budget, args.box, args.seed))
    else:
        certs = Certificates(symbolic, samples)
    text, js = emit_report(problem, result, certs)
    _print(js if args.json else text)
    return 0


def _cmd_minpoly(args) -> int:
    problem = load_problem(args.problem).problem
    r = len(problem.f)
    if args.component is not None and not 1 <= args.component <= r:
        raise UsageError(f"--component must lie in 1..{r}, got {args.component}")
    indices = [args.component - 1] if args.component is not None else range(r)
    mus = {i + 1: str(minimal_polynomial(problem, i)) for i in indices}
    if args.json:
        _print(render_json({"minimal_polynomials": [{"component": i, "polynomial": s} for i, s in mus.items()]}))
    else:
        _print("".join(f"f{i}: {s}\n" for i, s in mus.items()))
    return 0


def _cmd_gb(args) -> int:
    problem = load_problem(args.problem).problem
    if args.graph:
        basis = graph_basis(problem)
        if args.order != "grevlex":
            n = len(problem.source)
            basis = buchberger(basis.generators, block_order(range(n), args.order, args.order))
    elif problem.ideal:
        basis = buchberger(problem.ideal, order_by_name(args.order))
    else:
        basis = None
    gens = [render_polynomial(g, basis.order) for g in basis] if basis is not None else []
    if args.json:
        _print(render_json({"order": str(basis.order) if basis else args.order, "basis": gens}))
    else:
        _print("".join(g + "\n" for g in gens) if gens else "(zero ideal)\n")
    return 0


def _cmd_nf(args) -> int:
    problem = load_problem(args.problem).problem
    ring = problem.source_ring
    f = parse_polynomial(args.poly, ring)
    order = order_by_name(args.order)
    r = normal_form(f, buchberger(problem.ideal, order)) if problem.ideal else f
    text = render_polynomial(r, order)
    _print(render_json({"normal_form": text}) if args.json else text + "\n")
    return 0


def _load_result(path: str, problem) -> tuple:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno}, column {exc.colno})") from None
    try:
        kind = DescentKind(data["status"])
        N = int(data["N"])
        h = tuple(
            parse_rational_function(c["num"], problem.target_ring) / parse_rational_function(c["den"], problem.target_ring)
            for c in data["h"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a descent report ({exc})") from None
    return data, DescentResult(kind, N, h, ())


def _cmd_verify(args) -> int:
    problem = load_problem(args.problem).problem
    data, stored = _load_result(args.result, problem)
    if stored.kind is DescentKind.NONE:
        fresh = descend_map(problem) if dominance_check(problem) else None
        ok = (
            fresh is not None
            and fresh.kind is DescentKind.NONE
            and [str(mu) for mu in fresh.minimal_polynomials] == data.get("minimal_polynomials")
        ) or (fresh is None and data.get("dominant") is False)
        report = {"verified": ok, "symbolic": ok, "samples": None}
    else:
        symbolic = symbolic_certificate(problem, stored)
        samples = None
        if args.check_samples is not None:
            s = sample_certificate(problem, stored, args.check_samples, args.box, args.seed)
            samples = {
                "tested": s.points_tested,
                "skipped": s.points_skipped_denominator_zero,
                "mismatches": len(s.mismatches),
            }
        ok = symbolic and (samples is None or samples["mismatches"] == 0)
        report = {"verified": ok, "symbolic": symbolic, "samples": samples}
    if args.json:
        _print(render_json(report))
    else:
        lines = [f"verified: {'yes' if ok else 'NO'}", f"symbolic certificate: {'pass' if report['symbolic'] else 'FAIL'}"]
        if report["samples"] is not None:
            s = report["samples"]
            lines.append(f"samples: {s['tested']} tested, {s['skipped']} skipped, {s['mismatches']} mismatches")
        _print("\n".join(lines) + "\n")
    return 0 if ok else 1


_COMMANDS = {
    "descend": _cmd_descend,
    "minpoly": _cmd_minpoly,
    "gb": _cmd_gb,
    "nf": _cmd_nf,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DescentError, OSError) as exc:
        print(f"polydescent: error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"polydescent: internal check failed: {exc}", file=sys.stderr)
        return 2


def run_cli(argv: Sequence[str]) -> int:
    """Run one invocation; argparse failures also come back as exit status 1."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
