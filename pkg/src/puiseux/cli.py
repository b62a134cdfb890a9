"""Command-line front end.

Verbs: analyze, dual, invert, lagrange, verify, qo, toric, corpus.
Typed series are taken as exact polynomials unless they carry an explicit
O(total=R) marker; --precision sets the working precision of whatever the
verb computes (default 10).  Exit codes: 0 success, 1 parse or precondition
error, 2 failed verification.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .core import AdditiveOrder, Lattice, PuiseuxError, fmt_vec, mat_from, rat, total
from .duality import dual, verify_dual_identity, verify_power_identity
from .exponents import (
    characteristic_exponents,
    essential_of_series,
    exponent_to_json,
    irreducible_exponents,
)
from .inversion import (
    _dominating_profile,
    extract_branch,
    invert_series,
    lagrange_coefficient,
    verify_halphen_stolz,
)
from .quasi_ordinary import qo_test, toric_pullback, verify_qsigma_relation
from .reports import CheckReport
from .series import INF, PuiseuxSeries, default_names, format_series, parse

DEFAULT_PRECISION = Fraction(10)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _apply_params(text: str, params: list[str]) -> str:
    for spec in params or []:
        if "=" not in spec:
            raise PuiseuxError(f"--param needs NAME=p/q, got {spec!r}")
        name, value = spec.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"[A-Za-z]+", name):
            raise PuiseuxError(f"parameter name {name!r} must be alphabetic")
        rat(value)  # validate early
        text = re.sub(rf"\b{name}\b", value, text)
    return text


def _parse_series(args) -> PuiseuxSeries:
    text = _apply_params(args.series, getattr(args, "param", None))
    return parse(text, precision=INF, laurent=getattr(args, "laurent", False))


def _load_matrix(path: str):
    with open(path) as fh:
        return mat_from(json.load(fh))


def _order_from_spec(spec: str, dim: int) -> AdditiveOrder:
    if spec == "lex":
        return AdditiveOrder.lex(dim)
    if spec.startswith("weights:"):
        weights = [rat(w) for w in spec[len("weights:"):].split(",")]
        return AdditiveOrder.weighted(weights)
    if spec.startswith("matrix:"):
        return AdditiveOrder.from_matrix(_load_matrix(spec[len("matrix:"):]))
    raise PuiseuxError(f"unknown order spec {spec!r}")


def _lattice_from_spec(spec: str, dim: int) -> Lattice:
    if spec == "zh":
        return Lattice.standard(dim)
    if spec.startswith("matrix:"):
        return Lattice(dim, _load_matrix(spec[len("matrix:"):]))
    raise PuiseuxError(f"unknown lattice spec {spec!r}")


def _emit(args, human_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(human_lines))


def _fmt_set(vectors) -> str:
    return ", ".join(fmt_vec(v) for v in sorted(vectors, key=lambda v: (total(v), v)))


def _fmt_entries(entries) -> str:
    return "(" + ", ".join(fmt_vec(e) for e in entries) + ")"


# ---------------------------------------------------------------------------
# verbs


def _cmd_analyze(args) -> int:
    psi = _parse_series(args)
    if args.precision is not None:
        psi = psi.truncate(rat(args.precision))
    order = _order_from_spec(args.order, psi.num_vars)
    lattice = _lattice_from_spec(args.lattice, psi.num_vars)
    ess = essential_of_series(psi, lattice=lattice, order=order)
    irr = irreducible_exponents(psi.support())
    lines = [
        f"series: {format_series(psi)}",
        f"ramification: ({', '.join(str(n) for n in psi.ramification)})",
        f"support: {_fmt_set(psi.support())}",
        f"irreducible exponents: {_fmt_set(irr)}",
        f"essential exponents: {_fmt_entries(ess.entries)}"
        + (" [complete]" if ess.complete else " [provisional]"),
    ]
    payload = {
        "series": psi.to_json(),
        "irreducible": [
            exponent_to_json(v) for v in sorted(irr, key=lambda v: (total(v), v))
        ],
        "essential": ess.to_json(),
    }
    if psi.num_vars == 1 and not psi.is_zero() and psi.constant_term() == 0:
        char = characteristic_exponents(psi)
        lines.append(
            "characteristic exponents: ("
            + ", ".join(str(e) for e in char.entries)
            + ")"
        )
        payload["characteristic"] = char.to_json()
    _emit(args, lines, payload)
    return 0


def _report_exit(report_ok: bool) -> int:
    return 0 if report_ok else 2


def _cmd_dual(args) -> int:
    phi = _parse_series(args).truncate(rat(args.precision or DEFAULT_PRECISION))
    checked = dual(phi)
    report_dual = verify_dual_identity(phi)
    lines = [
        f"dual: {format_series(checked, default_names(checked.num_vars, 'u'))}",
        report_dual.describe(),
    ]
    payload = {"dual": checked.to_json(), "report": report_dual.to_json()}
    _emit(args, lines, payload)
    return _report_exit(report_dual.all_passed)


def _xi_names(h: int) -> list[str]:
    if h == 1:
        return ["y"]
    return ["y1"] + [f"x{i}" for i in range(2, h + 1)]


def _cmd_invert(args) -> int:
    eta = _parse_series(args)
    target = rat(args.precision or DEFAULT_PRECISION)
    root = None if args.root_coeff is None else rat(args.root_coeff)
    result = invert_series(eta, target, root_coeff=root)
    h = eta.num_vars
    lines = [
        f"m1 = {result.m1}, n1 = {result.n1}, root = {result.root_coeff}",
        f"xi: {format_series(result.xi, _xi_names(h))}",
        "essential exponents of eta: " + _fmt_entries(result.ess_eta.entries)
        + (" [complete]" if result.ess_eta.complete else " [provisional]"),
        "essential exponents of xi:  " + _fmt_entries(result.ess_xi.entries)
        + (" [complete]" if result.ess_xi.complete else " [provisional]"),
        result.checks.describe(),
    ]
    _emit(args, lines, result.to_json())
    return _report_exit(result.checks.all_passed)


def _branch_for_target(eta, target, root):
    _, _, m1 = _dominating_profile(eta)
    max_div = max([m1] + list(eta.ramification[1:]))
    need = max(Fraction(0), target * max_div - eta.ramification[0])
    return extract_branch(eta, root, unit_precision=need)


def _cmd_lagrange(args) -> int:
    eta = _parse_series(args)
    if eta.num_vars != 1:
        raise PuiseuxError("the lagrange verb works on one-variable series")
    target = rat(args.precision or DEFAULT_PRECISION)
    root = None if args.root_coeff is None else rat(args.root_coeff)
    data = _branch_for_target(eta, target, root)
    m1, n1 = data.exponent_m, data.ramification[0]
    lines = []
    rows = []
    q = n1
    while Fraction(q, m1) <= target:
        coef = lagrange_coefficient(data, q)
        if coef != 0:
            lines.append(f"[xi]_{Fraction(q, m1)} = {coef}")
        rows.append({"exponent": str(Fraction(q, m1)), "coef": str(coef)})
        q += 1
    _emit(args, lines, {"m": m1, "n": n1, "coefficients": rows})
    return 0


def _cmd_verify(args) -> int:
    eta = _parse_series(args)
    target = rat(args.precision or DEFAULT_PRECISION)
    root = None if args.root_coeff is None else rat(args.root_coeff)
    result = invert_series(eta, target, root_coeff=root)
    data = _branch_for_target(eta, target, root)
    reports = [
        verify_halphen_stolz(result),
        verify_dual_identity(data.series),
        verify_power_identity(data.series, result.m1),
    ]
    if eta.num_vars == 1:
        oracle = CheckReport("Lagrange oracle equivalence")
        q = result.n1
        while Fraction(q, result.m1) <= result.xi.precision:
            exp = (Fraction(q, result.m1),)
            oracle.record(
                f"coefficient at y^{Fraction(q, result.m1)}",
                result.xi.coefficient(exp),
                lagrange_coefficient(data, q),
                exp,
            )
            q += 1
        reports.append(oracle)
    ok = all(r.all_passed for r in reports)
    lines = [r.describe() for r in reports]
    _emit(args, lines, {"reports": [r.to_json() for r in reports], "all_passed": ok})
    return _report_exit(ok)


def _cmd_qo(args) -> int:
    psi = _parse_series(args)
    verdict = qo_test(psi)
    label = {True: "yes", False: "no", None: "unknown beyond precision"}[verdict.is_qo]
    lines = [f"quasi-ordinary: {label}" + (" [certified]" if verdict.certified else "")]
    if verdict.char_exponents is not None:
        lines.append("characteristic exponents: " + _fmt_entries(verdict.char_exponents))
    if verdict.witness is not None:
        lines.append("witness: " + verdict.witness.describe())
    _emit(args, lines, verdict.to_json())
    return 0


def _cmd_toric(args) -> int:
    psi = _parse_series(args)
    if args.matrix is None:
        raise PuiseuxError("the toric verb needs --matrix FILE")
    q = _load_matrix(args.matrix)
    pulled = toric_pullback(psi, q)
    order = _order_from_spec(args.order, psi.num_vars)
    report = verify_qsigma_relation(psi, q, order)
    names = default_names(psi.num_vars, "v")
    lines = [f"pullback: {format_series(pulled, names)}", report.describe()]
    _emit(args, lines, {"pullback": pulled.to_json(), "report": report.to_json()})
    return _report_exit(report.all_passed)


def _cmd_corpus(args) -> int:
    from .corpus import run_corpus

    cases = run_corpus()
    ok = all(passed for _, passed, _ in cases)
    width = max(len(name) for name, _, _ in cases)
    lines = [
        f"{'PASS' if passed else 'FAIL'}  {name.ljust(width)}  {detail}"
        for name, passed, detail in cases
    ]
    lines.append(f"{sum(p for _, p, _ in cases)}/{len(cases)} corpus cases passed")
    payload = {
        "cases": [
            {"name": n, "passed": p, "detail": d} for n, p, d in cases
        ],
        "all_passed": ok,
    }
    _emit(args, lines, payload)
    return _report_exit(ok)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="puiseux", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, func, needs_series=True, **extra):
        p = sub.add_parser(verb)
        if needs_series:
            p.add_argument("series", help="series text, e.g. 'x^(3/2) + 2*x^(7/4)'")
            p.add_argument("--param", action="append", metavar="NAME=p/q",
                           help="substitute a coefficient symbol before parsing")
            p.add_argument("--laurent", action="store_true",
                           help="allow negative exponents (one variable)")
        p.add_argument("--precision", metavar="R", help="working precision (total degree)")
        p.add_argument("--order", default="lex", metavar="SPEC",
                       help="lex | weights:w1,...,wh | matrix:FILE")
        p.add_argument("--lattice", default="zh", metavar="SPEC",
                       help="zh | matrix:FILE")
        p.add_argument("--root-coeff", dest="root_coeff", metavar="p/q",
                       help="m-th root of the dominating coefficient")
        p.add_argument("--matrix", metavar="FILE", help="toric chart matrix (JSON rows)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("analyze", _cmd_analyze)
    add("dual", _cmd_dual)
    add("invert", _cmd_invert)
    add("lagrange", _cmd_lagrange)
    add("verify", _cmd_verify)
    add("qo", _cmd_qo)
    add("toric", _cmd_toric)
    add("corpus", _cmd_corpus, needs_series=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        # PuiseuxError is a ValueError; malformed rationals and unreadable
        # matrix files land here as well
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
