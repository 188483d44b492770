"""Command-line front end.

One command per invocation, a mandatory ``--signature p,q``, and an element
given either as an expression literal ("1 + 2*e1 - 3*e12") or as a JSON
coefficient array ordered by blade mask 0 .. 2**n - 1.  Results go to
stdout, diagnostics to stderr.  Exit codes: 0 success, 1 domain errors
(non-invertible input, generator out of range, zero input), 2 usage or
parse errors.  ``--output json`` emits a single object
``{command, signature, input, result, diagnostics}``.

The default scalar backend comes from the DLPQ_BACKEND environment
variable (``float64`` when unset).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Optional

from . import algebra, char_ops, expr, matrix_rep, zero_divisor
from .algebra import Element, Signature, conjugate, mul, one, scalar_part
from .scalars import BACKENDS, FLOAT64, ScalarBackend, scalar_json, scalar_str

COMMANDS = (
    "eval",
    "det",
    "trace",
    "charpoly",
    "adjoint",
    "inverse",
    "matrix",
    "witness",
    "verify",
)

VERIFY_SUITES = (
    "conjugation",
    "trace",
    "det",
    "charpoly",
    "cayley-hamilton",
    "inverse",
    "witness",
    "all",
)

_EPILOG = """\
input forms:
  expression        "1 + 2*e1 - 3/4*e12"   (grammar: docs/grammar.ebnf)
  JSON array        "[1, 2, 0, -0.75]"     coefficients by blade mask 0..2^n-1
environment:
  DLPQ_BACKEND      default scalar backend (float64 | rational)
"""


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--signature",
        "-s",
        required=True,
        metavar="P,Q",
        help="algebra signature: p generators square to +1, q to -1",
    )
    common.add_argument(
        "--backend",
        choices=sorted(BACKENDS),
        default=None,
        help="scalar backend (default: $DLPQ_BACKEND or float64)",
    )
    common.add_argument(
        "--output",
        choices=("pretty", "json"),
        default="pretty",
        help="output format",
    )
    common.add_argument(
        "--tolerance",
        type=float,
        default=1e-9,
        metavar="REL",
        help="relative tolerance for float comparisons and singularity checks",
    )

    ap = argparse.ArgumentParser(
        prog="dlpq",
        description="commutative Clifford algebra DL(p,q) calculator",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "evaluate an expression and print its canonical form",
        "det": "determinant of the element",
        "trace": "trace of the element",
        "charpoly": "characteristic polynomial coefficients",
        "adjoint": "adjoint (product of all nontrivial conjugates)",
        "inverse": "multiplicative inverse, if the determinant is nonzero",
        "matrix": "the 2^n x 2^n matrix representation (CSV or JSON)",
        "witness": "unit/zero-divisor classification with a verified witness",
        "verify": "run named invariant suites on the element",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verify":
            sp.add_argument(
                "--suite",
                choices=VERIFY_SUITES,
                default="all",
                help="which property suite to run",
            )
        sp.add_argument("input", help="element expression or JSON coefficient array")
    return ap


def _parse_signature(text: str) -> Signature:
    parts = text.split(",")
    if len(parts) != 2:
        raise _CliError(f"--signature must look like 'p,q', got {text!r}", 2)
    try:
        p, q = int(parts[0]), int(parts[1])
        return Signature(p, q)
    except ValueError as exc:
        raise _CliError(f"bad signature {text!r}: {exc}", 2) from exc


def _resolve_backend(flag: Optional[str]) -> ScalarBackend:
    name = flag or os.environ.get("DLPQ_BACKEND") or FLOAT64.name
    try:
        return BACKENDS[name]
    except KeyError:
        raise _CliError(
            f"unknown backend {name!r} (from --backend or $DLPQ_BACKEND); "
            f"choose from {sorted(BACKENDS)}",
            2,
        ) from None


def _read_element(text: str, sig: Signature, backend: ScalarBackend) -> Element:
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            values = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise _CliError(f"bad JSON coefficient array: {exc}", 2) from exc
        if not isinstance(values, list):
            raise _CliError("JSON input must be an array of coefficients", 2)
        if len(values) != sig.dim:
            raise _CliError(
                f"need {sig.dim} coefficients for {sig}, got {len(values)}", 2
            )
        try:
            return algebra.element(sig, values, backend)
        except (TypeError, ValueError) as exc:
            raise _CliError(f"bad coefficient value: {exc}", 2) from exc
    try:
        return expr.parse_element(stripped, sig, backend)
    except expr.GeneratorRangeError as exc:
        raise _CliError(str(exc), 1) from exc
    except expr.ExprError as exc:
        raise _CliError(str(exc), 2) from exc


def _element_result(el: Element) -> dict:
    return {
        "coeffs": [scalar_json(c) for c in el.coeffs],
        "text": expr.format_element(el),
    }


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _masks_capped(sig: Signature, cap: int = 64) -> range:
    return range(min(sig.dim, cap))


def _partner(u: Element) -> Element:
    # deterministic second element for the two-argument laws
    be_one = one(u.sig, _backend_of_element(u))
    return conjugate(u, u.sig.dim - 1) + be_one


def _backend_of_element(u: Element) -> ScalarBackend:
    from .scalars import backend_of

    return backend_of(u.coeffs[0])


def _close(a: Element, b: Element, tol: float) -> bool:
    if not isinstance(a.coeffs[0], float):
        return a.coeffs == b.coeffs
    return a.isclose(b, tol)


def _close_s(a, b, tol: float, scale_hint=None) -> bool:
    if not isinstance(a, float) and not isinstance(b, float):
        return a == b
    a, b = float(a), float(b)
    scale = max(abs(a), abs(b), float(scale_hint or 0.0))
    return abs(a - b) <= tol * scale if scale else a == b


def _suite_conjugation(u: Element, tol: float):
    sig = u.sig
    v = _partner(u)
    masks = _masks_capped(sig)
    yield "involution", all(
        _close(conjugate(conjugate(u, m), m), u, tol) for m in masks
    ), "conjugating twice restores the element"
    two, three = 2, 3
    yield "linearity", all(
        _close(
            conjugate(two * u + three * v, m),
            two * conjugate(u, m) + three * conjugate(v, m),
            tol,
        )
        for m in masks
    ), "conjugation of 2u+3v matches the combination of conjugates"
    yield "xor-composition", all(
        _close(conjugate(conjugate(u, m1), m2), conjugate(u, m1 ^ m2), tol)
        for m1 in masks
        for m2 in masks
    ), "masks compose by xor"
    yield "multiplicativity", all(
        _close(conjugate(mul(u, v), m), mul(conjugate(u, m), conjugate(v, m)), tol)
        for m in masks
    ), "conjugation distributes over the product"


def _suite_trace(u: Element, tol: float):
    t = char_ops.trace(u)
    yield "matrix-trace", _close_s(t, matrix_rep.oracle_trace(u), tol), (
        f"trace = {scalar_str(t)}"
    )
    summed = char_ops.trace_by_conjugates(u)
    grade0 = all(not c for c in summed.coeffs[1:]) or (
        isinstance(t, float)
        and max(abs(c) for c in summed.coeffs[1:]) <= tol * u.sig.dim * (u.max_norm() or 1.0)
    )
    yield "conjugate-sum", grade0 and _close_s(scalar_part(summed), t, tol), (
        "sum of all conjugates is the scalar trace"
    )


def _suite_det(u: Element, tol: float):
    d_full = char_ops.det_full_product(u, tol)
    d_rec = char_ops.det_recursive(u)
    d_fl = char_ops.charpoly_fl(u).det
    d_mat = matrix_rep.oracle_det(u)
    hint = float(abs(d_mat)) or None
    yield "full-vs-recursive", _close_s(d_full, d_rec, tol, hint), (
        f"det = {scalar_str(d_rec)}"
    )
    yield "leverrier", _close_s(d_fl, d_rec, tol, hint), "matrix-free recursion agrees"
    yield "matrix-oracle", _close_s(d_rec, d_mat, tol, hint), "matrix determinant agrees"
    yield "conjugate-invariance", all(
        _close_s(char_ops.det_recursive(conjugate(u, m)), d_rec, tol, hint)
        for m in _masks_capped(u.sig)
    ), "all conjugates share the determinant"


def _suite_charpoly(u: Element, tol: float):
    psi = char_ops.charpoly_symmetric(u, tol)
    yield "symmetric-vs-matrix", psi.isclose(matrix_rep.oracle_charpoly(u), tol), (
        f"psi = {psi}"
    )
    yield "symmetric-vs-leverrier", psi.isclose(char_ops.charpoly_fl(u).charpoly, tol), (
        "matrix-free recursion agrees"
    )
    yield "det-and-trace-ends", (
        _close_s(psi.coeffs[0], char_ops.det_recursive(u), tol)
        and _close_s(psi.coeffs[-2], -char_ops.trace(u), tol)
    ), "c_0 is the determinant, c_{N-1} is minus the trace"


def _suite_cayley_hamilton(u: Element, tol: float):
    psi = char_ops.charpoly_symmetric(u, tol)
    zero_el = algebra.zero(u.sig, _backend_of_element(u))
    scale_hint = max(float(u.max_norm()), 1.0) ** u.sig.dim
    ok = True
    for m in _masks_capped(u.sig, 16):
        val = psi.evaluate(conjugate(u, m))
        if isinstance(val.coeffs[0], float):
            if float(val.max_norm()) > tol * scale_hint * u.sig.dim:
                ok = False
                break
        elif not _close(val, zero_el, tol):
            ok = False
            break
    yield "cayley-hamilton", ok, "every conjugate satisfies the characteristic equation"


def _suite_inverse(u: Element, tol: float):
    try:
        inv = char_ops.inverse(u, tol)
    except char_ops.NotInvertibleError as exc:
        report = zero_divisor.classify(u, tol)
        yield "not-invertible-branch", not report.is_unit and report.witness is not None, (
            f"NOT_INVERTIBLE (det = {scalar_str(exc.det)}); zero-divisor witness found"
        )
        return
    be = _backend_of_element(u)
    yield "round-trip", _close(mul(u, inv), one(u.sig, be), tol), "u * u^-1 = 1"
    yield "inverse-of-conjugate", all(
        char_ops.inverse_of_conjugate_check(u, m, tol)
        for m in _masks_capped(u.sig, 16)
    ), "inverse commutes with conjugation"


def _suite_witness(u: Element, tol: float):
    try:
        report = zero_divisor.classify(u, tol)
    except zero_divisor.ZeroInputError:
        yield "classify", False, "zero element is outside the classification domain"
        return
    kern = matrix_rep.kernel_witness(u, tol)
    yield "kernel-agreement", report.is_unit == (kern is None), (
        "unit classification matches matrix kernel emptiness"
    )
    if report.is_unit:
        yield "unit", not zero_divisor.is_zero_divisor(u, tol), (
            f"det = {scalar_str(report.det)} is nonzero"
        )
    else:
        prod = mul(u, report.witness)
        sound = not report.witness.is_zero() and (
            prod.is_zero()
            if not isinstance(prod.coeffs[0], float)
            else float(prod.max_norm())
            <= 1e-8 * float(u.max_norm()) * float(report.witness.max_norm())
        )
        yield "witness-soundness", sound, (
            f"witness path masks {list(report.witness_path)}"
        )


_SUITES: dict[str, Callable] = {
    "conjugation": _suite_conjugation,
    "trace": _suite_trace,
    "det": _suite_det,
    "charpoly": _suite_charpoly,
    "cayley-hamilton": _suite_cayley_hamilton,
    "inverse": _suite_inverse,
    "witness": _suite_witness,
}


def _run_verify(u: Element, suite: str, tol: float) -> list[dict]:
    names = list(_SUITES) if suite == "all" else [suite]
    results = []
    for name in names:
        for prop, passed, note in _SUITES[name](u, tol):
            results.append(
                {"suite": name, "property": prop, "passed": bool(passed), "note": note}
            )
    return results


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _execute(args, sig: Signature, backend: ScalarBackend, el: Element):
    """Returns (json_result, pretty_lines, exit_code)."""
    tol = args.tolerance
    cmd = args.command
    if cmd == "eval":
        res = _element_result(el)
        return res, [res["text"]], 0
    if cmd == "det":
        d = char_ops.det_recursive(el)
        return scalar_json(d), [scalar_str(d)], 0
    if cmd == "trace":
        t = char_ops.trace(el)
        return scalar_json(t), [scalar_str(t)], 0
    if cmd == "charpoly":
        psi = char_ops.charpoly_symmetric(el, tol)
        return psi.to_json(), [str(psi)], 0
    if cmd == "adjoint":
        adj = char_ops.adjoint(el)
        res = _element_result(adj)
        return res, [res["text"]], 0
    if cmd == "inverse":
        inv = char_ops.inverse(el, tol)
        res = _element_result(inv)
        return res, [res["text"]], 0
    if cmd == "matrix":
        rep = matrix_rep.represent(el)
        return rep.to_json_obj(), rep.to_csv().splitlines(), 0
    if cmd == "witness":
        report = zero_divisor.classify(el, tol)
        res = report.to_json()
        if report.is_unit:
            lines = [f"unit: det = {scalar_str(report.det)}"]
        else:
            lines = [
                "zero divisor: det = 0",
                f"witness: {expr.format_element(report.witness)}",
                f"path masks: {list(report.witness_path)}",
            ]
        return res, lines, 0
    if cmd == "verify":
        results = _run_verify(el, args.suite, tol)
        lines = [
            f"{'PASS' if r['passed'] else 'FAIL'} {r['suite']}/{r['property']}: {r['note']}"
            for r in results
        ]
        code = 0 if all(r["passed"] for r in results) else 1
        return {"suite": args.suite, "properties": results}, lines, code
    raise _CliError(f"unknown command {cmd!r}", 2)


def _emit(args, sig, json_result, pretty_lines, diagnostics, code, out, err) -> int:
    for d in diagnostics:
        print(d, file=err)
    if args.output == "json":
        obj = {
            "command": args.command,
            "signature": [sig.p, sig.q] if sig else None,
            "input": args.input,
            "result": json_result,
            "diagnostics": diagnostics,
        }
        print(json.dumps(obj), file=out)
    else:
        for line in pretty_lines:
            print(line, file=out)
    return code


def run(argv, out=None, err=None) -> int:
    """Run one CLI invocation; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    sig = None
    try:
        sig = _parse_signature(args.signature)
        backend = _resolve_backend(args.backend)
        el = _read_element(args.input, sig, backend)
        json_result, pretty_lines, code = _execute(args, sig, backend, el)
        return _emit(args, sig, json_result, pretty_lines, [], code, out, err)
    except _CliError as exc:
        return _emit(args, sig, None, [], [str(exc)], exc.code, out, err)
    except char_ops.NotInvertibleError as exc:
        diag = (
            f"NOT_INVERTIBLE: {exc}; "
            f"try `dlpq witness` for a zero-divisor witness"
        )
        return _emit(args, sig, None, [], [diag], 1, out, err)
    except zero_divisor.ZeroInputError as exc:
        return _emit(args, sig, None, [], [f"ZERO_INPUT: {exc}"], 1, out, err)
    except expr.GeneratorRangeError as exc:
        return _emit(args, sig, None, [], [str(exc)], 1, out, err)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
