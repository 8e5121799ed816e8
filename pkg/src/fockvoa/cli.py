"""Command-line front end.

    fockvoa verify [SUITE] [--mode-cap N] [--degree-cap D] ... [--format json]
    fockvoa sigma CHARGE DEGREE
    fockvoa hirota TAU.json [--weight-cap W]
    fockvoa kp FRAME_OR_TAU.json [--k-max K] [--depth D] [--degree G]

Exit status: 0 pass, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bosefermi, fermion, psdo, verify
from .errors import VacuumNormalizationError
from .fermion import FermionState
from .tauhirota import GrassmannFrame, TauPolynomial, hirota_residual, tau_from_boson, tau_from_frame

SIGMA_MAX_CHARGE = 4
SIGMA_MAX_DEGREE = 8


class UsageError(Exception):
    """Bad input detected after argument parsing; maps to exit status 2."""


def _emit(args, payload: dict, lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _tau_text(tau: TauPolynomial) -> str:
    return tau.poly.to_str(lambda i: f"x{i}")


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    suite = args.suite_flag or args.suite or "all"
    if suite != "all" and suite not in verify.SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join([*verify.SUITES, 'all'])}")
    caps = verify.Caps(
        mode_cap=args.mode_cap,
        degree_cap=args.degree_cap,
        weight_cap=args.weight_cap,
        depth=args.depth,
        degree=args.degree,
        k_max=args.k_max,
        seed=args.seed,
    )
    names = list(verify.SUITES) if suite == "all" else [suite]
    reports, timings = [], {}
    for name in names:
        start = time.perf_counter()
        reports.extend(verify.run(name, caps))
        timings[name] = time.perf_counter() - start
    reports.sort(key=lambda r: r.name)
    passed = all(r.passed for r in reports)
    payload = {"passed": passed, "seed": args.seed, "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        head = f"{r.name}: {status} ({r.cases} cases, {len(r.failures)} failures)"
        if args.timing:
            head += f" [{timings.get(r.name, 0.0):.2f}s]"
            payload["reports"][reports.index(r)]["wall_time"] = round(timings.get(r.name, 0.0), 3)
        lines.append(head)
        lines.extend(f"  note: {n}" for n in r.notes)
        for f in sorted(r.failures, key=lambda f: f.input)[: args.max_failures]:
            lines.append(f"  fail: {f.input}: expected {f.expected}, got {f.actual}")
    lines.append("all suites passed" if passed else "verification FAILED")
    _emit(args, payload, lines)
    return 0 if passed else 1


# --------------------------------------------------------------------------
# sigma
# --------------------------------------------------------------------------


def cmd_sigma(args) -> int:
    if abs(args.charge) > SIGMA_MAX_CHARGE or not 0 <= args.sigma_degree <= SIGMA_MAX_DEGREE:
        raise UsageError(
            f"sigma table limited to |charge| <= {SIGMA_MAX_CHARGE} and 0 <= degree <= {SIGMA_MAX_DEGREE}"
        )
    rows, lines = [], []
    for mono in fermion.basis(args.charge, args.sigma_degree):
        image = bosefermi.sigma(FermionState({mono: 1}))
        tau = tau_from_boson(image) if args.charge == 0 else None
        rows.append(
            {
                "monomial": {"psi": list(mono.psi), "star": list(mono.star)},
                "degree": mono.degree,
                "sigma": image.to_json(),
                "tau": tau.to_json() if tau is not None else None,
            }
        )
        tau_s = _tau_text(tau) if tau is not None else "-"
        lines.append(f"{mono}  ->  {image}  |  tau = {tau_s}")
    _emit(args, {"charge": args.charge, "degree": args.sigma_degree, "rows": rows}, lines)
    return 0


# --------------------------------------------------------------------------
# file inputs
# --------------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_tau(path: str) -> TauPolynomial:
    data = _load_json(path)
    try:
        return TauPolynomial.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{path}: not a tau polynomial ({exc!r})") from exc


def _load_tau_or_frame(path: str) -> tuple[TauPolynomial, str]:
    data = _load_json(path)
    try:
        if isinstance(data, dict) and "rows" in data:
            return tau_from_frame(GrassmannFrame.from_json(data)), "frame"
        return TauPolynomial.from_json(data), "tau"
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{path}: not a frame or tau polynomial ({exc!r})") from exc


# --------------------------------------------------------------------------
# hirota / kp
# --------------------------------------------------------------------------


def cmd_hirota(args) -> int:
    tau = _load_tau(args.tau_file)
    R = hirota_residual(tau, tau, args.weight_cap)
    ok = R.is_zero()
    text = R.to_str(lambda v: f"{v[0]}{v[1]}")
    payload = {
        "tau": tau.to_json(),
        "weight_cap": args.weight_cap,
        "zero": ok,
        "residual": [
            {"vars": [[v[0], v[1], e] for v, e in m], "coeff": str(c)} for m, c in sorted(R.terms.items())
        ],
    }
    lines = [f"tau = {_tau_text(tau)}", f"residual (weight <= {args.weight_cap}) = {text}"]
    lines.append("bilinear identity holds" if ok else "bilinear identity FAILS")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_kp(args) -> int:
    tau, kind = _load_tau_or_frame(args.input)
    try:
        report = psdo.wave_checks(tau, args.k_max, args.depth, args.degree)
        L = psdo.lax_from_tau(tau, args.depth, args.degree, nvars=max(tau.nvars, args.k_max, 1))
    except VacuumNormalizationError as exc:
        _emit(args, {"input": kind, "passed": False, "error": str(exc)}, [f"error: {exc}"])
        return 1
    trivial = all(k == 1 or c.truncate(args.degree).is_zero() for k, c in L.coeffs.items()) and 1 in L.coeffs
    u1 = L.coeffs.get(-1)
    u1_text = str(u1.truncate(args.degree)) if u1 is not None else "0"
    lines = [f"input: {kind}, tau = {_tau_text(tau)}"]
    lines.append("L = d" if trivial else f"L = d + u1 d^-1 + ...,  u1 = {u1_text}")
    lines.extend(report.notes)
    for f in report.failures[: args.max_failures]:
        lines.append(f"  fail: {f.input}: expected {f.expected}, got {f.actual}")
    lines.append("all checks passed" if report.passed else "checks FAILED")
    payload = {
        "input": kind,
        "tau": tau.to_json(),
        "passed": report.passed,
        "lax_is_d": trivial,
        "report": report.to_json(),
    }
    _emit(args, payload, lines)
    return 0 if report.passed else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockvoa", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-failures", type=int, default=20, help="failures listed in text output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("suite", nargs="?", choices=[*verify.SUITES, "all"])
    p.add_argument("--suite", dest="suite_flag", choices=[*verify.SUITES, "all"])
    p.add_argument("--mode-cap", type=int)
    p.add_argument("--degree-cap", type=int, help="state degree (operator count for clifford)")
    p.add_argument("--weight-cap", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--timing", action="store_true", help="add wall times (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sigma", parents=[common], help="tabulate the boson-fermion map")
    p.add_argument("charge", type=int)
    p.add_argument("sigma_degree", metavar="degree", type=int)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("hirota", parents=[common], help="bilinear residual of a tau polynomial")
    p.add_argument("tau_file")
    p.add_argument("--weight-cap", type=int, default=8)
    p.set_defaults(func=cmd_hirota)

    p = sub.add_parser("kp", parents=[common], help="wave-function checks for a frame or tau")
    p.add_argument("input")
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--degree", type=int, default=5)
    p.set_defaults(func=cmd_kp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fockvoa {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
