"""Command-line front end.

Subcommands: build, verify, scan, clark, spectrum, plot.  Exit codes:
0 success / all checks passed, 1 verification or computation failure,
2 usage error.  All artifacts are written atomically; the output
directory defaults to ./out and is overridden by --out or TTO_LAB_OUT.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .blaschke import BlaschkeProduct, make_blaschke
from .errors import TtoLabError
from .harness import ScanReport, Scenario, run_scenario
from .modelspace import build_basis
from .operators import (
    FUNCTIONAL_CALCULUS,
    QUADRATURE,
    clark_functional_gap,
    clark_unitary,
    compressed_shift,
    polynomial_of_clark,
    truncated_toeplitz,
)
from .spectral import (
    IDENTITY_NAMES,
    eigenvalues,
    numerical_rank,
    singular_values,
    verify_identity,
)
from .symbols import TrigPolynomial, symbol_from_json, trig_monomial
from .svgplot import emit_plot
from ._util import atomic_write_text, cplx_to_pair, format_float, parse_complex

USAGE_ERROR = 2


class UsageError(Exception):
    """Bad flags or malformed inline values; exits with code 2."""


def _out_dir(args) -> str:
    if getattr(args, "out_dir", None):
        return args.out_dir
    return os.environ.get("TTO_LAB_OUT", "out")


def _parse_zeros(text: str) -> list[complex]:
    try:
        return [parse_complex(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"--zeros: {exc}\nexpected e.g. 0.5,0.3i,-0.2+0.1i") from exc


def _product_from_args(args) -> BlaschkeProduct:
    if getattr(args, "zeros", None):
        zeros = _parse_zeros(args.zeros)
    elif getattr(args, "degree", None):
        zeros = [0.0] * args.degree
    else:
        raise UsageError("one of --zeros or --degree is required")
    phase = parse_complex(args.phase) if getattr(args, "phase", None) else 1.0
    return make_blaschke(zeros, phase)


def _symbol_from_args(args):
    spec = getattr(args, "symbol", None)
    if spec is None or spec == "z":
        return trig_monomial(1)
    if spec == "chi":
        return symbol_from_json({"type": "chi"})
    if spec.endswith(".json") and os.path.exists(spec):
        with open(spec) as handle:
            return symbol_from_json(json.load(handle))
    try:
        return symbol_from_json(json.loads(spec))
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"--symbol: cannot parse {spec!r}; expected 'z', 'chi', a JSON "
            'literal like {"type":"trig","coeffs":{"1":[1,0]}}, or a path'
        ) from exc


def _write(path: str, text: str, verbose: bool) -> None:
    atomic_write_text(path, text)
    if verbose:
        print(f"wrote {path}", file=sys.stderr)


def cmd_build(args) -> int:
    u = _product_from_args(args)
    basis = build_basis(u, args.N)
    phi = _symbol_from_args(args)
    method = FUNCTIONAL_CALCULUS if args.method == "fc" else QUADRATURE
    if method == FUNCTIONAL_CALCULUS and not isinstance(phi, TrigPolynomial):
        raise UsageError("--method fc needs a trig-polynomial symbol")
    M = truncated_toeplitz(basis, phi, method=method)
    out = args.out or os.path.join(_out_dir(args), "matrix.csv")
    _write(out, M.to_csv(), args.verbose)
    if args.json:
        _write(
            os.path.splitext(out)[0] + ".json",
            json.dumps(M.to_json_dict(), sort_keys=True),
            args.verbose,
        )
    return 0


def cmd_verify(args) -> int:
    u = _product_from_args(args)
    basis = build_basis(u, args.N)
    names = IDENTITY_NAMES if args.all or not args.identity else tuple(args.identity)
    reports = []
    for name in names:
        report = verify_identity(name, basis, m=args.m, seed=args.seed)
        reports.append(report)
        print(
            f"{name:16s} residual={report.residual:.3e} "
            f"tol={report.tolerance:.0e} {'pass' if report.passed else 'FAIL'}"
        )
    out = os.path.join(_out_dir(args), "verify.json")
    payload = {
        "seed": args.seed,
        "zeros": [cplx_to_pair(a) for a in u.zeros],
        "reports": [json.loads(r.to_json()) for r in reports],
        "pass": all(r.passed for r in reports),
    }
    _write(out, json.dumps(payload, sort_keys=True), args.verbose)
    return 0 if payload["pass"] else 1


def cmd_scan(args) -> int:
    with open(args.config) as handle:
        data = json.load(handle)
    scenario = Scenario.from_json_dict(data)
    report = run_scenario(scenario)
    base = os.path.join(_out_dir(args), f"scan-{scenario.kind}")
    csv_path = data.get("out", {}).get("csv", base + ".csv")
    json_path = data.get("out", {}).get("json", base + ".json")
    _write(csv_path, report.to_csv(include_timings=args.timings), args.verbose)
    _write(json_path, report.to_json(include_timings=args.timings), args.verbose)
    print(f"scan {scenario.kind}: {'pass' if report.passed else 'FAIL'} ({report.label})")
    return 0 if report.passed else 1


def cmd_clark(args) -> int:
    u = _product_from_args(args)
    basis = build_basis(u, args.N)
    alpha = parse_complex(args.alpha)
    U = clark_unitary(basis, alpha)
    A = compressed_shift(basis)
    n = basis.dimension
    unitarity = float(np.linalg.norm(U.entries @ U.entries.conj().T - np.eye(n), 2))
    pert_rank = numerical_rank(U.entries - A.entries)
    evals = eigenvalues(U).eigenvalues
    eig_residual = float(np.max(np.abs(u.eval(evals) - alpha)))
    krylov = np.empty((n, n), dtype=complex)
    x = np.conj(basis.eval_basis([0.0])[:, 0])
    for i in range(n):
        krylov[:, i] = x
        x = U.entries @ x
    payload = {
        "alpha": cplx_to_pair(alpha),
        "zeros": [cplx_to_pair(a) for a in u.zeros],
        "unitarity_residual": unitarity,
        "perturbation_rank": pert_rank,
        "eigenvalue_residual": eig_residual,
        "krylov_rank": numerical_rank(krylov),
        "eigenvalues": [cplx_to_pair(v) for v in evals],
        "seed": args.seed,
    }
    ok = (
        unitarity < 1e-8
        and pert_rank == 1
        and eig_residual < 1e-6
        and payload["krylov_rank"] == n
    )
    if args.symbol:
        phi = _symbol_from_args(args)
        if not isinstance(phi, TrigPolynomial):
            raise UsageError("clark --symbol needs a trig polynomial")
        gap = clark_functional_gap(basis, alpha, phi)
        phi_U = polynomial_of_clark(basis, alpha, phi).entries
        comm = phi_U @ phi_U.conj().T - phi_U.conj().T @ phi_U
        payload["gap_rank"] = numerical_rank(gap)
        payload["rank_bound"] = phi.degree_plus + phi.degree_minus
        payload["normality_defect"] = float(np.linalg.norm(comm, 2))
        ok = (
            ok
            and payload["gap_rank"] <= payload["rank_bound"]
            and payload["normality_defect"] < 1e-8
        )
    payload["pass"] = ok
    out = os.path.join(_out_dir(args), "clark.json")
    _write(out, json.dumps(payload, sort_keys=True), args.verbose)
    print(f"clark: {'pass' if ok else 'FAIL'} (unitarity={unitarity:.3e})")
    return 0 if ok else 1


def cmd_spectrum(args) -> int:
    u = _product_from_args(args)
    basis = build_basis(u, args.N)
    phi = _symbol_from_args(args)
    M = truncated_toeplitz(basis, phi)
    eig = eigenvalues(M)
    sv = singular_values(M).singular_values
    lines = ["kind,index,re,im"]
    for i, v in enumerate(eig.eigenvalues):
        lines.append(f"eig,{i + 1},{format_float(v.real)},{format_float(v.imag)}")
    for i, s in enumerate(sv):
        lines.append(f"sv,{i + 1},{format_float(float(s))},0.0")
    out = args.out or os.path.join(_out_dir(args), "spectrum.csv")
    _write(out, "\n".join(lines) + "\n", args.verbose)
    payload = {
        "zeros": [cplx_to_pair(a) for a in u.zeros],
        "eigenvalues": [cplx_to_pair(v) for v in eig.eigenvalues],
        "singular_values": [float(s) for s in sv],
        "max_eig_residual": float(np.max(eig.residuals)),
        "seed": args.seed,
    }
    _write(os.path.splitext(out)[0] + ".json", json.dumps(payload, sort_keys=True), args.verbose)
    return 0


def cmd_plot(args) -> int:
    with open(args.report) as handle:
        data = json.load(handle)
    scenario = Scenario.from_json_dict(data["scenario"])
    report = _report_from_json(scenario, data)
    svg, raw_csv = emit_plot(report, args.kind)
    out = args.out or os.path.join(_out_dir(args), f"plot-{args.kind}.svg")
    _write(out, svg, args.verbose)
    _write(os.path.splitext(out)[0] + ".csv", raw_csv, args.verbose)
    return 0


def _report_from_json(scenario: Scenario, data: dict) -> ScanReport:
    from .harness import ScanRow

    rows = []
    for item in data.get("rows", []):
        row = ScanRow(degree=int(item["degree"]))
        for key in (
            "sigma_1",
            "sigma_q1",
            "sigma_mid",
            "sigma_min",
            "eig_dist",
            "residual",
        ):
            if key in item:
                setattr(row, key, float(item[key]))
        if "rank" in item:
            row.rank = int(item["rank"])
        if "error" in item:
            row.error = str(item["error"])
        if "eigenvalues" in item:
            row.eigenvalues = [complex(p[0], p[1]) for p in item["eigenvalues"]]
        if "singular_values" in item:
            row.singular_values = [float(s) for s in item["singular_values"]]
        rows.append(row)
    return ScanReport(
        scenario=scenario,
        rows=rows,
        passed=bool(data.get("pass", False)),
        label=str(data.get("label", "")),
    )


def _add_common(parser, with_basis=True):
    parser.add_argument("--out-dir", dest="out_dir", help="output directory")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    if with_basis:
        parser.add_argument("--zeros", help="comma-separated zeros, e.g. 0.5,0.3i")
        parser.add_argument("--degree", type=int, help="use u = z^degree")
        parser.add_argument("--phase", help="unimodular phase, e.g. -1 or 0.6+0.8i")
        parser.add_argument("--N", type=int, default=None, help="grid size override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tto-lab",
        description="numerical laboratory for truncated Toeplitz operators",
    )
    parser.add_argument("--version", action="version", version=f"tto-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a truncated Toeplitz matrix")
    _add_common(p)
    p.add_argument("--symbol", help="'z', 'chi', JSON literal, or JSON path")
    p.add_argument("--method", choices=("quadrature", "fc"), default="quadrature")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", action="store_true", help="also write JSON envelope")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run operator-identity checks")
    _add_common(p)
    p.add_argument("--all", action="store_true", help="run every identity")
    p.add_argument("--identity", action="append", choices=IDENTITY_NAMES)
    p.add_argument("--m", type=int, default=3, help="telescoping order")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="run a scenario from a JSON config")
    _add_common(p, with_basis=False)
    p.add_argument("--config", required=True, help="scenario JSON path")
    p.add_argument(
        "--timings",
        action="store_true",
        help="embed wall-clock timings (breaks byte-identical reruns)",
    )
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("clark", help="build and check a Clark unitary")
    _add_common(p)
    p.add_argument("--alpha", default="1", help="unimodular parameter")
    p.add_argument("--symbol", help="optional trig polynomial for the gap check")
    p.set_defaults(func=cmd_clark)

    p = sub.add_parser("spectrum", help="eigen/singular values of a TTO")
    _add_common(p)
    p.add_argument("--symbol", help="'z', 'chi', JSON literal, or JSON path")
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("plot", help="emit SVG from a scan report JSON")
    _add_common(p, with_basis=False)
    p.add_argument("--report", required=True, help="scan JSON path")
    p.add_argument("--kind", required=True, choices=("eig-scatter", "sv-decay"))
    p.add_argument("--out", help="SVG output path")
    p.set_defaults(func=cmd_plot)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (TtoLabError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
