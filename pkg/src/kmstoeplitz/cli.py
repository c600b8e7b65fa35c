"""KMS Toeplitz and Toeplitz-Hankel spectra, inverses, determinants and layered-gas plasmons.

Exit status: 0 success, 1 a ``verify`` check exceeded its tolerance,
2 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from .determinants import (
    det_c_exact,
    det_c_from_spectrum,
    det_c_recurrence,
    det_m_bulk_formula,
    det_m_exact,
    dos_weight,
    eigenvalue_bounds,
    szego_estimate,
)
from .errors import InvalidParams, MissingContrastParams, SingularBoundarySystem
from .inverse import c_inverse, m_inverse
from .matrices import KmsParams, ThParams, build_c, build_m
from .oracle import lu_det
from .plasmons import (
    contrast_branches,
    contrast_mapping,
    default_k_grid,
    geometric_mean_sumrule,
    gm_correction_factor,
    material_from_lab_units,
    omega_2d,
    omega_3d,
    plasmon_branches,
)
from .spectrum import c_spectrum, m_spectrum, reflected_hankel_spectrum
from .verify import run_checks


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def to_json(obj) -> str:
    """JSON with every float written to 17 significant digits; non-finite floats become null."""
    if obj is None or isinstance(obj, bool):
        return "null" if obj is None else ("true" if obj else "false")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(rows, header) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, (float, np.floating)) else str(v) for v in row))
    return "\n".join(lines) + "\n"


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _uses_m(args) -> bool:
    return any(getattr(args, name, None) is not None for name in ("a", "b", "c"))


def _th(args) -> ThParams:
    a = 1.0 if args.a is None else args.a
    b = 0.0 if args.b is None else args.b
    c = 0.0 if args.c is None else args.c
    return ThParams(a, b, c, args.kappa, args.n)


def _cmd_spectrum(args) -> str:
    matrix = args.matrix
    if matrix == "c" and _uses_m(args):
        matrix = "m"
    if matrix == "m":
        modes = [
            {"nu": m.nu, "q": m.q, "phi": None, "lambda": m.eigenvalue, "parity": m.parity,
             "source": m.source, "vector": m.eigenvector}
            for m in m_spectrum(_th(args))
        ]
    else:
        p = KmsParams(args.kappa, args.n)
        solver = c_spectrum if matrix == "c" else reflected_hankel_spectrum
        modes = [
            {"nu": m.nu, "q": m.q, "phi": m.phase_shift, "lambda": m.eigenvalue, "parity": m.parity,
             "source": "analytic_root", "vector": m.eigenvector}
            for m in solver(p)
        ]
    if args.format == "csv":
        header = ["nu", "q", "phi", "lambda", "parity", "source"]
        rows = [[m[h] if m[h] is not None else "" for h in header] for m in modes]
        return _csv(rows, header)
    return to_json(modes) + "\n"


def _cmd_invert(args) -> str:
    if _uses_m(args):
        inv = m_inverse(_th(args))
        base, x0, xn = inv.base, inv.x0, inv.xn
    else:
        base, x0, xn = c_inverse(KmsParams(args.kappa, args.n)), 0.0, 0.0
    return to_json({"order": base.order, "diag": base.diag, "offdiag": base.offdiag, "x0": x0, "xN": xn}) + "\n"


def _cmd_det(args) -> str:
    if _uses_m(args):
        t = _th(args)
        log_abs, sign = det_m_exact(t)
        bulk_log, bulk_sign = det_m_bulk_formula(t)
        o_log, o_sign = lu_det(build_m(t))
        out = {
            "matrix": "m", "log_abs_det": log_abs, "sign": sign,
            "routes": {
                "exact": {"log_abs_det": log_abs, "sign": sign},
                "bulk_formula": {"log_abs_det": bulk_log, "sign": bulk_sign},
                "oracle": {"log_abs_det": o_log, "sign": o_sign},
            },
        }
    else:
        p = KmsParams(args.kappa, args.n)
        exact = det_c_exact(p)
        out = {
            "matrix": "c", "log_abs_det": exact, "sign": 1,
            "routes": {
                "exact": exact,
                "recurrence": det_c_recurrence(p),
                "szego": szego_estimate(p),
                "eigenvalue_product": det_c_from_spectrum(p),
                "oracle": lu_det(build_c(p))[0],
            },
        }
    return to_json(out) + "\n"


def _cmd_dos(args) -> str:
    p = KmsParams(args.kappa, args.n)
    lo, hi = eigenvalue_bounds(p.kappa)
    if args.points < 1:
        raise InvalidParams("points must be >= 1")
    lam_min = lo if args.lambda_min is None else args.lambda_min
    lam_max = hi if args.lambda_max is None else args.lambda_max
    if not lo <= lam_min < lam_max <= hi:
        raise InvalidParams(f"grid must lie within ({lo}, {hi})")
    # open grid: cell midpoints, never touching the singular edges
    grid = lam_min + (lam_max - lam_min) * (np.arange(args.points) + 0.5) / args.points
    rows = [["grid", float(x), float(dos_weight(x, p))] for x in grid]
    for m in sorted(c_spectrum(p), key=lambda m: m.eigenvalue):
        rows.append(["eigenvalue", m.eigenvalue, float(dos_weight(m.eigenvalue, p))])
    return _csv(rows, ["kind", "lambda", "weight"])


def _cmd_plasmon(args) -> str:
    if args.layers < 1:
        raise InvalidParams("layers must be >= 1")
    if (args.eps0 is None) != (args.slab_L_angstrom is None):
        raise MissingContrastParams("--eps0 and --slab-L-angstrom must be given together")
    if not 0 < args.kd_min < args.kd_max or args.points < 1:
        raise InvalidParams("need 0 < kd-min < kd-max and points >= 1")
    mat = material_from_lab_units(
        args.d_angstrom, args.density_cm2, args.mass_me, args.eps, args.eps0, args.slab_L_angstrom
    )
    n = args.layers - 1
    ks = default_k_grid(mat, args.kd_min, args.kd_max, args.points)
    contrast = mat.has_contrast
    branches = contrast_branches(mat, n, ks) if contrast else plasmon_branches(mat, n, ks)
    w3 = omega_3d(mat)
    rows = []
    for i, k in enumerate(ks):
        gm = geometric_mean_sumrule(mat, n, k)
        if contrast:
            c_over_a, b_over_a = contrast_mapping(mat, k, n)
            gm *= gm_correction_factor(c_over_a, b_over_a, n, k * mat.d)
        rows.append([float(k)] + [float(b.omega[i]) for b in branches] + [gm, omega_2d(k, mat), w3])
    header = ["k_par_cm_inv"] + [f"omega_nu_{nu}" for nu in range(n + 1)] + ["omega_gm", "omega_2d", "omega_3d"]
    return _csv(rows, header)


def _cmd_verify(args):
    p = KmsParams(args.kappa, args.n)
    t = ThParams(args.a, args.b, args.c, args.kappa, args.n)
    results = run_checks(p, t)
    text = "\n".join(r.line() for r in results)
    failed = [r for r in results if not r.passed]
    summary = f"{len(results) - len(failed)}/{len(results)} checks passed"
    return text + "\n" + summary + "\n", (1 if failed else 0)


def _kms_flags(sp, th=True, th_defaults=(None, None, None)):
    sp.add_argument("--kappa", type=float, required=True, help="decay rate (> 0)")
    sp.add_argument("--n", type=int, required=True, help="maximum index N; matrix order is N+1")
    if th:
        a, b, c = th_defaults
        sp.add_argument("--a", type=float, default=a, help="Toeplitz-Hankel coefficient a")
        sp.add_argument("--b", type=float, default=b, help="Toeplitz-Hankel coefficient b (a != b)")
        sp.add_argument("--c", type=float, default=c, help="Toeplitz-Hankel Hankel coefficient c")
    sp.add_argument("-o", "--output", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmstoeplitz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="exact eigenpairs as JSON or CSV")
    _kms_flags(sp)
    sp.add_argument("--matrix", choices=["c", "hankel-reflected", "m"], default="c")
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = sub.add_parser("invert", help="tridiagonal / bordered inverse as JSON")
    _kms_flags(sp)

    sp = sub.add_parser("det", help="log-determinant by every available route, JSON")
    _kms_flags(sp)

    sp = sub.add_parser("dos", help="density of states on a grid plus exact eigenvalues, CSV")
    _kms_flags(sp, th=False)
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--lambda-min", type=float, default=None)
    sp.add_argument("--lambda-max", type=float, default=None)

    sp = sub.add_parser("plasmon", help="plasmon branches of a layered 2-d electron gas, CSV")
    sp.add_argument("--layers", type=int, required=True, help="number of layers N+1")
    sp.add_argument("--d-angstrom", type=float, required=True)
    sp.add_argument("--density-cm2", type=float, required=True)
    sp.add_argument("--mass-me", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--eps0", type=float, default=None)
    sp.add_argument("--slab-L-angstrom", dest="slab_L_angstrom", type=float, default=None)
    sp.add_argument("--kd-min", type=float, default=1e-2)
    sp.add_argument("--kd-max", type=float, default=3.0)
    sp.add_argument("--points", type=int, default=60)
    sp.add_argument("-o", "--output", default=None, help="output file (default: stdout)")

    sp = sub.add_parser("verify", help="run every analytic-vs-oracle check")
    _kms_flags(sp, th_defaults=(2.0, 0.1, 0.3))
    return parser


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "invert": _cmd_invert,
    "det": _cmd_det,
    "dos": _cmd_dos,
    "plasmon": _cmd_plasmon,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = _COMMANDS[args.command](args)
    except (InvalidParams, MissingContrastParams, SingularBoundarySystem, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text, code = result if isinstance(result, tuple) else (result, 0)
    with _open_out(args.output) as fh:
        fh.write(text)
    return code


def main() -> None:
    sys.exit(run())
