"""Command-line interface: JSON/CSV front end over the library.

Exit codes: 0 success, 1 numerical failure (tolerance breach), 2 usage or
input error. Output is deterministic for fixed flags and seed.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import cayley, checks, diffops, fields, geodesics, linalg
from . import metrics, reduction, spaces, theta
from .diffops import FDConfig
from .groups import HeisenbergElement
from .metrics import MetricParams
from .spaces import TangentVector

USAGE_ERROR = 2
NUMERIC_FAILURE = 1

_SCALAR_RE = re.compile(r"^([+-]?\d*\.?\d*(?:[eE][+-]?\d+)?)?([+-]?\d*\.?\d*(?:[eE][+-]?\d+)?)i$")


def parse_scalar_complex(text: str) -> complex:
    """Accepts 'a,b', 'i', '2i', 'a+bi' and plain real literals."""
    text = text.strip()
    if "," in text:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    if text.endswith("i"):
        if text in ("i", "+i"):
            return 1j
        if text == "-i":
            return -1j
        match = _SCALAR_RE.match(text)
        if match:
            re_s, im_s = match.groups()
            im_s = im_s or ""
            if re_s and im_s:
                return complex(float(re_s), float(im_s if im_s not in "+-" else im_s + "1"))
            return complex(0.0, float(re_s or "1"))
        raise ValueError(f"cannot parse complex literal {text!r}")
    return complex(float(text), 0.0)


def parse_matrix_arg(text: str):
    """Full matrix JSON, or a scalar shorthand for 1 x 1."""
    text = text.strip()
    if text.startswith("{"):
        return linalg.matrix_from_json(json.loads(text))
    return np.array([[parse_scalar_complex(text)]])


def parse_point_arg(text: str):
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        for key in ("omega", "z", "w", "eta"):
            if key in obj and not isinstance(obj[key], dict):
                obj[key] = linalg.matrix_to_json(np.array([[parse_scalar_complex(str(obj[key]))]]))
        return spaces.point_from_json(obj)
    return spaces.SiegelPoint.create(parse_matrix_arg(text))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_check(args) -> int:
    try:
        rows = checks.run_suite(args.suite, seed=args.seed, tol_scale=args.tol_scale)
    except KeyError:
        print(f"unknown suite {args.suite!r}; choose from "
              f"{sorted(checks.SUITES)}", file=sys.stderr)
        return USAGE_ERROR
    lines = ["case,lhs,rhs,residual,tol,pass"] + [r.csv() for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    failures = [r for r in rows if not r.passed]
    for r in failures:
        print(f"FAIL {r.case}: residual {r.residual:.3e} > tol {r.tol:.3e}",
              file=sys.stderr)
    return NUMERIC_FAILURE if failures else 0


def cmd_distance(args) -> int:
    p0 = parse_point_arg(args.p0)
    p1 = parse_point_arg(args.p1)
    rho = geodesics.siegel_distance(p0, p1)
    if args.emit_eigs:
        eigs = geodesics.cross_ratio_eigenvalues(p0, p1)
        sys.stdout.write("eigenvalue\n" + "".join(f"{x!r}\n" for x in eigs))
    _emit({"distance": rho})
    return 0


def cmd_cayley(args) -> int:
    point = parse_point_arg(args.point)
    if args.dir == "fwd":
        out = cayley.to_half_space(point)
    else:
        out = cayley.to_disk(point)
    _emit(out.to_json())
    return 0


def cmd_reduce(args) -> int:
    point = parse_point_arg(args.point)
    if args.space == "hn":
        reduced, cert = reduction.siegel_reduce(point)
    else:
        reduced, cert = reduction.jacobi_reduce(point)
    _emit(reduced.to_json())
    if args.cert:
        payload = {"iterations": cert.iterations, "checks": cert.checks,
                   "gamma": cert.gamma.to_json()}
        with open(args.cert, "w") as handle:
            json.dump(payload, handle, sort_keys=True)
    return 0 if cert.passed else NUMERIC_FAILURE


def parse_tangent_arg(text: str, n: int) -> TangentVector:
    """Tangent JSON {"domega": <matrix>, "dz": <matrix>} with scalar
    shorthand; a bare matrix/scalar is read as the omega-part."""
    text = text.strip()
    if text.startswith("{") and '"domega"' in text:
        obj = json.loads(text)
        d_omega = (linalg.matrix_from_json(obj["domega"])
                   if isinstance(obj["domega"], dict)
                   else np.array([[parse_scalar_complex(str(obj["domega"]))]]))
        if "dz" in obj:
            d_z = (linalg.matrix_from_json(obj["dz"]) if isinstance(obj["dz"], dict)
                   else np.array([[parse_scalar_complex(str(obj["dz"]))]]))
        else:
            d_z = np.zeros((0, d_omega.shape[0]), dtype=complex)
        return TangentVector(d_omega, d_z)
    d_omega = parse_matrix_arg(text)
    return TangentVector(d_omega, np.zeros((0, d_omega.shape[0]), dtype=complex))


def cmd_metric(args) -> int:
    point = parse_point_arg(args.point)
    t1 = parse_tangent_arg(args.t1, point.n)
    t2 = parse_tangent_arg(args.t2, point.n)
    params = MetricParams(args.A, args.B)
    if args.space == "hn":
        value = metrics.siegel_metric(point, t1, t2, args.A)
    elif args.space == "hnm":
        value = metrics.jacobi_metric(point, t1, t2, params)
    elif args.space == "dn":
        value = metrics.disk_metric(point, t1, t2, args.A)
    else:
        value = metrics.jacobi_disk_metric(point, t1, t2, params)
    _emit({"re": value.real, "im": value.imag})
    return 0


def cmd_laplacian(args) -> int:
    point = parse_point_arg(args.point)
    field = fields.builtin_field(args.field, s=parse_scalar_complex(args.s), a=args.a)
    cfg = FDConfig()
    if args.space == "hn":
        value = diffops.laplacian_siegel(field, point, args.A, cfg)
    else:
        value = diffops.laplacian_jacobi(field, point, MetricParams(args.A, args.B), cfg)
    _emit({"re": value.real, "im": value.imag})
    return 0


def cmd_theta(args) -> int:
    m_mat = parse_matrix_arg(args.M).real
    ctx = theta.ThetaContext(m_mat, n=1, n_cut=args.n_cut)
    coord = theta.SL2Coord(parse_scalar_complex(args.tau), args.phi)
    lam = np.atleast_2d(np.asarray(json.loads(args.lam), dtype=float))
    mu = np.atleast_2d(np.asarray(json.loads(args.mu), dtype=float))
    kappa = np.atleast_2d(np.asarray(json.loads(args.kappa), dtype=float))
    h = HeisenbergElement(lam, mu, kappa)
    f = theta.gaussian(ctx)
    value = theta.theta_sum(f, ctx, coord, h)
    result = {"re": value.real, "im": value.imag}
    if args.check:
        rows = [r for r in checks.suite_theta(seed=args.seed)
                if r.case.startswith(args.check)]
        sys.stdout.write("case,lhs,rhs,residual,tol,pass\n"
                         + "".join(r.csv() + "\n" for r in rows))
        if any(not r.passed for r in rows):
            return NUMERIC_FAILURE
    _emit(result)
    return 0


def cmd_element(args) -> int:
    from .groups import parse_generator_word
    g = parse_generator_word(args.word, args.n)
    _emit(g.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="siegeljacobi",
                                     description="Siegel-Jacobi space numerics")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol-scale", type=float, default=1.0,
                        help="multiplies all default tolerances (floor 1)")
    sub = parser.add_subparsers(dest="command", parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    p_check = sub.add_parser("check", help="run an invariant battery, emit CSV")
    p_check.add_argument("--suite", required=True)
    p_check.add_argument("--out", default=None)
    p_check.set_defaults(func=cmd_check)

    p_dist = sub.add_parser("distance", help="geodesic distance between two points")
    p_dist.add_argument("--p0", required=True)
    p_dist.add_argument("--p1", required=True)
    p_dist.add_argument("--emit-eigs", action="store_true")
    p_dist.set_defaults(func=cmd_distance)

    p_cay = sub.add_parser("cayley", help="Cayley / partial Cayley transform")
    p_cay.add_argument("--dir", choices=("fwd", "inv"), required=True)
    p_cay.add_argument("--point", required=True)
    p_cay.set_defaults(func=cmd_cayley)

    p_red = sub.add_parser("reduce", help="fundamental-domain reduction")
    p_red.add_argument("--space", choices=("hn", "hnm"), required=True)
    p_red.add_argument("--point", required=True)
    p_red.add_argument("--cert", default=None)
    p_red.set_defaults(func=cmd_reduce)

    p_met = sub.add_parser("metric", help="invariant metric value on tangents")
    p_met.add_argument("--space", choices=("hn", "hnm", "dn", "dnm"), required=True)
    p_met.add_argument("--A", type=float, default=1.0)
    p_met.add_argument("--B", type=float, default=1.0)
    p_met.add_argument("--point", required=True)
    p_met.add_argument("--t1", required=True)
    p_met.add_argument("--t2", required=True)
    p_met.set_defaults(func=cmd_metric)

    p_lap = sub.add_parser("laplacian", help="invariant Laplacian of a builtin field")
    p_lap.add_argument("--space", choices=("hn", "hnm"), required=True)
    p_lap.add_argument("--A", type=float, default=1.0)
    p_lap.add_argument("--B", type=float, default=1.0)
    p_lap.add_argument("--field", required=True)
    p_lap.add_argument("--s", default="1.0")
    p_lap.add_argument("--a", type=float, default=1.0)
    p_lap.add_argument("--point", required=True)
    p_lap.set_defaults(func=cmd_laplacian)

    p_th = sub.add_parser("theta", help="theta sum and transformation checks")
    p_th.add_argument("--M", required=True)
    p_th.add_argument("--tau", required=True)
    p_th.add_argument("--phi", type=float, required=True)
    p_th.add_argument("--lam", default="[[0.0]]")
    p_th.add_argument("--mu", default="[[0.0]]")
    p_th.add_argument("--kappa", default="[[0.0]]")
    p_th.add_argument("--n-cut", type=int, default=10)
    p_th.add_argument("--check", choices=("jacobi1", "jacobi2", "jacobi3", "gamma2"),
                      default=None)
    p_th.set_defaults(func=cmd_theta)

    p_el = sub.add_parser("element", help="symplectic element from a generator word")
    p_el.add_argument("--word", required=True,
                      help="semicolon-separated word, e.g. 't(0.5);g(0.2);s'")
    p_el.add_argument("--n", type=int, default=1)
    p_el.set_defaults(func=cmd_element)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return USAGE_ERROR
    try:
        return args.func(args)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ArithmeticError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return NUMERIC_FAILURE


if __name__ == "__main__":
    sys.exit(main())
