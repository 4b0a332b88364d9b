"""Command-line front end.

Exit codes: 0 success, 1 violated bound or failed certificate, 2 invalid
parameters, 3 unreadable input or unwritable output.

    qcharmonic construct --schwarz-monomial 1,1 --alpha 1.5 --lambda-re 0.5 --n 1 -o heart.json
    qcharmonic verify --mapping heart.json
    qcharmonic radius --equation rc
    qcharmonic counterexample --beta 2.5
    qcharmonic plot --mapping heart.json -o heart.svg
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import bounds, radii
from .mapclass import (
    ClassParameterError,
    ClassParams,
    HarmonicMapping,
    SchwarzFunction,
    collision_pair,
    counterexample_h,
    counterexample_order,
    couple_g,
    extremal_h,
    from_schwarz,
    sample_membership,
)
from .render import RenderSpec, render
from .series import ComplexSeries, evaluate

EXIT_OK, EXIT_VIOLATION, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3

COLLISION_VALUE_TOL = 1e-10
COLLISION_MIN_DISTANCE = 1e-2


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _params(args) -> ClassParams:
    if args.alpha is None:
        raise CliError("--alpha is required for class members", EXIT_PARAMS)
    try:
        return ClassParams(args.alpha, complex(args.lambda_re, args.lambda_im), args.n)
    except (ClassParameterError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PARAMS) from exc


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc


def _load_mapping(path) -> HarmonicMapping:
    data = _read_json(path)
    try:
        return HarmonicMapping.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise CliError(f"{path} is not a mapping file: {exc}", EXIT_IO) from exc
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARAMS) from exc


def _coeff_list(data, order):
    if isinstance(data, dict):
        data = data["h"]
    out = []
    for c in data:
        out.append(complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c))
    return ComplexSeries(out, order if order is not None else len(out) - 1)


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def cmd_construct(args) -> int:
    info = sys.stderr if args.output in (None, "-") else sys.stdout
    order = args.order
    if order < 3:
        raise CliError("--order must be >= 3", EXIT_PARAMS)
    if args.h_beta is not None:
        try:
            h = counterexample_h(args.h_beta, order)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PARAMS) from exc
        f = HarmonicMapping(h, ComplexSeries.constant(0, order), None, {"beta": args.h_beta})
        alpha = (1 + args.h_beta) / 2
        print("K: n/a (g = 0, conformal)", file=info)
    else:
        params = _params(args)
        try:
            if args.schwarz_monomial is not None:
                c_str, m_str = args.schwarz_monomial.split(",")
                w = SchwarzFunction.monomial(complex(c_str.replace(" ", "")), int(m_str), order)
                f = from_schwarz(w, params)
            elif args.h_extremal is not None:
                f = couple_g(extremal_h(args.h_extremal, params.alpha, order), params)
            else:
                data = _read_json(args.h_coeffs)
                f = couple_g(_coeff_list(data, order), params)
        except CliError:
            raise
        except (ValueError, TypeError, KeyError, IndexError) as exc:
            raise CliError(str(exc), EXIT_PARAMS) from exc
        alpha = params.alpha
        print(f"K: {params.K:.12g}", file=info)
    sample = sample_membership(f.h, alpha)
    verdict = "pass" if sample.passed else "FAIL"
    print(f"membership (sampled, necessary condition): max Re(1 + z h''/h') = "
          f"{sample.max_real_part:.12g} vs alpha = {alpha:.12g}: {verdict}", file=info)
    _write(f.dumps() + "\n", args.output)
    return EXIT_OK


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise CliError(f"bad number list {text!r}", EXIT_PARAMS) from exc


def cmd_verify(args) -> int:
    f = _load_mapping(args.mapping)
    if f.params is None:
        raise CliError("verify needs a class member (mapping without alpha/lambda/n)", EXIT_PARAMS)
    checks = []
    for c in (c.strip() for c in args.checks.split(",")):
        checks += list(bounds.ALL_CHECKS) if c == "all" else [c]
    known = set(bounds.ALL_CHECKS) | set(bounds.OPTIONAL_CHECKS) | {"partial-sum"}
    unknown = [c for c in checks if c not in known]
    if unknown:
        raise CliError(f"unknown checks {unknown}; choose from {sorted(known)}", EXIT_PARAMS)
    rs = _floats(args.r)
    if any(not 0 < r < 1 for r in rs):
        raise CliError("radii must lie in (0, 1)", EXIT_PARAMS)
    reports = bounds.verify_mapping(f, [c for c in checks if c != "partial-sum"], rs,
                                    _floats(args.delta), args.angles)
    if "partial-sum" in checks:
        if f.params.n != 1:
            raise CliError("partial-sum radii apply to n = 1", EXIT_PARAMS)
        top = min(6, f.order)
        pairs = [(m, l) for m in range(1, top + 1) for l in range(2, top + 1)]
        reports += radii.verify_cc_many(f, pairs, 0.99 * radii.radius_cc())
    ok = True
    for rep in reports:
        print(rep.to_json())
        if not rep.satisfied:
            ok = False
            print(f"violated: {rep.to_json()}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_radius(args) -> int:
    rep = radii.solve_radius(args.equation.upper())
    print(rep.to_json())
    return EXIT_OK


def cmd_counterexample(args) -> int:
    beta = args.beta
    if not 2 < beta < 3:
        raise CliError(f"--beta must lie strictly in (2, 3), got {beta}", EXIT_PARAMS)
    try:
        z1, z2 = collision_pair(beta, args.s)
        order = args.order if args.order is not None else counterexample_order(beta, args.s)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARAMS) from exc
    h = counterexample_h(beta, order)
    w1, w2 = evaluate(h, z1), evaluate(h, z2)
    diff, dist = abs(w1 - w2), abs(z1 - z2)
    cert = {
        "beta": beta,
        "s": args.s if args.s is not None else math.cos(math.pi / beta),
        "order": order,
        "z1": [z1.real, z1.imag],
        "z2": [z2.real, z2.imag],
        "h_z1": [w1.real, w1.imag],
        "h_z2": [w2.real, w2.imag],
        "value_difference": diff,
        "point_distance": dist,
        "certified": diff < COLLISION_VALUE_TOL and dist > COLLISION_MIN_DISTANCE,
    }
    print(json.dumps(cert))
    return EXIT_OK if cert["certified"] else EXIT_VIOLATION


def cmd_plot(args) -> int:
    f = _load_mapping(args.mapping)
    fmt = args.format or ("ppm" if str(args.output).endswith(".ppm") else "svg")
    try:
        spec = RenderSpec(args.rings, args.spokes, args.max_radius, args.samples, fmt,
                          args.output, args.width, args.height)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARAMS) from exc
    try:
        path = render(f, spec)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc}", EXIT_IO) from exc
    print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcharmonic", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a mapping and write it as JSON")
    c.add_argument("--alpha", type=float)
    c.add_argument("--lambda-re", type=float, default=0.0)
    c.add_argument("--lambda-im", type=float, default=0.0)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--order", type=int, default=64)
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--schwarz-monomial", metavar="C,M",
                     help="Schwarz function c*z^m, e.g. 1,1 or 0.5+0.2j,2")
    src.add_argument("--h-extremal", type=int, metavar="K")
    src.add_argument("--h-beta", type=float, metavar="BETA")
    src.add_argument("--h-coeffs", metavar="FILE", help="JSON list of [re, im] coefficients of h")
    c.add_argument("-o", "--output", default="-")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the coefficient, growth and area bounds")
    v.add_argument("--mapping", required=True)
    v.add_argument("--checks", default="all",
                   help="comma list of " + ",".join(bounds.ALL_CHECKS + bounds.OPTIONAL_CHECKS)
                   + ",partial-sum (default: all)")
    v.add_argument("--r", default=",".join(str(r) for r in bounds.DEFAULT_RADII),
                   help="comma list of radii")
    v.add_argument("--delta", default="1", help="comma list of Fekete-Szego weights")
    v.add_argument("--angles", type=int, default=64)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("radius", help="solve a partial-sum radius equation")
    r.add_argument("--equation", required=True, choices=["r1", "r2", "r3", "r4", "rc"],
                   type=str.lower)
    r.set_defaults(func=cmd_radius)

    x = sub.add_parser("counterexample", help="collision certificate for h_beta")
    x.add_argument("--beta", type=float, required=True)
    x.add_argument("--s", type=float, default=None)
    x.add_argument("--order", type=int, default=None,
                   help="truncation order (default: smallest order with tail < 1e-13)")
    x.set_defaults(func=cmd_counterexample)

    pl = sub.add_parser("plot", help="render the image of a polar grid")
    pl.add_argument("--mapping", required=True)
    pl.add_argument("--rings", type=int, default=12)
    pl.add_argument("--spokes", type=int, default=24)
    pl.add_argument("--max-radius", type=float, default=0.98)
    pl.add_argument("--samples", type=int, default=256)
    pl.add_argument("--format", choices=["svg", "ppm"], type=str.lower)
    pl.add_argument("--width", type=int, default=600)
    pl.add_argument("--height", type=int, default=600)
    pl.add_argument("-o", "--output", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
