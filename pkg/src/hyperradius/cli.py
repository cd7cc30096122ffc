"""Command-line front end.

    hyperradius radius SPEC [--method sigma|weak|rho1|rho2|all] [--nmax N] [--window W] [--dump PATH]
    hyperradius eval SPEC --point x0,x1,... [--degree N]
    hyperradius probe SPEC --direction x0,x1,... [--rmin --rmax --steps --degree]
    hyperradius volume --flavor quaternion|octonion --r R
    hyperradius regular-check [SPEC] [--basis-poly n1,n2,..] [--max-degree N] [--flavor F] [--degree N]
    hyperradius paper-demo

Exit codes: 0 success, 1 failed demo check, 2 bad input, 3 degree cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import Sequence

from .algebra import as_element
from .fueter import Flavor, apply_operator, as_flavor, expand_P, expand_series_part, prime_norm
from .multiindex import DegreeCapError, enumerate_degree, symbolic_degree_cap
from .radius import (
    ball_volume_prime,
    probe_convergence,
    rho1_estimate,
    rho2_estimate,
    rho_tau_estimate,
    sigma_estimate,
)
from .series import SeriesSpec, SpecError, eval_truncated, load_series, majorant_partial

EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 1, 2, 3
METHODS = ("sigma", "weak", "rho1", "rho2")


def fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def parse_point(text: str, flavor: Flavor):
    try:
        comps = [float(t) for t in text.split(",")]
    except ValueError:
        raise SpecError(f"malformed point {text!r}: expected comma-separated reals") from None
    if any(not math.isfinite(c) for c in comps):
        raise SpecError("point components must be finite")
    if len(comps) != flavor.n_components:
        raise SpecError(f"{flavor.value} points have {flavor.n_components} components, got {len(comps)}")
    if flavor is Flavor.MT and comps[0] != 0:
        raise SpecError("Moisil-Theodoresco points must have x0 = 0")
    return as_element(comps, flavor.n_components)


def parse_index(text: str, flavor: Flavor) -> tuple[int, ...]:
    try:
        nu = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise SpecError(f"malformed multi-index {text!r}") from None
    if len(nu) != flavor.dim or any(p < 0 for p in nu):
        raise SpecError(f"{flavor.value} multi-indices have {flavor.dim} non-negative parts")
    return nu


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def cmd_radius(args, out) -> int:
    s = load_series(args.spec)
    methods = METHODS if args.method == "all" else (args.method,)
    rows, dumps = [], []
    for method in methods:
        if method == "sigma":
            est = sigma_estimate(s, args.nmin, args.nmax, args.window)
            rows.append(("sigma", est.limsup_estimate, est.radius, est.n_used))
            dumps.append(("sigma", est.sequence))
        elif method == "weak":
            w = rho_tau_estimate(s, args.nmin, args.nmax, args.window)
            rows.append(("weak", w.rho.limsup_estimate * w.tau.limsup_estimate, w.radius, w.rho.n_used))
            dumps += [("rho", w.rho.sequence), ("tau", w.tau.sequence)]
        elif method == "rho1":
            est = rho1_estimate(s, args.nmin, args.nmax, args.window)
            rows.append(("rho1", est.limsup_estimate, est.radius, est.n_used))
            dumps.append(("rho1", est.sequence))
        elif method == "rho2":
            if args.method == "all":
                if s.flavor is Flavor.OCTONION:
                    continue
                n_max = min(args.nmax, symbolic_degree_cap())
            else:
                n_max = args.nmax
            est = rho2_estimate(s, n_max, 1, args.window)
            rows.append(("rho2", est.limsup_estimate, est.radius, est.n_used))
            dumps.append(("rho2", est.sequence))
    out.write(
        f"# {s.label or 'series'} ({s.flavor.value}): sigma = Cauchy-Hadamard ball, "
        "weak = rho*tau weak Cauchy-Hadamard ball, rho1 = coefficient maximum, "
        "rho2 = real-monomial expansion\n"
    )
    w = _writer(out)
    w.writerow(["method", "limsup_estimate", "radius", "n_used"])
    for name, est, radius, n_used in rows:
        w.writerow([name, fmt(est), fmt(radius), n_used])
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(f"# raw per-degree sequences for {s.label or 'series'}\n")
            dw = _writer(fh)
            dw.writerow(["sequence", "n", "s_n"])
            for name, seq in dumps:
                for n, v in seq:
                    dw.writerow([name, n, fmt(v)])
    return 0


def cmd_eval(args, out) -> int:
    s = load_series(args.spec)
    x = parse_point(args.point, s.flavor)
    res = eval_truncated(s, x, args.degree)
    partial = majorant_partial(s, x, args.degree)
    out.write(f"# truncated sum of P_nu a_nu through degree {args.degree} and the majorant partial sum\n")
    w = _writer(out)
    w.writerow(["quantity", "value"])
    for i, c in enumerate(res.value.c):
        w.writerow([f"c{i}", fmt(c)])
    w.writerow(["norm", fmt(res.value.norm())])
    w.writerow(["majorant_partial", fmt(partial)])
    w.writerow(["majorant_tail_estimate", fmt(res.majorant_tail_estimate)])
    return 0


def cmd_probe(args, out) -> int:
    s = load_series(args.spec)
    d = parse_point(args.direction, s.flavor)
    if d.norm() == 0:
        raise SpecError("direction must be nonzero")
    if args.steps < 1 or args.rmax < args.rmin or args.rmin < 0:
        raise SpecError("need 0 <= rmin <= rmax and steps >= 1")
    step = (args.rmax - args.rmin) / (args.steps - 1) if args.steps > 1 else 0.0
    radii = [args.rmin + i * step for i in range(args.steps)]
    rows = probe_convergence(s, d, radii, args.degree)
    unit_prime = prime_norm(d / d.norm(), s.flavor)
    out.write(f"# majorant probe of {s.label or 'series'} along {args.direction}, degree {args.degree}\n")
    w = _writer(out)
    w.writerow(["r", "prime_norm", "majorant_partial", "last_term", "verdict"])
    for row in rows:
        w.writerow([fmt(row.r), fmt(row.r * unit_prime), fmt(row.majorant_partial), fmt(row.last_term), row.verdict])
    return 0


def cmd_volume(args, out) -> int:
    v = ball_volume_prime(args.r, args.flavor)
    out.write("# primed-norm ball volume: closed form vs quadrature, and ratio to the Euclidean ball\n")
    w = _writer(out)
    w.writerow(["flavor", "r", "closed_form", "numeric", "euclidean", "ratio"])
    w.writerow([as_flavor(args.flavor).value, fmt(args.r), fmt(v.closed_form), fmt(v.numeric), fmt(v.euclidean), fmt(v.ratio)])
    return 0


def _report(w, label: str, op: str, residual, out) -> None:
    w.writerow([label, op, "ZERO" if residual.is_zero() else "NONZERO", len(residual)])
    for expo, coeff in sorted(residual.terms.items()):
        out.write(f"#   residual x^{expo}: {coeff}\n")


def cmd_regular_check(args, out) -> int:
    if args.spec is not None and args.basis_poly is not None:
        raise SpecError("give either a series spec or --basis-poly, not both")
    out.write("# symbolic application of the regularity operator (exact rational arithmetic)\n")
    w = _writer(out)
    w.writerow(["target", "operator", "status", "residual_terms"])
    if args.spec is not None:
        s = load_series(args.spec)
        op = s.flavor.operator
        for n in range(args.degree + 1):
            terms = [
                (nu, s.source.exact_coefficient(nu))
                for nu in enumerate_degree(s.flavor.dim, n)
                if not s.source.coefficient(nu).is_zero()
            ]
            poly = expand_series_part(terms, s.flavor)
            _report(w, f"degree {n}", op, apply_operator(poly, op), out)
        return 0
    flavor = as_flavor(args.flavor)
    op = flavor.operator
    if args.basis_poly is not None:
        targets = [parse_index(args.basis_poly, flavor)]
    else:
        top = args.max_degree if args.max_degree is not None else 3
        targets = [nu for n in range(top + 1) for nu in enumerate_degree(flavor.dim, n)]
    for nu in targets:
        _report(w, "nu=(" + " ".join(map(str, nu)) + ")", op, apply_operator(expand_P(nu, flavor), op), out)
    return 0


def cmd_worked_examples(args, out) -> int:
    from .demo import run_demo

    results = run_demo()
    out.write("# worked-example regression table\n")
    w = _writer(out)
    w.writerow(["status", "check", "reproduces", "detail"])
    for r in results:
        w.writerow(["PASS" if r.passed else "FAIL", r.name, r.anchor, r.detail])
    failed = sum(not r.passed for r in results)
    out.write(f"# {len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_FAILED if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperradius", description="Radii of convergence of hypercomplex power series.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("radius", help="estimate radii of convergence")
    r.add_argument("spec")
    r.add_argument("--method", choices=("sigma", "weak", "rho1", "rho2", "all"), default="all")
    r.add_argument("--nmax", type=int, default=200)
    r.add_argument("--nmin", type=int, default=2)
    r.add_argument("--window", type=int, default=None)
    r.add_argument("--dump", default=None, help="write the raw per-degree sequences here")
    r.set_defaults(func=cmd_radius)

    e = sub.add_parser("eval", help="evaluate the truncated series and its majorant")
    e.add_argument("spec")
    e.add_argument("--point", required=True)
    e.add_argument("--degree", type=int, default=20)
    e.set_defaults(func=cmd_eval)

    pr = sub.add_parser("probe", help="classify majorant convergence along a ray")
    pr.add_argument("spec")
    pr.add_argument("--direction", required=True)
    pr.add_argument("--rmin", type=float, default=0.0)
    pr.add_argument("--rmax", type=float, default=1.0)
    pr.add_argument("--steps", type=int, default=51)
    pr.add_argument("--degree", type=int, default=400)
    pr.set_defaults(func=cmd_probe)

    v = sub.add_parser("volume", help="primed-norm ball volume")
    v.add_argument("--flavor", default="quaternion", choices=("quaternion", "octonion"))
    v.add_argument("--r", type=float, default=1.0)
    v.set_defaults(func=cmd_volume)

    g = sub.add_parser("regular-check", help="apply D / D_O / D_MT symbolically")
    g.add_argument("spec", nargs="?")
    g.add_argument("--basis-poly", default=None, help="multi-index, e.g. 1,1,0")
    g.add_argument("--max-degree", type=int, default=None, help="check every basis polynomial up to this degree")
    g.add_argument("--flavor", default="quaternion", choices=("quaternion", "octonion", "mt"))
    g.add_argument("--degree", type=int, default=4, help="truncation degree for a series spec")
    g.set_defaults(func=cmd_regular_check)

    d = sub.add_parser("paper-demo", help="recompute every worked example and report pass/fail")
    d.set_defaults(func=cmd_worked_examples)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except DegreeCapError as exc:
        print(f"hyperradius: degree cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecError, ValueError, TypeError, OverflowError) as exc:
        print(f"hyperradius: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
