"""Command-line interface.

Subcommands: polytope, potential, critical, qh, match, floer, verify-all.
All numeric flags accept exact rationals as "p/q" strings; decimal-float
literals are converted to exact rationals with a warning on stderr.
Output is JSON (default) or CSV and is byte-stable for fixed flags/seed.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 numeric non-convergence.
"""

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import floer, gc_core, potential, qh, verify
from .novikov import as_fraction, module_presentation
from .numerics import NonConvergenceError


def rational(text):
    """argparse type: "p/q" or decimal string -> Fraction."""
    s = text.strip()
    try:
        if "." in s or "e" in s.lower():
            value = as_fraction(float(s))
            print(
                f"warning: float literal {s!r} converted to exact rational {value}",
                file=sys.stderr,
            )
            return value
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _complex_pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _frac_pair(f):
    return [f.numerator, f.denominator]


def _emit(doc, fmt, csv_rows=None, csv_header=None):
    if fmt == "csv" and csv_rows is not None:
        lines = [",".join(csv_header)]
        lines += [",".join(str(v) for v in row) for row in csv_rows]
        print("\n".join(lines))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def _shape_profile(args):
    space = args.space
    if space == "Fl3":
        return gc_core.fl3_shape(), gc_core.fl3_profile(args.l1, args.l2)
    if space == "Gr24":
        return gc_core.grassmannian_shape(2, 4), gc_core.gr24_profile(args.lam)
    if space == "Gr25":
        return gc_core.grassmannian_shape(2, 5), gc_core.gr25_profile(args.lam)
    raise ValueError(f"unknown space {space!r}")


def _add_space_args(sub):
    sub.add_argument("space", choices=("Fl3", "Gr24", "Gr25"))
    sub.add_argument("--l1", type=rational, default=Fraction(1), help="Fl3 lambda_1")
    sub.add_argument("--l2", type=rational, default=Fraction(1), help="Fl3 lambda_2")
    sub.add_argument(
        "--lam", type=rational, default=Fraction(1), help="Grassmannian lambda"
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_polytope(args):
    shape, profile = _shape_profile(args)
    polytope = gc_core.build_polytope(shape, profile)
    point = fiber = None
    diamonds = None
    if args.at is not None:
        values = [float(v) for v in args.at.split(",")]
        point = gc_core.GCPoint(tuple(values), polytope.index)
        inside, _ = gc_core.contains(polytope, point)
        if not inside:
            print("error: point is not in the polytope", file=sys.stderr)
            return 2
        diamonds = gc_core.detect_diamonds(shape, profile, point)
        fiber = gc_core.classify_fiber(args.space, profile, point)
    doc = gc_core.polytope_to_json(polytope, point=point, fiber=fiber)
    doc["space"] = args.space
    doc["facet_count"] = sum(1 for iq in polytope.inequalities if iq.facet)
    if diamonds is not None:
        doc["diamonds"] = [list(d) for d in diamonds]
    rows = [
        (iq.label(), iq.facet) for iq in polytope.inequalities
    ]
    _emit(doc, args.format, rows, ("inequality", "facet"))
    return 0


def cmd_potential(args):
    shape, profile = _shape_profile(args)
    po = potential.build_potential(shape, profile)
    doc = {
        "space": args.space,
        "variables": [list(p) for p in po.index.pairs],
        "terms": [
            {
                "coeff": _complex_pair(t.coeff),
                "t_exp": _frac_pair(t.t_exp),
                "y_exp": list(t.y_exp),
            }
            for t in po.terms
        ],
    }
    rows = [
        (f"{t.coeff.real:g}", f"{t.t_exp}", " ".join(str(e) for e in t.y_exp))
        for t in po.terms
    ]
    _emit(doc, args.format, rows, ("coeff", "t_exp", "y_exp"))
    return 0


def _closed_form_candidates(space, args):
    if space == "Fl3":
        if args.l1 != args.l2:
            raise ValueError(
                "closed-form candidates for Fl3 require l1 == l2 "
                "(otherwise the critical points are not Novikov monomials)"
            )
        return potential.fl3_critical_candidates(args.l1)
    if space == "Gr24":
        return potential.gr24_critical_candidates(args.lam)
    return potential.gr25_critical_candidates(args.lam)


def cmd_critical(args):
    shape, profile = _shape_profile(args)
    po = potential.build_potential(shape, profile)
    T0 = float(args.T0)
    cfg = potential.SolverConfig(T0=T0, starts=args.starts, seed=args.seed)
    points = potential.find_critical_points(po, cfg)
    doc = {
        "space": args.space,
        "lambda": {
            "l1": _frac_pair(args.l1),
            "l2": _frac_pair(args.l2),
            "lam": _frac_pair(args.lam),
        },
        "T0": T0,
        "seed": args.seed,
        "critical_points": [
            {
                "y": [{"re": z.real, "im": z.imag} for z in c.y],
                "residual": c.residual,
            }
            for c in points
        ],
        "critical_values": [
            {"re": v.real, "im": v.imag}
            for v in (potential.evaluate(po, c.numeric_at(T0), T0) for c in points)
        ],
        "hessian_dets": [c.hessian_det for c in points],
    }
    if args.verify_known:
        reports = []
        for cand in _closed_form_candidates(args.space, args):
            rep = potential.verify_candidate(po, cand)
            reports.append(
                {
                    "valuations": [_frac_pair(e) for e in rep["valuations"]],
                    "max_residual": rep["max_residual"],
                    "value_exponent": rep.get("value_exponent"),
                }
            )
        doc["closed_form"] = reports
    rows = [
        tuple(f"{z.real:.12g}{z.imag:+.12g}j" for z in c.y) + (f"{c.residual:.3g}",)
        for c in points
    ]
    header = tuple(f"y{i+1}" for i in range(po.nvars)) + ("residual",)
    _emit(doc, args.format, rows, header)
    return 0


def cmd_qh(args):
    if args.space == "Fl3":
        eigs = qh.fl3_c1_eigenvalues(float(args.q1), float(args.q2))
    else:
        k, n = (2, 4) if args.space == "Gr24" else (2, 5)
        eigs = qh.c1_eigenvalues_grassmannian(k, n, float(args.q))
    doc = {
        "space": args.space,
        "eigenvalues": [_complex_pair(v) for v in eigs],
    }
    rows = [(f"{v.real:.15g}", f"{v.imag:.15g}") for v in eigs]
    _emit(doc, args.format, rows, ("re", "im"))
    return 0


def cmd_match(args):
    T0 = float(args.T0)
    shape, profile = _shape_profile(args)
    po = potential.build_potential(shape, profile)
    pad = False
    if args.space == "Fl3":
        values = [
            potential.evaluate(po, y, T0)
            for y in potential.fl3_critical_points(args.l1, args.l2, T0)
        ]
        q1, q2 = qh.fl3_quantum_parameters(args.l1, args.l2, T0)
        eigs = qh.fl3_c1_eigenvalues(q1, q2)
    elif args.space == "Gr24":
        values = potential.gr24_critical_values(args.lam, T0)
        eigs = qh.c1_eigenvalues_grassmannian(2, 4, T0 ** float(2 * args.lam))
        pad = True  # sigma_1 has a double zero eigenvalue with no critical point
    else:
        values = potential.gr25_critical_values(args.lam, T0)
        eigs = qh.c1_eigenvalues_grassmannian(2, 5, T0 ** float(args.lam))
    matched, pairing = qh.multiset_match(values, eigs, args.tol, allow_zero_padding=pad)
    doc = {
        "space": args.space,
        "T0": T0,
        "tol": args.tol,
        "matched": matched,
        "critical_values": [_complex_pair(v) for v in values],
        "eigenvalues": [_complex_pair(v) for v in eigs],
        "pairing": [list(p) for p in pairing],
    }
    _emit(doc, args.format)
    return 0


def cmd_floer(args):
    if args.space == "Gr25":
        print(
            "error: Gr25 Floer differentials are out of scope "
            "(vanishing follows from displaceability)",
            file=sys.stderr,
        )
        return 2
    if args.space == "Fl3":
        d = floer.m1_fl3(args.l1, args.l2)
        label = f"m1_fl3({args.l1}, {args.l2})"
    elif args.pair:
        d = floer.delta_pair_gr24(args.lam, from_series=False)
        label = f"delta_pair_gr24({args.lam})"
    else:
        x = complex(float(args.x_re), float(args.x_im))
        d = floer.m1b_gr24(args.lam, args.t, x)
        label = f"m1b_gr24({args.lam}, {args.t}, x={x})"
    dec = module_presentation(d, ring=args.ring)
    doc = {
        "space": args.space,
        "differential": label,
        "entries": d.to_lists(),
        "ring": args.ring,
        "decomposition": dec.to_dict(),
        "lambda_rank": dec.lambda_rank(),
        "warnings": list(dec.warnings),
    }
    _emit(doc, args.format)
    return 0


def cmd_verify_all(args):
    results = verify.run_all(fast=args.fast)
    width = max(len(r.check_id) for r in results)
    failed = False
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.check_id:<{width}}  {status}  {r.detail}")
        failed = failed or not r.passed
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gcfloer",
        description="Gelfand-Cetlin polytopes, potential functions, and "
        "Floer cohomology of flag-manifold fibers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polytope", help="inequalities, facets, fiber type at a point")
    _add_space_args(p)
    p.add_argument("--at", help="comma-separated point u for a diamond/fiber report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser(
        "potential",
        help="potential terms; CSV columns: coeff, t_exp, y_exp (space-separated)",
    )
    _add_space_args(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser(
        "critical",
        help="critical points; CSV columns: y1..yN (complex), residual",
    )
    _add_space_args(p)
    p.add_argument("--T0", type=rational, default=Fraction(1, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=400)
    p.add_argument(
        "--verify-known",
        "--verify-paper",
        dest="verify_known",
        action="store_true",
        help="plug in the known closed-form critical points and report residuals",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("qh", help="c1 eigenvalues; CSV columns: re, im")
    p.add_argument("space", choices=("Fl3", "Gr24", "Gr25"))
    p.add_argument("--q", type=rational, default=Fraction(1), help="Grassmannian q")
    p.add_argument("--q1", type=rational, default=Fraction(1), help="Fl3 q1")
    p.add_argument("--q2", type=rational, default=Fraction(1), help="Fl3 q2")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_qh)

    p = sub.add_parser("match", help="critical values vs c1 eigenvalues")
    _add_space_args(p)
    p.add_argument("--T0", type=rational, default=Fraction(1, 2))
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("floer", help="Floer differential and HF decomposition")
    _add_space_args(p)
    p.add_argument("--t", type=rational, default=Fraction(0), help="Gr24 level t")
    p.add_argument("--x-re", type=rational, default=Fraction(0))
    p.add_argument("--x-im", type=rational, default=Fraction(0))
    p.add_argument("--ring", choices=("Lambda0", "Lambda"), default="Lambda0")
    p.add_argument("--pair", action="store_true", help="(L0, b), (L0, -b) pair")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_floer)

    p = sub.add_parser("verify-all", help="run the verification suite")
    p.add_argument("--fast", action="store_true", help="reduced sampling density")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"error: numeric non-convergence: {exc}", file=sys.stderr)
        return 3
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
