"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 I/O error.
Every report goes to stdout as JSON with sorted keys; numbers that may
exceed 64 bits are decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, render
from .dessin import (
    Dessin,
    Passport,
    canonical_family,
    compose,
    count_trees_with_passport,
    family_from_name,
    family_params_json,
    FAMILIES,
)
from .group import generate, group_report
from .perm import parse_cycles, from_cycles

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_dessin(path: str) -> Dessin:
    data = _read_json(path)
    try:
        return Dessin.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a dessin: {exc}") from None


def _family(args) -> object:
    try:
        return family_from_name(args.family, r=args.r, s=args.s, t=args.t)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=list(FAMILIES))
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)


# --------------------------------------------------------------------------
# subcommands


def cmd_group(args) -> int:
    try:
        c0, c1 = parse_cycles(args.sigma0), parse_cycles(args.sigma1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = args.n or max([max(c) for c in c0 + c1 if c] or [1])
    try:
        gens = [from_cycles(c0, n), from_cycles(c1, n)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(group_report(generate(gens, n)))
    return EXIT_OK


def cmd_passport(args) -> int:
    D = _load_dessin(args.dessin)
    _emit({"passport": str(D.passport()), "genus": str(D.genus()), "tree": D.is_tree(), "n": str(D.n)})
    return EXIT_OK


def cmd_shabat(args) -> int:
    from .shabat import passport_of, shabat_for, is_shabat

    p = _family(args)
    F = shabat_for(p)
    out = {"params": family_params_json(p), "degree": str(F.degree), "text": str(F)}
    if args.emit in ("coeffs", "all"):
        out["polynomial"] = F.to_json()
    if args.emit in ("passport", "all"):
        out["is_shabat"] = is_shabat(F)
        out["passport"] = str(passport_of(F))
    _emit(out)
    return EXIT_OK


def cmd_verify_row(args) -> int:
    p = _family(args)
    rep = catalog.verify_row(p, with_lift=args.with_lift)
    _emit(rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    try:
        cfg = catalog.load_config(args.config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    params = catalog.grid(cfg["max_n"], cfg["max_param"], cfg["families"])
    reports = catalog.sweep(params, jobs=args.jobs, with_lift=cfg["with_lift"], lift_max_degree=cfg["lift_max_degree"])
    payload = catalog.sweep_json(reports)
    _emit(payload, args.out)
    if args.out:
        sys.stdout.write(catalog.format_table(reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_enumerate(args) -> int:
    try:
        pp = Passport.parse(args.passport)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        res = count_trees_with_passport(pp, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = res.to_json()
    out["tree_count"] = str(out["tree_count"])
    if out["all_genus_count"] is not None:
        out["all_genus_count"] = str(out["all_genus_count"])
    _emit(out)
    return EXIT_OK


def cmd_compose(args) -> int:
    P, Q = _load_dessin(args.p), _load_dessin(args.q)
    try:
        F = compose(P, args.square, args.triangle, Q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = F.to_json()
    out["passport"] = str(F.passport())
    _emit(out, args.out)
    return EXIT_OK


def cmd_lift(args) -> int:
    from .lift import LiftError, trace_graph
    from .shabat import ExactPolynomial

    try:
        data = _read_json(args.shabat)
        # accept the output of the shabat subcommand as well as a bare polynomial
        F = ExactPolynomial.from_json(data.get("polynomial", data))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.shabat}: not a polynomial: {exc}") from None
    try:
        traced = trace_graph(F, steps=args.steps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except LiftError as exc:
        sys.stderr.write(f"lift failed: {exc}\n")
        return EXIT_FAIL
    D = traced.to_dessin()
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(traced.to_svg())
    out = D.to_json()
    out["passport"] = str(D.passport())
    _emit(out)
    return EXIT_OK


def cmd_render(args) -> int:
    D = _load_dessin(args.dessin)
    sys.stdout.write(render.to_dot(D) if args.format == "dot" else render.to_svg(D))
    return EXIT_OK


def cmd_family(args) -> int:
    D = canonical_family(_family(args))
    out = D.to_json()
    out["passport"] = str(D.passport())
    _emit(out, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dessins", description="Plane-tree dessins with passports of size one.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="order and structure of <sigma0, sigma1>")
    p.add_argument("--sigma0", required=True)
    p.add_argument("--sigma1", required=True)
    p.add_argument("--n", type=int, help="degree (default: largest point mentioned)")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("passport", help="passport, genus and tree flag of a dessin file")
    p.add_argument("--dessin", required=True)
    p.set_defaults(func=cmd_passport)

    p = sub.add_parser("shabat", help="Shabat polynomial of a family member")
    _add_family_args(p)
    p.add_argument("--emit", choices=["coeffs", "passport", "all"], default="all")
    p.set_defaults(func=cmd_shabat)

    p = sub.add_parser("verify-row", help="end-to-end check of a family member")
    _add_family_args(p)
    p.add_argument("--with-lift", action="store_true")
    p.set_defaults(func=cmd_verify_row)

    p = sub.add_parser("sweep", help="verify a grid of family members")
    p.add_argument("--config")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("enumerate", help="count plane trees with a passport")
    p.add_argument("--passport", required=True)
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("compose", help="compose two tree dessins")
    p.add_argument("--p", required=True)
    p.add_argument("--square", type=int, required=True)
    p.add_argument("--triangle", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("lift", help="trace the dessin of a Shabat polynomial")
    p.add_argument("--shabat", required=True)
    p.add_argument("--steps", type=int, default=256)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("render", help="draw a dessin")
    p.add_argument("--dessin", required=True)
    p.add_argument("--format", choices=["dot", "svg"], default="dot")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("family", help="canonical dessin of a family member as JSON")
    _add_family_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"error: invalid JSON: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
