"""Command-line surface: generate, enumerate, audit, fliptree, catalan, bounds.

Exit codes: 0 success (and exhaustive), 1 usage or I/O error, 2 an
enumeration cap was hit (partial output still written), 3 an audit
invariant was violated.  All randomness flows through the seeded
generator, so every command is deterministic given its arguments.

The TRICHOR_THREADS environment variable sets the audit parallelism
degree; results are identical to a sequential run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bounds import bounds_csv, derived_bounds
from .charging import Vint, audit, build_flip_tree, charge, check_structural_rules
from .enumeration import check_v3_recursion, enumerate_all, flip_graph_states
from .errors import CapExceededError, NotA3VintError, TrichorError
from .geometry import (
    AugmentedPointSet,
    augment,
    gen_convex,
    gen_convex_arc_in_triangle,
    gen_random,
    read_points,
    write_points,
)
from .polygons import catalan, catalan_generalized
from .triangulation import Triangulation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPPED = 2
EXIT_VIOLATION = 3


def _out_stream(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _emit(text: str, out: str | None) -> None:
    stream, close = _out_stream(out)
    try:
        stream.write(text)
        if not text.endswith("\n"):
            stream.write("\n")
    finally:
        if close:
            stream.close()


def _frac_json(f: Fraction) -> dict:
    return {"num": str(f.numerator), "den": str(f.denominator)}


def cmd_generate(args) -> int:
    if args.kind == "convex":
        ps = gen_convex(args.n)
    elif args.kind == "arc":
        ps = gen_convex_arc_in_triangle(args.n)
    else:
        ps = gen_random(args.n, args.seed)
    if args.augment and not isinstance(ps, AugmentedPointSet):
        ps = augment(ps)
    if args.out:
        write_points(ps, args.out)
    else:
        lines = [str(len(ps.points))] + [f"{p.x} {p.y}" for p in ps.points]
        _emit("\n".join(lines), None)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    ps = read_points(args.input)
    container = ps
    if len(ps.convex_hull_indices()) == 3:
        container = AugmentedPointSet.from_points(ps)
    code = EXIT_OK
    try:
        result = enumerate_all(container, cap=args.cap)
    except CapExceededError as exc:
        result = exc.result
        code = EXIT_CAPPED
    v3 = result.vhat(3)
    report = {
        "n": result.interior_count,
        "count": str(result.count),
        "degree_totals": {str(k): str(v) for k, v in result.degree_totals.items()},
        "vhat3": _frac_json(v3),
        "vhat3_decimal": float(v3),
        "exhaustive": result.exhaustive,
    }
    _emit(json.dumps(report, indent=2, sort_keys=True), args.out)
    return code


def cmd_audit(args) -> int:
    ps = read_points(args.input)
    if len(ps.convex_hull_indices()) == 3:
        P = AugmentedPointSet.from_points(ps)
    else:
        P = augment(ps)
    jobs = _threads()
    rep = audit(P, jobs=jobs)
    rules = check_structural_rules(P)
    v3 = check_v3_recursion(P)
    payload = rep.to_json_dict()
    payload["rules"] = {
        "rule1_checked": rules.rule1_checked,
        "monotone_checked": rules.monotone_checked,
        "support_checked": rules.support_checked,
        "violations": rules.violations,
        "ok": rules.ok,
    }
    payload["v3_recursion"] = {
        "lhs": str(v3.lhs),
        "rhs": str(v3.rhs),
        "ok": v3.ok,
    }
    ok = rep.ok and rules.ok and v3.ok
    payload["ok"] = ok
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_fliptree(args) -> int:
    ps = read_points(args.input)
    P = AugmentedPointSet.from_points(ps)
    target = None
    for tris in flip_graph_states(P, cap=args.cap):
        t = Triangulation(P, tris)
        if args.fingerprint is None or t.fingerprint() == args.fingerprint:
            target = t
            break
    if target is None:
        print(f"no triangulation with fingerprint {args.fingerprint}", file=sys.stderr)
        return EXIT_USAGE
    v = Vint(args.point, target)
    tree = build_flip_tree(v)
    _emit(tree.to_dot(), args.out)
    if args.charge:
        rep = charge(v)
        _emit(json.dumps(rep.to_json_dict(), indent=2, sort_keys=True), None)
    return EXIT_OK


def cmd_catalan(args) -> int:
    if args.which == "c":
        value = catalan(args.n)
    elif args.which == "c1":
        value = catalan_generalized(args.n, 1)
    elif args.which == "c2":
        value = catalan_generalized(args.n, 2)
    else:
        if args.r is None:
            print("cr needs --r", file=sys.stderr)
            return EXIT_USAGE
        value = catalan_generalized(args.n, args.r)
    _emit(str(value), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    entries = derived_bounds(Fraction(args.tr_base), symbolic_sc=args.symbolic)
    if args.format == "csv":
        _emit(bounds_csv(entries), args.out)
    else:
        payload = [
            {
                "quantity": e.quantity,
                "base": _frac_json(e.base),
                "table_digits": e.table_digits(),
                "provenance": e.provenance,
            }
            for e in entries
        ]
        _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def _threads() -> int:
    raw = os.environ.get("TRICHOR_THREADS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise SystemExit(f"TRICHOR_THREADS must be an integer, got {raw!r}")
    return max(1, jobs)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trichor", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a point-set file")
    g.add_argument("kind", choices=["convex", "arc", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--augment", action="store_true", help="wrap the set in a bounding triangle")
    g.add_argument("--out", default=None)
    g.set_defaults(fn=cmd_generate)

    e = sub.add_parser("enumerate", help="count all triangulations")
    e.add_argument("input")
    e.add_argument("--cap", type=int, default=None)
    e.add_argument("--out", default=None)
    e.set_defaults(fn=cmd_enumerate)

    a = sub.add_parser("audit", help="run the full charging audit")
    a.add_argument("input")
    a.add_argument("--out", default=None)
    a.set_defaults(fn=cmd_audit)

    f = sub.add_parser("fliptree", help="export a 3-vint's flip-tree as DOT")
    f.add_argument("input")
    f.add_argument("--fingerprint", default=None, help="hex fingerprint; default: seed triangulation")
    f.add_argument("--point", type=int, required=True)
    f.add_argument("--cap", type=int, default=None)
    f.add_argument("--charge", action="store_true", help="also print the charge report")
    f.add_argument("--out", default=None)
    f.set_defaults(fn=cmd_fliptree)

    c = sub.add_parser("catalan", help="Catalan numbers and variants")
    c.add_argument("which", choices=["c", "c1", "c2", "cr"])
    c.add_argument("n", type=int)
    c.add_argument("--r", type=int, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(fn=cmd_catalan)

    b = sub.add_parser("bounds", help="derived bases for related counts")
    b.add_argument("--tr-base", default="30")
    b.add_argument("--symbolic", action="store_true")
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--out", default=None)
    b.set_defaults(fn=cmd_bounds)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NotA3VintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TrichorError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
