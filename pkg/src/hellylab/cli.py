"""Command-line entry point.

Every command writes one JSON document (stdout or ``--out``).  Exit codes:
0 success, 1 usage or input error, 2 a checked claim did not hold.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import analysis, codes, constructions, geometry, perms, properties
from .errors import BudgetExceeded, HellyLabError, InputError
from .serialize import (
    SCHEMA_VERSION,
    dumps,
    family_from_json,
    family_to_json,
    fmt,
    load_json,
    perms_from_json,
    points_from_json,
    points_to_json,
)
from .svg import family_svg

EXIT_OK, EXIT_USAGE, EXIT_CLAIM = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _load_family(args):
    if not args.family:
        raise InputError("--family is required")
    return family_from_json(load_json(args.family))


def _load_points(args, family):
    if not getattr(args, "s", None):
        return geometry.PointSet(family.dimension, ())
    return points_from_json(load_json(args.s), family.dimension)


def _box_json(box):
    if box is None:
        return None
    return {"min": [fmt(x) for x in box.mins], "max": [fmt(x) for x in box.maxs]}


def _write_svg(args, family, S):
    if getattr(args, "svg", None):
        Path(args.svg).write_text(family_svg(family, S))


# -- commands ---------------------------------------------------------------------


def cmd_intersect(args):
    family = _load_family(args)
    tup = geometry.index_set(_ints(args.tuple), len(family))
    out = {"tuple": list(tup), "intersection": _box_json(geometry.intersect_tuple(family, tup))}
    if args.s:
        out["S_intersecting"] = geometry.is_S_intersecting(family, tup, _load_points(args, family))
    return out, EXIT_OK


def cmd_sigma(args):
    family = _load_family(args)
    orders = perms.axis_order_list(family)
    listed = []
    for i, sigma in enumerate(orders):
        listed.append({"axis": i // 2 + 1, "kind": "left" if i % 2 == 0 else "right", "perm": list(sigma)})
    return {"n": len(family), "orders": listed, "distinct": [list(s) for s in perms.axis_orders(family)]}, EXIT_OK


def cmd_dep(args):
    A = perms_from_json(load_json(args.perms))
    if args.P:
        result = perms.dependent_set(A, _ints(args.P))
    else:
        if args.p is None:
            raise InputError("dep needs --p or --P")
        result = perms.p_tuple_dependency(A, args.p)
    return result.to_json(), EXIT_OK


def cmd_pattern_graph(args):
    A = perms_from_json(load_json(args.perms))
    if not A.has_identity():
        A = perms.normalize(A, A.perms[0])
    G = perms.pattern_graph(A)
    path = perms.longest_mono_increasing_path(G)
    edges = [
        {"u": u, "v": v, "color": [i for i in range(len(G.members)) if c >> i & 1]}
        for (u, v), c in sorted(G.colors.items())
    ]
    return {
        "n": A.n,
        "members": [list(s) for s in G.members],
        "edges": edges,
        "num_colors": G.num_colors(),
        "longest_path": path,
        "dependency_lower_bound": max(len(path) - 2, 0),
    }, EXIT_OK


def _perm_op(args, single, multi):
    sigma = perms.perm(args.perm)
    vs = _ints(args.v)
    result = single(sigma, vs[0]) if len(vs) == 1 else multi(sigma, vs)
    return {"perm": list(sigma), "v": vs, "result": list(result), "one_line": "".join(map(str, result)) if len(result) < 10 else None}, EXIT_OK


def cmd_perm_delete(args):
    return _perm_op(args, perms.delete_perm, perms.delete_set)


def cmd_perm_quotient(args):
    return _perm_op(args, perms.quotient_perm, perms.quotient_set)


def cmd_code(args):
    family = _load_family(args)
    code = codes.box_code(family)
    words = [{"members": list(k), "witness": [fmt(x) for x in cw.witness]} for k, cw in sorted(code.items())]
    return {"n": len(family), "d": family.dimension, "codewords": words}, EXIT_OK


def cmd_verify_n2(args):
    report = codes.verify_N2_upper(full=args.full, workers=args.workers)
    return report, EXIT_OK if report["holds"] else EXIT_CLAIM


def cmd_witness_n2(args):
    if args.reference:
        family, S = codes.w4_family(), codes.w4_points()
    else:
        family, S = codes.find_N2_witness()
    v = codes.validate_witness(family, S)
    _write_svg(args, family, S)
    out = {"family": family_to_json(family), "S": points_to_json(S), "validation": v}
    return out, EXIT_OK if v["valid"] else EXIT_CLAIM


def cmd_lower_bound(args):
    family, S, expected = constructions.lower_bound_family(args.d)
    design = constructions.lower_bound_design(args.d)
    n = len(family)
    pairs = geometry.count_S_intersecting_tuples(family, S, 2)
    size, _, _ = geometry.max_S_intersecting_subfamily(family, S)
    ok = pairs == n * (n - 1) // 2 and size == expected < args.d + 1
    out = {
        "d": args.d,
        "design": {"lines": design.lines, "blocks": [list(b) for b in design.blocks], "copies": design.copies},
        "family": family_to_json(family),
        "S": points_to_json(S),
        "expected_max": expected,
        "validation": {"n": n, "pair_count": pairs, "max_subfamily": size, "valid": ok},
    }
    return out, EXIT_OK if ok else EXIT_CLAIM


def _table_json(table):
    table = dict(table)
    table["rows"] = [_row_json(r) for r in table["rows"]]
    return table


def _row_json(row):
    row = dict(row)
    row["certificate"] = row["certificate"].to_json()
    return row


def cmd_search_n(args):
    table = constructions.empirical_n_search(
        args.a, args.b, args.p, args.nmax, sample=args.sample, seed=args.seed,
        workers=args.workers, n_min=args.nmin,
    )
    return _table_json(table), EXIT_OK


def cmd_recurrence(args):
    report = constructions.verify_recurrence(
        args.a, args.b, args.p, n_max=args.nmax, sample=args.sample, seed=args.seed, workers=args.workers
    )
    report["base"]["rows"] = [_row_json(r) for r in report["base"]["rows"]]
    report["target"]["rows"] = [_row_json(r) for r in report["target"]["rows"]]
    return report, EXIT_OK if report["holds"] else EXIT_CLAIM


def cmd_pipeline(args):
    family = _load_family(args)
    S = _load_points(args, family)
    report = analysis.pipeline_report(family, S, N=args.N)
    out = report.to_json()
    out["tuple_forcing"] = analysis.check_pairwise_forces_tuple(family, S)
    _write_svg(args, family, S)
    return out, EXIT_OK if report.ok else EXIT_CLAIM


def cmd_check_all(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    family = S = None
    if args.family:
        family = _load_family(args)
        S = _load_points(args, family)
    report = properties.check_all(seed=args.seed, trials=args.trials, family=family, S=S)
    return report, EXIT_OK if report["all_passed"] else EXIT_CLAIM


COMMANDS = {
    "intersect": cmd_intersect,
    "sigma": cmd_sigma,
    "dep": cmd_dep,
    "pattern-graph": cmd_pattern_graph,
    "perm-delete": cmd_perm_delete,
    "perm-quotient": cmd_perm_quotient,
    "code": cmd_code,
    "verify-n2": cmd_verify_n2,
    "witness-n2": cmd_witness_n2,
    "lower-bound": cmd_lower_bound,
    "search-n": cmd_search_n,
    "recurrence": cmd_recurrence,
    "pipeline": cmd_pipeline,
    "check-all": cmd_check_all,
}


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("HELLYLAB_WORKERS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--workers", type=int, default=_default_workers())
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timing", action="store_true", help="drop elapsed-time fields")

    parser = _Parser(prog="hellylab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("intersect", "common intersection of a tuple of boxes")
    p.add_argument("--family", required=True)
    p.add_argument("--tuple", required=True)
    p.add_argument("--s")

    p = add("sigma", "endpoint orders of a family")
    p.add_argument("--family", required=True)

    p = add("dep", "dependent set <A;P> or p-tuple dependency d_p(A)")
    p.add_argument("--perms", required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--P")

    p = add("pattern-graph", "pattern graph and longest monochromatic increasing path")
    p.add_argument("--perms", required=True)

    for name in ("perm-delete", "perm-quotient"):
        p = add(name, "delete a value / quotient by a domain point")
        p.add_argument("--perm", required=True)
        p.add_argument("--v", required=True)

    p = add("code", "codewords of a family with witness points")
    p.add_argument("--family", required=True)

    p = add("verify-n2", "no five planar boxes have every pair as a codeword")
    p.add_argument("--full", action="store_true", help="sweep all 120^4 configurations")

    p = add("witness-n2", "four planar boxes, pairwise S-intersecting, no S-intersecting triple")
    p.add_argument("--reference", action="store_true", help="emit the built-in reference family")
    p.add_argument("--svg")

    p = add("lower-bound", "flat-box family with small maximum depth")
    p.add_argument("-d", type=int, required=True)

    for name in ("search-n", "recurrence"):
        p = add(name, "empirical n(a,b;p) search" if name == "search-n" else "check the (a,b,p) -> (a+2,b,p+1) step")
        p.add_argument("-a", type=int, required=True)
        p.add_argument("-b", type=int, required=True)
        p.add_argument("-p", type=int, required=True)
        p.add_argument("--nmax", type=int, required=True)
        p.add_argument("--sample", type=int)
        if name == "search-n":
            p.add_argument("--nmin", type=int)

    p = add("pipeline", "densities, clique counts and subfamily bounds")
    p.add_argument("--family", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--svg")

    p = add("check-all", "run every invariant suite")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--family", help="replace the reference witness fixture")
    p.add_argument("--s")
    return parser


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "elapsed"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _execute(argv):
    command, out_path = None, None
    try:
        args = build_parser().parse_args(argv)
        command, out_path = args.command, args.out
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        body, code = COMMANDS[command](args)
        report = {"schema": SCHEMA_VERSION, "command": command, **body}
        if args.no_timing:
            report = _strip_timing(report)
    except UsageError as exc:
        return EXIT_USAGE, {"schema": SCHEMA_VERSION, "command": command, "error": f"usage: {exc}"}, None
    except BudgetExceeded as exc:
        report = {"schema": SCHEMA_VERSION, "command": command, "error": str(exc), "limit": exc.limit}
        return EXIT_USAGE, report, None
    except (HellyLabError, OSError) as exc:
        return EXIT_USAGE, {"schema": SCHEMA_VERSION, "command": command, "error": str(exc)}, None
    return code, report, out_path


def run(argv=None) -> tuple:
    """Run one command; returns ``(exit_code, report)`` and honors ``--out``."""
    code, report, out_path = _execute(argv)
    if out_path:
        Path(out_path).write_text(dumps(report))
    return code, report


def main(argv=None) -> int:
    code, report, out_path = _execute(argv)
    if out_path:
        Path(out_path).write_text(dumps(report))
    else:
        sys.stdout.write(dumps(report))
    if "error" in report:
        print(f"hellylab: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
