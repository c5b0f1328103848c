"""Command-line front end: ``trigeom build|check|export|suite``.

Exit codes: 0 ok, 1 expectation mismatch or failed suite, 2 invalid
parameters, 3 scale bound exceeded, 4 hypermap export on a non-thin
complex, 5 hypermap export on a non-orientable complex.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import incidence as inc
from .harness import (TABLE_HEADER, SpaceSpec, compare_expected, complex_for, load_expected,
                      negative_gonality_control, report, verify_characterization)
from .hypermap import NotOrientableError, NotThinError, hypermap_export
from .search import max_elements

EXIT_OK, EXIT_MISMATCH, EXIT_PARAMS, EXIT_SCALE, EXIT_NOT_THIN, EXIT_NOT_ORIENTABLE = 0, 1, 2, 3, 4, 5

SUITE = ("ag 2 3", "ag 3 3", "ag 2 4", "ag 3 4", "pg 2 2", "pg 2 3", "pg 3 2", "pg 3 3",
         "kv 3", "kv 4", "kv 5", "uh 4")

CHECKS = {
    "connected": ("connected", "components"),
    "rc": ("residually_connected",),
    "thin": ("thin",),
    "ft": ("flag_transitive",),
    "duality": ("has_duality",),
    "triality": ("has_triality",),
    "orders": ("aut_order", "cor_order"),
    "diagram": ("diagram",),
}
NEEDS_SEARCH = {"ft", "duality", "triality", "orders"}


class UsageError(Exception):
    pass


def _spec(args) -> SpaceSpec:
    try:
        spec = SpaceSpec.parse([args.kind] + list(args.params))
        spec.build()
    except ValueError as e:
        raise UsageError(str(e))
    return spec


def _bound(args) -> int:
    return args.max_elements if args.max_elements is not None else max_elements()


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_scale(spec: SpaceSpec, bound: int) -> int | None:
    size = spec.delta_size()
    if size > bound:
        print(f"error: the complex of {spec.name} has {size} elements, above the bound {bound}",
              file=sys.stderr)
        return EXIT_SCALE
    return None


def cmd_build(args) -> int:
    spec = _spec(args)
    if args.delta:
        code = _check_scale(spec, _bound(args))
        if code is not None:
            return code
        s = complex_for(spec)[1].sys
    else:
        s = spec.build().sys
    _write(json.dumps(inc.to_json(s)) + "\n", args.out)
    comps = len(inc.connected_components(s))
    print(f"{spec.name}{' complex' if args.delta else ''}: {len(s)} elements, "
          f"{comps} component{'s' if comps != 1 else ''}", file=sys.stderr)
    return EXIT_OK


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def cmd_check(args) -> int:
    spec = _spec(args)
    code = _check_scale(spec, _bound(args))
    if code is not None:
        return code
    chosen = [k for k in CHECKS if getattr(args, k)] or list(CHECKS)
    if args.all:
        chosen = list(CHECKS)
    rep = report(spec, bound=_bound(args), search=bool(NEEDS_SEARCH & set(chosen)))
    fields = [f for k in chosen for f in CHECKS[k]]
    if args.json:
        print(json.dumps({f: getattr(rep, f) for f in fields}, sort_keys=True))
    else:
        for k in chosen:
            if k == "ft":
                print(f"flag-transitive: {_fmt(rep.flag_transitive)} (orbit {rep.chamber_orbit} "
                      f"of {rep.chambers} chambers)")
            elif k == "rc":
                print(f"RC: {_fmt(rep.residually_connected)}")
            elif k == "connected":
                print(f"connected: {_fmt(rep.connected)} (components: {rep.components})")
            elif k == "orders":
                print(f"|Aut|: {rep.aut_order}")
                print(f"|Cor|: {rep.cor_order}")
            else:
                for f in CHECKS[k]:
                    print(f"{f}: {_fmt(getattr(rep, f))}")
    if args.expect:
        rows = load_expected(args.expect)["rows"]
        if rep.name not in rows:
            print(f"no expected row for {rep.name}", file=sys.stderr)
            return EXIT_MISMATCH
        bad = compare_expected(rep, rows[rep.name], fields)
        for f, want, got in bad:
            print(f"MISMATCH {f}: expected {_fmt(want)}, computed {_fmt(got)}")
        return EXIT_MISMATCH if bad else EXIT_OK
    return EXIT_OK


def cmd_export(args) -> int:
    spec = _spec(args)
    code = _check_scale(spec, _bound(args))
    if code is not None:
        return code
    _, tc = complex_for(spec)
    if args.dot:
        _write(inc.to_dot(tc.sys, f"complex of {spec.name}"), args.out)
        return EXIT_OK
    try:
        h = hypermap_export(tc.sys)
    except NotThinError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_THIN
    except NotOrientableError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_ORIENTABLE
    if args.out:
        _write(json.dumps(h.to_json()) + "\n", args.out)
    print(h.summary())
    return EXIT_OK


def cmd_suite(args) -> int:
    bound = _bound(args)
    rows = load_expected(args.expect)["rows"]
    results = []
    print(TABLE_HEADER)
    for text in SUITE:
        spec = SpaceSpec.parse(text)
        if spec.delta_size() > bound:
            results.append({"instance": spec.name, "status": "skipped: scale"})
            print(f"{spec.name:<9} skipped: scale")
            continue
        rep = report(spec, bound=bound)
        bad = compare_expected(rep, rows[spec.name])
        status = "pass" if not bad else "fail"
        results.append({"instance": spec.name, "status": status,
                        "mismatches": [[f, w, g] for f, w, g in bad], "report": rep.to_json()})
        print(f"{rep.table_row()}  {status}")
        for f, want, got in bad:
            print(f"    {f}: expected {_fmt(want)}, computed {_fmt(got)}")
    cases = []
    from .harness import NEGATIVE, POSITIVE
    todo = [(c, True) for c in POSITIVE] + [(c, False) for c in NEGATIVE]
    kept = [(c, p) for c, p in todo if SpaceSpec.parse(c).delta_size() <= bound]
    for c, p in todo:
        if (c, p) not in kept:
            cases.append({"instance": SpaceSpec.parse(c).name, "status": "skipped: scale"})
    print("characterization (firm + residually connected + flag-transitive; duality computed/source)")
    for r in verify_characterization(kept):
        status = "pass" if r.passed else "fail"
        cases.append({"instance": r.name, "positive": r.positive, "status": status})
        print(f"  {r.name:<9} {'positive' if r.positive else 'negative':<8} firm={_fmt(r.firm)} "
              f"rc={_fmt(r.residually_connected)} ft={_fmt(r.flag_transitive)} "
              f"duality={_fmt(r.delta_duality)}/{_fmt(r.source_duality)}  {status}")
    for c in cases:
        if c["status"].startswith("skipped"):
            print(f"  {c['instance']:<9} skipped: scale")
    gon = negative_gonality_control()
    print("gonality control: " + ", ".join(f"{k}={'pass' if v else 'fail'}" for k, v in gon.items()))
    ok = (all(r["status"] != "fail" for r in results) and all(c["status"] != "fail" for c in cases)
          and all(gon.values()))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"instances": results, "characterization": cases, "gonality_control": gon,
                       "passed": ok}, fh, indent=1, sort_keys=True)
    print("suite: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_MISMATCH


def _add_space(p: argparse.ArgumentParser):
    p.add_argument("kind", help="pg | ag | kv | uh")
    p.add_argument("params", nargs="*", help="n q for pg/ag, v for kv, q for uh")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trigeom", description="Triangle complexes of finite linear spaces.")
    ap.add_argument("--max-elements", type=int, default=None,
                    help="scale bound on the complex (default $TRIGEOM_MAX_ELEMENTS or 5000)")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a geometry as JSON")
    _add_space(b)
    b.add_argument("--delta", action="store_true", help="build the triangle complex instead of the space")
    b.add_argument("--out", help="output file (default stdout)")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="report structural properties")
    _add_space(c)
    c.add_argument("--all", action="store_true")
    for k in CHECKS:
        c.add_argument(f"--{k}", action="store_true")
    c.add_argument("--expect", help="compare with a bundled expected-values set, e.g. 'classical'")
    c.add_argument("--json", action="store_true", help="print the selected fields as JSON")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="export the complex as DOT or as a hypermap")
    _add_space(e)
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--dot", action="store_true")
    g.add_argument("--hypermap", action="store_true")
    e.add_argument("--out", help="output file")
    e.set_defaults(func=cmd_export)

    s = sub.add_parser("suite", help="run every bundled instance and the characterization cases")
    s.add_argument("--expect", default="classical")
    s.add_argument("--json", help="also write the results to this file")
    s.set_defaults(func=cmd_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    warnings.simplefilter("ignore")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
