"""Command line front end: ``ftdesigns verify|feasible|search|export-group``.

Exit codes: 0 everything passed, 1 a verification failed, 2 bad input,
3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import classify as cl
from . import constructions as cons
from . import design as ds
from . import group as gr
from .errors import CapExceeded, DesignError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    """Bad command line input; maps to exit status 2."""


def _verify_one(target: str, cap: int) -> dict:
    inst = cons.build(target)
    fp = inst.v <= ds.FULL_PAIR_LIMIT
    rep = cons.verify_instance(inst, cap=cap, fingerprint=fp)
    return rep.to_json()


def _targets(args) -> list[str]:
    kind = args.target
    if kind == "all":
        return sorted(cons.REGISTRY)
    if kind == "example":
        if args.id is None:
            raise InputError("verify example needs an id")
        if args.id not in cons.REGISTRY:
            raise InputError(f"unknown example {args.id!r}; known: {', '.join(sorted(cons.REGISTRY))}")
        return [args.id]
    if args.line is None:
        raise InputError(f"verify {kind} needs --line")
    tid = f"{kind}-{args.line}"
    if tid not in cons.REGISTRY:
        raise InputError(f"{kind} has no line {args.line}")
    return [tid]


def _human_line(entry: dict) -> str:
    facts = entry["facts"]
    params = facts.get("params")
    shown = "(" + ",".join(map(str, params)) + ")" if params else "no design"
    line = f"{entry['status'].upper():4} {entry['id']:28} {shown}  |G0|={facts['g0_order']}"
    if "fingerprint" in facts:
        line += f"  fingerprint={facts['fingerprint']}"
    if "seconds" in entry:
        line += f"  {entry['seconds']:.2f}s"
    for c in entry["checks"]:
        if not c["ok"]:
            want = f", expected {c['expected']}" if "expected" in c else ""
            line += f"\n       witness {c['name']}: got {c['got']}{want}"
    return line


def cmd_verify(args, out) -> int:
    targets = _targets(args)
    if args.jobs > 1 and len(targets) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_one, targets, [args.cap] * len(targets)))
    else:
        results = [_verify_one(t, args.cap) for t in targets]
    results.sort(key=lambda e: e["id"])
    if not args.timings:
        for e in results:
            e.pop("seconds", None)
    passed = all(e["status"] == "pass" for e in results)
    if args.json:
        json.dump({"version": SCHEMA_VERSION, "status": "pass" if passed else "fail",
                   "targets": results}, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        for e in results:
            out.write(_human_line(e) + "\n")
        out.write(f"{sum(e['status'] == 'pass' for e in results)}/{len(results)} passed\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_feasible(args, out) -> int:
    rows = cl.param_feasible(args.p, args.d, require_even_r=args.even_r, lam=args.lam)
    if args.json:
        json.dump({"version": SCHEMA_VERSION,
                   "rows": [{"p": c.p, "d": c.d, "k": c.k, "r": c.r, "b": c.b} for c in rows]},
                  out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write("p,d,k,r,b\n")
    for c in rows:
        out.write(f"{c.p},{c.d},{c.k},{c.r},{c.b}\n")
    return EXIT_OK


def _load_group(path: str, cap: int):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read group file: {exc}") from exc
    try:
        return gr.group_from_json(json.loads(text), cap=max(cap, gr.DEFAULT_CLOSURE_CAP))
    except json.JSONDecodeError as exc:
        raise InputError(f"group file is not JSON: {exc}") from exc


def cmd_search(args, out) -> int:
    G0 = _load_group(args.group, args.cap)
    if args.kind == "small":
        if args.k is None:
            raise InputError("search small needs --k")
        hits = cl.search_small_blocks(G0, args.k, cap=args.cap, lam=args.lam)
    else:
        if args.t is None:
            raise InputError(f"search {args.kind} needs --t")
        fn = cl.search_subspace_blocks if args.kind == "subspace" else cl.search_two_coset_blocks
        hits = fn(G0, args.t, cap=args.cap, lam=args.lam)
    if args.json:
        json.dump({"version": SCHEMA_VERSION,
                   "hits": [{"block": list(h.block), "params": list(h.params.as_tuple())} for h in hits]},
                  out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write("block,v,k,r,b,lambda\n")
    for h in hits:
        out.write(h.csv_row() + "\n")
    return EXIT_OK


def cmd_export_group(args, out) -> int:
    if args.id not in cons.REGISTRY:
        raise InputError(f"unknown example {args.id!r}")
    inst = cons.build(args.id)
    json.dump(inst.group.to_json(), out, indent=2)
    out.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ftdesigns",
                                 description="Construct and verify flag-transitive 2-(v,k,2) designs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--cap", type=int, default=ds.DEFAULT_BLOCK_CAP, metavar="N",
                        help="size cap for block sets and candidate lists")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="build and verify registered examples")
    v.add_argument("target", choices=["example", "table1", "table2", "all"])
    v.add_argument("id", nargs="?", help="example id (for 'example')")
    v.add_argument("--line", type=int, metavar="N")
    v.add_argument("--jobs", type=int, default=1, help="worker processes for 'all'")
    v.add_argument("--no-timings", dest="timings", action="store_false",
                   help="omit timing fields (byte-stable output)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("feasible", parents=[common], help="parameter filter as CSV")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--even-r", dest="even_r", action="store_true", default=True,
                   help="keep only even r (the default)")
    f.add_argument("--any-r", dest="even_r", action="store_false", help="keep odd r as well")
    f.add_argument("--lam", type=int, default=2)
    f.set_defaults(func=cmd_feasible)

    s = sub.add_parser("search", parents=[common], help="exhaustive base-block search")
    s.add_argument("kind", choices=["two-coset", "subspace", "small"])
    s.add_argument("--group", required=True, metavar="FILE")
    s.add_argument("--t", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--lam", type=int, default=2)
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("export-group", parents=[common], help="write an example's G0 as group JSON")
    e.add_argument("id")
    e.set_defaults(func=cmd_export_group)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DesignError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
