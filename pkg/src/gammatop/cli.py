"""Command-line front end.

Exit codes: 0 success, 1 counterexample found, 2 input error, 3 cap or
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import maps as M
from .calculus import gamma_calculus
from .errors import CapExceeded, GammaTopError, ParseError
from .lab import Grid, iter_check, Report, render_audit, search_counterexample, variant_audit
from .operation import profile
from .semi import semi_calculus
from .space import enumerate_topologies, format_set, mask_of
from .textio import parse_document, render_space
from .theorems import Config, S, select

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def _family(masks) -> str:
    return " ".join(format_set(m) for m in masks)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _parse_set(text: str, n: int) -> int:
    text = text.strip().strip("{}")
    points = [int(p) for p in text.replace(",", " ").split()] if text.strip() else []
    for p in points:
        if not 0 <= p < n:
            raise ValueError(f"point {p} outside 0..{n - 1}")
    return mask_of(points)


# -- commands --------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _load(args.file)
    for kind, name in doc.order:
        if kind == "space":
            s = doc.spaces[name]
            print(f"space {name}: {s.n} points, {len(s.opens)} open sets")
        elif kind == "operation":
            decl = doc.operations[name]
            print(f"operation {name} on {decl.space}: {decl.op.kind}")
        else:
            decl = doc.maps[name]
            print(f"map {name}: {decl.dom} -> {decl.cod} f={list(decl.f)}")
    print("ok")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spaces = enumerate_topologies(args.points, up_to_iso=args.up_to_iso, allow_six=args.allow_6)
    if args.count_only:
        print(sum(1 for _ in spaces))
        return EXIT_OK
    for i, s in enumerate(spaces):
        if args.machine:
            print(_dump({"index": i, "points": s.n, "opens": [S(u) for u in s.opens]}))
        else:
            print(render_space(s, f"T{i}"), end="")
    return EXIT_OK


def _op_from_args(args):
    doc = _load(args.file)
    space = doc.space(args.space)
    op = doc.operation(args.op)
    if op.space != space:
        raise ValueError(f"operation {args.op!r} is not on space {args.space!r}")
    return space, op


def cmd_families(args) -> int:
    space, op = _op_from_args(args)
    g = gamma_calculus(op)
    sc = semi_calculus(op, args.closed_def)
    print(f"gamma-open: {_family(g.gamma_open)}")
    print(f"gamma-closed (complement): {_family(g.gamma_closed('complement'))}")
    print(f"gamma-closed (closure-point): {_family(g.gamma_closed('closure-point'))}")
    print(f"closed definitions agree: {_yes(g.closed_defs_agree)}")
    print(f"semi-open: {_family(sc.semi_open)}")
    print(f"semi-closed ({sc.closed_def}): {_family(sc.semi_closed)}")
    print(f"semi-closed equals complements of semi-open: {_yes(sc.duality_holds)}")
    return EXIT_OK


def cmd_compute(args) -> int:
    space, op = _op_from_args(args)
    a = _parse_set(args.set, space.n)
    g = gamma_calculus(op)
    sc = semi_calculus(op, args.closed_def)
    table = {
        "intg": g.interior,
        "clg": g.closure,
        "dgamma": g.derived,
        "scl": sc.scl,
        "sint": sc.sint,
        "sd": sc.sd,
    }
    if args.what == "ext":
        result = g.exterior(a)
    elif args.what == "bd":
        result = g.boundary(a)
    else:
        result = table[args.what][a]
    print(format_set(result))
    return EXIT_OK


def cmd_classify_op(args) -> int:
    _, op = _op_from_args(args)
    prof = profile(op).as_dict()
    if args.machine:
        print(_dump(prof))
    else:
        for key, value in prof.items():
            print(f"{key}: {_yes(value)}")
    return EXIT_OK


def _witness_text(w) -> str:
    if isinstance(w, tuple):
        x, v = w
        return f"x={x} V={format_set(v)}"
    return format_set(w)


def cmd_classify_map(args) -> int:
    doc = _load(args.file)
    m = doc.point_map(args.map, args.closed_def)
    result = M.classify(m)
    if args.machine:
        rec = {}
        for name, w in result.items():
            if isinstance(w, tuple):
                w = {"x": w[0], "V": S(w[1])}
            elif w is not None:
                w = S(w)
            rec[name] = {"holds": w is None, "witness": w}
        print(_dump(rec))
    else:
        for name, w in result.items():
            print(f"{name}: yes" if w is None else f"{name}: no (witness {_witness_text(w)})")
    return EXIT_OK


def _config(args) -> Config:
    return Config(args.closed_def, args.open_dir, args.gamma_b)


def _grid(args) -> Grid:
    return Grid(max_points=args.max_points, ops=args.ops, maps=args.maps, up_to_iso=args.up_to_iso)


def _report_line(rep: Report) -> str:
    return f"{rep.theorem}: holds={rep.holds} counterexample={rep.counterexample} skipped={rep.skipped}"


def _select(pattern: str):
    try:
        return select(pattern)
    except KeyError:
        raise ValueError(f"unknown theorem {pattern!r}") from None


def cmd_check(args) -> int:
    specs = _select(args.theorem)
    cfg, grid = _config(args), _grid(args)
    keep = "all" if args.machine else "first"
    totals = {s.id: Report(s.id, cfg.as_dict()) for s in specs}
    for _, chunk in iter_check(specs, grid, cfg, args.workers, keep):
        for part in chunk:
            if args.machine:
                for v in part.verdicts:
                    print(v.to_json())
                part.verdicts = []
            totals[part.theorem].merge(part)
    found = False
    for s in specs:
        rep = totals[s.id]
        found = found or rep.counterexample > 0
        if args.machine:
            print(_dump({"type": "summary", **{k: v for k, v in rep.summary().items() if k != "first_counterexample"}}))
        else:
            print(_report_line(rep))
            first = rep.first
            if first is not None:
                print(f"  first counterexample: {first.instance} witness={_dump(first.witness)}")
    return EXIT_COUNTEREXAMPLE if found else EXIT_OK


def cmd_search(args) -> int:
    specs = _select(args.theorem)
    drop = [d for d in (args.drop or "").split(",") if d]
    known = {n for s in specs for h in s.hypotheses for n in (h.name, str(h))}
    for d in drop:
        if d not in known:
            raise ValueError(f"{args.theorem} has no hypothesis {d!r}")
    cfg, grid = _config(args), _grid(args)
    status = EXIT_OK
    for s in specs:
        names = {n for h in s.hypotheses for n in (h.name, str(h))}
        res = search_counterexample(s, [d for d in drop if d in names], grid, cfg, args.budget)
        if res.status == "counterexample":
            status = EXIT_COUNTEREXAMPLE
        elif res.status == "budget-exhausted" and status == EXIT_OK:
            status = EXIT_CAP
        if args.machine:
            print(_dump(res.to_record()))
            continue
        dropped = ",".join(res.dropped) or "-"
        print(f"{res.theorem} (dropped: {dropped}): {res.status} after {res.evaluated} evaluated, {res.skipped} skipped")
        if res.verdict is not None:
            print(f"  instance: {res.verdict.instance}")
            print(f"  witness: {_dump(res.verdict.witness)}")
            print(f"  recipe: {_dump(res.verdict.recipe)}")
    return status


def cmd_audit(args) -> int:
    rows = variant_audit(_grid(args), _config(args), args.workers)
    if args.machine:
        for base, stated, corrected in rows:
            for name, rep in (("as-stated", stated), ("corrected", corrected)):
                print(_dump({"theorem": base, "variant": name, "spec": rep.theorem, "holds": rep.holds, "counterexample": rep.counterexample, "skipped": rep.skipped}))
    else:
        print(render_audit(rows))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gammatop", description="Finite-topology lab for operations on open sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="parse and validate a document")
    v.add_argument("file")
    v.set_defaults(run=cmd_validate)

    e = sub.add_parser("enumerate", help="list topologies on n points")
    e.add_argument("--points", type=int, required=True)
    e.add_argument("--up-to-iso", action="store_true")
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--allow-6", action="store_true", help="lift the point cap from 5 to 6")
    e.add_argument("--machine", action="store_true")
    e.set_defaults(run=cmd_enumerate)

    def op_args(q, machine=False):
        q.add_argument("--file", required=True)
        q.add_argument("--space", required=True)
        q.add_argument("--op", required=True)
        q.add_argument("--closed-def", default="complement")
        if machine:
            q.add_argument("--machine", action="store_true")

    f = sub.add_parser("families", help="print the derived set families")
    op_args(f)
    f.set_defaults(run=cmd_families)

    c = sub.add_parser("compute", help="evaluate one operator on one set")
    op_args(c)
    c.add_argument("--set", required=True)
    c.add_argument("--what", required=True, choices=("intg", "clg", "ext", "bd", "dgamma", "scl", "sint", "sd"))
    c.set_defaults(run=cmd_compute)

    co = sub.add_parser("classify-op", help="profile flags of an operation")
    op_args(co, machine=True)
    co.set_defaults(run=cmd_classify_op)

    cm = sub.add_parser("classify-map", help="map classes with witnesses")
    cm.add_argument("--file", required=True)
    cm.add_argument("--map", required=True)
    cm.add_argument("--closed-def", default="complement")
    cm.add_argument("--machine", action="store_true")
    cm.set_defaults(run=cmd_classify_map)

    def grid_args(q):
        q.add_argument("--max-points", type=int, default=3)
        q.add_argument("--ops", default="builtins")
        q.add_argument("--maps", default="auto")
        q.add_argument("--up-to-iso", action="store_true")
        q.add_argument("--closed-def", default="complement", choices=("complement", "closurepoint", "closure-point"))
        q.add_argument("--open-dir", default="standard", choices=("paper", "standard"))
        q.add_argument("--gamma-b", default="union", choices=("union", "flag-ambiguous"))
        q.add_argument("--machine", action="store_true")

    k = sub.add_parser("check", help="sweep theorem specs over a grid")
    k.add_argument("--theorem", default="all")
    grid_args(k)
    k.add_argument("--workers", type=int, default=1)
    k.set_defaults(run=cmd_check)

    s = sub.add_parser("search", help="hunt a counterexample with hypotheses dropped")
    s.add_argument("--theorem", required=True)
    s.add_argument("--drop", default="")
    s.add_argument("--budget", type=int, default=None)
    grid_args(s)
    s.set_defaults(run=cmd_search)

    a = sub.add_parser("audit", help="as-stated versus corrected variants")
    grid_args(a)
    a.add_argument("--workers", type=int, default=1)
    a.set_defaults(run=cmd_audit)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as exc:
        print(f"error: {args.file if hasattr(args, 'file') else 'input'}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GammaTopError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
