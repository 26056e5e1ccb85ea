"""Command-line front end: ``smlab analyze | lattice | laws | decide-z | witness``.

stdout carries the JSON (or markdown) report, stderr the diagnostics.
Exit codes: 0 success, 1 a law failed, 2 parse error, 3 precondition
violated, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from . import predicates as P
from .errors import CapExceeded, Caps, ParseError, PreconditionError
from .finmod import ModuleTable, Submodule
from .finring import IdealSet
from .instances import Instance, build_zsub, load_instance
from .zlattice import (
    DEFAULT_BOUND,
    z_colon,
    z_decide_strongly_irreducible,
    z_is_primary,
    z_quotient_invariants,
    z_witness_search,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CAP = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _render(value: Any, pretty: bool) -> Any:
    if isinstance(value, Submodule):
        return [value.module.name(x) for x in value.elements] if pretty else value.to_json()
    if isinstance(value, IdealSet):
        return [value.ring.name(x) for x in value.elements] if pretty else value.to_json()
    if isinstance(value, dict):
        return {k: _render(v, pretty) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v, pretty) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


def _verdict_json(v: P.PropertyVerdict, pretty: bool) -> dict:
    out = {"property": v.name, "verdict": v.verdict, "path": v.path}
    if v.witness is not None:
        out["witness"] = _render(v.witness, pretty)
    if v.data:
        out["data"] = _render(v.data, pretty)
    return out


def _emit(doc: Any, out: str | None = None) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Instance:
    try:
        return load_instance(path)
    except OSError as exc:
        raise ParseError(str(exc)) from exc


# -- commands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    inst = _load(args.instance)
    caps = Caps.from_env()
    if inst.backend == "zlattice":
        return _analyze_z(inst, args)
    m: ModuleTable = inst.module(caps)
    n = inst.submodule(caps)
    names = list(P.PROPERTIES) + list(P.MODULE_PROPERTIES) if args.props == "all" else args.props.split(",")
    unknown = [p for p in names if p not in P.PROPERTIES and p not in P.MODULE_PROPERTIES]
    if unknown:
        raise ParseError(f"unknown properties {unknown}")
    if n is not None and not n.is_proper:
        raise PreconditionError("N = M: a proper submodule is required")
    props = {}
    for name in names:
        if name in P.MODULE_PROPERTIES:
            props[name] = _verdict_json(P.MODULE_PROPERTIES[name](m), args.pretty)
        elif n is not None:
            props[name] = _verdict_json(P.PROPERTIES[name](m, n), args.pretty)
    doc = {"instance": inst.to_json(), "module_size": m.size,
           "N": _render(n, args.pretty) if n is not None else None, "properties": props}
    _emit(doc, args.out)
    return EXIT_OK


def _analyze_z(inst: Instance, args) -> int:
    m, n = inst.module(), inst.submodule()
    inv = m.invariants
    doc: dict[str, Any] = {"instance": inst.to_json(),
                           "invariants": {"free_rank": inv.free_rank, "factors": list(inv.factors)}}
    if n is not None:
        if not n.is_proper:
            raise PreconditionError("N = M: a proper submodule is required")
        q = z_quotient_invariants(m, n)
        primary, p = z_is_primary(m, n)
        doc["N"] = n.to_json()
        doc["quotient"] = {"free_rank": q.free_rank, "factors": list(q.factors)}
        doc["colon"] = z_colon(n, m)
        doc["primary"] = {"verdict": primary, "prime": p if primary else None}
        doc["strongly_irreducible"] = z_decide_strongly_irreducible(m, n, args.witness_bound).to_json()
    _emit(doc, args.out)
    return EXIT_OK


def cmd_lattice(args) -> int:
    inst = _load(args.instance)
    if inst.backend != "finite":
        raise PreconditionError("lattice dumps need a finite instance")
    m = inst.module(Caps.from_env())
    lat = m.lattice
    if len(lat) > Caps.from_env().lattice:
        raise CapExceeded(f"{len(lat)} submodules exceed cap lattice={Caps.from_env().lattice}")
    nodes = []
    for i, s in enumerate(lat):
        node = {"index": i, "elements": _render(s, args.pretty), "size": len(s)}
        if s.bits in lat.generators:
            node["generator"] = m.name(lat.generators[s.bits]) if args.pretty else int(lat.generators[s.bits])
        nodes.append(node)
    doc = {"instance": inst.to_json(), "count": len(lat), "nodes": nodes,
           "covers": [list(c) for c in lat.covers]}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_laws(args) -> int:
    from .laws import markdown_report, report_ok, run_suite
    from .laws.suite import SUITES, dumps_report
    if args.suite not in SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    base = Caps.from_env()
    caps = Caps(ring=args.max_ring or base.ring, module=args.max_module or base.module, lattice=base.lattice)
    try:
        report = run_suite(args.law or None, jobs=args.jobs, suite=args.suite, seed=args.seed,
                           caps=caps, mutation=args.mutation)
    except KeyError as exc:
        raise ParseError(str(exc.args[0])) from exc
    _emit(markdown_report(report) if args.markdown else dumps_report(report), args.out)
    s = report["summary"]
    print(f"{s['results']} results: {s['pass']} pass, {s['fail']} fail, "
          f"{s['skipped-hypothesis']} skipped, {s['error']} error", file=sys.stderr)
    return EXIT_OK if report_ok(report) else EXIT_FAIL


def _zpair(args) -> tuple:
    inst = _load(args.zmodule)
    if inst.backend != "zlattice":
        raise ParseError("expected a zmodule instance")
    m = inst.module()
    if args.zsub:
        try:
            with open(args.zsub) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"{args.zsub}: {exc}") from exc
        n = build_zsub(m, doc.get("zsub", doc) if isinstance(doc, dict) else doc)
    else:
        n = inst.submodule()
    if n is None:
        raise ParseError("no submodule given: add 'zsub' to the instance or pass a zsub file")
    return inst, m, n


def cmd_decide_z(args) -> int:
    inst, m, n = _zpair(args)
    v = z_decide_strongly_irreducible(m, n, args.witness_bound)
    _emit({"zmodule": m.to_json(), "zsub": n.to_json(), **v.to_json()}, args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    inst = _load(args.zmodule)
    if inst.backend == "finite":
        m = inst.module(Caps.from_env())
        n = inst.submodule()
        if n is None:
            raise ParseError("instance has no submodule")
        if not n.is_proper:
            raise PreconditionError("N = M: a proper submodule is required")
        v = P.is_strongly_irreducible_cyclic(m, n)
        doc = {"N": _render(n, args.pretty), "witness": _render(v.witness, args.pretty) if v.witness else None}
    else:
        _, m, n = _zpair(args)
        if not n.is_proper:
            raise PreconditionError("N = M: a proper submodule is required")
        pair = z_witness_search(m, n, args.bound)
        doc = {"zsub": n.to_json(), "bound": args.bound,
               "witness": [list(pair[0]), list(pair[1])] if pair else None}
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smlab", description="Strongly irreducible submodules: analysis and law checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="render elements by label, not index")

    p = sub.add_parser("analyze", help="property verdicts for an instance")
    p.add_argument("instance")
    p.add_argument("--props", default="all", help="comma-separated property names, or 'all'")
    p.add_argument("--witness-bound", type=int, default=DEFAULT_BOUND)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lattice", help="dump the submodule lattice")
    p.add_argument("instance")
    common(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("laws", help="run a law suite")
    p.add_argument("--suite", default="core")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-ring", type=int)
    p.add_argument("--max-module", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--law", action="append", help="restrict to this law id (repeatable)")
    p.add_argument("--mutation", help="inject a deliberately broken predicate (harness self-test)")
    p.add_argument("--markdown", action="store_true", help="markdown summary instead of JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("decide-z", help="decide strong irreducibility over the integers")
    p.add_argument("zmodule")
    p.add_argument("zsub", nargs="?")
    p.add_argument("--witness-bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decide_z)

    p = sub.add_parser("witness", help="search for a pair K, L with K ∩ L ⊆ N, neither inside N")
    p.add_argument("zmodule", metavar="instance")
    p.add_argument("zsub", nargs="?")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    common(p)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
