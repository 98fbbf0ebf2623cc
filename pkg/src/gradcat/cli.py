"""The ``gradcat`` command line."""

from __future__ import annotations

import argparse
import json
import sys
import time

from gradcat.adjoint import (
    EngineAdapter,
    HomFunctor,
    IntersectionSquare,
    compute_splittings,
    set_square,
    verify_absolute_pullback,
)
from gradcat.cats import CatObject, PointedSetCat, SetCat, VecCat
from gradcat.chains import verify_counterexample_chain
from gradcat.errors import GradcatError, NoSplitting, ResourceGuardError, SpecError, SpecSchemaError
from gradcat.finset import FinSet
from gradcat.functors.presentation import set_guard
from gradcat.spec_io import (
    SUITES,
    SpecFile,
    functor_by_name,
    parse_spec,
    resolve_category,
    resolve_functor,
)
from gradcat.suites import Check, Report, SuiteConfig, classify_check, guarded, run_suite, suite_grades


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradcat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--guard", type=int, default=None,
                       help="term-instance guard (overrides GRADCAT_GUARD)")

    g = sub.add_parser("grade", help="check the grade axioms of the category instances")
    g.add_argument("--size", type=int, default=3)
    g.add_argument("--instance", action="append", help="restrict to an instance tag")
    common(g)

    c = sub.add_parser("classify", help="classify a functor spec (path or inline JSON)")
    c.add_argument("spec")
    c.add_argument("--bound", type=int, default=4)
    common(c)

    s = sub.add_parser("suite", help="run a verification suite")
    s.add_argument("name", choices=SUITES)
    s.add_argument("--size", type=int, default=3)
    s.add_argument("--depth", type=int, default=20)
    s.add_argument("--bound", type=int, default=4)
    common(s)

    k = sub.add_parser("check", help="verify any spec file: square, chain, category, functor or suite")
    k.add_argument("spec")
    common(k)
    return parser


def emit(report: Report, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.as_dict(), indent=2, sort_keys=False))
    else:
        print(report.as_text())
    return report.exit_code


def check_square(spec: SpecFile) -> list[Check]:
    doc = spec.payload
    inst = doc["instance"]
    try:
        if inst == "Vec":
            V = VecCat(doc.get("p", 2))
            A = V.space(doc.get("dim", 0))
            sq = IntersectionSquare.of(V, V.subspace_inclusion(A, [tuple(v) for v in doc["B"]]),
                                       V.subspace_inclusion(A, [tuple(v) for v in doc["Bp"]]))
            cat = V
        else:
            cat = SetCat() if inst == "Set" else PointedSetCat()
            carrier = FinSet(doc.get("A", []))
            A = CatObject(cat, carrier) if inst == "Set" else cat.obj(carrier, doc.get("base"))
            sq = set_square(cat, A, FinSet(doc["B"]), FinSet(doc["Bp"]))
    except (GradcatError, ValueError, TypeError) as exc:
        raise SpecSchemaError(f"invalid square: {exc}", spec.source) from None
    checks = []
    try:
        split = compute_splittings(sq)
        eqs = split.equations(sq)
        checks.append(Check("square/splittings", all(eqs.values()), ", ".join(eqs), eqs))
    except NoSplitting as exc:
        split = None
        checks.append(Check("square/splittings", True, f"none: {exc}"))
    for k, ref in enumerate(doc.get("functors", [])):
        if isinstance(ref, str):
            if inst != "Set":
                raise SpecSchemaError("engine functors apply to Set squares only",
                                      f"{spec.source}/functors/{k}")
            F = EngineAdapter(functor_by_name(ref, spec.source))
        elif inst == "Vec":
            F = HomFunctor(cat, cat.space(int(ref["hom"])))
        else:
            W = CatObject(cat, FinSet(ref["hom"]), ref.get("base"))
            F = HomFunctor(cat, W)
        cid = f"square/absolute/{k:02d}"
        r = guarded(cid, lambda F=F, cid=cid: _absolute(cid, sq, F, split))
        checks.append(r)
    return checks


def _absolute(cid, sq, F, split) -> Check:
    r = verify_absolute_pullback(sq, F, splitting=split)
    return Check(cid, r.ok, f"{F.name}: {r.pairs} commutative pairs", r.witness)


def run_spec(spec: SpecFile) -> tuple[list[Check], dict]:
    doc = spec.payload
    config = {k: v for k, v in doc.items() if k not in ("version", "kind")}
    if spec.kind == "functor":
        return [classify_check(resolve_functor(spec), doc.get("bound", 4))], config
    if spec.kind == "chain":
        r = verify_counterexample_chain(doc["chain"], doc["depth"])
        return [Check(f"chain/{doc['chain']}", r.ok,
                      f"{len(r.witnesses)} merged pairs, {r.monic_legs} monic legs")], config
    if spec.kind == "category":
        cat = resolve_category(doc["instance"], spec.source)
        return suite_grades(SuiteConfig(size=doc.get("size", 3)), [cat]), config
    if spec.kind == "square":
        return check_square(spec), config
    cfg = SuiteConfig(size=doc.get("size", 3), depth=doc.get("depth", 20),
                      bound=doc.get("bound", 4), guard=doc.get("guard"))
    return run_suite(doc["suite"], cfg).checks, config


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = list(argv if argv is not None else sys.argv[1:])
    if args.guard is not None:
        set_guard(args.guard)
    try:
        return _dispatch(args, command)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    finally:
        set_guard(None)


def _dispatch(args, command) -> int:
    t = time.perf_counter()
    if args.command == "suite":
        cfg = SuiteConfig(size=args.size, depth=args.depth, bound=args.bound, guard=args.guard)
        return emit(run_suite(args.name, cfg, command), args.format)
    if args.command == "grade":
        cats = [resolve_category(name) for name in args.instance] if args.instance else None
        report = Report(command, {"size": args.size})
        report.checks = suite_grades(SuiteConfig(size=args.size), cats)
    elif args.command == "classify":
        spec = parse_spec(args.spec)
        if spec.kind != "functor":
            raise SpecSchemaError(f"classify expects a functor spec, got {spec.kind!r}", spec.source)
        report = Report(command, {"bound": args.bound})
        report.checks = [classify_check(resolve_functor(spec), args.bound)]
    else:
        spec = parse_spec(args.spec)
        checks, config = run_spec(spec)
        report = Report(command, config, checks)
    report.timing["total"] = round(time.perf_counter() - t, 3)
    return emit(report, args.format)


if __name__ == "__main__":
    sys.exit(main())
