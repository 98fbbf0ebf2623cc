"""Verification suites behind ``gradcat suite``; each returns a list of
checks that the report assembles in check-id order."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from gradcat import __version__, linalg
from gradcat.adjoint import (
    BRUTE_FORCE,
    EngineAdapter,
    HomFunctor,
    IntersectionSquare,
    canonical_subobject_diagram,
    compute_splittings,
    least_fp_subobject,
    set_square,
    verify_absolute_pullback,
    verify_colimit,
)
from gradcat.cats import CatObject, PointedSetCat, PosCat, SetCat, VecCat, default_instances
from gradcat.chains import COUNTEREXAMPLES, find_independence_index, random_vec_cone, verify_counterexample_chain
from gradcat.corpus import load_corpus
from gradcat.errors import GradcatError, ModeNotSound, ResourceGuardError
from gradcat.finset import FinSet, standard
from gradcat.functors.analysis import (
    Kind,
    classify_functor,
    preserves_pullbacks_upto,
    recover_right_adjoint_form,
)
from gradcat.functors.evseq import ev_countable_witness, product_comparison
from gradcat.functors.presentation import c01, set_guard
from gradcat.spec_io import SUITES, to_jsonable


@dataclass
class SuiteConfig:
    size: int = 3  # object size bound for exhaustive scans
    depth: int = 20  # counterexample chain depth
    bound: int = 4  # classification bound N
    guard: int | None = None
    seeds: int = 100  # random chains in the limits suite

    def as_dict(self) -> dict:
        return {"size": self.size, "depth": self.depth, "bound": self.bound,
                "guard": self.guard, "seeds": self.seeds}


@dataclass
class Check:
    id: str
    ok: bool
    detail: str = ""
    witness: Any = None
    guard_tripped: bool = False

    def as_dict(self) -> dict:
        out = {"id": self.id, "ok": self.ok, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness)
        if self.guard_tripped:
            out["guard_tripped"] = True
        return out


@dataclass
class Report:
    command: list
    config: dict
    checks: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if any(c.guard_tripped for c in self.checks):
            return 4
        return 0 if all(c.ok for c in self.checks) else 1

    def as_dict(self, with_timing: bool = True) -> dict:
        checks = sorted(self.checks, key=lambda c: c.id)
        out = {
            "tool": "gradcat",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "checks": [c.as_dict() for c in checks],
            "summary": {"passed": sum(c.ok for c in checks),
                        "failed": sum(not c.ok for c in checks)},
            "status": "pass" if self.exit_code == 0 else "fail",
            "exit_code": self.exit_code,
        }
        if with_timing:
            out["timing"] = self.timing
        return out

    def as_text(self) -> str:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.id}  {c.detail}".rstrip()
                 for c in sorted(self.checks, key=lambda c: c.id)]
        d = self.as_dict(with_timing=False)
        lines.append(f"{d['summary']['passed']} passed, {d['summary']['failed']} failed")
        return "\n".join(lines)


def guarded(check_id: str, fn: Callable[[], Check]) -> Check:
    """Run one check, turning guard trips and theorem-level errors into
    failing verdicts."""
    try:
        return fn()
    except ResourceGuardError as exc:
        return Check(check_id, False, str(exc), {"needed": exc.needed, "bound": exc.bound},
                     guard_tripped=True)
    except GradcatError as exc:
        return Check(check_id, False, f"{type(exc).__name__}: {exc}")


# --- grades ----------------------------------------------------------------------

def suite_grades(cfg: SuiteConfig, instances=None) -> list[Check]:
    out = []
    for cat in instances or default_instances():
        n = min(cfg.size, 2) if isinstance(cat, VecCat) else cfg.size
        objs = list(cat.objects(n))

        def axioms(cat=cat, objs=objs):
            for A in objs:
                r = cat.verify_grade_axioms(A)
                if not r.ok:
                    return Check(f"grades/{cat.tag}/axioms", False, r.reason,
                                 {"object": A, "morphism": r.counterexample})
            return Check(f"grades/{cat.tag}/axioms", True, f"{len(objs)} objects up to size {n}")

        def same_grade(cat=cat, objs=objs):
            f = cat.same_grade_counterexample(objs)
            if f is not None:
                return Check(f"grades/{cat.tag}/same-grade-iso", False, "non-invertible morphism", f)
            return Check(f"grades/{cat.tag}/same-grade-iso", True, f"{len(objs)} objects up to size {n}")

        out.append(guarded(f"grades/{cat.tag}/axioms", axioms))
        out.append(guarded(f"grades/{cat.tag}/same-grade-iso", same_grade))
    return out


# --- limits ----------------------------------------------------------------------

def independence_check(seed: int) -> Check:
    """Run the incremental search and confirm it by a full rescan."""
    cone, vecs = random_vec_cone(random.Random(seed))
    res = find_independence_index(cone, vecs)
    p = cone.chain.cat.p

    def full_rank(k):
        q = cone.legs[k].data
        return linalg.rank_of_vectors([linalg.apply(q, v, p) for v in vecs], q.nrows, p) == len(vecs)

    expected = next((k for k in range(cone.chain.depth + 1) if full_rank(k)), None)
    cid = f"limits/independence/seed-{seed:03d}"
    if res.index != expected:
        return Check(cid, False, f"search gave {res.index}, rescan gave {expected}", {"seed": seed})
    return Check(cid, True, f"index {res.index} at depth {cone.chain.depth}")


def suite_limits(cfg: SuiteConfig) -> list[Check]:
    out = [independence_check(s) for s in range(cfg.seeds)]
    top = min(cfg.size, 3)
    for d in range(0, 5):
        bad = None
        for m in range(top + 1):
            for n in range(top + 1):
                if not product_comparison(standard(m), standard(n), d).is_bijective():
                    bad = (m, n)
        out.append(Check(f"limits/evseq/products-d{d}", bad is None,
                         "bijective" if bad is None else f"fails at sizes {bad}", bad))
    for d in range(0, 7):
        got = ev_countable_witness(d, d + 2)
        out.append(Check(f"limits/evseq/witness-d{d}", got == d + 1, f"least failing index {got}"))
    return out


# --- functor classification --------------------------------------------------------

def classify_check(H, bound: int) -> Check:
    cid = f"classify/{H.name}"

    def run():
        c = classify_functor(H, bound)
        detail = c.kind.value
        if c.right_adjoint:
            form = recover_right_adjoint_form(H, min(bound, 3))
            detail += f", H = (-)^A with |A| = {len(form.exponent)}"
        if c.kind is Kind.C01_EXCEPTION:
            if c.witness is None:
                return Check(cid, False, "C01-type functor preserved every intersection")
            detail += ", fails the disjoint-injections square"
        return Check(cid, True, detail, c.witness if c.kind is Kind.NOT_PRODUCT_PRESERVING else None)

    return guarded(cid, run)


def suite_classify(cfg: SuiteConfig, corpus=None) -> list[Check]:
    return [classify_check(H, cfg.bound) for H in corpus or load_corpus()]


# --- adjoint machinery ------------------------------------------------------------

def least_subobject_check(H, max_k: int) -> Check:
    cid = f"adjoint/least/{H.name}"

    def run():
        if not preserves_pullbacks_upto(H, max_k):
            K = standard(max_k)
            x = next(iter(H.obj(K)), None)
            if x is not None:
                try:
                    least_fp_subobject(H, K, x)
                    return Check(cid, False, "grade descent ran without its precondition")
                except ModeNotSound:
                    pass
            return Check(cid, True, "intersections not preserved; grade descent refused")
        queries = 0
        for n in range(max_k + 1):
            K = standard(n)
            for x in H.obj(K):
                queries += 1
                fast = least_fp_subobject(H, K, x)
                slow = least_fp_subobject(H, K, x, BRUTE_FORCE)
                if fast.subset != slow.subset:
                    return Check(cid, False, "descent and brute force disagree",
                                 {"K": K, "x": x, "descent": fast.subset, "brute": slow.subset})
                if not trace_ok(fast):
                    return Check(cid, False, "bad descent trace", {"K": K, "x": x, "trace": fast.trace})
        return Check(cid, True, f"{queries} queries agree")

    return guarded(cid, run)


def trace_ok(res) -> bool:
    chain = [res.start, *res.trace, res.subset] if res.steps else [res.start]
    strictly = all(len(b) < len(a) and b.issubset(a) for a, b in zip(chain, chain[1:]))
    return strictly and (len(res.trace) < len(res.start) or len(res.start) == 0)


def diagram_check(cat, K: CatObject, test_size: int, label: str) -> Check:
    cid = f"adjoint/diagram/{cat.tag}/{label}"
    D = canonical_subobject_diagram(cat, K)
    report = verify_colimit(D, cat.objects(test_size))
    ok = D.is_directed() and D.covers_subobjects() and report.ok
    return Check(cid, ok, f"{K!r}: {len(D.nodes)} subobjects, {report.cocones} cocones",
                 report.witness)


def suite_adjoint(cfg: SuiteConfig, corpus=None) -> list[Check]:
    out = [least_subobject_check(H, cfg.size + 1) for H in corpus or load_corpus()]
    for cat in (SetCat(), PosCat()):
        for k, K in enumerate(cat.iso_reps(cfg.size)):
            out.append(diagram_check(cat, K, cfg.size, f"{k:02d}"))
    return out


# --- absolute intersections -------------------------------------------------------

def set_squares(cat, max_size: int, nonempty: bool = True):
    for n in range(1 if isinstance(cat, PointedSetCat) else 0, max_size + 1):
        A = CatObject(cat, standard(n), 0) if isinstance(cat, PointedSetCat) else CatObject(cat, standard(n))
        subs = [S for S in A.carrier.subsets()
                if not isinstance(cat, PointedSetCat) or 0 in S]
        for B in subs:
            for Bp in subs:
                if nonempty and not (B & Bp):
                    continue
                yield set_square(cat, A, B, Bp)


def vec_squares(V: VecCat, max_dim: int):
    for n in range(max_dim + 1):
        A = V.space(n)
        subs = V.subobjects(A)
        for m in subs:
            for mp in subs:
                yield IntersectionSquare.of(V, m, mp)


def hom_test_objects(cat, max_size: int):
    if isinstance(cat, VecCat):
        return [cat.space(d) for d in range(max_size + 1)]
    return list(cat.iso_reps(max_size))


def suite_absolute(cfg: SuiteConfig, corpus=None) -> list[Check]:
    out = []
    S, SP, V = SetCat(), PointedSetCat(), VecCat(2)
    families = [("Set", list(set_squares(S, cfg.size + 1))),
                ("SetP", list(set_squares(SP, cfg.size + 1))),
                ("VecGF(2)", list(vec_squares(V, cfg.size)))]
    for tag, squares in families:
        bad = None
        for sq in squares:
            eqs = compute_splittings(sq).equations(sq)
            if not all(eqs.values()):
                bad = (sq, eqs)
                break
        out.append(Check(f"absolute/splittings/{tag}", bad is None, f"{len(squares)} squares", bad))
    small = {"Set": list(set_squares(S, cfg.size)), "SetP": list(set_squares(SP, cfg.size)),
             "VecGF(2)": list(vec_squares(V, min(cfg.size, 2)))}
    for cat, tag in ((S, "Set"), (SP, "SetP"), (V, "VecGF(2)")):
        for W in hom_test_objects(cat, min(cfg.size, 2) if cat is V else cfg.size):
            F = HomFunctor(cat, W)
            out.append(_absolute_check(f"absolute/hom/{tag}/{W!r}", small[tag], F))
    for H in corpus or load_corpus():
        out.append(guarded(f"absolute/engine/{H.name}",
                           lambda H=H: _absolute_check(f"absolute/engine/{H.name}", small["Set"],
                                                       EngineAdapter(H))))
    empty = set_square(S, S.obj([0, 1]), FinSet([0]), FinSet([1]))
    r = verify_absolute_pullback(empty, EngineAdapter(c01()))
    out.append(Check("absolute/c01-disjoint-square", not r.ok,
                     "pullback not preserved, as expected" if not r.ok else "unexpectedly preserved",
                     r.witness))
    return out


def _absolute_check(cid: str, squares, F) -> Check:
    pairs = 0
    for sq in squares:
        r = verify_absolute_pullback(sq, F, splitting=compute_splittings(sq))
        pairs += r.pairs
        if not r.ok:
            return Check(cid, False, "image square is not a pullback", {"square": sq, **r.witness})
    return Check(cid, True, f"{len(squares)} squares, {pairs} commutative pairs")


# --- counterexample chains -------------------------------------------------------

def suite_counterexamples(cfg: SuiteConfig) -> list[Check]:
    out = []
    for name in COUNTEREXAMPLES:
        r = verify_counterexample_chain(name, cfg.depth)
        out.append(Check(f"counterexamples/{name}", r.ok,
                         f"{len(r.witnesses)} merged pairs, {r.monic_legs} monic legs",
                         None if r.ok else {"homomorphisms": r.homomorphisms,
                                            "compatible": r.compatible}))
    return out


RUNNERS = {
    "grades": suite_grades,
    "limits": suite_limits,
    "functor-classify": suite_classify,
    "adjoint": suite_adjoint,
    "absolute": suite_absolute,
    "counterexamples": suite_counterexamples,
}


def run_suite(name: str, cfg: SuiteConfig | None = None, command: list | None = None) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    cfg = cfg or SuiteConfig()
    report = Report(command or ["suite", name], cfg.as_dict())
    names = list(RUNNERS) if name == "all" else [name]
    if cfg.guard is not None:
        set_guard(cfg.guard)
    try:
        for n in names:
            t = time.perf_counter()
            report.checks.extend(RUNNERS[n](cfg))
            report.timing[n] = round(time.perf_counter() - t, 3)
    finally:
        if cfg.guard is not None:
            set_guard(None)
    return report
