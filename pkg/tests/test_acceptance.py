"""The twelve acceptance criteria, each under its time limit.

Every criterion prints one PASS/FAIL line (shown even under captured
output) and then asserts, so a failure is both visible and fatal.
"""

import itertools
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

import oracles
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
from gradcat.cats import PointedSetCat, PosCat, RelCat, SetCat, VecCat, default_instances
from gradcat.chains import COUNTEREXAMPLES, find_independence_index, random_vec_cone, verify_counterexample_chain
from gradcat.corpus import load_corpus
from gradcat.finset import FinMap, FinSet, all_maps, standard
from gradcat.functors import (
    Kind,
    builtin,
    classify_functor,
    distinguished_elements,
    ev_countable_witness,
    eval_mor,
    is_distinguished,
    preserves_products_upto,
    recover_right_adjoint_form,
)
from gradcat.functors.evseq import product_comparison as ev_product_comparison

CORPUS = load_corpus()


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, limit: float, title: str):
        state = {"ok": False, "note": ""}
        t = time.perf_counter()
        try:
            yield state
        finally:
            elapsed = time.perf_counter() - t
            ok = state["ok"] and elapsed < limit
            note = f" ({state['note']})" if state["note"] else ""
            with capsys.disabled():
                print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}{note} "
                      f"[{elapsed:.2f}s / {limit:.0f}s]")
        assert state["ok"], f"criterion {number} failed{note}"
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"
    return run


def small_objects(cat, n=3):
    return list(cat.objects(min(n, 2) if isinstance(cat, VecCat) else n))


# --- 1, 2: grades -------------------------------------------------------------------

def brute_grade_violation(cat, objs):
    """Scan every morphism between the listed objects: monos into A and
    strong epis out of A may not raise the grade, and proper ones lower it."""
    for A, B in itertools.product(objs, repeat=2):
        for f in cat.hom_set(A, B):
            flags = cat.classify(f)
            if flags.iso:
                continue
            if flags.mono and not cat.grade(A) < cat.grade(B):
                return f
            if flags.strong_epi and not cat.grade(B) < cat.grade(A):
                return f
    return None


def test_criterion_01_grade_axioms(criterion):
    with criterion(1, 30, "grade axioms on all seven instances up to size 3") as c:
        bad = []
        for cat in default_instances():
            objs = small_objects(cat)
            bad += [(cat.tag, A) for A in objs if not cat.verify_grade_axioms(A).ok]
            if not isinstance(cat, RelCat):  # the hom-set scan is exhaustive for the rest
                if brute_grade_violation(cat, objs) is not None:
                    bad.append((cat.tag, "brute"))
        c["ok"], c["note"] = not bad, f"violations: {bad}" if bad else "7 instances"


def test_criterion_02_same_grade_isos(criterion):
    with criterion(2, 30, "same-grade monos and strong epis are invertible") as c:
        bad = [cat.tag for cat in default_instances()
               if cat.same_grade_counterexample(small_objects(cat)) is not None]
        c["ok"], c["note"] = not bad, f"failing: {bad}" if bad else "7 instances"


# --- 3, 4: chains -------------------------------------------------------------------

def test_criterion_03_counterexample_chains(criterion):
    with criterion(3, 1, "both counterexample chains at depth 20") as c:
        ok = True
        for name in COUNTEREXAMPLES:
            r = verify_counterexample_chain(name, 20)
            ok &= r.ok and r.monic_legs == 0 and all(r.homomorphisms) and all(r.compatible)
            # the witness pair (0, 2^k) is distinct in the apex and merged by the k-th leg
            ok &= [w[0] for w in r.witnesses] == list(range(21))
            ok &= all(a != b and a % 2 ** k == b % 2 ** k for k, (a, b), _ in r.witnesses)
        # reduction mod 2^k is additive and successor-equivariant, checked exhaustively on small levels
        for k in range(6):
            m = 2 ** (k + 1)
            ok &= all(((a + b) % m) % (m // 2) == (a % (m // 2) + b % (m // 2)) % (m // 2)
                      for a in range(m) for b in range(m))
            ok &= all(((a + 1) % m) % (m // 2) == (a % (m // 2) + 1) % (m // 2) for a in range(m))
        c["ok"], c["note"] = ok, "21 witnesses each"


def independent_over_gf2(vectors) -> bool:
    """No nonempty subset sums to zero."""
    vs = [np.array(v, dtype=np.int64) % 2 for v in vectors]
    for r in range(1, len(vs) + 1):
        for combo in itertools.combinations(vs, r):
            if not np.any(sum(combo) % 2):
                return False
    return True


def test_criterion_04_independence_index(criterion):
    with criterion(4, 10, "independence index on 100 seeded GF(2) chains") as c:
        bad = []
        for seed in range(100):
            cone, vecs = random_vec_cone(random.Random(seed))
            res = find_independence_index(cone, vecs)
            expected = None
            for k, leg in enumerate(cone.legs):
                q = np.array(leg.data.rows, dtype=np.int64).reshape(leg.data.nrows, leg.data.ncols)
                if independent_over_gf2([q @ np.array(v) for v in vecs]):
                    expected = k
                    break
            if res.index != expected:
                bad.append(seed)
        c["ok"], c["note"] = not bad, f"mismatched seeds {bad}" if bad else "rescan agrees on all seeds"


# --- 5, 6: subobject diagrams and least subobjects -----------------------------------------

def test_criterion_05_subobject_diagram_colimit(criterion):
    with criterion(5, 60, "subobject diagram is a colimit in Set and Pos, |K| <= 3") as c:
        bad, cocones = [], 0
        for cat in (SetCat(), PosCat()):
            tests = list(cat.objects(3))
            for K in cat.iso_reps(3):
                D = canonical_subobject_diagram(cat, K)
                rep = verify_colimit(D, tests)
                cocones += rep.cocones
                if not (rep.ok and D.is_directed() and D.covers_subobjects()):
                    bad.append((cat.tag, K))
        c["ok"], c["note"] = not bad, f"failing {bad}" if bad else f"{cocones} cocones"


def test_criterion_06_least_subobject(criterion):
    from gradcat.functors import preserves_pullbacks_upto

    with criterion(6, 60, "grade descent equals brute force, |K| <= 4") as c:
        bad, queries = [], 0
        for H in CORPUS:
            if not preserves_pullbacks_upto(H, 4):
                continue
            for n in range(5):
                K = standard(n)
                for x in H.obj(K):
                    queries += 1
                    res = least_fp_subobject(H, K, x)
                    chain = [K, *res.trace, res.subset] if res.steps else [K]
                    trace_ok = (all(len(b) < len(a) and b.issubset(a) for a, b in zip(chain, chain[1:]))
                                and (len(res.trace) < len(K) or n == 0))
                    if res.subset != oracles.brute_least_subset(H, K, x) or not trace_ok:
                        bad.append((H.name, n, x))
                    elif res.subset != least_fp_subobject(H, K, x, BRUTE_FORCE).subset:
                        bad.append((H.name, n, x, "modes"))
        c["ok"], c["note"] = not bad, f"failing {bad[:3]}" if bad else f"{queries} queries"


# --- 7, 8, 9: functor engine ----------------------------------------------------------

def test_criterion_07_engine_soundness(criterion):
    with criterion(7, 60, "congruence closure matches the fixpoint oracle; functoriality") as c:
        bad = []
        sets = [standard(n) for n in range(4)]
        maps = {(i, j): list(all_maps(sets[i], sets[j])) for i in range(4) for j in range(4)}
        for H in CORPUS:
            if any(oracles.engine_classes(H, X) != oracles.fixpoint_classes(H, X) for X in sets):
                bad.append((H.name, "classes"))
            Hm = {key: [eval_mor(H, f) for f in fs] for key, fs in maps.items()}
            if any(eval_mor(H, FinMap.identity(X)) != FinMap.identity(H.obj(X)) for X in sets):
                bad.append((H.name, "identity"))
            for i, j, k in itertools.product(range(4), repeat=3):
                for f, Hf in zip(maps[(i, j)], Hm[(i, j)]):
                    for g, Hg in zip(maps[(j, k)], Hm[(j, k)]):
                        if eval_mor(H, g @ f) != Hg @ Hf:
                            bad.append((H.name, "composition"))
                            break
        c["ok"], c["note"] = not bad, f"failing {bad[:3]}" if bad else f"{len(CORPUS)} functors"


def test_criterion_08_distinguished_elements(criterion):
    with criterion(8, 60, "coproduct-injection test equals the literal definition") as c:
        bad = []
        for H in CORPUS:
            for n in range(4):
                X = standard(n)
                for x in H.obj(X):
                    if bool(is_distinguished(H, X, x)) != oracles.literally_distinguished(H, X, x):
                        bad.append((H.name, n, x))
            # every element over the empty set is distinguished, and images of
            # distinguished elements are distinguished
            if set(distinguished_elements(H, FinSet())) != set(H.obj(FinSet())):
                bad.append((H.name, "empty"))
            for m, n in itertools.product(range(4), repeat=2):
                dist = set(distinguished_elements(H, standard(n)))
                for x in distinguished_elements(H, standard(m)):
                    if any(eval_mor(H, f)(x) not in dist for f in all_maps(standard(m), standard(n))):
                        bad.append((H.name, "closure"))
        c["ok"], c["note"] = not bad, f"failing {bad[:3]}" if bad else f"{len(CORPUS)} functors"


def intersections_preserved(H, n: int):
    """For all A1, A2 <= B (|B| <= n), the images of H(A1) and H(A2) in HB
    meet exactly in the image of H(A1 & A2)."""
    for size in range(n + 1):
        B = standard(size)
        subs = list(B.subsets())

        def image(A):
            return set(eval_mor(H, FinMap.inclusion(A, B)).image())

        for A1, A2 in itertools.product(subs, repeat=2):
            if image(A1) & image(A2) != image(A1 & A2):
                return (A1, A2, B)
    return None


def test_criterion_09_no_distinguished_means_intersections(criterion):
    with criterion(9, 60, "no distinguished elements implies finite intersections") as c:
        bad, hit = [], 0
        for H in CORPUS:
            if any(distinguished_elements(H, standard(n)) for n in range(4)):
                continue
            hit += 1
            if intersections_preserved(H, 3) is not None:
                bad.append(H.name)
        c["ok"], c["note"] = not bad and hit > 0, f"failing {bad}" if bad else f"{hit} functors"


# --- 10: trichotomy ---------------------------------------------------------------

def form_is_natural_bijection(H, form, n: int) -> bool:
    """f |-> Hf(g) is a bijection X^A -> HX natural in X, |X| <= n."""
    A, g = form.exponent, form.generic
    for size in range(n + 1):
        X = standard(size)
        values = [eval_mor(H, f)(g) for f in all_maps(A, X)]
        if len(set(values)) != len(values) or set(values) != set(H.obj(X)):
            return False
    for i, j in itertools.product(range(n + 1), repeat=2):
        X, Y = standard(i), standard(j)
        for h in all_maps(X, Y):
            Hh = eval_mor(H, h)
            if any(Hh(eval_mor(H, f)(g)) != eval_mor(H, h @ f)(g) for f in all_maps(A, X)):
                return False
    return True


def test_criterion_10_trichotomy(criterion):
    with criterion(10, 120, "trichotomy for product-preserving corpus functors, N = 4") as c:
        bad, kinds = [], {}
        for H in CORPUS:
            cls = classify_functor(H, 4)
            kinds[cls.kind] = kinds.get(cls.kind, 0) + 1
            if bool(preserves_products_upto(H, 4)) != (cls.kind is not Kind.NOT_PRODUCT_PRESERVING):
                bad.append((H.name, "products"))
            if cls.kind is Kind.NOT_PRODUCT_PRESERVING:
                if oracles.products_preserved(H, 2):
                    bad.append((H.name, "oracle"))
                continue
            if cls.kind is Kind.C01_EXCEPTION:
                # failing squares are exactly the disjoint pairs of nonempty subsets
                for size in range(4):
                    B = standard(size)
                    for A1, A2 in itertools.product(list(B.subsets()), repeat=2):
                        fails = intersections_preserved_at(H, B, A1, A2) is False
                        if fails != (bool(A1) and bool(A2) and not (A1 & A2)):
                            bad.append((H.name, "square", A1, A2))
                w = cls.witness
                if not (w and len(w["A1"]) == len(w["A2"]) == 1 and len(w["B"]) == 2):
                    bad.append((H.name, "witness"))
                continue
            form = recover_right_adjoint_form(H, 3)
            if not form_is_natural_bijection(H, form, 3):
                bad.append((H.name, "form"))
        summary = ", ".join(f"{k.value} {v}" for k, v in sorted(kinds.items(), key=lambda kv: kv[0].value))
        c["ok"], c["note"] = not bad, f"failing {bad[:3]}" if bad else summary


def intersections_preserved_at(H, B, A1, A2) -> bool:
    def image(A):
        return set(eval_mor(H, FinMap.inclusion(A, B)).image())
    return image(A1) & image(A2) == image(A1 & A2)


# --- 11: eventually constant sequences ----------------------------------------------

def test_criterion_11_evseq(criterion):
    with criterion(11, 30, "EvSeq preserves finite products; countable witness d+1") as c:
        ok = True
        for d in range(5):
            for m, n in itertools.product(range(4), repeat=2):
                comp = ev_product_comparison(standard(m), standard(n), d)
                ok &= comp.is_bijective() and len(comp.dom) == (m * n) ** (d + 1)
        witnesses = [ev_countable_witness(d, d + 2) for d in range(7)]
        ok &= witnesses == [d + 1 for d in range(7)]
        ok &= all(oracles.ev_oracle_witness(d, d + 2) == d + 1 for d in range(4))
        c["ok"], c["note"] = ok, f"witnesses {witnesses}"


# --- 12: absolute intersections ------------------------------------------------------

def squares(cat, max_size, nonempty):
    pointed = isinstance(cat, PointedSetCat)
    for n in range(1 if pointed else 0, max_size + 1):
        A = cat.obj(range(n), 0) if pointed else cat.obj(range(n))
        subs = [X for X in A.carrier.subsets() if not pointed or 0 in X]
        for B, Bp in itertools.product(subs, repeat=2):
            if nonempty and not (B & Bp):
                continue
            yield set_square(cat, A, B, Bp)


def vec_squares(V, max_dim):
    for n in range(max_dim + 1):
        subs = V.subobjects(V.space(n))
        for m, mp in itertools.product(subs, repeat=2):
            yield IntersectionSquare.of(V, m, mp)


def test_criterion_12_absolute_intersections(criterion):
    with criterion(12, 120, "splittings and absolute pullbacks; C01 fails the disjoint square") as c:
        S, SP, V = SetCat(), PointedSetCat(), VecCat(2)
        bad, count = [], 0
        families = {"Set": list(squares(S, 4, True)), "SetP": list(squares(SP, 4, False)),
                    "Vec": list(vec_squares(V, 3))}
        for tag, sqs in families.items():
            for sq in sqs:
                count += 1
                if not all(compute_splittings(sq).equations(sq).values()):
                    bad.append((tag, "splitting"))
        small = {"Set": list(squares(S, 3, True)), "SetP": list(squares(SP, 3, False)),
                 "Vec": list(vec_squares(V, 2))}
        for cat, tag in ((S, "Set"), (SP, "SetP"), (V, "Vec")):
            tests = [V.space(d) for d in range(3)] if cat is V else cat.iso_reps(3)
            for W in tests:
                F = HomFunctor(cat, W)
                for sq in small[tag]:
                    if not verify_absolute_pullback(sq, F, splitting=compute_splittings(sq)).ok:
                        bad.append((tag, W))
                        break
        for H in CORPUS:
            F = EngineAdapter(H)
            for sq in small["Set"]:
                if not verify_absolute_pullback(sq, F, splitting=compute_splittings(sq)).ok:
                    bad.append((H.name, "engine"))
                    break
        empty = set_square(S, S.obj([0, 1]), FinSet([0]), FinSet([1]))
        if verify_absolute_pullback(empty, EngineAdapter(builtin("c01"))).ok:
            bad.append(("c01", "disjoint square preserved"))
        c["ok"], c["note"] = not bad, f"failing {bad[:3]}" if bad else f"{count} squares split"
