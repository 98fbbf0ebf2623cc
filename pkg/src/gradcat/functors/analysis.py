"""Limit-preservation checks and the product-preservation trichotomy for
set endofunctors, decided at bounded carrier sizes."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Any

from gradcat.errors import NotExponential, TheoremViolation
from gradcat.finset import (
    FinMap,
    FinSet,
    all_maps,
    coproduct,
    equalizer,
    product,
    pullback,
    standard,
)
from gradcat.functors.presentation import SetFunctor, eval_mor


@dataclass
class Verdict:
    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_distinguished(H: SetFunctor, X: FinSet, x) -> Verdict:
    """Whether H identifies ``x`` along every parallel pair out of X.

    It suffices to test the two coproduct injections X -> X + X: any pair
    f, g: X -> Y factors as [f, g] composed with them.
    """
    S, (inl, inr) = coproduct([X, X])
    a, b = eval_mor(H, inl)(x), eval_mor(H, inr)(x)
    if a == b:
        return Verdict(True)
    return Verdict(False, {"pair": "coproduct injections", "images": (a, b)})


def distinguished_elements(H: SetFunctor, X: FinSet) -> list:
    return [x for x in H.obj(X) if is_distinguished(H, X, x)]


def _bijection_failure(f: FinMap) -> dict | None:
    seen = {}
    for x, fx in zip(f.dom, f.table):
        if fx in seen:
            return {"kind": "non-injective", "elements": (seen[fx], x), "image": fx}
        seen[fx] = x
    if len(seen) != len(f.cod):
        missing = next(y for y in f.cod if y not in seen)
        return {"kind": "non-surjective", "missing": missing}
    return None


def product_comparison(H: SetFunctor, X: FinSet, Y: FinSet) -> FinMap:
    """The canonical map H(X x Y) -> HX x HY."""
    P, (p1, p2) = product([X, Y])
    Hp1, Hp2 = eval_mor(H, p1), eval_mor(H, p2)
    target, _ = product([H.obj(X), H.obj(Y)])
    return FinMap(Hp1.dom, target, tuple(zip(Hp1.table, Hp2.table)))


def preserves_products_upto(H: SetFunctor, N: int) -> Verdict:
    """H(1) is a singleton and H(X x Y) -> HX x HY is bijective for
    |X|, |Y| <= N."""
    terminal = H.obj(FinSet([()]))
    if len(terminal) != 1:
        return Verdict(False, {"sizes": (), "kind": "terminal", "H1": list(terminal)},
                       "H does not preserve the terminal object")
    for m in range(N + 1):
        for n in range(N + 1):
            failure = _bijection_failure(product_comparison(H, standard(m), standard(n)))
            if failure:
                failure["sizes"] = (m, n)
                return Verdict(False, failure, f"H({m} x {n}) -> H{m} x H{n} is not bijective")
    return Verdict(True)


def intersection_comparison(H: SetFunctor, B: FinSet, A1: FinSet, A2: FinSet) -> FinMap:
    """H(A1 n A2) -> pullback of H(A1) -> HB <- H(A2)."""
    C = A1 & A2
    m1, m2 = FinMap.inclusion(A1, B), FinMap.inclusion(A2, B)
    i1, i2 = FinMap.inclusion(C, A1), FinMap.inclusion(C, A2)
    P, _, _ = pullback(eval_mor(H, m1), eval_mor(H, m2))
    Hi1, Hi2 = eval_mor(H, i1), eval_mor(H, i2)
    return FinMap(Hi1.dom, P, tuple(zip(Hi1.table, Hi2.table)))


def preserves_pullbacks_upto(H: SetFunctor, N: int, nonempty_only: bool = False,
                             equalizers: bool = False) -> Verdict:
    """Preservation of every intersection of two subsets of B, |B| <= N.

    With ``equalizers`` the check runs over parallel pairs instead.
    """
    if equalizers:
        return preserves_equalizers_upto(H, N)
    for n in range(N + 1):
        B = standard(n)
        subsets = list(B.subsets())
        for A1, A2 in itertools.product(subsets, repeat=2):
            if nonempty_only and not (A1 & A2):
                continue
            failure = _bijection_failure(intersection_comparison(H, B, A1, A2))
            if failure:
                failure.update(B=list(B), A1=list(A1), A2=list(A2))
                return Verdict(False, failure, f"intersection of {list(A1)} and {list(A2)} not preserved")
    return Verdict(True)


def preserves_equalizers_upto(H: SetFunctor, N: int) -> Verdict:
    for m in range(N + 1):
        for n in range(N + 1):
            X, Y = standard(m), standard(n)
            maps = list(all_maps(X, Y))
            for f, g in itertools.product(maps, repeat=2):
                E, e = equalizer(f, g)
                E2, _ = equalizer(eval_mor(H, f), eval_mor(H, g))
                He = eval_mor(H, e)
                failure = _bijection_failure(He.corestrict(E2))
                if failure:
                    failure.update(f=f.table, g=g.table, sizes=(m, n))
                    return Verdict(False, failure, "equalizer not preserved")
    return Verdict(True)


class Kind(str, enum.Enum):
    NOT_PRODUCT_PRESERVING = "NotProductPreserving"
    CONSTANT_ONE = "ConstantOne"
    C01_EXCEPTION = "C01Exception"
    RIGHT_ADJOINT = "RightAdjoint"


@dataclass
class Classification:
    kind: Kind
    bound: int
    witness: Any = None
    checks: dict = field(default_factory=dict)

    @property
    def right_adjoint(self) -> bool:
        return self.kind in (Kind.CONSTANT_ONE, Kind.RIGHT_ADJOINT)


def classify_functor(H: SetFunctor, N: int) -> Classification:
    """Sort a product-preserving finitary set functor into its three cases.

    Raises TheoremViolation when a case's consequences fail at the bound.
    """
    if N < 2:
        raise ValueError("classification needs N >= 2")
    products = preserves_products_upto(H, N)
    if not products:
        return Classification(Kind.NOT_PRODUCT_PRESERVING, N, products.witness,
                              {"products": products.detail})
    one = FinSet([0])
    empty_value = H.obj(FinSet())
    if len(empty_value):
        bad = [n for n in range(N + 1) if len(H.obj(standard(n))) != 1]
        if bad:
            raise TheoremViolation(f"{H.name}: H(empty) nonempty but |HX| != 1 for |X| in {bad}")
        return Classification(Kind.CONSTANT_ONE, N, checks={"sizes": list(range(N + 1))})
    (a1,) = H.obj(one).elements
    if is_distinguished(H, one, a1):
        bad = [n for n in range(1, N + 1) if len(H.obj(standard(n))) != 1]
        if bad:
            raise TheoremViolation(f"{H.name}: a_1 distinguished but |HX| != 1 for |X| in {bad}")
        square = preserves_pullbacks_upto(H, 2)
        return Classification(Kind.C01_EXCEPTION, N, square.witness,
                              {"intersections": square.ok})
    intersections = preserves_pullbacks_upto(H, N)
    equal = preserves_equalizers_upto(H, min(N, 3))
    if not (intersections and equal):
        raise TheoremViolation(f"{H.name}: no distinguished element yet finite limits fail: "
                               f"{intersections.witness or equal.witness}")
    return Classification(Kind.RIGHT_ADJOINT, N,
                          checks={"intersections": True, "equalizers": True})


@dataclass
class ExponentForm:
    exponent: FinSet  # A with H ~ (-)^A
    generic: Any  # element of H(A) inducing the natural bijection
    sizes: list


def recover_right_adjoint_form(H: SetFunctor, N: int) -> ExponentForm:
    """Find A and a natural bijection X^A -> HX, f |-> Hf(g), for |X| <= N.

    |A| is read off as log2 |H2|; g ranges over H(A) until one element
    induces bijections at every tested size.
    """
    h2 = len(H.obj(standard(2)))
    a = round(math.log2(h2)) if h2 else -1
    if h2 == 0 or 2**a != h2:
        raise NotExponential(f"{H.name}: |H2| = {h2} is not a power of two")
    A = standard(a)
    sizes = list(range(N + 1))
    for g in H.obj(A):
        if all(_comparison_is_bijective(H, A, g, standard(n)) for n in sizes):
            if _natural(H, A, g, sizes):
                return ExponentForm(A, g, sizes)
    raise NotExponential(f"{H.name}: no element of H{a} induces a natural bijection")


def comparison_map(H: SetFunctor, A: FinSet, g, X: FinSet) -> dict:
    """f |-> Hf(g) on X^A, keyed by the table of f."""
    return {f.table: eval_mor(H, f)(g) for f in all_maps(A, X)}


def _comparison_is_bijective(H, A, g, X) -> bool:
    phi = comparison_map(H, A, g, X)
    return len(set(phi.values())) == len(phi) == len(H.obj(X))


def _natural(H, A, g, sizes) -> bool:
    for m, n in itertools.product(sizes, repeat=2):
        X, Y = standard(m), standard(n)
        phi_x, phi_y = comparison_map(H, A, g, X), comparison_map(H, A, g, Y)
        for h in all_maps(X, Y):
            Hh = eval_mor(H, h)
            for f in all_maps(A, X):
                if phi_y[(h @ f).table] != Hh(phi_x[f.table]):
                    return False
    return True
