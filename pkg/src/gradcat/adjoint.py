"""Least subobjects by grade descent, canonical subobject diagrams and
absolute intersections with their splittings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from gradcat import linalg
from gradcat.cats import CatMorphism, CatObject, Category, PointedSetCat, SetCat, VecCat
from gradcat.errors import ContractViolation, ModeNotSound, NoLeastSubobject, NoSplitting
from gradcat.finset import FinMap, FinSet, label_key
from gradcat.functors.analysis import preserves_pullbacks_upto
from gradcat.functors.presentation import SetFunctor, eval_mor
from gradcat.linalg import Mat

GRADE_DESCENT = "grade-descent"
BRUTE_FORCE = "brute-force"


# --- least subobject through which an element factors -------------------------

@dataclass
class LeastFactorResult:
    subset: FinSet
    trace: list  # candidates strictly between the start and the answer
    method: str
    start: FinSet
    steps: int = 0


def factors_through(H: SetFunctor, K: FinSet, M: FinSet, x) -> bool:
    """Whether x in HK lies in the image of H(M -> K)."""
    return x in eval_mor(H, FinMap.inclusion(M, K)).image()


def least_fp_subobject(H: SetFunctor, K: FinSet, x, mode: str = GRADE_DESCENT) -> LeastFactorResult:
    """The least M <= K with x in the image of H(M -> K).

    Grade descent starts from M = K and, while some witness W does not
    contain the current candidate, replaces it by the intersection with W.
    That x still factors through the intersection needs H to preserve it,
    so the mode is refused when H fails intersection preservation at |K|.
    Witnesses are scanned largest first.
    """
    if x not in H.obj(K):
        raise ContractViolation(f"{x!r} is not an element of H{list(K)}")
    if mode == BRUTE_FORCE:
        return _least_brute_force(H, K, x)
    if mode != GRADE_DESCENT:
        raise ContractViolation(f"unknown mode {mode!r}")
    check = preserves_pullbacks_upto(H, len(K))
    if not check:
        raise ModeNotSound(f"{H.name} does not preserve intersections at size {len(K)} "
                           f"({check.witness}); use brute-force mode")
    witnesses = [M for M in K.subsets() if factors_through(H, K, M, x)]
    witnesses.sort(key=lambda M: (-len(M), label_key(M.elements)))
    current, steps, visited = K, 0, []
    while True:
        W = next((W for W in witnesses if not current.issubset(W)), None)
        if W is None:
            break
        current = current & W
        steps += 1
        visited.append(current)
    return LeastFactorResult(current, visited[:-1], GRADE_DESCENT, K, steps)


def _least_brute_force(H, K, x) -> LeastFactorResult:
    witnesses = [M for M in K.subsets() if factors_through(H, K, M, x)]
    minimal = [M for M in witnesses if not any(W != M and W.issubset(M) for W in witnesses)]
    least = [M for M in minimal if all(M.issubset(W) for W in witnesses)]
    if not least:
        raise NoLeastSubobject(minimal)
    return LeastFactorResult(least[0], [], BRUTE_FORCE, K)


def least_fp_subobject_of_family(H: SetFunctor, K: FinSet, xs, mode: str = GRADE_DESCENT) -> FinSet:
    """Least subobject through which a whole family factors: the join of
    the per-element answers."""
    out = FinSet()
    for x in xs:
        out = out | least_fp_subobject(H, K, x, mode).subset
    return out


# --- the diagram of subobjects ---------------------------------------------------

@dataclass
class SubobjectDiagram:
    cat: Category
    K: CatObject
    nodes: list  # monos into K, one per subobject
    edges: dict  # (i, j) -> fill-in N_i -> N_j
    sources: int = 0  # corpus morphisms a: A -> K that were factored

    def is_directed(self) -> bool:
        n = len(self.nodes)
        for i, j in itertools.product(range(n), repeat=2):
            if not any(((i, k) in self.edges or i == k) and ((j, k) in self.edges or j == k)
                       for k in range(n)):
                return False
        return True

    def covers_subobjects(self) -> bool:
        subs = self.cat.subobjects(self.K)
        return len(subs) == len(self.nodes) and all(
            any(self.cat.same_subobject(s, m) for m in self.nodes) for s in subs)


def fill_in(cat: Category, m_a: CatMorphism, m_b: CatMorphism) -> CatMorphism | None:
    """The unique f' with m_b . f' = m_a, if m_a's image lies inside m_b's."""
    for f in cat.hom_set(m_a.src, m_b.src):
        if cat.compose(m_b, f) == m_a:
            return f
    return None


def canonical_subobject_diagram(cat: Category, K: CatObject) -> SubobjectDiagram:
    """Images of every a: A -> K from the small objects (|A| <= |K|),
    joined by the fill-ins of every connecting map (A, a) -> (B, b)."""
    sources = [(A, a) for A in cat.iso_reps(len(K.carrier)) for a in cat.hom_set(A, K)]
    nodes: list = []
    node_of = []
    for A, a in sources:
        _, m = cat.factorize(a)
        idx = next((i for i, n in enumerate(nodes) if cat.same_subobject(n, m)), None)
        if idx is None:
            idx = len(nodes)
            nodes.append(m)
        node_of.append(idx)
    edges = {}
    for (s, (A, a)), (t, (B, b)) in itertools.product(enumerate(sources), repeat=2):
        i, j = node_of[s], node_of[t]
        if (i, j) in edges:
            continue
        if any(cat.compose(b, f) == a for f in cat.hom_set(A, B)):
            f2 = fill_in(cat, nodes[i], nodes[j])
            if f2 is None:
                raise ContractViolation("connecting map without a fill-in")
            edges[(i, j)] = f2
    return SubobjectDiagram(cat, K, nodes, edges, len(sources))


@dataclass
class ColimitReport:
    ok: bool
    cocones: int = 0
    witness: Any = None


def compatible_cocones(D: SubobjectDiagram, T: CatObject):
    """Every family c_i: N_i -> T with c_j . f = c_i along each edge, by
    backtracking over nodes (largest first, so later choices are forced)."""
    cat = D.cat
    order = sorted(range(len(D.nodes)), key=lambda i: -cat.grade(D.nodes[i].src))
    homs = {i: cat.hom_set(D.nodes[i].src, T) for i in order}
    chosen: dict = {}

    def consistent(i, c):
        for (s, t), f in D.edges.items():
            if s == i and t in chosen and cat.compose(chosen[t], f) != c:
                return False
            if t == i and s in chosen and cat.compose(c, f) != chosen[s]:
                return False
        return True

    def go(pos):
        if pos == len(order):
            yield dict(chosen)
            return
        i = order[pos]
        for c in homs[i]:
            if consistent(i, c):
                chosen[i] = c
                yield from go(pos + 1)
                del chosen[i]

    yield from go(0)


def verify_colimit(D: SubobjectDiagram, tests) -> ColimitReport:
    """K with the inclusions is the colimit: each compatible cocone into a
    test object factors through K by exactly one morphism."""
    cat = D.cat
    count = 0
    for T in tests:
        homs = cat.hom_set(D.K, T)
        for cocone in compatible_cocones(D, T):
            count += 1
            mediators = [u for u in homs
                         if all(cat.compose(u, D.nodes[i]) == c for i, c in cocone.items())]
            if len(mediators) != 1:
                return ColimitReport(False, count, {"test": T, "cocone": cocone,
                                                    "mediators": len(mediators)})
    return ColimitReport(True, count)


# --- intersection squares and splittings -------------------------------------------

@dataclass
class IntersectionSquare:
    cat: Category
    A: CatObject
    B: CatObject
    Bp: CatObject
    C: CatObject
    m: CatMorphism  # B -> A
    mp: CatMorphism  # B' -> A
    i: CatMorphism  # C -> B
    ip: CatMorphism  # C -> B'

    @classmethod
    def of(cls, cat: Category, m: CatMorphism, mp: CatMorphism) -> IntersectionSquare:
        C, i, ip = cat.intersect(m, mp)
        return cls(cat, m.dst, m.src, mp.src, C, m, mp, i, ip)

    def commutes(self) -> bool:
        return self.cat.compose(self.m, self.i) == self.cat.compose(self.mp, self.ip)


@dataclass
class SplittingPair:
    e: CatMorphism  # A -> B
    ep: CatMorphism  # B' -> C

    def equations(self, sq: IntersectionSquare) -> dict:
        cat = sq.cat
        return {
            "e.m = id": cat.compose(self.e, sq.m) == cat.identity(sq.B),
            "e'.i' = id": cat.compose(self.ep, sq.ip) == cat.identity(sq.C),
            "e.m' = i.e'": cat.compose(self.e, sq.mp) == cat.compose(sq.i, self.ep),
        }


def set_square(cat: Category, A: CatObject, B: FinSet, Bp: FinSet) -> IntersectionSquare:
    """The square of two subsets of A (with the induced structure)."""
    def incl(S):
        (sub,) = cat.substructures(A, S)
        return CatMorphism(cat, sub, A, FinMap.inclusion(S, A.carrier))
    return IntersectionSquare.of(cat, incl(B), incl(Bp))


def compute_splittings(sq: IntersectionSquare) -> SplittingPair:
    cat = sq.cat
    if isinstance(cat, VecCat):
        return _vec_splittings(sq)
    if isinstance(cat, PointedSetCat):
        c = sq.C.structure
    elif isinstance(cat, SetCat):
        if not sq.C.carrier:
            raise NoSplitting("empty intersection of sets has no splitting")
        c = min(sq.C.carrier, key=label_key)
    else:
        raise ContractViolation(f"no splitting construction for {cat.tag}")
    back_m = {y: x for x, y in sq.m.data.as_dict().items()}
    back_ip = {y: x for x, y in sq.ip.data.as_dict().items()}
    ic = sq.i.data(c)
    e = FinMap(sq.A.carrier, sq.B.carrier, tuple(back_m.get(a, ic) for a in sq.A.carrier))
    ep = FinMap(sq.Bp.carrier, sq.C.carrier, tuple(back_ip.get(b, c) for b in sq.Bp.carrier))
    return SplittingPair(cat.morphism(sq.A, sq.B, e), cat.morphism(sq.Bp, sq.C, ep))


def _vec_splittings(sq: IntersectionSquare) -> SplittingPair:
    """Coordinates A = A0 + B0 + B0' + C with B = B0 + C and B' = B0' + C,
    chosen by greedy basis extension in the standard order."""
    cat: VecCat = sq.cat
    p, n = cat.p, sq.A.structure
    mi = cat.compose(sq.m, sq.i).data
    c_basis = mi.columns()
    b0 = linalg.extend_basis(c_basis, sq.m.data.columns(), n, p)
    b0p = linalg.extend_basis(c_basis, sq.mp.data.columns(), n, p)
    a0 = linalg.extend_basis(c_basis + b0 + b0p, linalg.standard_basis(n), n, p)
    P = Mat.from_columns(a0 + b0 + b0p + c_basis, n, p)
    cuts = (len(a0), len(a0) + len(b0), len(a0) + len(b0) + len(b0p))

    def keep(v, parts):
        coeff = linalg.solve(P, v, p)
        cols = P.columns()
        out = [0] * n
        for k, a in enumerate(coeff):
            part = 0 if k < cuts[0] else 1 if k < cuts[1] else 2 if k < cuts[2] else 3
            if part in parts:
                out = [(o + a * x) % p for o, x in zip(out, cols[k])]
        return tuple(out)

    def as_matrix(images, target: Mat, rows: int, cols: int) -> Mat:
        coords = [linalg.solve(target, w, p) for w in images]
        return Mat.from_columns(coords, rows, p) if coords else Mat.zeros(rows, cols)

    e_imgs = [keep(v, {1, 3}) for v in linalg.standard_basis(n)]
    e = as_matrix(e_imgs, sq.m.data, sq.B.structure, n)
    ep_imgs = [keep(v, {3}) for v in sq.mp.data.columns()]
    ep = as_matrix(ep_imgs, mi, sq.C.structure, sq.Bp.structure)
    return SplittingPair(CatMorphism(cat, sq.A, sq.B, e), CatMorphism(cat, sq.Bp, sq.C, ep))


# --- functors applied to squares ---------------------------------------------------

@dataclass(frozen=True)
class HomFunctor:
    """hom(W, -) on a concrete instance: post-composition."""
    cat: Category
    W: CatObject

    @property
    def name(self) -> str:
        return f"hom({self.W!r}, -)"

    def elements(self, X: CatObject) -> list:
        return self.cat.hom_set(self.W, X)

    def action(self, f: CatMorphism) -> Callable:
        return lambda g: self.cat.compose(f, g)


@dataclass(frozen=True)
class EngineAdapter:
    """A set endofunctor applied to Set squares through underlying maps."""
    H: SetFunctor

    @property
    def name(self) -> str:
        return self.H.name

    def elements(self, X: CatObject) -> list:
        return list(self.H.obj(X.carrier))

    def action(self, f: CatMorphism) -> Callable:
        return eval_mor(self.H, f.cat.underlying(f))


@dataclass
class AbsolutenessReport:
    ok: bool
    functor: str
    pairs: int = 0  # commutative pairs checked, over all test apexes
    witness: Any = None
    details: dict = field(default_factory=dict)


def verify_absolute_pullback(sq: IntersectionSquare, F, max_apex: int = 3,
                             splitting: SplittingPair | None = None) -> AbsolutenessReport:
    """Check that F sends the square to a pullback in Set.

    For every set U with |U| <= max_apex and every pair u: U -> FB,
    u': U -> FB' with Fm.u = Fm'.u', the maps v: U -> FC with Fi.v = u and
    Fi'.v = u' are counted exactly (they form a product of per-point fibres);
    there must be one, and with a splitting it must be Fe'.u'.
    """
    FB, FBp, FC = F.elements(sq.B), F.elements(sq.Bp), F.elements(sq.C)
    Fm, Fmp, Fi, Fip = F.action(sq.m), F.action(sq.mp), F.action(sq.i), F.action(sq.ip)
    Fep = F.action(splitting.ep) if splitting else None
    image_m = {}
    for y in FB:
        image_m.setdefault(Fm(y), []).append(y)
    points = [(y, yp) for yp in FBp for y in image_m.get(Fmp(yp), [])]
    fibre = {pt: [c for c in FC if Fi(c) == pt[0] and Fip(c) == pt[1]] for pt in points}
    pairs = 0
    for size in range(max_apex + 1):
        for family in itertools.product(points, repeat=size):
            pairs += 1
            mediators = 1
            for pt in family:
                mediators *= len(fibre[pt])
            if mediators != 1:
                return AbsolutenessReport(False, F.name, pairs, {
                    "u": [pt[0] for pt in family], "u'": [pt[1] for pt in family],
                    "mediators": mediators})
            if Fep is not None and any(Fep(pt[1]) != fibre[pt][0] for pt in family):
                return AbsolutenessReport(False, F.name, pairs, {
                    "u'": [pt[1] for pt in family], "reason": "Fe'.u' is not the mediator"})
    return AbsolutenessReport(True, F.name, pairs, details={"points": len(points), "FC": len(FC)})
