"""Uniform interface over the concrete graduated categories."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator

from gradcat.errors import ContractViolation
from gradcat.finset import (
    FinMap,
    FinSet,
    all_injections,
    all_maps,
    all_surjections,
    label_key,
    partitions,
    pullback,
    quotient,
    standard,
)


@dataclass(frozen=True)
class CatObject:
    cat: "Category"
    carrier: FinSet
    structure: Any = None

    @property
    def grade(self) -> int:
        return self.cat.grade(self)

    def __repr__(self) -> str:
        if self.structure is None:
            return f"{self.cat.tag}{self.carrier!r}"
        return f"{self.cat.tag}({self.carrier!r}, {self.structure!r})"


@dataclass(frozen=True)
class CatMorphism:
    cat: "Category"
    src: CatObject
    dst: CatObject
    data: Any

    def __matmul__(self, other: CatMorphism) -> CatMorphism:
        return self.cat.compose(self, other)

    def key(self) -> tuple:
        """Orderable label identifying the morphism within its hom-set."""
        return self.cat.morphism_key(self)

    def label_key(self) -> tuple:
        return label_key(self.key())

    def __repr__(self) -> str:
        return f"<{self.cat.tag} {self.data!r}>"


@dataclass(frozen=True)
class MorphismFlags:
    mono: bool
    strong_epi: bool
    iso: bool


@dataclass
class GradeReport:
    obj: CatObject
    ok: bool
    checked: int = 0
    counterexample: CatMorphism | None = None
    reason: str = ""


class Category:
    """A concrete category whose morphisms are carrier functions.

    Subclasses say which functions are morphisms (``preserves``) and how
    structure is induced on sub-carriers, quotients and pullbacks.  Vector
    spaces and boolean algebras override the morphism plumbing.
    """

    tag = "Cat"

    # --- structure hooks -------------------------------------------------
    def preserves(self, src: CatObject, dst: CatObject, f: FinMap) -> bool:
        raise NotImplementedError

    def grade(self, A: CatObject) -> int:
        return len(A.carrier)

    def objects(self, max_size: int) -> Iterator[CatObject]:
        raise NotImplementedError

    def substructures(self, A: CatObject, S: FinSet) -> Iterator[CatObject]:
        """Objects on ``S`` for which the inclusion into ``A`` is a morphism."""
        raise NotImplementedError

    def quotient_structure(self, A: CatObject, q: FinMap) -> CatObject | None:
        """Structure making the surjection ``q`` a strong epi, or None."""
        raise NotImplementedError

    def image_structure(self, f: CatMorphism, image: FinSet) -> CatObject:
        raise NotImplementedError

    def pullback_structure(self, P: FinSet, m1: CatMorphism, m2: CatMorphism) -> CatObject:
        raise NotImplementedError

    def validate(self, A: CatObject) -> None:
        pass

    # --- morphisms ---------------------------------------------------------
    def morphism(self, src: CatObject, dst: CatObject, data: Any, check: bool = True) -> CatMorphism:
        if check and not self.preserves(src, dst, data):
            raise ContractViolation(f"{data!r} is not a morphism of {self.tag}")
        return CatMorphism(self, src, dst, data)

    def morphism_key(self, f: CatMorphism) -> tuple:
        return f.data.table

    def underlying(self, f: CatMorphism) -> FinMap:
        return f.data

    def compose(self, g: CatMorphism, f: CatMorphism) -> CatMorphism:
        if f.dst != g.src:
            raise ContractViolation("morphisms are not composable")
        return CatMorphism(self, f.src, g.dst, g.data @ f.data)

    def identity(self, A: CatObject) -> CatMorphism:
        return CatMorphism(self, A, A, FinMap.identity(A.carrier))

    def hom_set(self, A: CatObject, B: CatObject) -> list[CatMorphism]:
        self._same(A, B)
        return [CatMorphism(self, A, B, f) for f in all_maps(A.carrier, B.carrier)
                if self.preserves(A, B, f)]

    def monos(self, A: CatObject, B: CatObject) -> list[CatMorphism]:
        return [CatMorphism(self, A, B, f) for f in all_injections(A.carrier, B.carrier)
                if self.preserves(A, B, f)]

    def strong_epis(self, A: CatObject, B: CatObject) -> list[CatMorphism]:
        out = []
        for f in all_surjections(A.carrier, B.carrier):
            if self.preserves(A, B, f):
                m = CatMorphism(self, A, B, f)
                if self.is_strong_epi(m):
                    out.append(m)
        return out

    def is_mono(self, f: CatMorphism) -> bool:
        return f.data.is_injective()

    def is_strong_epi(self, f: CatMorphism) -> bool:
        return f.data.is_surjective()

    def is_iso(self, f: CatMorphism) -> bool:
        """Decided directly: a two-sided inverse exists in the category."""
        u = self.underlying(f)
        return u.is_bijective() and self.preserves(f.dst, f.src, u.inverse())

    def classify(self, f: CatMorphism) -> MorphismFlags:
        return MorphismFlags(self.is_mono(f), self.is_strong_epi(f), self.is_iso(f))

    def _same(self, *objs: CatObject) -> None:
        for A in objs:
            if A.cat != self:
                raise ContractViolation(f"object of {A.cat.tag} passed to {self.tag}")

    # --- constructions -------------------------------------------------------
    def factorize(self, f: CatMorphism) -> tuple[CatMorphism, CatMorphism]:
        """(strong epi, mono) factorization through the image."""
        im = f.data.image()
        mid = self.image_structure(f, im)
        epi = CatMorphism(self, f.src, mid, f.data.corestrict(im))
        mono = CatMorphism(self, mid, f.dst, FinMap.inclusion(im, f.dst.carrier))
        return epi, mono

    def subobjects(self, A: CatObject) -> list[CatMorphism]:
        """One inclusion per subobject; distinct entries are inequivalent."""
        out = []
        for S in A.carrier.subsets():
            for B in self.substructures(A, S):
                out.append(CatMorphism(self, B, A, FinMap.inclusion(S, A.carrier)))
        return out

    def strong_quotients(self, A: CatObject) -> list[CatMorphism]:
        out = []
        for blocks in partitions(list(A.carrier)):
            q = quotient(A.carrier, blocks)
            B = self.quotient_structure(A, q)
            if B is not None:
                out.append(CatMorphism(self, A, B, q))
        return out

    def intersect(self, m1: CatMorphism, m2: CatMorphism) -> tuple[CatObject, CatMorphism, CatMorphism]:
        """Pullback of two monos with a common codomain."""
        if m1.dst != m2.dst:
            raise ContractViolation("monos must share a codomain")
        P, p1, p2 = pullback(m1.data, m2.data)
        C = self.pullback_structure(P, m1, m2)
        return C, CatMorphism(self, C, m1.src, p1), CatMorphism(self, C, m2.src, p2)

    def same_subobject(self, m1: CatMorphism, m2: CatMorphism) -> bool:
        """Whether two monos into one object factor through each other."""
        return (self._factors_through(m1, m2) is not None
                and self._factors_through(m2, m1) is not None)

    def _factors_through(self, m: CatMorphism, n: CatMorphism) -> CatMorphism | None:
        for h in self.hom_set(m.src, n.src):
            if self.compose(n, h) == m:
                return h
        return None

    def iso_reps(self, max_size: int) -> list[CatObject]:
        """Objects up to isomorphism (first representative in enumeration order)."""
        reps: list[CatObject] = []
        for A in self.objects(max_size):
            if not any(len(R.carrier) == len(A.carrier) and self.grade(R) == self.grade(A)
                       and any(self.is_iso(f) for f in self.monos(A, R)) for R in reps):
                reps.append(A)
        return reps

    def verify_grade_axioms(self, A: CatObject) -> GradeReport:
        """Every subobject and strong quotient has grade at most that of A,
        strictly smaller when proper."""
        g = self.grade(A)
        checked = 0
        for m in self.subobjects(A):
            checked += 1
            gb = self.grade(m.src)
            if gb > g or (gb == g and not self.is_iso(m)):
                return GradeReport(A, False, checked, m, f"subobject of grade {gb} vs {g}")
        for e in self.strong_quotients(A):
            checked += 1
            gb = self.grade(e.dst)
            if gb > g or (gb == g and not self.is_iso(e)):
                return GradeReport(A, False, checked, e, f"strong quotient of grade {gb} vs {g}")
        return GradeReport(A, True, checked)

    def same_grade_counterexample(self, objects) -> CatMorphism | None:
        """A non-invertible mono or strong epi between two objects of equal
        grade, or None when every such morphism is an isomorphism."""
        objs = list(objects)
        by_grade: dict = {}
        for A in objs:
            by_grade.setdefault(self.grade(A), []).append(A)
        for group in by_grade.values():
            for A, B in itertools.product(group, repeat=2):
                for f in itertools.chain(self.monos(A, B), self.strong_epis(A, B)):
                    if not self.is_iso(f):
                        return f
        return None


def standard_carriers(max_size: int, min_size: int = 0) -> Iterator[FinSet]:
    for n in range(min_size, max_size + 1):
        yield standard(n)


def reflexive_transitive_closure(carrier: FinSet, pairs) -> frozenset:
    rel = set(pairs) | {(x, x) for x in carrier}
    elems = list(carrier)
    changed = True
    while changed:
        changed = False
        for a, b, c in itertools.product(elems, repeat=3):
            if (a, b) in rel and (b, c) in rel and (a, c) not in rel:
                rel.add((a, c))
                changed = True
    return frozenset(rel)


def is_antisymmetric(rel) -> bool:
    return all(a == b or (b, a) not in rel for a, b in rel)
