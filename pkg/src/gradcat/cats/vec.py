"""Finite-dimensional vector spaces over GF(p).

The object of dimension n is the column space GF(p)^n; a morphism is a
matrix of shape dim(dst) x dim(src).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from gradcat import linalg
from gradcat.cats.base import CatMorphism, CatObject, Category
from gradcat.errors import ContractViolation
from gradcat.finset import FinMap, FinSet
from gradcat.linalg import Mat


@dataclass(frozen=True)
class VecCat(Category):
    p: int = 2

    @property
    def tag(self) -> str:
        return f"VecGF({self.p})"

    def __post_init__(self):
        if not linalg.is_prime(self.p):
            raise ContractViolation(f"{self.p} is not prime")

    def space(self, n: int) -> CatObject:
        return CatObject(self, FinSet(linalg.vectors(n, self.p)), n)

    def dim(self, A: CatObject) -> int:
        return A.structure

    def grade(self, A) -> int:
        return A.structure

    def mat(self, src: CatObject, dst: CatObject, rows) -> CatMorphism:
        if not rows:
            m = Mat.zeros(dst.structure, src.structure)
        else:
            m = Mat.from_rows(rows, src.structure, self.p)
        return self.morphism(src, dst, m)

    def preserves(self, src, dst, m) -> bool:
        return isinstance(m, Mat) and m.nrows == dst.structure and m.ncols == src.structure

    def morphism_key(self, f) -> tuple:
        return f.data.rows

    def underlying(self, f) -> FinMap:
        return FinMap(f.src.carrier, f.dst.carrier,
                      tuple(linalg.apply(f.data, v, self.p) for v in f.src.carrier))

    def compose(self, g, f):
        if f.dst != g.src:
            raise ContractViolation("morphisms are not composable")
        return CatMorphism(self, f.src, g.dst, linalg.matmul(g.data, f.data, self.p))

    def identity(self, A):
        return CatMorphism(self, A, A, Mat.identity(A.structure))

    def hom_set(self, A, B):
        self._same(A, B)
        return [CatMorphism(self, A, B, m)
                for m in linalg.all_matrices(B.structure, A.structure, self.p)]

    def monos(self, A, B):
        return [f for f in self.hom_set(A, B) if self.is_mono(f)]

    def strong_epis(self, A, B):
        return [f for f in self.hom_set(A, B) if self.is_strong_epi(f)]

    def is_mono(self, f) -> bool:
        return linalg.rank(f.data, self.p) == f.src.structure

    def is_strong_epi(self, f) -> bool:
        return linalg.rank(f.data, self.p) == f.dst.structure

    def is_iso(self, f) -> bool:
        if f.src.structure != f.dst.structure:
            return False
        try:
            linalg.inverse(f.data, self.p)
        except ContractViolation:
            return False
        return True

    def objects(self, max_size: int) -> Iterator[CatObject]:
        for n in range(max_size + 1):
            yield self.space(n)

    def iso_reps(self, max_size: int):
        return list(self.objects(max_size))

    def factorize(self, f):
        n = f.dst.structure
        basis, _ = linalg.rref(f.data.columns(), n, self.p)
        mid = self.space(len(basis))
        mono = Mat.from_columns(basis, n, self.p) if basis else Mat.zeros(n, 0)
        coords = [linalg.solve(mono, c, self.p) for c in f.data.columns()]
        epi = Mat.from_columns(coords, len(basis), self.p) if coords else Mat.zeros(len(basis), 0)
        return CatMorphism(self, f.src, mid, epi), CatMorphism(self, mid, f.dst, mono)

    def subspace_inclusion(self, A: CatObject, basis) -> CatMorphism:
        n = A.structure
        m = Mat.from_columns(basis, n, self.p) if basis else Mat.zeros(n, 0)
        return CatMorphism(self, self.space(len(basis)), A, m)

    def subobjects(self, A):
        return [self.subspace_inclusion(A, b) for b in linalg.subspaces(A.structure, self.p)]

    def strong_quotients(self, A):
        # a quotient is named by the row space of a full-rank surjection
        n = A.structure
        out = []
        for rows in linalg.subspaces(n, self.p):
            m = Mat(len(rows), n, tuple(rows))
            out.append(CatMorphism(self, A, self.space(len(rows)), m))
        return out

    def intersect(self, m1, m2):
        if m1.dst != m2.dst:
            raise ContractViolation("monos must share a codomain")
        a, b = m1.src.structure, m2.src.structure
        joint = Mat(m1.data.nrows, a + b, tuple(
            tuple(r1) + tuple((-x) % self.p for x in r2) for r1, r2 in zip(m1.data.rows, m2.data.rows)))
        kernel = linalg.nullspace(joint, self.p)
        C = self.space(len(kernel))
        i1 = Mat.from_columns([k[:a] for k in kernel], a, self.p) if kernel else Mat.zeros(a, 0)
        i2 = Mat.from_columns([k[a:] for k in kernel], b, self.p) if kernel else Mat.zeros(b, 0)
        return C, CatMorphism(self, C, m1.src, i1), CatMorphism(self, C, m2.src, i2)
