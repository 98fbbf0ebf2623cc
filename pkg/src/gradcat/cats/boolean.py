"""Finite boolean algebras, each the powerset of its set of atoms.

A homomorphism 2^S -> 2^T is stored contravariantly as its atom function
T -> S; the algebra map sends U to the preimage of U.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from gradcat.cats.base import CatMorphism, CatObject, Category
from gradcat.errors import ContractViolation
from gradcat.finset import (
    FinMap,
    FinSet,
    all_injections,
    all_maps,
    all_surjections,
    partitions,
    quotient,
    standard,
)


def powerset(atoms: FinSet) -> FinSet:
    elems = list(atoms)
    return FinSet(frozenset(c) for r in range(len(elems) + 1)
                  for c in itertools.combinations(elems, r))


@dataclass(frozen=True)
class BoolCat(Category):
    tag = "Bool"

    def algebra(self, atoms) -> CatObject:
        atoms = FinSet(atoms)
        return CatObject(self, powerset(atoms), atoms)

    def atoms(self, A: CatObject) -> FinSet:
        return A.structure

    def grade(self, A) -> int:
        return len(A.carrier)

    def preserves(self, src, dst, g) -> bool:
        return isinstance(g, FinMap) and g.dom == dst.structure and g.cod == src.structure

    def underlying(self, f) -> FinMap:
        g = f.data
        return FinMap(f.src.carrier, f.dst.carrier,
                      tuple(frozenset(t for t in g.dom if g(t) in U) for U in f.src.carrier))

    def compose(self, h, f):
        if f.dst != h.src:
            raise ContractViolation("morphisms are not composable")
        return CatMorphism(self, f.src, h.dst, f.data @ h.data)

    def identity(self, A):
        return CatMorphism(self, A, A, FinMap.identity(A.structure))

    def hom_set(self, A, B):
        self._same(A, B)
        return [CatMorphism(self, A, B, g) for g in all_maps(B.structure, A.structure)]

    def monos(self, A, B):
        return [CatMorphism(self, A, B, g) for g in all_surjections(B.structure, A.structure)]

    def strong_epis(self, A, B):
        return [CatMorphism(self, A, B, g) for g in all_injections(B.structure, A.structure)]

    def is_mono(self, f) -> bool:
        return f.data.is_surjective()

    def is_strong_epi(self, f) -> bool:
        return f.data.is_injective()

    def is_iso(self, f) -> bool:
        u = self.underlying(f)
        return u.is_bijective() and is_boolean_hom(u.inverse(), f.src.structure)

    def objects(self, max_size: int) -> Iterator[CatObject]:
        """Algebras with at most ``max_size`` atoms."""
        for n in range(max_size + 1):
            yield self.algebra(standard(n))

    def iso_reps(self, max_size: int):
        return list(self.objects(max_size))

    def factorize(self, f):
        g = f.data
        im = g.image()
        mid = CatObject(self, powerset(im), im)
        epi = CatMorphism(self, f.src, mid, FinMap.inclusion(im, g.cod))
        mono = CatMorphism(self, mid, f.dst, g.corestrict(im))
        return epi, mono

    def subobjects(self, A):
        # subalgebras of 2^S correspond to partitions of S
        out = []
        for blocks in partitions(list(A.structure)):
            q = quotient(A.structure, blocks)
            out.append(CatMorphism(self, CatObject(self, powerset(q.cod), q.cod), A, q))
        return out

    def strong_quotients(self, A):
        out = []
        for T in A.structure.subsets():
            out.append(CatMorphism(self, A, CatObject(self, powerset(T), T),
                                   FinMap.inclusion(T, A.structure)))
        return out

    def intersect(self, m1, m2):
        if m1.dst != m2.dst:
            raise ContractViolation("monos must share a codomain")
        S = m1.dst.structure
        blocks = {x: {x} for x in S}
        for g in (m1.data, m2.data):
            for y in g.cod:
                fibre = g.preimage(y)
                merged = set().union(*(blocks[x] for x in fibre))
                for x in merged:
                    blocks[x] = merged
        q = quotient(S, {frozenset(b) for b in blocks.values()})
        C = CatObject(self, powerset(q.cod), q.cod)

        def leg(m):
            return FinMap.from_dict(m.src.structure, q.cod,
                                    {y: q(m.data.preimage(y)[0]) for y in m.src.structure})
        return C, CatMorphism(self, C, m1.src, leg(m1)), CatMorphism(self, C, m2.src, leg(m2))


def is_boolean_hom(h: FinMap, atoms: FinSet) -> bool:
    """Whether a carrier map between powersets preserves meets, complements and top.

    ``atoms`` are the atoms of the codomain algebra.
    """
    dom_atoms = max(h.dom, key=len)
    top = frozenset(atoms)
    if h(dom_atoms) != top:
        return False
    for U in h.dom:
        if h(dom_atoms - U) != top - h(U):
            return False
        for V in h.dom:
            if h(U & V) != h(U) & h(V):
                return False
    return True
