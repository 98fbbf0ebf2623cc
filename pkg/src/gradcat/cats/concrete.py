"""Set, pointed sets, posets, M-sets and relational structures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from gradcat.cats.base import (
    CatMorphism,
    CatObject,
    Category,
    is_antisymmetric,
    reflexive_transitive_closure,
    standard_carriers,
)
from gradcat.errors import ContractViolation
from gradcat.finset import FinMap, FinSet, label_key


@dataclass(frozen=True)
class SetCat(Category):
    tag = "Set"

    def obj(self, elements) -> CatObject:
        return CatObject(self, FinSet(elements))

    def preserves(self, src, dst, f) -> bool:
        return True

    def objects(self, max_size: int) -> Iterator[CatObject]:
        for X in standard_carriers(max_size):
            yield CatObject(self, X)

    def substructures(self, A, S):
        yield CatObject(self, S)

    def quotient_structure(self, A, q):
        return CatObject(self, q.cod)

    def image_structure(self, f, image):
        return CatObject(self, image)

    def pullback_structure(self, P, m1, m2):
        return CatObject(self, P)


@dataclass(frozen=True)
class PointedSetCat(Category):
    tag = "SetP"

    def obj(self, elements, base) -> CatObject:
        A = CatObject(self, FinSet(elements), base)
        self.validate(A)
        return A

    def validate(self, A):
        if A.structure not in A.carrier:
            raise ContractViolation("base point must lie in the carrier")

    def preserves(self, src, dst, f) -> bool:
        return f(src.structure) == dst.structure

    def objects(self, max_size: int) -> Iterator[CatObject]:
        for X in standard_carriers(max_size, min_size=1):
            for base in X:
                yield CatObject(self, X, base)

    def substructures(self, A, S):
        if A.structure in S:
            yield CatObject(self, S, A.structure)

    def quotient_structure(self, A, q):
        return CatObject(self, q.cod, q(A.structure))

    def image_structure(self, f, image):
        return CatObject(self, image, f.data(f.src.structure))

    def pullback_structure(self, P, m1, m2):
        return CatObject(self, P, (m1.src.structure, m2.src.structure))


def _order_on(X: FinSet, strict_pairs) -> frozenset:
    return frozenset({(x, x) for x in X} | set(strict_pairs))


@dataclass(frozen=True)
class PosCat(Category):
    """Posets; the structure is the full order relation, reflexive pairs
    included, and the grade counts every pair in it."""

    tag = "Pos"

    def obj(self, elements, less_than=()) -> CatObject:
        X = FinSet(elements)
        A = CatObject(self, X, reflexive_transitive_closure(X, less_than))
        self.validate(A)
        return A

    def validate(self, A):
        rel = A.structure
        X = A.carrier
        if any(a not in X or b not in X for a, b in rel):
            raise ContractViolation("order mentions elements outside the carrier")
        if rel != reflexive_transitive_closure(X, rel) or not is_antisymmetric(rel):
            raise ContractViolation("relation is not a partial order")

    def grade(self, A) -> int:
        return len(A.structure)

    def preserves(self, src, dst, f) -> bool:
        d = f.as_dict()
        return all((d[a], d[b]) in dst.structure for a, b in src.structure)

    def is_strong_epi(self, f) -> bool:
        # every relation of the codomain arises from a zigzag through the domain
        if not f.data.is_surjective():
            return False
        d = f.data.as_dict()
        image = {(d[a], d[b]) for a, b in f.src.structure}
        return reflexive_transitive_closure(f.dst.carrier, image) == f.dst.structure

    def objects(self, max_size: int) -> Iterator[CatObject]:
        for X in standard_carriers(max_size):
            strict = [(a, b) for a in X for b in X if a != b]
            seen = set()
            for r in range(len(strict) + 1):
                for chosen in itertools.combinations(strict, r):
                    rel = _order_on(X, chosen)
                    if rel in seen:
                        continue
                    if rel == reflexive_transitive_closure(X, rel) and is_antisymmetric(rel):
                        seen.add(rel)
                        yield CatObject(self, X, rel)

    def substructures(self, A, S):
        induced = [(a, b) for a, b in A.structure if a != b and a in S and b in S]
        for r in range(len(induced) + 1):
            for chosen in itertools.combinations(induced, r):
                rel = _order_on(S, chosen)
                if rel == reflexive_transitive_closure(S, rel):
                    yield CatObject(self, S, rel)

    def quotient_structure(self, A, q):
        d = q.as_dict()
        rel = reflexive_transitive_closure(q.cod, {(d[a], d[b]) for a, b in A.structure})
        if not is_antisymmetric(rel):
            return None
        return CatObject(self, q.cod, rel)

    def image_structure(self, f, image):
        d = f.data.as_dict()
        return CatObject(self, image, reflexive_transitive_closure(
            image, {(d[a], d[b]) for a, b in f.src.structure}))

    def pullback_structure(self, P, m1, m2):
        r1, r2 = m1.src.structure, m2.src.structure
        rel = frozenset((s, t) for s in P for t in P
                        if (s[0], t[0]) in r1 and (s[1], t[1]) in r2)
        return CatObject(self, P, rel)


@dataclass(frozen=True)
class MSetCat(Category):
    """Sets with an action of a finite monoid given by its multiplication
    table over {0, ..., k-1}; ``table[a][b]`` is the product ``a*b``.

    An object's structure is the tuple of rows ``act[m]`` listing ``m . x``
    for ``x`` in carrier order.
    """

    table: tuple = ((0,),)

    @property
    def tag(self) -> str:
        return f"MSet({len(self.table)})"

    def __post_init__(self):
        k = len(self.table)
        if k == 0 or any(len(row) != k for row in self.table):
            raise ContractViolation("monoid table must be square and nonempty")
        if any(not 0 <= v < k for row in self.table for v in row):
            raise ContractViolation("monoid table entries out of range")
        t = self.table
        for a, b, c in itertools.product(range(k), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ContractViolation(f"monoid table not associative at {(a, b, c)}")
        if self.unit is None:
            raise ContractViolation("monoid table has no unit")

    @property
    def unit(self) -> int | None:
        k = len(self.table)
        for e in range(k):
            if all(self.table[e][m] == m and self.table[m][e] == m for m in range(k)):
                return e
        return None

    def act(self, A: CatObject, m: int, x):
        return A.structure[m][A.carrier.index(x)]

    def obj(self, elements, action) -> CatObject:
        X = FinSet(elements)
        rows = tuple(tuple(action[m][x] for x in X) for m in range(len(self.table)))
        A = CatObject(self, X, rows)
        self.validate(A)
        return A

    def validate(self, A):
        X = A.carrier
        act = {(m, x): A.structure[m][i] for m in range(len(self.table)) for i, x in enumerate(X)}
        for x in X:
            if act[(self.unit, x)] != x:
                raise ContractViolation("unit does not act as the identity")
            for a, b in itertools.product(range(len(self.table)), repeat=2):
                if act[(self.table[a][b], x)] != act[(a, act[(b, x)])]:
                    raise ContractViolation("action is not compatible with multiplication")

    def preserves(self, src, dst, f) -> bool:
        d = f.as_dict()
        for m in range(len(self.table)):
            for x, mx in zip(src.carrier, src.structure[m]):
                if d[mx] != self.act(dst, m, d[x]):
                    return False
        return True

    def objects(self, max_size: int) -> Iterator[CatObject]:
        k = len(self.table)
        others = [m for m in range(k) if m != self.unit]
        for X in standard_carriers(max_size):
            n = len(X)
            for rows in itertools.product(itertools.product(X.elements, repeat=n), repeat=len(others)):
                full = [None] * k
                full[self.unit] = X.elements
                for m, row in zip(others, rows):
                    full[m] = row
                A = CatObject(self, X, tuple(full))
                try:
                    self.validate(A)
                except ContractViolation:
                    continue
                yield A

    def _restrict(self, A, S, fn=lambda x: x) -> tuple:
        return tuple(tuple(fn(self.act(A, m, x)) for x in S) for m in range(len(self.table)))

    def substructures(self, A, S):
        if all(self.act(A, m, x) in S for m in range(len(self.table)) for x in S):
            yield CatObject(self, S, self._restrict(A, S))

    def quotient_structure(self, A, q):
        d = q.as_dict()
        rows = []
        for m in range(len(self.table)):
            row = {}
            for x in A.carrier:
                y = d[self.act(A, m, x)]
                if row.setdefault(d[x], y) != y:
                    return None  # not a congruence
            rows.append(tuple(row[c] for c in q.cod))
        return CatObject(self, q.cod, tuple(rows))

    def image_structure(self, f, image):
        d = f.data.as_dict()
        rows = []
        for m in range(len(self.table)):
            row = {d[x]: d[mx] for x, mx in zip(f.src.carrier, f.src.structure[m])}
            rows.append(tuple(row[y] for y in image))
        return CatObject(self, image, tuple(rows))

    def pullback_structure(self, P, m1, m2):
        rows = tuple(tuple((self.act(m1.src, m, s), self.act(m2.src, m, t)) for s, t in P)
                     for m in range(len(self.table)))
        return CatObject(self, P, rows)


@dataclass(frozen=True)
class RelCat(Category):
    """Relational structures of a finitary signature given as arities.

    The structure is a tuple holding, per symbol, a frozenset of tuples.
    """

    arities: tuple = (2,)

    @property
    def tag(self) -> str:
        return f"OmegaRel{self.arities}"

    def __post_init__(self):
        if any(a < 0 for a in self.arities):
            raise ContractViolation("arities must be nonnegative")

    def obj(self, elements, relations) -> CatObject:
        A = CatObject(self, FinSet(elements), tuple(frozenset(map(tuple, r)) for r in relations))
        self.validate(A)
        return A

    def validate(self, A):
        if len(A.structure) != len(self.arities):
            raise ContractViolation("one relation per symbol expected")
        for n, rel in zip(self.arities, A.structure):
            for t in rel:
                if len(t) != n or any(x not in A.carrier for x in t):
                    raise ContractViolation(f"tuple {t!r} does not fit the carrier")

    def grade(self, A) -> int:
        return len(A.carrier) + sum(len(r) for r in A.structure)

    def _image(self, d, rels):
        return tuple(frozenset(tuple(d[x] for x in t) for t in r) for r in rels)

    def preserves(self, src, dst, f) -> bool:
        d = f.as_dict()
        return all(img <= r for img, r in zip(self._image(d, src.structure), dst.structure))

    def is_strong_epi(self, f) -> bool:
        return f.data.is_surjective() and self._image(f.data.as_dict(), f.src.structure) == f.dst.structure

    def objects(self, max_size: int) -> Iterator[CatObject]:
        for X in standard_carriers(max_size):
            spaces = [list(itertools.product(X.elements, repeat=n)) for n in self.arities]
            choices = [
                [frozenset(c) for r in range(len(sp) + 1) for c in itertools.combinations(sp, r)]
                for sp in spaces
            ]
            for rels in itertools.product(*choices):
                yield CatObject(self, X, tuple(rels))

    def substructures(self, A, S):
        restricted = [sorted((t for t in r if all(x in S for x in t)), key=label_key)
                      for r in A.structure]
        choices = [
            [frozenset(c) for k in range(len(r) + 1) for c in itertools.combinations(r, k)]
            for r in restricted
        ]
        for rels in itertools.product(*choices):
            yield CatObject(self, S, tuple(rels))

    def quotient_structure(self, A, q):
        return CatObject(self, q.cod, self._image(q.as_dict(), A.structure))

    def image_structure(self, f, image):
        return CatObject(self, image, self._image(f.data.as_dict(), f.src.structure))

    def pullback_structure(self, P, m1, m2):
        rels = []
        for r1, r2, n in zip(m1.src.structure, m2.src.structure, self.arities):
            rels.append(frozenset(t for t in itertools.product(P.elements, repeat=n)
                                  if tuple(s[0] for s in t) in r1 and tuple(s[1] for s in t) in r2))
        return CatObject(self, P, tuple(rels))
