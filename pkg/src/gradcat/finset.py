"""Finite sets and functions with canonically ordered labels.

Labels are arbitrary hashable values built from ints, strings, tuples and
frozensets.  ``label_key`` gives them a single total order so that every
construction enumerates in a deterministic sequence and equal constructions
compare equal structurally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from gradcat.errors import ContractViolation

Label = Hashable


def label_key(x: Any) -> tuple:
    """Sort key putting any mixture of labels into one total order."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, len(x), tuple(label_key(e) for e in x))
    if isinstance(x, frozenset):
        return (3, len(x), tuple(sorted(label_key(e) for e in x)))
    if x is None:
        return (-1,)
    key = getattr(x, "label_key", None)
    if key is not None:
        return (4, key())
    raise TypeError(f"unorderable label {x!r}")


@dataclass(frozen=True)
class FinSet:
    elements: tuple

    def __init__(self, elements: Iterable[Label] = ()):
        elems = tuple(sorted(elements, key=label_key))
        for a, b in zip(elems, elems[1:]):
            if a == b:
                raise ContractViolation(f"duplicate label {a!r}")
        object.__setattr__(self, "elements", elems)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._members

    @property
    def _members(self) -> frozenset:
        # cached lazily; frozen dataclass so go through object.__setattr__
        try:
            return self.__dict__["_m"]
        except KeyError:
            m = frozenset(self.elements)
            object.__setattr__(self, "_m", m)
            return m

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.elements)) + "}"

    def index(self, x: Label) -> int:
        return self.elements.index(x)

    def subsets(self) -> Iterator[FinSet]:
        """All subsets, smallest first, lexicographic within a size."""
        for r in range(len(self) + 1):
            for combo in itertools.combinations(self.elements, r):
                yield FinSet(combo)

    def issubset(self, other: FinSet) -> bool:
        return all(x in other for x in self.elements)

    def __and__(self, other: FinSet) -> FinSet:
        return FinSet(x for x in self.elements if x in other)

    def __or__(self, other: FinSet) -> FinSet:
        return FinSet(set(self.elements) | set(other.elements))

    def __sub__(self, other: FinSet) -> FinSet:
        return FinSet(x for x in self.elements if x not in other)


def standard(n: int) -> FinSet:
    """The set {0, ..., n-1}."""
    return FinSet(range(n))


@dataclass(frozen=True)
class FinMap:
    """A function between finite sets, stored as the tuple of images of
    ``dom.elements`` in order."""

    dom: FinSet
    cod: FinSet
    table: tuple

    def __post_init__(self):
        if len(self.table) != len(self.dom):
            raise ContractViolation("table is not total on the domain")
        for y in self.table:
            if y not in self.cod:
                raise ContractViolation(f"image {y!r} not in codomain")

    @classmethod
    def from_dict(cls, dom: FinSet, cod: FinSet, mapping: Mapping) -> FinMap:
        try:
            return cls(dom, cod, tuple(mapping[x] for x in dom))
        except KeyError as exc:
            raise ContractViolation(f"no image for {exc.args[0]!r}") from None

    @classmethod
    def from_function(cls, dom: FinSet, cod: FinSet, fn: Callable) -> FinMap:
        return cls(dom, cod, tuple(fn(x) for x in dom))

    @classmethod
    def identity(cls, X: FinSet) -> FinMap:
        return cls(X, X, X.elements)

    @classmethod
    def inclusion(cls, S: FinSet, X: FinSet) -> FinMap:
        return cls(S, X, S.elements)

    @classmethod
    def const(cls, dom: FinSet, cod: FinSet, y: Label) -> FinMap:
        return cls(dom, cod, (y,) * len(dom))

    def as_dict(self) -> dict:
        try:
            return self.__dict__["_d"]
        except KeyError:
            d = dict(zip(self.dom.elements, self.table))
            object.__setattr__(self, "_d", d)
            return d

    def __call__(self, x: Label) -> Label:
        try:
            return self.as_dict()[x]
        except KeyError:
            raise ContractViolation(f"{x!r} not in domain") from None

    def __matmul__(self, other: FinMap) -> FinMap:
        """``g @ f`` is the composite g after f."""
        if other.cod != self.dom:
            raise ContractViolation("maps are not composable")
        d = self.as_dict()
        return FinMap(other.dom, self.cod, tuple(d[y] for y in other.table))

    def image(self) -> FinSet:
        return FinSet(set(self.table))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == len(self.cod)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def preimage(self, y: Label) -> list:
        return [x for x, fx in zip(self.dom.elements, self.table) if fx == y]

    def inverse(self) -> FinMap:
        if not self.is_bijective():
            raise ContractViolation("map is not bijective")
        return FinMap.from_dict(self.cod, self.dom, dict(zip(self.table, self.dom.elements)))

    def restrict(self, S: FinSet) -> FinMap:
        d = self.as_dict()
        return FinMap(S, self.cod, tuple(d[x] for x in S))

    def corestrict(self, T: FinSet) -> FinMap:
        return FinMap(self.dom, T, self.table)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{x!r}->{y!r}" for x, y in zip(self.dom.elements, self.table))
        return f"FinMap({pairs})"


@dataclass(frozen=True)
class Factorization:
    epi: FinMap
    mono: FinMap

    def composite(self) -> FinMap:
        return self.mono @ self.epi


def all_maps(X: FinSet, Y: FinSet) -> Iterator[FinMap]:
    """Every function X -> Y in lexicographic order of tables."""
    for table in itertools.product(Y.elements, repeat=len(X)):
        yield FinMap(X, Y, table)


def all_injections(X: FinSet, Y: FinSet) -> Iterator[FinMap]:
    for table in itertools.permutations(Y.elements, len(X)):
        yield FinMap(X, Y, table)


def all_surjections(X: FinSet, Y: FinSet) -> Iterator[FinMap]:
    n = len(Y)
    for table in itertools.product(Y.elements, repeat=len(X)):
        if len(set(table)) == n:
            yield FinMap(X, Y, table)


def partitions(elements: Sequence[Label]) -> Iterator[list[list]]:
    """Set partitions of ``elements``; blocks keep input order."""
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def quotient(X: FinSet, blocks: Iterable[Iterable[Label]]) -> FinMap:
    """Quotient map onto classes labelled by their least member."""
    rep = {}
    for block in blocks:
        block = sorted(block, key=label_key)
        for x in block:
            rep[x] = block[0]
    return FinMap(X, FinSet(set(rep.values())), tuple(rep[x] for x in X))


def product(xs: Sequence[FinSet]) -> tuple[FinSet, list[FinMap]]:
    """Cartesian product with tuple labels and its projections."""
    P = FinSet(itertools.product(*(X.elements for X in xs)))
    projections = [FinMap(P, X, tuple(t[k] for t in P)) for k, X in enumerate(xs)]
    return P, projections


def pair(P: FinSet, maps: Sequence[FinMap]) -> FinMap:
    """The induced map ``<f_1, ..., f_n>`` into a product carrier ``P``."""
    dom = maps[0].dom
    return FinMap(dom, P, tuple(zip(*(f.table for f in maps))))


def coproduct(xs: Sequence[FinSet]) -> tuple[FinSet, list[FinMap]]:
    """Disjoint union labelled by ``(index, element)`` pairs."""
    S = FinSet((k, x) for k, X in enumerate(xs) for x in X)
    injections = [FinMap(X, S, tuple((k, x) for x in X)) for k, X in enumerate(xs)]
    return S, injections


def copair(S: FinSet, maps: Sequence[FinMap]) -> FinMap:
    """The induced map ``[f_1, ..., f_n]`` out of a coproduct carrier ``S``."""
    cod = maps[0].cod
    return FinMap(S, cod, tuple(maps[k](x) for k, x in S))


def equalizer(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    if f.dom != g.dom or f.cod != g.cod:
        raise ContractViolation("equalizer needs a parallel pair")
    E = FinSet(x for x, a, b in zip(f.dom, f.table, g.table) if a == b)
    return E, FinMap.inclusion(E, f.dom)


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    if f.cod != g.cod:
        raise ContractViolation("pullback needs a common codomain")
    fibres: dict = {}
    for y, gy in zip(g.dom, g.table):
        fibres.setdefault(gy, []).append(y)
    P = FinSet((x, y) for x, fx in zip(f.dom, f.table) for y in fibres.get(fx, ()))
    p1 = FinMap(P, f.dom, tuple(t[0] for t in P))
    p2 = FinMap(P, g.dom, tuple(t[1] for t in P))
    return P, p1, p2


def factorize(f: FinMap) -> Factorization:
    """Image factorization: surjection onto the image, then inclusion."""
    im = f.image()
    return Factorization(f.corestrict(im), FinMap.inclusion(im, f.cod))
