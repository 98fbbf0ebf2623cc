"""Eventually constant sequences, truncated at a fixed stabilisation depth.

``EvSeq(prefix, tail)`` stands for the sequence that runs through
``prefix`` and then repeats ``tail`` forever.  Normal form: the last prefix
entry differs from the tail.  At depth d we keep the sequences that are
constant from index d on; these correspond to X^(d+1) via their first d+1
entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from gradcat.errors import ContractViolation
from gradcat.finset import FinMap, FinSet, product


class EvSeq(NamedTuple):
    prefix: tuple
    tail: object

    @classmethod
    def normal(cls, prefix, tail) -> EvSeq:
        prefix = tuple(prefix)
        while prefix and prefix[-1] == tail:
            prefix = prefix[:-1]
        return cls(prefix, tail)

    @classmethod
    def from_entries(cls, entries) -> EvSeq:
        """The sequence whose first entries are ``entries`` and which then
        repeats the last one."""
        entries = tuple(entries)
        return cls.normal(entries[:-1], entries[-1])

    def at(self, i: int):
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def stabilizes_by(self) -> int:
        """Least n with a(m) = a(n) for every m >= n."""
        return len(self.prefix)

    def fmap(self, fn) -> EvSeq:
        return EvSeq.normal(tuple(fn(x) for x in self.prefix), fn(self.tail))


def ev_eval(X: FinSet, depth: int) -> FinSet:
    """All eventually constant sequences over X stabilising by ``depth``."""
    if depth < 0:
        raise ContractViolation("depth must be nonnegative")
    out = []
    for tail in X:
        for m in range(depth + 1):
            for prefix in itertools.product(X.elements, repeat=m):
                if m == 0 or prefix[-1] != tail:
                    out.append(EvSeq(prefix, tail))
    return FinSet(out)


@dataclass(frozen=True)
class EvSeqFunctor:
    depth: int

    @property
    def name(self) -> str:
        return f"evconst:{self.depth}"

    def obj(self, X: FinSet) -> FinSet:
        return ev_eval(X, self.depth)

    def mor(self, f: FinMap) -> FinMap:
        d = f.as_dict()
        src = self.obj(f.dom)
        return FinMap(src, self.obj(f.cod), tuple(s.fmap(d.__getitem__) for s in src))


def staircase(n: int) -> EvSeq:
    """s_n = (0, 1, ..., n, n, n, ...) in H{0, ..., n}."""
    return EvSeq(tuple(range(n)), n)


def product_comparison(X: FinSet, Y: FinSet, depth: int) -> FinMap:
    """The canonical map H(X x Y) -> HX x HY induced by the projections."""
    P, (p1, p2) = product([X, Y])
    H = EvSeqFunctor(depth)
    target, _ = product([H.obj(X), H.obj(Y)])
    return FinMap(H.obj(P), target, tuple((s.fmap(p1), s.fmap(p2)) for s in H.obj(P)))


def ev_countable_witness(depth: int, n_max: int) -> int:
    """Least n <= n_max for which (s_0, ..., s_n) has no preimage of depth
    ``depth`` in H(A_0 x ... x A_n).

    The only candidate preimage is the pointwise tuple of the s_m; it lies
    in the truncation exactly when it stabilises by ``depth``.
    """
    if n_max <= depth:
        raise ContractViolation("n_max must exceed the depth")
    for n in range(n_max + 1):
        targets = [staircase(m) for m in range(n + 1)]
        horizon = max(t.stabilizes_by() for t in targets) + 1
        tuples = [tuple(t.at(i) for t in targets) for i in range(horizon)]
        candidate = EvSeq.from_entries(tuples)
        if candidate.stabilizes_by() > depth:
            return n
    raise ContractViolation("no failing index up to n_max")  # unreachable when n_max > depth
