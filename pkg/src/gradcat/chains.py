"""Truncated omega^op chains, compatible cones and monic-leg searches.

A chain segment L_0 <- L_1 <- ... <- L_N is stored with its connecting maps
d_k: L_{k+1} -> L_k.  A cone from an apex has one leg q_k per level with
q_k = d_k . q_{k+1}.  Deeper legs separate more points, so the searches
below scan k upwards and stop at the first hit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from gradcat import linalg
from gradcat.cats import CatMorphism, CatObject, Category, VecCat
from gradcat.errors import ContractViolation
from gradcat.linalg import Mat


@dataclass(frozen=True)
class ChainSegment:
    cat: Category
    objects: tuple
    connecting: tuple

    def __post_init__(self):
        if len(self.connecting) != len(self.objects) - 1:
            raise ContractViolation("need one connecting map per adjacent pair")
        for k, d in enumerate(self.connecting):
            if d.src != self.objects[k + 1] or d.dst != self.objects[k]:
                raise ContractViolation(f"connecting map d_{k} must go L_{k + 1} -> L_{k}")

    @property
    def depth(self) -> int:
        return len(self.objects) - 1

    def connecting_map(self, i: int, j: int) -> CatMorphism:
        """The composite d_i . ... . d_{j-1}: L_j -> L_i for i <= j."""
        f = self.cat.identity(self.objects[j])
        for k in range(j - 1, i - 1, -1):
            f = self.cat.compose(self.connecting[k], f)
        return f

    def truncate(self, n: int) -> ChainSegment:
        return ChainSegment(self.cat, self.objects[:n + 1], self.connecting[:n])


@dataclass(frozen=True)
class ConeFamily:
    chain: ChainSegment
    apex: CatObject
    legs: tuple

    def __post_init__(self):
        if len(self.legs) != len(self.chain.objects):
            raise ContractViolation("need one leg per chain level")
        cat = self.chain.cat
        for k, q in enumerate(self.legs):
            if q.src != self.apex or q.dst != self.chain.objects[k]:
                raise ContractViolation(f"leg q_{k} has the wrong endpoints")
        for k, d in enumerate(self.chain.connecting):
            if cat.compose(d, self.legs[k + 1]) != self.legs[k]:
                raise ContractViolation(f"cone is not compatible at level {k}")

    def truncate(self, n: int) -> ConeFamily:
        return ConeFamily(self.chain.truncate(n), self.apex, self.legs[:n + 1])


@dataclass(frozen=True)
class MonoIndexResult:
    index: int | None
    depth: int
    witnesses: tuple = ()  # (k, (x, y)) for each non-monic leg scanned


def merged_pair(cat: Category, f: CatMorphism):
    """Two distinct points of the carrier identified by ``f``, or None."""
    u = cat.underlying(f)
    seen = {}
    for x, fx in zip(u.dom, u.table):
        if fx in seen:
            return (seen[fx], x)
        seen[fx] = x
    return None


def mono_index(cone: ConeFamily) -> MonoIndexResult:
    """Least level whose leg is monic, with merged-pair witnesses below it."""
    cat = cone.chain.cat
    witnesses = []
    for k, q in enumerate(cone.legs):
        if cat.is_mono(q):
            return MonoIndexResult(k, cone.chain.depth, tuple(witnesses))
        witnesses.append((k, merged_pair(cat, q)))
    return MonoIndexResult(None, cone.chain.depth, tuple(witnesses))


@dataclass
class IndependenceResult:
    index: int | None
    depth: int
    # least level for the first m vectors, m = 1..n (None past the depth)
    prefix_levels: list = field(default_factory=list)
    # per failing (m, k): coefficients expressing q_k(x_m) in terms of q_k(x_1..x_{m-1})
    scratch: list = field(default_factory=list)


def find_independence_index(cone: ConeFamily, vectors: Sequence[Sequence[int]]) -> IndependenceResult:
    """Least level k at which the images q_k(x_1), ..., q_k(x_n) are independent.

    The scan adds one vector at a time, resuming each search where the
    previous one stopped: independence of a prefix is necessary for the
    whole family, and once achieved it persists at every deeper level.
    """
    cat = cone.chain.cat
    if not isinstance(cat, VecCat):
        raise ContractViolation("independence search needs a vector-space chain")
    p = cat.p
    a = cone.apex.structure
    vecs = [tuple(int(c) % p for c in v) for v in vectors]
    if any(len(v) != a for v in vecs):
        raise ContractViolation("vectors must live in the apex")
    if linalg.rank_of_vectors(vecs, a, p) != len(vecs):
        raise ContractViolation("input vectors are linearly dependent")
    N = cone.chain.depth
    result = IndependenceResult(None, N)
    k = 0
    for m in range(1, len(vecs) + 1):
        while k <= N:
            q = cone.legs[k].data
            images = [linalg.apply(q, v, p) for v in vecs[:m]]
            if linalg.rank_of_vectors(images, q.nrows, p) == m:
                break
            if m > 1:
                prev = Mat.from_columns(images[:-1], q.nrows, p)
                result.scratch.append((m, k, linalg.solve(prev, images[-1], p)))
            k += 1
        if k > N:
            result.prefix_levels.append(None)
            return result
        result.prefix_levels.append(k)
    result.index = k
    return result


def random_vec_cone(rng: random.Random, max_dim: int = 5, max_depth: int = 8, p: int = 2):
    """A random compatible cone over a GF(p) chain plus independent apex vectors.

    Legs are built from the deepest level upwards so compatibility holds by
    construction.
    """
    V = VecCat(p)
    a = rng.randint(1, max_dim)
    N = rng.randint(1, max_depth)
    dims = [rng.randint(1, max_dim) for _ in range(N + 1)]
    objs = [V.space(d) for d in dims]
    apex = V.space(a)

    def rand_mat(r, c):
        return Mat(r, c, tuple(tuple(rng.randrange(p) for _ in range(c)) for _ in range(r)))

    legs = [None] * (N + 1)
    legs[N] = CatMorphism(V, apex, objs[N], rand_mat(dims[N], a))
    conn = [None] * N
    for k in range(N - 1, -1, -1):
        conn[k] = CatMorphism(V, objs[k + 1], objs[k], rand_mat(dims[k], dims[k + 1]))
        legs[k] = V.compose(conn[k], legs[k + 1])
    cone = ConeFamily(ChainSegment(V, tuple(objs), tuple(conn)), apex, tuple(legs))
    n = rng.randint(1, a)
    vecs: list = []
    while len(vecs) < n:
        v = tuple(rng.randrange(p) for _ in range(a))
        if linalg.rank_of_vectors(vecs + [v], a, p) == len(vecs) + 1:
            vecs.append(v)
    return cone, vecs


# --- the two built-in counterexample chains --------------------------------

COUNTEREXAMPLES = ("ab-mod2k", "un-cycles")


@dataclass
class ChainReport:
    name: str
    depth: int
    homomorphisms: list = field(default_factory=list)  # per connecting map
    compatible: list = field(default_factory=list)     # per leg, against the next level
    witnesses: list = field(default_factory=list)      # (k, (0, 2^k), common image)
    monic_legs: int = 0

    @property
    def ok(self) -> bool:
        return (all(self.homomorphisms) and all(self.compatible)
                and self.monic_legs == 0 and len(self.witnesses) == self.depth + 1)


def _reduction(k: int) -> np.ndarray:
    """Table of the reduction Z/2^(k+1) -> Z/2^k."""
    return np.arange(2 ** (k + 1), dtype=np.int64) % 2 ** k


def _is_additive(d: np.ndarray, src_mod: int, dst_mod: int) -> bool:
    # a map out of a cyclic group is a homomorphism iff it is multiplication
    # by the image of the generator and that image has compatible order
    x = np.arange(src_mod, dtype=np.int64)
    g = int(d[1]) if src_mod > 1 else 0
    return bool((src_mod * g) % dst_mod == 0 and np.array_equal(d, (x * g) % dst_mod))


def _is_successor_equivariant(d: np.ndarray, src_len: int, dst_len: int) -> bool:
    x = np.arange(src_len, dtype=np.int64)
    return bool(np.array_equal(d[(x + 1) % src_len], (d + 1) % dst_len))


def verify_counterexample_chain(name: str, depth: int) -> ChainReport:
    """Build Z/2^k (or the 2^k-cycles) up to ``depth`` and show that no leg
    from the integers is monic.

    The apex is symbolic: the leg to level k is z -> z mod 2^k, so the pair
    (0, 2^k) is merged at level k.
    """
    if name not in COUNTEREXAMPLES:
        raise ContractViolation(f"unknown counterexample chain {name!r}")
    if depth < 1:
        raise ContractViolation("depth must be at least 1")
    report = ChainReport(name, depth)
    check = _is_additive if name == "ab-mod2k" else _is_successor_equivariant
    for k in range(depth):
        d = _reduction(k)
        report.homomorphisms.append(check(d, 2 ** (k + 1), 2 ** k))
    window = np.arange(-1024, 1025, dtype=np.int64)
    for k in range(depth + 1):
        m = 2 ** k
        leg = window % m
        if k < depth:
            nxt = (window % (2 * m)) % m
            ok = np.array_equal(leg, nxt)
            if name == "un-cycles":
                # legs out of (Z, z+1) must commute with the successor
                ok = ok and np.array_equal((window + 1) % m, (leg + 1) % m)
            report.compatible.append(bool(ok))
        a, b = 0, m
        if a % m == b % m:
            report.witnesses.append((k, (a, b), a % m))
        else:
            report.monic_legs += 1
    return report
