"""Exact matrix arithmetic over the prime field GF(p).

Dimensions here stay tiny (at most 5 or so), so matrices are plain tuples
of row tuples wrapped in ``Mat`` to keep the shape when a side is zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from gradcat.errors import ContractViolation


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Mat:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ContractViolation("matrix shape mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None, p: int = 2) -> Mat:
        rows = tuple(tuple(int(a) % p for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ContractViolation("cannot infer width of an empty matrix")
            ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int, p: int = 2) -> Mat:
        return cls(nrows, len(cols), tuple(tuple(c[i] % p for c in cols) for i in range(nrows)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Mat:
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self) -> Mat:
        return Mat(self.ncols, self.nrows, tuple(self.columns()))

    def __repr__(self) -> str:
        return f"Mat({self.nrows}x{self.ncols}, {list(map(list, self.rows))})"


def matmul(A: Mat, B: Mat, p: int) -> Mat:
    if A.ncols != B.nrows:
        raise ContractViolation("matrix shapes do not compose")
    cols = B.columns()
    return Mat(A.nrows, B.ncols, tuple(
        tuple(sum(a * b for a, b in zip(row, c)) % p for c in cols) for row in A.rows))


def apply(A: Mat, v: Sequence[int], p: int) -> tuple:
    if len(v) != A.ncols:
        raise ContractViolation("vector length does not match matrix width")
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in A.rows)


def rref(rows: Sequence[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    R = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        found = next((i for i in range(top, len(R)) if R[i][col] % p), None)
        if found is None:
            continue
        R[top], R[found] = R[found], R[top]
        inv = pow(R[top][col], p - 2, p)
        R[top] = [a * inv % p for a in R[top]]
        for i in range(len(R)):
            if i != top and R[i][col] % p:
                c = R[i][col]
                R[i] = [(a - c * b) % p for a, b in zip(R[i], R[top])]
        pivots.append(col)
        top += 1
        if top == len(R):
            break
    return R[:top], pivots


def rank_of_vectors(vectors: Sequence[Sequence[int]], n: int, p: int) -> int:
    return len(rref(vectors, n, p)[1])


def rank(A: Mat, p: int) -> int:
    return len(rref(A.rows, A.ncols, p)[1])


def span_key(vectors: Iterable[Sequence[int]], n: int, p: int) -> tuple:
    """Canonical name of the span of ``vectors`` in GF(p)^n (its RREF basis)."""
    R, _ = rref(list(vectors), n, p)
    return tuple(tuple(r) for r in R)


def solve(A: Mat, b: Sequence[int], p: int) -> tuple | None:
    """Some x with A x = b, or None when b is outside the column space."""
    aug = [list(row) + [bi] for row, bi in zip(A.rows, b)]
    R, pivots = rref(aug, A.ncols + 1, p)
    if A.ncols in pivots:
        return None
    x = [0] * A.ncols
    for r, c in zip(R, pivots):
        x[c] = r[A.ncols]
    return tuple(x)


def nullspace(A: Mat, p: int) -> list[tuple]:
    R, pivots = rref(A.rows, A.ncols, p)
    free = [c for c in range(A.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * A.ncols
        v[f] = 1
        for r, c in zip(R, pivots):
            v[c] = (-r[f]) % p
        basis.append(tuple(v))
    return basis


def inverse(A: Mat, p: int) -> Mat:
    n = A.nrows
    if A.ncols != n:
        raise ContractViolation("only square matrices are invertible")
    aug = [list(r) + list(e) for r, e in zip(A.rows, Mat.identity(n).rows)]
    R, pivots = rref(aug, 2 * n, p)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ContractViolation("matrix is singular")
    return Mat(n, n, tuple(tuple(r[n:]) for r in R))


def extend_basis(basis: Sequence[Sequence[int]], candidates: Iterable[Sequence[int]],
                 n: int, p: int) -> list[tuple]:
    """Greedily append candidates that raise the rank; returns the additions."""
    current = [tuple(v) for v in basis]
    added = []
    r = rank_of_vectors(current, n, p) if current else 0
    for v in candidates:
        trial = current + [tuple(v)]
        rr = rank_of_vectors(trial, n, p)
        if rr > r:
            current, r = trial, rr
            added.append(tuple(v))
    return added


def standard_basis(n: int) -> list[tuple]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def vectors(n: int, p: int) -> Iterator[tuple]:
    return itertools.product(range(p), repeat=n)


def all_matrices(nrows: int, ncols: int, p: int) -> Iterator[Mat]:
    for flat in itertools.product(range(p), repeat=nrows * ncols):
        yield Mat(nrows, ncols, tuple(tuple(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)))


def subspaces(n: int, p: int) -> list[tuple]:
    """Every subspace of GF(p)^n as its RREF basis, ordered by dimension."""
    seen = {span_key([], n, p)}
    frontier = list(seen)
    out = list(seen)
    while frontier:
        nxt = []
        for basis in frontier:
            for v in vectors(n, p):
                key = span_key(list(basis) + [v], n, p)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        nxt.sort()
        out.extend(nxt)
        frontier = nxt
    return out
