"""The generic matrix X_n, minors, determinants, and the Omega-process operator."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import perms
from .perms import IndexSet, Permutation
from .poly import Polynomial, make_monomial

MAX_SYMBOLIC_N = int(os.environ.get("CAYLEY_MAX_SYMBOLIC_N", "6"))


class DimensionLimitError(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        for name in ("rows", "cols"):
            idx = tuple(sorted(set(int(a) for a in getattr(self, name))))
            if len(idx) != len(getattr(self, name)):
                raise ValueError(f"repeated index in {name} {getattr(self, name)}")
            object.__setattr__(self, name, idx)

    @property
    def k(self) -> int:
        if len(self.rows) != len(self.cols):
            raise ShapeError(f"{len(self.rows)} rows vs {len(self.cols)} cols")
        return len(self.rows)

    def row_set(self, n: int) -> IndexSet:
        return IndexSet.of(self.rows, n)

    def col_set(self, n: int) -> IndexSet:
        return IndexSet.of(self.cols, n)

    def complement(self, n: int) -> "MinorSpec":
        return MinorSpec(self.row_set(n).complement(), self.col_set(n).complement())


class SymbolicMatrix:
    """Rectangular grid of polynomials, indexed from 1."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable[Polynomial]]):
        self.entries: tuple[tuple[Polynomial, ...], ...] = tuple(tuple(r) for r in entries)
        if len({len(r) for r in self.entries}) > 1:
            raise ShapeError("ragged matrix")

    @classmethod
    def generic(cls, n: int, max_n: int | None = None) -> "SymbolicMatrix":
        limit = MAX_SYMBOLIC_N if max_n is None else max_n
        if n > limit:
            raise DimensionLimitError(f"symbolic dimension {n} exceeds limit {limit}")
        return cls(
            [Polynomial.var(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)
        )

    @classmethod
    def from_integers(cls, rows: Sequence[Sequence[int]]) -> "SymbolicMatrix":
        return cls([Polynomial.const(v) for v in r] for r in rows)

    @property
    def shape(self) -> tuple[int, int]:
        nr = len(self.entries)
        return nr, (len(self.entries[0]) if nr else 0)

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"SymbolicMatrix({[[str(e) for e in r] for r in self.entries]})"


def _check_range(m: SymbolicMatrix, spec: MinorSpec) -> None:
    nr, nc = m.shape
    if any(not 1 <= r <= nr for r in spec.rows) or any(not 1 <= c <= nc for c in spec.cols):
        raise IndexError(f"{spec} out of range for a {nr}x{nc} matrix")


def minor(m: SymbolicMatrix, spec: MinorSpec) -> SymbolicMatrix:
    _check_range(m, spec)
    return SymbolicMatrix([m[i, j] for j in spec.cols] for i in spec.rows)


def cominor(m: SymbolicMatrix, spec: MinorSpec) -> SymbolicMatrix:
    _check_range(m, spec)
    nr, nc = m.shape
    rows = [i for i in range(1, nr + 1) if i not in spec.rows]
    cols = [j for j in range(1, nc + 1) if j not in spec.cols]
    return SymbolicMatrix([m[i, j] for j in cols] for i in rows)


def determinant(m: SymbolicMatrix) -> Polynomial:
    """Sum over all permutations of signed products of entries; ``det`` of 0x0 is 1."""
    n, nc = m.shape
    if n != nc:
        raise ShapeError(f"determinant of a non-square {n}x{nc} matrix")
    total = Polynomial()
    for images in itertools.permutations(range(1, n + 1)):
        prod = Polynomial.const(perms.sign(Permutation(images)))
        for i, j in enumerate(images, start=1):
            prod = prod * m[i, j]
            if prod.is_zero():
                break
        total = total + prod
    return total


@lru_cache(maxsize=None)
def generic_minor_det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
    """``det X[rows|cols]`` of the generic matrix, built straight from monomials."""
    if len(rows) != len(cols):
        raise ShapeError(f"{len(rows)} rows vs {len(cols)} cols")
    terms = {}
    for images in itertools.permutations(range(len(cols))):
        mono = make_monomial(((r, cols[c]), 1) for r, c in zip(rows, images))
        terms[mono] = perms.word_sign(images)
    return Polynomial(terms)


def generic_cominor_det(n: int, rows: Iterable[int], cols: Iterable[int]) -> Polynomial:
    rows, cols = set(rows), set(cols)
    return generic_minor_det(
        tuple(i for i in range(1, n + 1) if i not in rows),
        tuple(j for j in range(1, n + 1) if j not in cols),
    )


def int_determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in a]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sgn, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sgn * m[n - 1][n - 1]


def int_submatrix(a: Sequence[Sequence[int]], rows: Iterable[int], cols: Iterable[int]) -> list[list[int]]:
    cols = list(cols)
    return [[a[i - 1][j - 1] for j in cols] for i in rows]


def apply_omega_det(
    spec: MinorSpec, p: Polynomial, taus: Iterable[Sequence[int]] | None = None
) -> Polynomial:
    """Apply ``det(d[I|J])`` to ``p``.

    Sums ``sgn(tau) * d/dx[r_1, c_tau(1)] ... d/dx[r_k, c_tau(k)] p`` over
    ``tau`` in S_k, rows and columns taken in increasing order.  ``taus`` may
    supply the enumeration order of S_k (one-line, 1-based); the default is
    lexicographic.
    """
    k = spec.k
    if taus is None:
        taus = itertools.permutations(range(1, k + 1))
    total = Polynomial()
    for tau in taus:
        tau = tuple(tau)
        if sorted(tau) != list(range(1, k + 1)):
            raise ValueError(f"{tau} is not a permutation of 1..{k}")
        q = p
        for r, t in zip(spec.rows, tau):
            q = q.partial_derivative((r, spec.cols[t - 1]))
            if q.is_zero():
                break
        if not q.is_zero():
            total = total + q * perms.word_sign(tau)
    return total
