"""Exact linear algebra over prime fields.

Two representations coexist: general GF(p) matrices as lists of int lists,
and a GF(2) fast path where a row is a single int bitmask. The incremental
`EchelonBasis` is what the subspace-dimension walks use; the dense helpers
cover rank, null space, and inversion for the matroid and code modules.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from icbound import kernels
from icbound.errors import InputError

__all__ = [
    "check_prime",
    "rref",
    "rank",
    "nullspace",
    "inverse",
    "matvec",
    "EchelonBasis",
]

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}


def check_prime(p: int) -> int:
    """Validate a field characteristic; only small primes are meaningful here."""
    if p in _SMALL_PRIMES:
        return p
    if p < 2 or any(p % q == 0 for q in range(2, min(p, 1000))):
        raise InputError(f"field size must be prime, got {p}")
    return p


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[List[List[int]], List[int]]:
    """Reduced row echelon form; returns (rows copy in RREF, pivot columns)."""
    work = [[v % p for v in row] for row in rows]
    if not work:
        return [], []
    pivots = kernels.gfp_rref(work, p)
    return work, list(pivots)


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> List[List[int]]:
    """Basis of {x : A x = 0} as a list of length-ncols vectors."""
    red, pivots = rref(rows, p)
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free_cols:
        vec = [0] * ncols
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-red[i][f]) % p
        basis.append(vec)
    return basis


def inverse(rows: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """Inverse of a square matrix; raises InputError when singular."""
    m = len(rows)
    aug = []
    for i, row in enumerate(rows):
        if len(row) != m:
            raise InputError("inverse needs a square matrix")
        ext = [v % p for v in row] + [0] * m
        ext[m + i] = 1
        aug.append(ext)
    pivots = kernels.gfp_rref(aug, p)
    if pivots != list(range(m)):
        raise InputError("matrix is singular, cannot invert")
    return [row[m:] for row in aug]


def matvec(rows: Sequence[Sequence[int]], vec: Sequence[int], p: int) -> List[int]:
    out = []
    for row in rows:
        acc = 0
        for a, b in zip(row, vec):
            acc += a * b
        out.append(acc % p)
    return out


class EchelonBasis:
    """Row basis over GF(p) kept in reduced echelon form, grown one vector
    at a time. copy() is cheap on purpose: subset-lattice walks fork a basis
    at every node.
    """

    __slots__ = ("p", "ncols", "rows", "pivots")

    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.rows: List[List[int]] = []
        self.pivots: List[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "EchelonBasis":
        dup = EchelonBasis.__new__(EchelonBasis)
        dup.p = self.p
        dup.ncols = self.ncols
        dup.rows = [row[:] for row in self.rows]
        dup.pivots = self.pivots[:]
        return dup

    def reduce(self, vec: Sequence[int]) -> List[int]:
        """Residual of vec after elimination against the current rows."""
        p = self.p
        work = [v % p for v in vec]
        for row, pc in zip(self.rows, self.pivots):
            f = work[pc]
            if f:
                for j in range(pc, self.ncols):
                    if row[j]:
                        work[j] = (work[j] - f * row[j]) % p
        return work

    def add(self, vec: Sequence[int]) -> bool:
        """Insert vec; returns True when it enlarged the span."""
        p = self.p
        work = self.reduce(vec)
        pivot = next((j for j in range(self.ncols) if work[j]), -1)
        if pivot < 0:
            return False
        inv = pow(work[pivot], p - 2, p) if p > 2 else 1
        if inv != 1:
            work = [v * inv % p for v in work]
        for row in self.rows:
            f = row[pivot]
            if f:
                for j in range(pivot, self.ncols):
                    if work[j]:
                        row[j] = (row[j] - f * work[j]) % p
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < pivot:
            pos += 1
        self.rows.insert(pos, work)
        self.pivots.insert(pos, pivot)
        return True

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def extend(self, vecs: Iterable[Sequence[int]]) -> None:
        for v in vecs:
            self.add(v)


class Gf2Basis:
    """GF(2) variant of EchelonBasis with int-bitmask rows."""

    __slots__ = ("rows",)

    def __init__(self, rows: Optional[List[int]] = None):
        self.rows: List[int] = list(rows) if rows else []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "Gf2Basis":
        return Gf2Basis(self.rows)

    def reduce(self, vec: int) -> int:
        for row in self.rows:
            high = row.bit_length() - 1
            if (vec >> high) & 1:
                vec ^= row
        return vec

    def add(self, vec: int) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        high = vec.bit_length() - 1
        for i, row in enumerate(self.rows):
            if (row >> high) & 1:
                self.rows[i] ^= vec
        pos = 0
        while pos < len(self.rows) and self.rows[pos].bit_length() - 1 > high:
            pos += 1
        self.rows.insert(pos, vec)
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def extend(self, vecs: Iterable[int]) -> None:
        for v in vecs:
            self.add(v)


def gf2_rank(rows: Iterable[int]) -> int:
    basis = Gf2Basis()
    basis.extend(rows)
    return basis.rank


def mask_from_bits(bits: Sequence[int]) -> int:
    mask = 0
    for b in bits:
        mask |= 1 << b
    return mask


__all__ += ["Gf2Basis", "gf2_rank", "mask_from_bits"]
