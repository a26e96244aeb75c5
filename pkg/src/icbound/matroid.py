"""Matroids, their index coding instances, and rank-driven certificates.

A matroid here is a dense rank vector over subsets of a small labeled ground
set, however it was produced (a representation matrix, a rank function, a
hand-written table). The index coding instance of a matroid has one receiver
per (element, minimal spanning-avoiding set) pair; its one-step closure is
exactly matroid closure, and the plain LP bound lands at n - r by design.

addineq_certificate turns any tight schema row that is negative on the rank
vector into an explicit dual certificate beating n - r. This is the engine
behind strict bounds for the binary/ternary matroid pair: no LP solve is
involved, just a greedy basis chase, and the result is checked by the same
verifier as everything else.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Sequence, Tuple

from icbound.certificate import DualCertificate
from icbound.errors import InputError, ResourceCapError
from icbound.gf import EchelonBasis, check_prime
from icbound.groundset import GroundSet, SetVector, popcount
from icbound.instance import ClosureMode, IndexCodingInstance
from icbound.rational import ONE, ZERO, Rational, rat

__all__ = [
    "Matroid",
    "rank_from_matrix",
    "uniform_matroid",
    "fano",
    "nonfano",
    "to_index_coding",
    "addineq_certificate",
]

_MATROID_CAP = 12


class Matroid:
    """Ground set plus a dense rank vector indexed by subset mask."""

    __slots__ = ("gs", "ranks")

    def __init__(self, gs: GroundSet, ranks: Sequence[int]):
        if gs.n > _MATROID_CAP:
            raise ResourceCapError(
                f"dense matroid limited to {_MATROID_CAP} elements, got {gs.n}"
            )
        if len(ranks) != (1 << gs.n):
            raise InputError("rank vector length must be 2^n")
        self.gs = gs
        self.ranks = tuple(int(r) for r in ranks)

    @classmethod
    def from_rank_function(cls, gs: GroundSet, fn: Callable[[int], int]) -> "Matroid":
        m = cls(gs, [fn(s) for s in range(1 << gs.n)])
        m.check_axioms()
        return m

    def rank(self, mask: int) -> int:
        self.gs.check_mask(mask)
        return self.ranks[mask]

    @property
    def n(self) -> int:
        return self.gs.n

    @property
    def full_rank(self) -> int:
        return self.ranks[self.gs.full_mask]

    def check_axioms(self) -> None:
        """Normalization, unit increase, and submodularity; raises InputError."""
        n = self.gs.n
        r = self.ranks
        if r[0] != 0:
            raise InputError("rank of the empty set must be 0")
        for s in range(1 << n):
            for i in range(n):
                bit = 1 << i
                if s & bit:
                    continue
                step = r[s | bit] - r[s]
                if step not in (0, 1):
                    raise InputError(f"rank step {step} at mask {s} plus element {i}")
        for s in range(1 << n):
            for i in range(n):
                if s & (1 << i):
                    continue
                for j in range(i + 1, n):
                    if s & (1 << j):
                        continue
                    a, b = s | (1 << i), s | (1 << j)
                    if r[a] + r[b] < r[a | b] + r[s]:
                        raise InputError(f"submodularity fails at masks {a}, {b}")

    def closure(self, mask: int) -> int:
        """All elements whose addition leaves the rank unchanged."""
        self.gs.check_mask(mask)
        out = mask
        base = self.ranks[mask]
        for i in range(self.gs.n):
            bit = 1 << i
            if not (mask & bit) and self.ranks[mask | bit] == base:
                out |= bit
        return out

    def is_independent(self, mask: int) -> bool:
        return self.rank(mask) == popcount(mask)

    def rank_vector(self) -> SetVector:
        return SetVector(self.gs, {s: rat(r) for s, r in enumerate(self.ranks) if r})

    def basis_intersection_empty(self) -> bool:
        """True when no element lies in every basis, i.e. there are no coloops."""
        full = self.gs.full_mask
        top = self.full_rank
        return all(self.ranks[full & ~(1 << i)] == top for i in range(self.gs.n))

    def adjoin_zero(self, label: object = "e") -> "Matroid":
        """The same matroid with an extra rank-zero element appended."""
        gs2 = self.gs.append(label)
        old_full = self.gs.full_mask
        ranks = [self.ranks[s & old_full] for s in range(1 << gs2.n)]
        return Matroid(gs2, ranks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matroid)
            and self.gs == other.gs
            and self.ranks == other.ranks
        )

    def __repr__(self) -> str:
        return f"Matroid({self.gs.labels!r}, rank {self.full_rank})"


def rank_from_matrix(
    labels: Sequence[object], columns: Sequence[Sequence[int]], p: int
) -> Matroid:
    """Matroid of a matrix over GF(p); columns are indexed by labels."""
    check_prime(p)
    gs = GroundSet(tuple(labels))
    if len(columns) != gs.n:
        raise InputError("need exactly one column per label")
    dim = len(columns[0]) if columns else 0
    if any(len(c) != dim for c in columns):
        raise InputError("columns must share a common height")
    cols = [[v % p for v in c] for c in columns]

    ranks = [0] * (1 << gs.n)
    bases: Dict[int, EchelonBasis] = {0: EchelonBasis(p, dim)}
    for s in range(1, 1 << gs.n):
        low = s & -s
        parent = s ^ low
        basis = bases[parent].copy()
        basis.add(cols[low.bit_length() - 1])
        bases[s] = basis
        ranks[s] = basis.rank
    return Matroid(gs, ranks)


def uniform_matroid(k: int, n: int) -> Matroid:
    """Rank min(|S|, k) on elements labeled e1..en."""
    if not 0 <= k <= n:
        raise InputError(f"uniform matroid needs 0 <= k <= n, got {k}, {n}")
    gs = GroundSet(tuple(f"e{i + 1}" for i in range(n)))
    return Matroid(gs, [min(popcount(s), k) for s in range(1 << n)])


_FANO_LABELS = ("100", "010", "001", "110", "101", "011", "111")


def _fano_columns() -> List[List[int]]:
    return [[int(ch) for ch in lab] for lab in _FANO_LABELS]


def fano() -> Matroid:
    """Rank-3 matroid of the seven nonzero binary triples over GF(2)."""
    return rank_from_matrix(_FANO_LABELS, _fano_columns(), 2)


def nonfano() -> Matroid:
    """The same seven columns read over GF(3), where the three two-one
    labels become independent; ranks agree with any odd characteristic."""
    return rank_from_matrix(_FANO_LABELS, _fano_columns(), 3)


def to_index_coding(matroid: Matroid, minimal: bool = True) -> IndexCodingInstance:
    """Instance whose receivers demand each element given a set spanning it.

    With minimal=True only inclusion-minimal known sets are kept; the closure
    structure, and hence the LP, is unchanged, the instance is just smaller.
    """
    gs = matroid.gs
    n = gs.n
    receivers = []
    for x in range(n):
        bit = 1 << x
        rest = gs.full_mask & ~bit
        sets = []
        s = rest
        while True:
            if matroid.ranks[s | bit] == matroid.ranks[s]:
                sets.append(s)
            if s == 0:
                break
            s = (s - 1) & rest
        if minimal:
            sets = [s for s in sets if not any(t != s and t & ~s == 0 for t in sets)]
        for s in sets:
            receivers.append((gs.labels[x], gs.labels_of(s)))
    return IndexCodingInstance.from_receivers(gs, receivers)


def _greedy_independent(matroid: Matroid, inside: int, start: int = 0) -> int:
    """Grow start to a maximal independent subset of inside, scanning by index."""
    out = start
    r = matroid.ranks[out]
    for i in range(matroid.gs.n):
        bit = 1 << i
        if inside & bit and not (out & bit) and matroid.ranks[out | bit] > r:
            out |= bit
            r += 1
    return out


def addineq_certificate(matroid: Matroid, row, schema) -> DualCertificate:
    """Dual certificate worth n - r(E) - (a . ranks)/s from a cutting row.

    The row (given by its schema id) must sum to zero over all subsets and
    evaluate negatively on the rank vector; s is the positive part of the
    row's weight, the scale that the underlying construction normalizes by.
    Follows the basis-chase construction: positive-weight sets are reached
    from the empty set through a maximal independent subset, negative-weight
    sets are pushed through a completed basis up to the full set.
    """
    gs = matroid.gs
    a = schema.row_vector(row, gs)
    if a.mass() != 0:
        raise InputError("row weights must sum to zero")
    deficit = ZERO
    for s, coeff in a.items():
        if matroid.ranks[s]:
            deficit += coeff * rat(matroid.ranks[s])
    if not deficit < 0:
        raise InputError(f"row does not cut the rank vector (value {deficit})")

    full = gs.full_mask
    scale = a.get(0)
    for s, coeff in a.items():
        if coeff > 0 and s not in (0, full):
            scale += coeff
    if not scale > 0:
        raise InputError(f"degenerate row normalization {scale}")

    x: Dict[Tuple[int, int], Rational] = {}

    def bump(s: int, t: int, v: Rational) -> None:
        if s != t:
            x[(s, t)] = x.get((s, t), ZERO) + v

    for s, coeff in a.items():
        if s in (0, full) or not coeff:
            continue
        if coeff > 0:
            m = _greedy_independent(matroid, s)
            w = coeff / scale
            bump(0, m, w)
            bump(m, s, w)
        else:
            m = _greedy_independent(matroid, s)
            basis = _greedy_independent(matroid, full, start=m)
            u = s | basis
            w = -coeff / scale
            bump(s, u, w)
            bump(u, full, w)

    y = {row: ONE / scale}
    value = rat(gs.n - matroid.full_rank) - deficit / scale
    return DualCertificate(schema.name, ClosureMode.SINGLE_STEP, x, y, value)
