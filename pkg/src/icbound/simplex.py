"""Exact revised simplex over the rationals.

Solves max c.v subject to M v = b, v >= 0, with b >= 0, keeping an explicit
basis inverse. Columns are sparse (index, value) pairs; the basis inverse and
multipliers are dense rows of rationals. No floating point anywhere.

Degeneracy is the norm in the LPs this package builds (the right-hand side
has a single nonzero), so the leaving row is picked by the lexicographic
ratio test, which cannot cycle, and the entering column by most-positive
reduced cost over a rotating chunk of columns (partial pricing). Artificial
columns are appended internally to provide the starting basis; they may
never enter, and any artificial row touched by an entering column is pivoted
out at ratio zero, so artificials stay at value zero forever and the optimum
reached belongs to the genuine problem. Callers can hand over a list of
crash pivots to install a known feasible basis cheaply before the loop.

The result is audited before being returned: exact primal feasibility,
nonpositive reduced costs, and agreement of primal and dual objectives.
A failed audit is a bug in the solver, not in the model, and raises
VerificationError.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from icbound import kernels
from icbound.errors import InputError, VerificationError
from icbound.rational import ONE, ZERO, rat

__all__ = ["StandardFormLP", "SimplexResult", "solve_standard_form"]


@dataclass
class StandardFormLP:
    """max cobj . v  s.t.  sum_j v_j col_j = rhs, v >= 0, rhs >= 0."""

    nrows: int
    cols_idx: List[Tuple[int, ...]]
    cols_val: List[tuple]
    cobj: list
    rhs: list

    def __post_init__(self):
        if len(self.cols_val) != len(self.cols_idx) or len(self.cobj) != len(self.cols_idx):
            raise InputError("column arrays disagree in length")
        if len(self.rhs) != self.nrows:
            raise InputError("rhs length does not match row count")
        if any(v < 0 for v in self.rhs):
            raise InputError("standard form here requires rhs >= 0")


@dataclass
class SimplexResult:
    status: str  # "optimal" or "unbounded"
    objective: Optional[object]
    x: Optional[list]  # per structural column
    y: Optional[list]  # per row, the simplex multipliers at the final basis
    iterations: int
    entering: int = -1  # column proving unboundedness, when status says so


def _lex_leaving(binv, xb, d, rows, m):
    """Lexicographic minimum of (xb_i, binv row i) / d_i over candidate rows."""
    best = -1
    for i in rows:
        if best < 0:
            best = i
            continue
        di, db = d[i], d[best]
        a = xb[i] * db
        b = xb[best] * di
        if a == b:
            row_i, row_b = binv[i], binv[best]
            for j in range(m):
                a = row_i[j] * db
                b = row_b[j] * di
                if a != b:
                    break
        if a < b:
            best = i
    return best


def solve_standard_form(
    lp: StandardFormLP,
    crash: Sequence[Tuple[int, int]] = (),
    max_iter: int = 200_000,
) -> SimplexResult:
    """Revised simplex on an exact-rational standard-form LP.

    crash is a list of (column, row) pivots applied before the main loop; it
    must leave a feasible basis in which every row with nonzero rhs holds a
    structural column, since there is no phase-one here. Rows whose rhs is
    zero may keep their artificial columns; those are pivoted out at ratio
    zero the moment an entering column touches them.
    """
    m = lp.nrows
    nstruct = len(lp.cols_idx)
    zero = ZERO
    one = ONE

    # Artificial identity columns occupy ids nstruct .. nstruct+m-1.
    binv = [[zero] * m for _ in range(m)]
    for i in range(m):
        binv[i][i] = one
    xb = [rat(v) for v in lp.rhs]
    basis = [nstruct + i for i in range(m)]
    basic_row = {nstruct + i: i for i in range(m)}  # col id -> row

    def is_artificial(col: int) -> bool:
        return col >= nstruct

    def ftran(col: int):
        return kernels.ftran_sparse(binv, lp.cols_idx[col], lp.cols_val[col], m, zero)

    def do_pivot(col: int, row: int, d) -> None:
        out = basis[row]
        kernels.pivot_update(binv, xb, d, row, m)
        basis[row] = col
        del basic_row[out]
        basic_row[col] = row

    for col, row in crash:
        if not (0 <= col < nstruct):
            raise InputError("crash pivot on a non-structural column")
        d = ftran(col)
        if not d[row]:
            raise InputError("crash pivot hits a zero tableau entry")
        if not is_artificial(basis[row]):
            raise InputError("crash pivot would evict a structural column")
        do_pivot(col, row, d)
    if any(v < 0 for v in xb):
        raise InputError("crash basis is not feasible")
    for i in range(m):
        if xb[i] and is_artificial(basis[i]):
            raise InputError(
                f"row {i} has nonzero rhs but no crash pivot covers it"
            )

    excluded = [False] * nstruct
    for c in basis:
        if c < nstruct:
            excluded[c] = True

    chunk = max(64, nstruct // 16)
    cursor = 0
    iterations = 0

    while True:
        cb = [lp.cobj[c] if c < nstruct else zero for c in basis]
        y = kernels.btran_dense(cb, binv, m, zero)

        # Partial pricing: scan chunks from the cursor until one yields a
        # positive reduced cost; a full wrap with nothing positive is optimality.
        enter = -1
        scanned = 0
        while scanned < nstruct:
            lo = cursor
            hi = min(nstruct, lo + chunk)
            j = kernels.price_columns(
                y,
                lp.cols_idx[lo:hi],
                lp.cols_val[lo:hi],
                lp.cobj[lo:hi],
                excluded[lo:hi],
                False,
            )
            scanned += hi - lo
            cursor = hi % nstruct
            if j >= 0:
                enter = lo + j
                break
        if enter < 0:
            break

        d = ftran(enter)

        # Artificial rows all carry zero values (checked after the crash and
        # preserved by every pivot), so any the column touches can leave
        # first, degenerately, keeping the basis feasible.
        forced = -1
        for i in range(m):
            if d[i] and is_artificial(basis[i]):
                forced = i
                break
        if forced >= 0:
            leave = forced
        else:
            candidates = [i for i in range(m) if d[i] > 0]
            if not candidates:
                return SimplexResult("unbounded", None, None, None, iterations, enter)
            leave = _lex_leaving(binv, xb, d, candidates, m)

        out = basis[leave]
        do_pivot(enter, leave, d)
        excluded[enter] = True
        if out < nstruct:
            excluded[out] = False
        iterations += 1
        if iterations > max_iter:
            raise VerificationError(
                f"simplex exceeded {max_iter} iterations; lexicographic rule should "
                "terminate long before this, so something is inconsistent"
            )

    x = [zero] * nstruct
    for c, i in basic_row.items():
        if c < nstruct:
            x[c] = xb[i]
        elif xb[i]:
            raise VerificationError("artificial column ended basic at a nonzero value")
    _audit(lp, x, y, m, nstruct, zero)
    objective = sum((lp.cobj[j] * x[j] for j in range(nstruct) if x[j]), zero)
    return SimplexResult("optimal", objective, x, y, iterations)


def _audit(lp: StandardFormLP, x, y, m, nstruct, zero) -> None:
    lhs = [zero] * m
    for j in range(nstruct):
        xj = x[j]
        if not xj:
            continue
        if xj < 0:
            raise VerificationError("negative primal value in audit")
        idx = lp.cols_idx[j]
        val = lp.cols_val[j]
        for t in range(len(idx)):
            lhs[idx[t]] += val[t] * xj
    for i in range(m):
        if lhs[i] != lp.rhs[i]:
            raise VerificationError(f"audit: row {i} violated, {lhs[i]} != {lp.rhs[i]}")
    for j in range(nstruct):
        rc = lp.cobj[j]
        idx = lp.cols_idx[j]
        val = lp.cols_val[j]
        for t in range(len(idx)):
            yi = y[idx[t]]
            if yi:
                rc -= val[t] * yi
        if rc > 0:
            raise VerificationError(f"audit: column {j} has positive reduced cost {rc}")
    primal = sum((lp.cobj[j] * x[j] for j in range(nstruct) if x[j]), zero)
    dual = sum((y[i] * lp.rhs[i] for i in range(m) if lp.rhs[i]), zero)
    if primal != dual:
        raise VerificationError(f"audit: objective mismatch {primal} != {dual}")
