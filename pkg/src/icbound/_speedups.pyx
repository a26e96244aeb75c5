# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled inner loops for the simplex core and GF(p) elimination.

Same interface as `icbound._kernels_py`; `icbound.kernels` picks whichever
imported. The simplex entries are exact rationals (Fraction or gmpy2.mpq),
so those loops still run object arithmetic; the win here is loop control
and list indexing. gfp_rref works on machine ints outright.
"""

BACKEND = "compiled"


def btran_dense(list cb, list binv, Py_ssize_t m, zero):
    """y = cb^T * binv for dense rows; rows with a zero weight are skipped."""
    cdef Py_ssize_t i, j
    cdef list y = [zero] * m
    cdef list row
    for i in range(m):
        ci = cb[i]
        if ci:
            row = binv[i]
            for j in range(m):
                v = row[j]
                if v:
                    y[j] = y[j] + ci * v
    return y


def ftran_sparse(list binv, tuple idx, tuple val, Py_ssize_t m, zero):
    """d = binv * a for a sparse column a given as (idx, val) pairs."""
    cdef Py_ssize_t t, i, k, nnz = len(idx)
    cdef list d = [zero] * m
    for t in range(nnz):
        k = idx[t]
        vt = val[t]
        for i in range(m):
            w = (<list>binv[i])[k]
            if w:
                d[i] = d[i] + vt * w
    return d


def pivot_update(list binv, list xb, list d, Py_ssize_t r, Py_ssize_t m):
    """Replace basis row r given the entering column's tableau image d.

    binv row r is scaled by 1/d[r]; every other row i gets d[i] times the new
    row r subtracted. xb is updated the same way, with xb[r] becoming the
    entering variable's value.
    """
    cdef Py_ssize_t i, j
    cdef list row_r = binv[r]
    cdef list row_i
    piv = d[r]
    if piv != 1:
        for j in range(m):
            if row_r[j]:
                row_r[j] = row_r[j] / piv
        xb[r] = xb[r] / piv
    theta = xb[r]
    for i in range(m):
        if i == r:
            continue
        di = d[i]
        if di:
            row_i = binv[i]
            for j in range(m):
                v = row_r[j]
                if v:
                    row_i[j] = row_i[j] - di * v
            if theta:
                xb[i] = xb[i] - di * theta


def price_columns(list y, list cols_idx, list cols_val, list cobj,
                  list excluded, bint bland):
    """Pick an entering column with positive reduced cost, or -1.

    Dantzig mode returns the most positive reduced cost (ties to the lowest
    column id); Bland mode returns the first positive one.
    """
    cdef Py_ssize_t j, t, nnz, ncols = len(cobj)
    cdef Py_ssize_t best_j = -1
    cdef tuple idx, val
    best_rc = None
    for j in range(ncols):
        if excluded[j]:
            continue
        rc = cobj[j]
        idx = cols_idx[j]
        val = cols_val[j]
        nnz = len(idx)
        for t in range(nnz):
            yi = y[<Py_ssize_t>idx[t]]
            if yi:
                rc = rc - val[t] * yi
        if rc > 0:
            if bland:
                return j
            if best_rc is None or rc > best_rc:
                best_rc = rc
                best_j = j
    return best_j


def gfp_rref(list rows, long p):
    """In-place reduced row echelon form over GF(p); returns pivot columns.

    rows is a list of equal-length lists of ints in [0, p). Zero rows sink to
    the bottom and are left in place.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(<list>rows[0]) if nrows else 0
    cdef Py_ssize_t rank = 0, col, i, j, pivot_row
    cdef long inv, f, vr, e
    cdef list rowk, rowi
    cdef list pivots = []
    for col in range(ncols):
        pivot_row = -1
        for i in range(rank, nrows):
            if <long>(<list>rows[i])[col] % p:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        rowk = rows[rank]
        inv = pow(<long>rowk[col], p - 2, p) if p > 2 else 1
        if inv != 1:
            for j in range(col, ncols):
                if rowk[j]:
                    rowk[j] = <long>rowk[j] * inv % p
        for i in range(nrows):
            if i != rank:
                f = <long>(<list>rows[i])[col] % p
                if f:
                    rowi = rows[i]
                    for j in range(col, ncols):
                        vr = rowk[j]
                        if vr:
                            e = (<long>rowi[j] - f * vr) % p
                            rowi[j] = e if e >= 0 else e + p
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return pivots
