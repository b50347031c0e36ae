"""Jitted F_p forward-elimination kernels for very large components.

Pivot rows are stored in a shared sparse pool (cols/vals/row_ptr). A dense
work buffer holds the row being reduced; the sweep walks columns left to
right, so stored rows always have support at or after their pivot column.
"""

from __future__ import annotations

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_GROW = 1
STATUS_OVERFLOW = 2

ABS_LIMIT = 1 << 59


@njit(cache=True)
def _modinv(a, p):
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def insert_rows(in_cols, in_vals, in_ptr, start_row, buf, pivot_row_of_col,
                pool_cols, pool_vals, row_ptr, state, p):
    """Reduce and insert a CSR batch of rows; state = [n_pivots, pool_used,
    status, resume_row]. Returns via state; STATUS_GROW asks the caller to
    enlarge the pool and re-invoke with resume_row."""
    ncols = buf.shape[0]
    n_piv = state[0]
    used = state[1]
    nrows = in_ptr.shape[0] - 1
    cap = pool_cols.shape[0]
    for r in range(start_row, nrows):
        lo, hi = in_ptr[r], in_ptr[r + 1]
        minc = ncols
        for k in range(lo, hi):
            c = in_cols[k]
            buf[c] = (buf[c] + in_vals[k]) % p
            if c < minc:
                minc = c
        c = minc
        newpiv = -1
        while c < ncols:
            v = buf[c]
            if v == 0:
                c += 1
                continue
            pr = pivot_row_of_col[c]
            if pr < 0:
                newpiv = c
                break
            a, b = row_ptr[pr], row_ptr[pr + 1]
            for k in range(a, b):
                cc = pool_cols[k]
                buf[cc] = (buf[cc] - v * pool_vals[k]) % p
            c += 1
        if newpiv < 0:
            continue
        nnz = 0
        for cc in range(newpiv, ncols):
            if buf[cc] != 0:
                nnz += 1
        if used + nnz > cap:
            for cc in range(newpiv, ncols):
                buf[cc] = 0
            state[0] = n_piv
            state[1] = used
            state[2] = STATUS_GROW
            state[3] = r
            return
        inv = _modinv(buf[newpiv], p)
        idx = used
        for cc in range(newpiv, ncols):
            if buf[cc] != 0:
                pool_cols[idx] = cc
                pool_vals[idx] = buf[cc] * inv % p
                buf[cc] = 0
                idx += 1
        row_ptr[n_piv + 1] = idx
        pivot_row_of_col[newpiv] = n_piv
        n_piv += 1
        used = idx
    state[0] = n_piv
    state[1] = used
    state[2] = STATUS_OK
    state[3] = nrows


@njit(cache=True)
def _gcd(a, b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _fracfree_sweep(buf, start_col, pivot_row_of_col, pool_cols, pool_vals,
                    row_ptr):
    """Reduce buf (integer, fraction-free) from start_col on; returns the
    first column with no pivot, or -1 when zero, or -2 on size overflow."""
    ncols = buf.shape[0]
    c = start_col
    while c < ncols:
        v = buf[c]
        if v == 0:
            c += 1
            continue
        pr = pivot_row_of_col[c]
        if pr < 0:
            return c
        a, b = row_ptr[pr], row_ptr[pr + 1]
        lead = pool_vals[a]
        g = _gcd(v, lead)
        mr = lead // g
        mv = v // g
        if mr != 1:
            big = False
            for cc in range(c, ncols):
                if buf[cc] != 0:
                    buf[cc] *= mr
                    if buf[cc] > ABS_LIMIT or buf[cc] < -ABS_LIMIT:
                        big = True
            if big:
                return -2
        for k in range(a, b):
            cc = pool_cols[k]
            w = buf[cc] - mv * pool_vals[k]
            if w > ABS_LIMIT or w < -ABS_LIMIT:
                return -2
            buf[cc] = w
        c += 1
    return -1


@njit(cache=True)
def insert_rows_fracfree(in_cols, in_vals, in_ptr, start_row, buf,
                         pivot_row_of_col, pool_cols, pool_vals, row_ptr,
                         state):
    """Fraction-free twin of insert_rows over the integers; rows are stored
    content-normalized with a positive leading value."""
    ncols = buf.shape[0]
    n_piv = state[0]
    used = state[1]
    nrows = in_ptr.shape[0] - 1
    cap = pool_cols.shape[0]
    for r in range(start_row, nrows):
        lo, hi = in_ptr[r], in_ptr[r + 1]
        minc = ncols
        for k in range(lo, hi):
            c = in_cols[k]
            buf[c] += in_vals[k]
            if c < minc:
                minc = c
        newpiv = _fracfree_sweep(buf, minc, pivot_row_of_col, pool_cols,
                                 pool_vals, row_ptr)
        if newpiv == -1:
            continue
        if newpiv == -2:
            for cc in range(ncols):
                buf[cc] = 0
            state[0] = n_piv
            state[1] = used
            state[2] = STATUS_OVERFLOW
            state[3] = r
            return
        nnz = 0
        g = 0
        for cc in range(newpiv, ncols):
            if buf[cc] != 0:
                nnz += 1
                g = _gcd(g, buf[cc])
        if used + nnz > cap:
            for cc in range(newpiv, ncols):
                buf[cc] = 0
            state[0] = n_piv
            state[1] = used
            state[2] = STATUS_GROW
            state[3] = r
            return
        sign = 1 if buf[newpiv] > 0 else -1
        g *= sign
        idx = used
        for cc in range(newpiv, ncols):
            if buf[cc] != 0:
                pool_cols[idx] = cc
                pool_vals[idx] = buf[cc] // g
                buf[cc] = 0
                idx += 1
        row_ptr[n_piv + 1] = idx
        pivot_row_of_col[newpiv] = n_piv
        n_piv += 1
        used = idx
    state[0] = n_piv
    state[1] = used
    state[2] = STATUS_OK
    state[3] = nrows


@njit(cache=True)
def probe_row_fracfree(cols, vals, buf, pivot_row_of_col, pool_cols,
                       pool_vals, row_ptr):
    """Returns -1 if the row reduces to zero, -2 on overflow, else the
    first stuck column. Leaves buf zeroed."""
    ncols = buf.shape[0]
    minc = ncols
    for k in range(cols.shape[0]):
        c = cols[k]
        buf[c] += vals[k]
        if c < minc:
            minc = c
    out = _fracfree_sweep(buf, minc, pivot_row_of_col, pool_cols, pool_vals,
                          row_ptr)
    if out >= 0 or out == -2:
        for cc in range(ncols):
            buf[cc] = 0
    return out


@njit(cache=True)
def probe_row(cols, vals, buf, pivot_row_of_col, pool_cols, pool_vals,
              row_ptr, p):
    """Reduce one row against the pivots; return the first column with no
    pivot (residue nonzero) or -1 if the row reduces to zero."""
    ncols = buf.shape[0]
    minc = ncols
    for k in range(cols.shape[0]):
        c = cols[k]
        buf[c] = (buf[c] + vals[k]) % p
        if c < minc:
            minc = c
    c = minc
    stuck = -1
    while c < ncols:
        v = buf[c]
        if v == 0:
            c += 1
            continue
        pr = pivot_row_of_col[c]
        if pr < 0:
            stuck = c
            break
        a, b = row_ptr[pr], row_ptr[pr + 1]
        for k in range(a, b):
            cc = pool_cols[k]
            buf[cc] = (buf[cc] - v * pool_vals[k]) % p
        c += 1
    if stuck >= 0:
        for cc in range(stuck, ncols):
            buf[cc] = 0
    return stuck
