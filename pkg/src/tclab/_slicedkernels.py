"""Numba kernels for bit-sliced elimination over GF(2^d), d <= 16.

A matrix lives in a uint64 array of shape (rows, d, words): plane k holds
bit k of every entry, packed 64 columns per word.  Scaling a row by a
field constant f becomes, per 4-bit nibble of f, one table lookup per
word; the tables are rebuilt per pivot from generator-multiple chains.

All kernels are serial and release the GIL.
"""
from __future__ import annotations

import numpy as np
from numba import njit

_ONE = np.uint64(1)


@njit(cache=True, nogil=True, inline="always")
def _get_entry(planes, r, c, d):
    wc = c >> 6
    sc = np.uint64(c & 63)
    v = 0
    for k in range(d):
        v |= np.int64((planes[r, k, wc] >> sc) & _ONE) << k
    return v


@njit(cache=True, nogil=True)
def ref_kernel(planes, elim_cols, d, logt, expt, modlow, pivcols, full):
    """In-place row echelon form; returns the rank.

    pivcols must have length >= min(rows, elim_cols); entry i receives the
    pivot column of echelon row i.  full=True produces reduced form.
    """
    R = planes.shape[0]
    W = planes.shape[2]
    order = (1 << d) - 1
    ngroups = (d + 3) // 4
    bases = np.empty((d, d, W), np.uint64)
    table = np.zeros((4, 16, d, W), np.uint64)
    rank = 0
    for c in range(elim_cols):
        wc = c >> 6
        sc = np.uint64(c & 63)
        piv = -1
        pval = 0
        for r in range(rank, R):
            v = _get_entry(planes, r, c, d)
            if v != 0:
                piv = r
                pval = v
                break
        if piv < 0:
            continue
        pivcols[rank] = c
        if piv != rank:
            for k in range(d):
                for w in range(wc, W):
                    tmp = planes[rank, k, w]
                    planes[rank, k, w] = planes[piv, k, w]
                    planes[piv, k, w] = tmp
        # chain of generator multiples of the pivot row
        for k in range(d):
            for w in range(wc, W):
                bases[0, k, w] = planes[rank, k, w]
        for j in range(1, d):
            for w in range(wc, W):
                bases[j, 0, w] = bases[j - 1, d - 1, w]
            for k in range(1, d):
                if (modlow >> k) & 1:
                    for w in range(wc, W):
                        bases[j, k, w] = bases[j - 1, k - 1, w] ^ bases[j - 1, d - 1, w]
                else:
                    for w in range(wc, W):
                        bases[j, k, w] = bases[j - 1, k - 1, w]
        # nibble lookup tables over the chain
        for g in range(ngroups):
            for k in range(d):
                for w in range(wc, W):
                    table[g, 0, k, w] = 0
            for v in range(1, 16):
                low = v & (-v)
                idx = 0
                t = low >> 1
                while t:
                    t >>= 1
                    idx += 1
                col = 4 * g + idx
                prev = v ^ low
                if col >= d:
                    for k in range(d):
                        for w in range(wc, W):
                            table[g, v, k, w] = table[g, prev, k, w]
                else:
                    for k in range(d):
                        for w in range(wc, W):
                            table[g, v, k, w] = table[g, prev, k, w] ^ bases[col, k, w]
        lpinv = order - logt[pval]
        rstart = 0 if full else rank + 1
        for r in range(rstart, R):
            if r == rank:
                continue
            v = _get_entry(planes, r, c, d)
            if v == 0:
                continue
            f = expt[logt[v] + lpinv]
            f0 = f & 15
            f1 = (f >> 4) & 15
            f2 = (f >> 8) & 15
            f3 = (f >> 12) & 15
            if ngroups == 1:
                for k in range(d):
                    for w in range(wc, W):
                        planes[r, k, w] ^= table[0, f0, k, w]
            elif ngroups == 2:
                for k in range(d):
                    for w in range(wc, W):
                        planes[r, k, w] ^= table[0, f0, k, w] ^ table[1, f1, k, w]
            elif ngroups == 3:
                for k in range(d):
                    for w in range(wc, W):
                        planes[r, k, w] ^= (
                            table[0, f0, k, w] ^ table[1, f1, k, w] ^ table[2, f2, k, w]
                        )
            else:
                for k in range(d):
                    for w in range(wc, W):
                        planes[r, k, w] ^= (
                            table[0, f0, k, w]
                            ^ table[1, f1, k, w]
                            ^ table[2, f2, k, w]
                            ^ table[3, f3, k, w]
                        )
        rank += 1
        if rank == R:
            break
    return rank


@njit(cache=True, nogil=True)
def backsub_kernel(planes, pivcols, rank, d, logt, expt, rhs_col, x):
    """Particular solution from an echelon form with rhs in column rhs_col.

    Free columns stay zero in x.  Assumes the system is consistent.
    """
    order = (1 << d) - 1
    for ii in range(rank - 1, -1, -1):
        c = pivcols[ii]
        s = _get_entry(planes, ii, rhs_col, d)
        for jj in range(ii + 1, rank):
            cj = pivcols[jj]
            xv = x[cj]
            if xv != 0:
                m = _get_entry(planes, ii, cj, d)
                if m != 0:
                    s ^= expt[logt[m] + logt[xv]]
        if s != 0:
            p = _get_entry(planes, ii, c, d)
            x[c] = expt[logt[s] + (order - logt[p])]


@njit(cache=True, nogil=True)
def rank2_kernel(rows, ncols):
    """Plain GF(2) elimination on packed rows; returns rank."""
    R = rows.shape[0]
    W = rows.shape[1]
    rank = 0
    for c in range(ncols):
        wc = c >> 6
        sc = np.uint64(c & 63)
        piv = -1
        for r in range(rank, R):
            if (rows[r, wc] >> sc) & _ONE:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for w in range(wc, W):
                tmp = rows[rank, w]
                rows[rank, w] = rows[piv, w]
                rows[piv, w] = tmp
        for r in range(rank + 1, R):
            if (rows[r, wc] >> sc) & _ONE:
                for w in range(wc, W):
                    rows[r, w] ^= rows[rank, w]
        rank += 1
        if rank == R:
            break
    return rank
