"""Dense linear algebra over GF(2^q).

A matrix is a C-contiguous numpy uint64 array paired with the GF2q field its
entries live in; there is no wrapper class. Hot paths (product, inversion,
rank) are numba kernels. They multiply through a 256-entry table built per
left operand: mul(a, b) walks b one byte at a time from the top, folding the
overflow byte back through the field's ov8 table, so a product costs q/8
steps instead of q. Table construction costs ~500 simple ops, amortized over
a matrix row per use.

Gaussian elimination pivots on the first nonzero entry in the column; exact
field arithmetic needs no magnitude-based pivoting.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

from .field import GF2q

U0 = np.uint64(0)
U1 = np.uint64(1)
U8 = np.uint64(8)
U255 = np.uint64(255)


class SingularMatrixError(ValueError):
    """Raised where a caller requires invertibility and the draw failed."""


@njit(cache=True, inline="always")
def _mul(a, b, red, mask, top):
    # shift-and-add; one reduction step per shift keeps everything in q bits
    r = U0
    while b:
        if b & U1:
            r ^= a
        b >>= U1
        hi = a & top
        a = (a << U1) & mask
        if hi:
            a ^= red
    return r


@njit(cache=True)
def _pow(a, e, red, mask, top):
    r = U1
    while e:
        if e & U1:
            r = _mul(r, a, red, mask, top)
        a = _mul(a, a, red, mask, top)
        e >>= U1
    return r


@njit(cache=True, inline="always")
def _inv(a, red, mask, top):
    # a^(2^q - 2); mask is 2^q - 1
    return _pow(a, mask - U1, red, mask, top)


@njit(cache=True, inline="always")
def _fill_tab(a, red, mask, top, tab):
    # tab[i] = i(x) * a for all byte values i, built by doubling
    tab[0] = U0
    tab[1] = a
    for m in range(1, 128):
        v = tab[m]
        hi = v & top
        v = (v << U1) & mask
        if hi:
            v ^= red
        tab[2 * m] = v
        tab[2 * m + 1] = v ^ a
    return tab


@njit(cache=True, inline="always")
def _mul_tab(b, tab, ov8, mask, shtop, nbytes):
    # Horner over the bytes of b, high to low
    r = U0
    for s in range(nbytes - 1, -1, -1):
        r = ((r << U8) & mask) ^ ov8[r >> shtop]
        r ^= tab[(b >> uint64(8 * s)) & U255]
    return r


@njit(cache=True)
def _matmul(a, b, red, mask, top, ov8, shtop, nbytes):
    n, t = a.shape
    t2, m = b.shape
    out = np.zeros((n, m), dtype=np.uint64)
    tab = np.empty(256, dtype=np.uint64)
    for i in range(n):
        for k in range(t):
            aik = a[i, k]
            if aik == U0:
                continue
            _fill_tab(aik, red, mask, top, tab)
            for j in range(m):
                bkj = b[k, j]
                if bkj != U0:
                    out[i, j] ^= _mul_tab(bkj, tab, ov8, mask, shtop, nbytes)
    return out


@njit(cache=True)
def _invert(a, red, mask, top, ov8, shtop, nbytes):
    n = a.shape[0]
    m = a.copy()
    r = np.zeros((n, n), dtype=np.uint64)
    for i in range(n):
        r[i, i] = U1
    tab = np.empty(256, dtype=np.uint64)
    for col in range(n):
        piv = -1
        for row in range(col, n):
            if m[row, col] != U0:
                piv = row
                break
        if piv < 0:
            return r, False
        if piv != col:
            for j in range(n):
                m[col, j], m[piv, j] = m[piv, j], m[col, j]
                r[col, j], r[piv, j] = r[piv, j], r[col, j]
        d = _inv(m[col, col], red, mask, top)
        if d != U1:
            _fill_tab(d, red, mask, top, tab)
            for j in range(col, n):
                m[col, j] = _mul_tab(m[col, j], tab, ov8, mask, shtop, nbytes)
            for j in range(n):
                r[col, j] = _mul_tab(r[col, j], tab, ov8, mask, shtop, nbytes)
        for row in range(n):
            f = m[row, col]
            if row == col or f == U0:
                continue
            _fill_tab(f, red, mask, top, tab)
            for j in range(col, n):
                v = m[col, j]
                if v != U0:
                    m[row, j] ^= _mul_tab(v, tab, ov8, mask, shtop, nbytes)
            for j in range(n):
                v = r[col, j]
                if v != U0:
                    r[row, j] ^= _mul_tab(v, tab, ov8, mask, shtop, nbytes)
    return r, True


@njit(cache=True)
def _rank(a, red, mask, top, ov8, shtop, nbytes):
    rows, cols = a.shape
    m = a.copy()
    tab = np.empty(256, dtype=np.uint64)
    rk = 0
    for col in range(cols):
        if rk == rows:
            break
        piv = -1
        for row in range(rk, rows):
            if m[row, col] != U0:
                piv = row
                break
        if piv < 0:
            continue
        if piv != rk:
            for j in range(col, cols):
                m[rk, j], m[piv, j] = m[piv, j], m[rk, j]
        d = _inv(m[rk, col], red, mask, top)
        if d != U1:
            _fill_tab(d, red, mask, top, tab)
            for j in range(col, cols):
                m[rk, j] = _mul_tab(m[rk, j], tab, ov8, mask, shtop, nbytes)
        for row in range(rk + 1, rows):
            f = m[row, col]
            if f == U0:
                continue
            _fill_tab(f, red, mask, top, tab)
            for j in range(col, cols):
                v = m[rk, j]
                if v != U0:
                    m[row, j] ^= _mul_tab(v, tab, ov8, mask, shtop, nbytes)
        rk += 1
    return rk


def _as_matrix(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.uint64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    return a


def _consts(field: GF2q):
    return field.red, field.mask, field.top, field.ov8, np.uint64(field.q - 8), field.nbytes


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.uint64)
    np.fill_diagonal(out, 1)
    return out


def matmul(a, b, field: GF2q) -> np.ndarray:
    a = _as_matrix(a)
    b = _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    return _matmul(a, b, *_consts(field))


def invert(a, field: GF2q) -> np.ndarray | None:
    """Inverse by Gauss-Jordan elimination, or None if singular."""
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError("only square matrices invert")
    inv, ok = _invert(a, *_consts(field))
    return inv if ok else None


def rank(a, field: GF2q) -> int:
    a = _as_matrix(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return int(_rank(a, *_consts(field)))


def submatrix(a, rows, cols) -> np.ndarray:
    """Rows and cols picked by index lists, in the given order."""
    a = _as_matrix(a)
    return a[np.ix_(np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp))]


def scalar_matmul_reference(a, b, field: GF2q) -> np.ndarray:
    """Schoolbook product through the pure-Python field ops; test oracle."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    n, t = a.shape
    _, m = b.shape
    out = np.zeros((n, m), dtype=np.uint64)
    for i in range(n):
        for j in range(m):
            acc = 0
            for k in range(t):
                acc ^= field.mul(int(a[i, k]), int(b[k, j]))
            out[i, j] = acc
    return out
