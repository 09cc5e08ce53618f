# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p linear-algebra kernels (same contract as ``_pykernels``)."""

import numpy as np
from libc.stdint cimport int64_t


cdef inline int64_t _inv(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int _rref(int64_t[:, ::1] m, int64_t p, int64_t[::1] pivots) noexcept nogil:
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef int64_t inv, f, tmp
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[k, j]
                m[k, j] = tmp
        inv = _inv(m[r, c], p)
        for j in range(c, cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(c, cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
                    if m[i, j] < 0:
                        m[i, j] += p
        pivots[r] = c
        r += 1
    return <int>r


def rref_mod_p(a, p):
    cdef int64_t pp = p
    m = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % pp)
    if m.ndim != 2:
        raise ValueError("expected a 2-D array")
    piv = np.zeros(min(m.shape[0], m.shape[1]) + 1, dtype=np.int64)
    cdef int r = 0
    if m.size:
        r = _rref(m, pp, piv)
    return m, tuple(int(x) for x in piv[:r])


def rank_mod_p(a, p):
    cdef int64_t pp = p
    m = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % pp)
    if m.size == 0:
        return 0
    piv = np.zeros(min(m.shape[0], m.shape[1]) + 1, dtype=np.int64)
    return _rref(m, pp, piv)


def nullspace_mod_p(a, p):
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref_mod_p(a, p)
    pset = set(pivots)
    free = [c for c in range(cols) if c not in pset]
    out = np.zeros((len(free), cols), dtype=np.int64)
    cdef Py_ssize_t k, i
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-r[i, f]) % p
    return out


def inverse_mod_p(a, p):
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix is not square")
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref_mod_p(aug, p)
    if len(pivots) < n or pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return np.ascontiguousarray(r[:, n:])
