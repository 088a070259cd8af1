# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled vertex-set kernels; signatures match ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef signed char label_t


def meet_tables(label_t[::1] base, label_t[:, ::1] labels, int ell):
    cdef Py_ssize_t u = labels.shape[0], n = labels.shape[1]
    cdef Py_ssize_t r, x
    out = np.zeros((u, ell, ell), dtype=np.uint8)
    cdef unsigned char[:, :, ::1] m = out
    with nogil:
        for r in range(u):
            for x in range(n):
                m[r, base[x], labels[r, x]] += 1
    return out


cdef inline bint _below(label_t[::1] a, label_t[:, ::1] labels, Py_ssize_t r,
                        Py_ssize_t n, int ell, int t, int* scratch) noexcept nogil:
    cdef Py_ssize_t x
    cdef int cell
    for x in range(ell * ell):
        scratch[x] = 0
    for x in range(n):
        cell = a[x] * ell + labels[r, x]
        scratch[cell] += 1
        if scratch[cell] >= t:
            return False
    return True


def adjacent_to(label_t[::1] base, label_t[:, ::1] labels, int ell, int t):
    cdef Py_ssize_t u = labels.shape[0], n = labels.shape[1]
    cdef Py_ssize_t r
    out = np.zeros(u, dtype=bool)
    cdef cnp.npy_bool[::1] o = out
    scratch_arr = np.zeros(ell * ell, dtype=np.intc)
    cdef int[::1] scratch = scratch_arr
    with nogil:
        for r in range(u):
            o[r] = _below(base, labels, r, n, ell, t, &scratch[0])
    return out


def dense_adjacency(label_t[:, ::1] labels, int ell, int t):
    cdef Py_ssize_t u = labels.shape[0], n = labels.shape[1]
    cdef Py_ssize_t i, j
    out = np.zeros((u, (u + 7) // 8), dtype=np.uint8)
    cdef unsigned char[:, ::1] bits = out
    scratch_arr = np.zeros(ell * ell, dtype=np.intc)
    cdef int[::1] scratch = scratch_arr
    with nogil:
        for i in range(u):
            for j in range(i + 1, u):
                if _below(labels[i], labels, j, n, ell, t, &scratch[0]):
                    bits[i, j >> 3] |= <unsigned char>(1 << (j & 7))
                    bits[j, i >> 3] |= <unsigned char>(1 << (i & 7))
    return out


def permuted_codes(label_t[:, ::1] labels, cnp.intp_t[::1] perm, int ell):
    cdef Py_ssize_t u = labels.shape[0], n = labels.shape[1]
    cdef Py_ssize_t r, x
    cdef long long code
    cdef int fresh, lab
    out = np.zeros(u, dtype=np.int64)
    cdef long long[::1] codes = out
    moved_arr = np.zeros(n, dtype=np.intc)
    mapping_arr = np.zeros(ell, dtype=np.intc)
    cdef int[::1] moved = moved_arr
    cdef int[::1] mapping = mapping_arr
    with nogil:
        for r in range(u):
            for x in range(n):
                moved[perm[x]] = labels[r, x]
            for x in range(ell):
                mapping[x] = -1
            fresh = 0
            code = 0
            for x in range(n):
                lab = moved[x]
                if mapping[lab] < 0:
                    mapping[lab] = fresh
                    fresh += 1
                code = code * ell + mapping[lab]
            codes[r] = code
    return out
