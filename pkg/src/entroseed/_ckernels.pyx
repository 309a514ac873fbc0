# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_pykernels``. Same contracts."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, INFINITY

cnp.import_array()


def greedy_scan(points, double th, Py_ssize_t k, chosen):
    cdef double[:, ::1] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    cdef cnp.int64_t[::1] acc = np.empty(max(k, len(chosen)), dtype=np.int64)
    cdef Py_ssize_t n_acc = 0, i, a, j, c
    cdef double s, diff
    cdef bint ok
    for c in chosen:
        acc[n_acc] = c
        n_acc += 1
    with nogil:
        i = 0
        while i < n and n_acc < k:
            ok = True
            for a in range(n_acc):
                c = acc[a]
                s = 0.0
                for j in range(d):
                    diff = pts[i, j] - pts[c, j]
                    s += diff * diff
                if not (sqrt(s) > th):
                    ok = False
                    break
            if ok:
                acc[n_acc] = i
                n_acc += 1
            i += 1
    return np.asarray(acc[:n_acc]).copy()


def assign(points, centroids):
    cdef double[:, ::1] x = np.ascontiguousarray(points, dtype=np.float64)
    cdef double[:, ::1] cen = np.ascontiguousarray(centroids, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], k = cen.shape[0], d = x.shape[1]
    labels_arr = np.empty(n, dtype=np.intp)
    mind_arr = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t[::1] labels = labels_arr
    cdef double[::1] mind = mind_arr
    cdef Py_ssize_t i, c, j, best_c
    cdef double s, best, diff
    with nogil:
        for i in range(n):
            best = INFINITY
            best_c = 0
            for c in range(k):
                s = 0.0
                for j in range(d):
                    diff = x[i, j] - cen[c, j]
                    s = s + diff * diff
                if s < best:
                    best = s
                    best_c = c
            labels[i] = best_c
            mind[i] = best
    return labels_arr, mind_arr
