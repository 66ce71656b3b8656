# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the numeric hot loops (see reference.py)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def ppoly_eval(double[::1] breaks, double[:, ::1] coefs, double[::1] x):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t nseg = coefs.shape[0]
    cdef Py_ssize_t ncoef = coefs.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, lo, hi, mid, c
    cdef double xi, t, acc
    for i in range(n):
        xi = x[i]
        if xi < breaks[0] or xi >= breaks[nseg]:
            continue
        lo = 0
        hi = nseg
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if breaks[mid] <= xi:
                lo = mid
            else:
                hi = mid
        t = xi - breaks[lo]
        acc = coefs[lo, ncoef - 1]
        for c in range(ncoef - 2, -1, -1):
            acc = acc * t + coefs[lo, c]
        out[i] = acc
    return out_arr


def stride2_correlate(values, double[::1] taps, int axis):
    values = np.ascontiguousarray(np.moveaxis(np.asarray(values, dtype=float), axis, -1))
    cdef Py_ssize_t last = values.shape[values.ndim - 1]
    cdef Py_ssize_t t = taps.shape[0]
    cdef Py_ssize_t count = (last - t) // 2 + 1
    if count <= 0:
        raise ValueError("input too short for the correlation window")
    flat = values.reshape(-1, last)
    cdef double[:, ::1] fv = flat
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out_arr = np.zeros((flat.shape[0], count))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t r, k, i
    cdef double acc
    for r in range(fv.shape[0]):
        for k in range(count):
            acc = 0.0
            for i in range(t):
                acc += taps[i] * fv[r, 2 * k + i]
            out[r, k] = acc
    shaped = out_arr.reshape(values.shape[: values.ndim - 1] + (count,))
    return np.moveaxis(shaped, -1, axis)


def banded_contract(values, int axis, cnp.int64_t[:, ::1] idx, double[:, ::1] weights):
    values = np.ascontiguousarray(np.moveaxis(np.asarray(values, dtype=float), axis, 0))
    cdef Py_ssize_t size = values.shape[0]
    flat = values.reshape(size, -1)
    cdef double[:, ::1] fv = flat
    cdef Py_ssize_t g = idx.shape[0]
    cdef Py_ssize_t w = idx.shape[1]
    cdef Py_ssize_t rest = flat.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out_arr = np.zeros((g, rest))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t gi, t, r
    cdef cnp.int64_t col
    cdef double weight
    for gi in range(g):
        for t in range(w):
            col = idx[gi, t]
            if col < 0 or col >= size:
                continue
            weight = weights[gi, t]
            if weight == 0.0:
                continue
            for r in range(rest):
                out[gi, r] += weight * fv[col, r]
    shaped = out_arr.reshape((g,) + values.shape[1:])
    return np.moveaxis(shaped, 0, axis)
