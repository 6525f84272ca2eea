# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner kernels: trig feature maps and pool score sweeps.

Mirrors mkal._kernels_py; kept loop-fused to avoid the temporaries the
numpy fallback allocates per call.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

NAME = "compiled"


def sincos_features(double[:, ::1] proj):
    cdef Py_ssize_t n = proj.shape[0]
    cdef Py_ssize_t d = proj.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, 2 * d))
    cdef double[:, ::1] o = out
    cdef double scale = 1.0 / sqrt(<double> d)
    cdef Py_ssize_t i, j
    cdef double p
    for i in range(n):
        for j in range(d):
            p = proj[i, j]
            o[i, j] = sin(p) * scale
            o[i, d + j] = cos(p) * scale
    return out


def ekd_scores(double[:, ::1] preds, double[::1] weights):
    cdef Py_ssize_t n = preds.shape[0]
    cdef Py_ssize_t p = preds.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double[::1] o = out
    cdef Py_ssize_t i, k
    cdef double m1, m2, f, s
    for i in range(n):
        m1 = 0.0
        m2 = 0.0
        for k in range(p):
            f = preds[i, k]
            m1 += weights[k] * f
            m2 += weights[k] * f * f
        s = 2.0 * (m2 - m1 * m1)
        o[i] = s if s > 0.0 else 0.0
    return out


def ekl_scores(double[:, ::1] preds, double[::1] weights):
    cdef Py_ssize_t n = preds.shape[0]
    cdef Py_ssize_t p = preds.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double[::1] o = out
    cdef Py_ssize_t i, k
    cdef double m1, m2, f, s
    for i in range(n):
        m1 = 0.0
        m2 = 0.0
        for k in range(p):
            f = preds[i, k]
            m1 += weights[k] * f
            m2 += weights[k] * f * f
        s = m2 - m1 * m1
        o[i] = s if s > 0.0 else 0.0
    return out


def qbc_scores(double[:, ::1] preds):
    cdef Py_ssize_t n = preds.shape[0]
    cdef Py_ssize_t p = preds.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double[::1] o = out
    cdef double inv_p = 1.0 / <double> p
    cdef Py_ssize_t i, k
    cdef double m1, m2, f, s
    for i in range(n):
        m1 = 0.0
        m2 = 0.0
        for k in range(p):
            f = preds[i, k]
            m1 += f
            m2 += f * f
        m1 *= inv_p
        m2 *= inv_p
        s = m2 - m1 * m1
        o[i] = s if s > 0.0 else 0.0
    return out


def emc_scores(double[:, ::1] preds, double[::1] combined):
    cdef Py_ssize_t n = preds.shape[0]
    cdef Py_ssize_t p = preds.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double[::1] o = out
    cdef double inv_p = 1.0 / <double> p
    cdef Py_ssize_t i, k
    cdef double c, diff, s
    for i in range(n):
        c = combined[i]
        s = 0.0
        for k in range(p):
            diff = preds[i, k] - c
            s += diff * diff
        o[i] = s * inv_p
    return out
