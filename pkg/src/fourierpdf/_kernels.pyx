# cython: language_level=3
"""Compiled series kernels; same interface as ``_kernels_py``.

Harmonics ``cos(k t), sin(k t)`` come from one ``sincos`` call and the
angle-addition rotation, so a K-term series costs two libm calls per point.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI, cos, fabs, sin

cnp.import_array()

NAME = "cython"


cdef inline double _pdf1(double x, const double[::1] a, double A) noexcept nogil:
    cdef double ax = fabs(x)
    cdef Py_ssize_t K = a.shape[0] - 1
    cdef Py_ssize_t k
    cdef double t, c1, s1, c, s, tmp, acc
    if ax > A:
        return 0.0
    t = ax * (M_PI / A)
    c1 = cos(t)
    s1 = sin(t)
    c = c1
    s = s1
    acc = 0.0
    for k in range(1, K + 1):
        acc += a[k] * c
        tmp = c * c1 - s * s1
        s = s * c1 + c * s1
        c = tmp
    return 0.5 * a[0] + acc


cdef inline double _cdf1(double x, const double[::1] b, double A) noexcept nogil:
    cdef double ax = fabs(x)
    cdef Py_ssize_t K = b.shape[0] - 1
    cdef Py_ssize_t k
    cdef double t, c1, s1, c, s, tmp, acc, upper
    if ax >= A:
        upper = 1.0
    else:
        t = ax * (M_PI / A)
        c1 = cos(t)
        s1 = sin(t)
        c = c1
        s = s1
        acc = 0.0
        for k in range(1, K + 1):
            acc += b[k] * s
            tmp = c * c1 - s * s1
            s = s * c1 + c * s1
            c = tmp
        upper = 0.5 * (ax / A + 1.0) + acc
        if upper < 0.0:
            upper = 0.0
        elif upper > 1.0:
            upper = 1.0
    if x < 0.0:
        return 1.0 - upper
    return upper


def pdf_series(x, a, A):
    cdef cnp.ndarray xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray out = np.empty_like(xs)
    cdef const double[::1] xv = xs.reshape(-1)
    cdef double[::1] ov = out.reshape(-1)
    cdef double AA = A
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _pdf1(xv[i], av, AA)
    return out


def cdf_series(x, b, A):
    cdef cnp.ndarray xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef cnp.ndarray out = np.empty_like(xs)
    cdef const double[::1] xv = xs.reshape(-1)
    cdef double[::1] ov = out.reshape(-1)
    cdef double AA = A
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _cdf1(xv[i], bv, AA)
    return out


def solve_quantile(a, b, double A, double alpha, double tol=1e-12, int max_iter=200):
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double lo = -A, hi = A, x = 0.0
    cdef double best_x = 0.0, best_f = 1e300
    cdef double f, d, cand, step, scale
    cdef int it
    for it in range(1, max_iter + 1):
        f = _cdf1(x, bv, A) - alpha
        if fabs(f) < best_f:
            best_x = x
            best_f = fabs(f)
        if f == 0.0:
            return x, it
        if f < 0.0:
            lo = x
        else:
            hi = x
        d = _pdf1(x, av, A)
        step = 0.5 * (lo + hi)
        if fabs(d) >= 1e-12:
            cand = x - f / d
            if lo < cand < hi:
                step = cand
        scale = fabs(x) if fabs(x) > 1.0 else 1.0
        if fabs(f) <= tol and fabs(step - x) <= 1e-13 * scale:
            return best_x, it
        if hi - lo <= 4e-16 * scale:
            return best_x, it
        x = step
    return best_x, max_iter
