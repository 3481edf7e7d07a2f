# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Sturm-sequence bisection for symmetric tridiagonal matrices."""
import numpy as np

from libc.math cimport fabs, fmax

cdef double SAFE_MIN = 2.2250738585072014e-308
cdef double EPS = 2.220446049250313e-16


cdef Py_ssize_t _count(const double[::1] d, const double[::1] e2, double x, double pivmin) noexcept nogil:
    cdef Py_ssize_t i, n = d.shape[0], c = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        c += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            c += 1
    return c


def sturm_count(d, e, double x):
    """Number of eigenvalues strictly below ``x``."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] e2 = np.ascontiguousarray(np.square(e), dtype=np.float64)
    cdef double pivmin = SAFE_MIN * fmax(1.0, np.max(e2) if e2.shape[0] else 1.0)
    return _count(dv, e2, x, pivmin)


def tridiag_lowest(d, e, Py_ssize_t k, double abstol=0.0):
    """The ``k`` lowest eigenvalues, ascending, by bisection on Sturm counts."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0]
    if k < 0 or k > n:
        raise ValueError(f"k={k} out of range for a {n}x{n} matrix")
    if ev.shape[0] != n - 1:
        raise ValueError("off-diagonal must have length len(d) - 1")
    cdef double[::1] e2 = np.ascontiguousarray(np.square(ev))
    cdef Py_ssize_t i, j
    cdef double gl = dv[0], gu = dv[0], r, lo, hi, mid, tol, pivmin, start
    for i in range(n):
        r = 0.0
        if i > 0:
            r += fabs(ev[i - 1])
        if i < n - 1:
            r += fabs(ev[i])
        if dv[i] - r < gl:
            gl = dv[i] - r
        if dv[i] + r > gu:
            gu = dv[i] + r
    tol = fmax(abstol, 2.0 * EPS * fmax(fabs(gl), fabs(gu)))
    pivmin = SAFE_MIN
    for i in range(n - 1):
        pivmin = fmax(pivmin, SAFE_MIN * e2[i])
    gl -= tol
    gu += tol
    out = np.empty(k, dtype=np.float64)
    cdef double[::1] ov = out
    start = gl
    with nogil:
        for j in range(k):
            lo = start
            hi = gu
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                if _count(dv, e2, mid, pivmin) > j:
                    hi = mid
                else:
                    lo = mid
            ov[j] = 0.5 * (lo + hi)
            start = lo
    return out
