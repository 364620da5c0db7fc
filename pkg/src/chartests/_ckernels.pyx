# cython: language_level=3
"""Compiled subset-statistic kernels; interface mirrors ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

NAME = "cython"


cdef inline Py_ssize_t _bisect_right(const double[::1] q, double v) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = q.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if v < q[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef inline Py_ssize_t _bisect_left(const double[::1] q, double v) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = q.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if q[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline double _shepp(double x, double y) noexcept nogil:
    cdef double r = sqrt(x * x + y * y)
    return 2.0 * x * y / r if r > 0.0 else 0.0


cdef inline void _add(const double[::1] q, double v, long long w,
                      long long[::1] hlt, long long[::1] hle) noexcept nogil:
    # q is strictly increasing, so the right index is the left one plus a hit
    cdef Py_ssize_t lo = _bisect_left(q, v)
    hle[lo] += w
    if lo < q.shape[0] and q[lo] == v:
        hlt[lo + 1] += w
    else:
        hlt[lo] += w


cdef inline Py_ssize_t _walk(const double[::1] q, Py_ssize_t pos, double v,
                             long long[::1] hlt, long long[::1] hle) noexcept nogil:
    # forward scan for nondecreasing streams of v; returns the left index
    cdef Py_ssize_t k = q.shape[0]
    while pos < k and q[pos] < v:
        pos += 1
    hle[pos] += 1
    if pos < k and q[pos] == v:
        hlt[pos + 1] += 1
    else:
        hlt[pos] += 1
    return pos


cdef tuple _finish(long long[::1] hlt, long long[::1] hle, Py_ssize_t k):
    lt = np.cumsum(np.asarray(hlt)[:k])
    le = np.cumsum(np.asarray(hle)[:k])
    return lt.astype(np.int64), le.astype(np.int64)


def pair_values(const double[::1] x, int code, double a=0.0, double b=0.0):
    cdef Py_ssize_t n = x.shape[0], i, j, m = 0
    cdef Py_ssize_t npairs = n * (n - 1) // 2
    cdef Py_ssize_t size = 2 * npairs if code == 2 else npairs
    if code < 0 or code > 4:
        raise ValueError(f"unknown pair code {code}")
    out = np.empty(size, dtype=np.float64)
    cdef double[::1] v = out
    cdef cnp.ndarray wout = None
    cdef long long[::1] w
    if code == 1:
        wout = np.empty(npairs, dtype=np.int64)
        w = wout
    cdef double xi, xj
    with nogil:
        for i in range(n - 1):
            xi = x[i]
            for j in range(i + 1, n):
                xj = x[j]
                if code == 0:
                    v[m] = xj - xi
                elif code == 1:
                    v[m] = xj - xi
                    w[m] = n - 1 - j
                elif code == 2:
                    v[m] = a * xi + b * xj
                    v[npairs + m] = a * xj + b * xi
                elif code == 3:
                    v[m] = _shepp(xi, xj)
                else:
                    v[m] = xi / xj
                m += 1
    return out, wout


def triple_values(const double[::1] x, int code):
    if code != 0:
        raise ValueError(f"unknown triple code {code}")
    cdef Py_ssize_t n = x.shape[0], i, j, k, m = 0
    cdef Py_ssize_t size = 6 * (n * (n - 1) * (n - 2) // 6) if n >= 3 else 0
    out = np.empty(size, dtype=np.float64)
    cdef double[::1] v = out
    cdef double p, q, r
    with nogil:
        for i in range(n - 2):
            p = x[i]
            for j in range(i + 1, n - 1):
                q = x[j]
                for k in range(j + 1, n):
                    r = x[k]
                    v[m] = p + q / 2.0 + r / 3.0
                    v[m + 1] = p + r / 2.0 + q / 3.0
                    v[m + 2] = q + p / 2.0 + r / 3.0
                    v[m + 3] = q + r / 2.0 + p / 3.0
                    v[m + 4] = r + p / 2.0 + q / 3.0
                    v[m + 5] = r + q / 2.0 + p / 3.0
                    m += 6
    return out


def weighted_counts(v, w, q):
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef const double[::1] qq = np.ascontiguousarray(q, dtype=np.float64)
    cdef Py_ssize_t k = qq.shape[0], i, size = vv.shape[0]
    hlt_a = np.zeros(k + 1, dtype=np.int64)
    hle_a = np.zeros(k + 1, dtype=np.int64)
    cdef long long[::1] hlt = hlt_a
    cdef long long[::1] hle = hle_a
    cdef const long long[::1] ww
    if w is None:
        with nogil:
            for i in range(size):
                _add(qq, vv[i], 1, hlt, hle)
    else:
        ww = np.ascontiguousarray(w, dtype=np.int64)
        with nogil:
            for i in range(size):
                _add(qq, vv[i], ww[i], hlt, hle)
    return _finish(hlt, hle, k)


def pair_counts(const double[::1] x, int code, double a, double b, const double[::1] q):
    if code < 0 or code > 4:
        raise ValueError(f"unknown pair code {code}")
    cdef Py_ssize_t n = x.shape[0], k = q.shape[0], i, j
    hlt_a = np.zeros(k + 1, dtype=np.int64)
    hle_a = np.zeros(k + 1, dtype=np.int64)
    cdef long long[::1] hlt = hlt_a
    cdef long long[::1] hle = hle_a
    cdef double xi, xj
    with nogil:
        for i in range(n - 1):
            xi = x[i]
            for j in range(i + 1, n):
                xj = x[j]
                if code == 0:
                    _add(q, xj - xi, 1, hlt, hle)
                elif code == 1:
                    _add(q, xj - xi, n - 1 - j, hlt, hle)
                elif code == 2:
                    _add(q, a * xi + b * xj, 1, hlt, hle)
                    _add(q, a * xj + b * xi, 1, hlt, hle)
                elif code == 3:
                    _add(q, _shepp(xi, xj), 1, hlt, hle)
                else:
                    _add(q, xi / xj, 1, hlt, hle)
    return _finish(hlt, hle, k)


def triple_counts(const double[::1] x, int code, const double[::1] q):
    if code != 0:
        raise ValueError(f"unknown triple code {code}")
    cdef Py_ssize_t n = x.shape[0], k = q.shape[0], i, j, l
    hlt_a = np.zeros(k + 1, dtype=np.int64)
    hle_a = np.zeros(k + 1, dtype=np.int64)
    cdef long long[::1] hlt = hlt_a
    cdef long long[::1] hle = hle_a
    cdef double p, s, r
    cdef Py_ssize_t c0, c1, c2, c3, c4, c5
    with nogil:
        for i in range(n - 2):
            p = x[i]
            for j in range(i + 1, n - 1):
                s = x[j]
                # each ordering is nondecreasing in x[l] (rounding is monotone)
                c0 = c1 = c2 = c3 = c4 = c5 = 0
                for l in range(j + 1, n):
                    r = x[l]
                    c0 = _walk(q, c0, p + s / 2.0 + r / 3.0, hlt, hle)
                    c1 = _walk(q, c1, p + r / 2.0 + s / 3.0, hlt, hle)
                    c2 = _walk(q, c2, s + p / 2.0 + r / 3.0, hlt, hle)
                    c3 = _walk(q, c3, s + r / 2.0 + p / 3.0, hlt, hle)
                    c4 = _walk(q, c4, r + p / 2.0 + s / 3.0, hlt, hle)
                    c5 = _walk(q, c5, r + s / 2.0 + p / 3.0, hlt, hle)
    return _finish(hlt, hle, k)
