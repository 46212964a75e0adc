# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: convex-roof coordinate search and the triangular-
contraction grid behind the brute-force conversion probability.

Mirrors ``_kernels_py`` operation for operation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, INFINITY

cnp.import_array()

cdef enum:
    LINEAR = 0
    SQRT_COMPLEMENT = 1
    QUADRATIC = 2
    ONE_MINUS_SQRT = 3
    NEG_LOG = 4


cdef inline double _fn(int fn_id, double t) nogil:
    if fn_id == LINEAR:
        return 1.0 - t
    if fn_id == SQRT_COMPLEMENT:
        return sqrt(1.0 - t)
    if fn_id == QUADRATIC:
        return 1.0 - t * t
    if fn_id == ONE_MINUS_SQRT:
        return 1.0 - sqrt(t)
    if t <= 0.0:
        return INFINITY
    return -log(t)


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef double _objective(const double[::1] lam, const double complex[::1] c, int fn_id,
                       const double complex[:, ::1] x, double complex[:, ::1] u) nogil:
    cdef Py_ssize_t m = x.shape[0], r = x.shape[1]
    cdef Py_ssize_t i, j, k, q
    cdef double complex proj, a, uk
    cdef double nrm, p, t, total
    for i in range(m):
        for j in range(r):
            u[i, j] = x[i, j]
    for j in range(r):
        for q in range(j):
            proj = 0
            for i in range(m):
                proj = proj + u[i, q].conjugate() * u[i, j]
            for i in range(m):
                u[i, j] = u[i, j] - proj * u[i, q]
        nrm = 0.0
        for i in range(m):
            nrm += _abs2(u[i, j])
        nrm = sqrt(nrm)
        if nrm < 1e-14:
            return INFINITY
        for i in range(m):
            u[i, j] = u[i, j] / nrm
    total = 0.0
    for i in range(m):
        p = 0.0
        a = 0
        for k in range(r):
            uk = u[i, k]
            p += lam[k] * _abs2(uk)
            a = a + uk * c[k]
        if p <= 1e-300:
            continue
        t = _abs2(a) / p
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        total += p * _fn(fn_id, t)
    return total


def roof_objective(lam, c, int fn_id, x):
    cdef double[::1] lam_v = np.ascontiguousarray(lam, dtype=np.float64)
    cdef double complex[::1] c_v = np.ascontiguousarray(c, dtype=np.complex128)
    cdef double complex[:, ::1] x_v = np.ascontiguousarray(x, dtype=np.complex128)
    cdef double complex[:, ::1] u = np.empty_like(np.asarray(x_v))
    return _objective(lam_v, c_v, fn_id, x_v, u)


def roof_search(lam, c, int fn_id, x0, idx, noise, double step0, double shrink,
                double grow, double tol):
    cdef double[::1] lam_v = np.ascontiguousarray(lam, dtype=np.float64)
    cdef double complex[::1] c_v = np.ascontiguousarray(c, dtype=np.complex128)
    xa = np.array(x0, dtype=np.complex128, order="C")
    cdef double complex[:, ::1] x = xa
    cdef double complex[:, ::1] u = np.empty_like(xa)
    cdef const long long[::1] idx_v = np.ascontiguousarray(idx, dtype=np.int64)
    cdef const double[::1] noise_v = np.ascontiguousarray(noise, dtype=np.float64)
    cdef Py_ssize_t r = x.shape[1], niter = idx_v.shape[0]
    cdef Py_ssize_t it, k, entry, part, i, j, n = 0
    cdef double best, val, delta, step = step0
    cdef double complex old
    with nogil:
        best = _objective(lam_v, c_v, fn_id, x, u)
        for it in range(niter):
            n = it + 1
            k = idx_v[it]
            entry = k // 2
            part = k % 2
            i = entry // r
            j = entry % r
            old = x[i, j]
            delta = step * noise_v[it]
            if part == 0:
                x[i, j] = old + delta
            else:
                x[i, j] = old + 1j * delta
            val = _objective(lam_v, c_v, fn_id, x, u)
            if val < best:
                best = val
                step = step * grow
                if step > step0:
                    step = step0
            else:
                x[i, j] = old
                step = step * shrink
            if step < tol:
                break
    return best, xa, n


cdef inline double _sigma_max_sq(double complex a, double complex b, double complex c) nogil:
    cdef double fro = _abs2(a) + _abs2(b) + _abs2(c)
    cdef double det = _abs2(a * c)
    cdef double disc = fro * fro - 4.0 * det
    if disc < 0.0:
        disc = 0.0
    return 0.5 * (fro + sqrt(disc))


cdef inline double _eval(double complex alpha, double complex beta, double complex mu,
                         double complex nu, double complex z, bint free_b) nogil:
    if free_b:
        return _sigma_max_sq((mu - z * beta) / alpha, z, nu / beta)
    return _sigma_max_sq(z, (mu - z * alpha) / beta, nu / beta)


def maxprob_grid(double complex alpha, double complex beta, double complex mu,
                 double complex nu, int resolution, int rounds, double jx, double jy):
    if _abs2(beta) < 1e-24:
        return 0.0
    cdef bint free_b = _abs2(alpha) >= _abs2(beta)
    cdef double best = _eval(alpha, beta, mu, nu, 0, free_b)
    cdef double complex center = 0, best_z, z
    cdef double half = sqrt(best), re, im, v
    cdef int rnd, i, j
    with nogil:
        for rnd in range(rounds):
            best_z = center
            for i in range(resolution):
                re = center.real + half * (-1.0 + 2.0 * (i + jx) / resolution)
                for j in range(resolution):
                    im = center.imag + half * (-1.0 + 2.0 * (j + jy) / resolution)
                    z = re + 1j * im
                    v = _eval(alpha, beta, mu, nu, z, free_b)
                    if v < best:
                        best = v
                        best_z = z
            center = best_z
            half *= 0.5
    return min(1.0, 1.0 / best)
