# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled oracle kernels: circuit concurrence objective and Nelder-Mead.

Same algorithm and operation order as ``_kernels_py``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, fabs
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double cabs(double complex)
    double complex conj(double complex)

MAXIMIZE = 0
MINIMIZE = 1


cdef inline void _euler(double phi, double theta, double lam, double complex* u) noexcept nogil:
    cdef double c = cos(theta / 2), s = sin(theta / 2)
    cdef double complex ep = cexp(-0.5j * (phi + lam))
    cdef double complex em = cexp(-0.5j * (phi - lam))
    u[0] = ep * c
    u[1] = -em * s
    u[2] = conj(em) * s
    u[3] = conj(ep) * c


cdef double _concurrence(const double complex* g, const double complex* state,
                         const double* x, int k) noexcept nogil:
    cdef double complex s[4]
    cdef double complex r[4]
    cdef double complex a[4]
    cdef double complex b[4]
    cdef double complex t00, t01, t10, t11
    cdef int layer, i, o
    cdef double c
    for i in range(4):
        s[i] = state[i]
    for layer in range(k):
        o = 6 * layer
        _euler(x[o], x[o + 1], x[o + 2], a)
        _euler(x[o + 3], x[o + 4], x[o + 5], b)
        t00 = a[0] * s[0] + a[1] * s[2]
        t01 = a[0] * s[1] + a[1] * s[3]
        t10 = a[2] * s[0] + a[3] * s[2]
        t11 = a[2] * s[1] + a[3] * s[3]
        r[0] = t00 * b[0] + t01 * b[1]
        r[1] = t00 * b[2] + t01 * b[3]
        r[2] = t10 * b[0] + t11 * b[1]
        r[3] = t10 * b[2] + t11 * b[3]
        for i in range(4):
            s[i] = g[4 * i] * r[0] + g[4 * i + 1] * r[1] + g[4 * i + 2] * r[2] + g[4 * i + 3] * r[3]
    c = 2.0 * cabs(s[0] * s[3] - s[1] * s[2])
    return c if c < 1.0 else 1.0


cdef inline double _objective(const double complex* g, const double complex* state,
                              const double* x, int k, int mode) noexcept nogil:
    cdef double c = _concurrence(g, state, x, k)
    if mode == 0:
        return 1.0 - c * c
    return c * c


def _prep(gate, state):
    g = np.ascontiguousarray(np.asarray(gate, dtype=np.complex128).reshape(16))
    s = np.ascontiguousarray(np.asarray(state, dtype=np.complex128).reshape(4))
    return g, s


def circuit_concurrence(gate, state, x, int k):
    cdef double complex[::1] g, s
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    g, s = _prep(gate, state)
    if k == 0:
        return _concurrence(&g[0], &s[0], NULL, 0)
    return _concurrence(&g[0], &s[0], &xv[0], k)


def objective(gate, state, x, int k, int mode):
    c = circuit_concurrence(gate, state, x, k)
    return 1.0 - c * c if mode == 0 else c * c


cdef void _sort_simplex(double* sim, double* fs, int n, double* tmp) noexcept nogil:
    # Stable insertion sort on f; simplex rows move with their values.
    cdef int i, j, d
    cdef double fv
    for i in range(1, n + 1):
        fv = fs[i]
        for d in range(n):
            tmp[d] = sim[i * n + d]
        j = i - 1
        while j >= 0 and fs[j] > fv:
            fs[j + 1] = fs[j]
            for d in range(n):
                sim[(j + 1) * n + d] = sim[j * n + d]
            j -= 1
        fs[j + 1] = fv
        for d in range(n):
            sim[(j + 1) * n + d] = tmp[d]


cdef inline double _objective_free(const double complex* g, const double complex* state,
                                   const double* y, double* full, const Py_ssize_t* free,
                                   int nfree, int k, int mode) noexcept nogil:
    cdef int i
    for i in range(nfree):
        full[free[i]] = y[i]
    return _objective(g, state, full, k, mode)


def nelder_mead(gate, state, x0, int k, int mode, int maxiter, double step,
                double fatol, double xatol, base=None, free=None):
    """Adaptive Nelder-Mead on the circuit objective.

    Only the angles listed in ``free`` are searched; the rest keep their
    value in ``base``. By default all ``6 * k`` angles are free.

    Returns ``(x_best, f_best, iterations, converged)`` where ``x_best`` holds
    the free angles only.
    """
    cdef double complex[::1] g, s
    g, s = _prep(gate, state)
    cdef double[::1] x0v = np.ascontiguousarray(x0, dtype=np.float64)
    cdef int n = x0v.shape[0]
    cdef double[::1] full = (np.zeros(max(6 * k, 1)) if base is None
                             else np.array(base, dtype=np.float64).reshape(-1))
    cdef Py_ssize_t[::1] freev = (np.arange(n, dtype=np.intp) if free is None
                                  else np.ascontiguousarray(free, dtype=np.intp))
    cdef double* fp = &full[0]
    cdef const Py_ssize_t* frp = &freev[0]
    cdef double rho = 1.0, chi = 1.0 + 2.0 / n
    cdef double psi = 0.75 - 1.0 / (2.0 * n), sigma = 1.0 - 1.0 / n
    cdef double[:, ::1] sim = np.empty((n + 1, n))
    cdef double[::1] fs = np.empty(n + 1)
    cdef double[::1] xbar = np.empty(n)
    cdef double[::1] xr = np.empty(n)
    cdef double[::1] xe = np.empty(n)
    cdef double[::1] tmp = np.empty(n)
    cdef int i, j, d, nit = 0, converged = 0, best
    cdef double fr, fe, fc, fmax, xmax
    cdef const double complex* gp = &g[0]
    cdef const double complex* sp = &s[0]

    with nogil:
        for i in range(n + 1):
            for d in range(n):
                sim[i, d] = x0v[d]
            if i > 0:
                sim[i, i - 1] += step
            fs[i] = _objective_free(gp, sp, &sim[i, 0], fp, frp, n, k, mode)

        while nit < maxiter:
            _sort_simplex(&sim[0, 0], &fs[0], n, &tmp[0])
            fmax = 0.0
            xmax = 0.0
            for i in range(1, n + 1):
                if fabs(fs[i] - fs[0]) > fmax:
                    fmax = fabs(fs[i] - fs[0])
                for d in range(n):
                    if fabs(sim[i, d] - sim[0, d]) > xmax:
                        xmax = fabs(sim[i, d] - sim[0, d])
            if fmax <= fatol and xmax <= xatol:
                converged = 1
                break
            nit += 1
            for d in range(n):
                xbar[d] = 0.0
                for i in range(n):
                    xbar[d] += sim[i, d]
                xbar[d] /= n
            for d in range(n):
                xr[d] = (1 + rho) * xbar[d] - rho * sim[n, d]
            fr = _objective_free(gp, sp, &xr[0], fp, frp, n, k, mode)
            if fr < fs[0]:
                for d in range(n):
                    xe[d] = (1 + rho * chi) * xbar[d] - rho * chi * sim[n, d]
                fe = _objective_free(gp, sp, &xe[0], fp, frp, n, k, mode)
                if fe < fr:
                    for d in range(n):
                        sim[n, d] = xe[d]
                    fs[n] = fe
                else:
                    for d in range(n):
                        sim[n, d] = xr[d]
                    fs[n] = fr
                continue
            if fr < fs[n - 1]:
                for d in range(n):
                    sim[n, d] = xr[d]
                fs[n] = fr
                continue
            if fr < fs[n]:
                for d in range(n):
                    xe[d] = (1 + psi * rho) * xbar[d] - psi * rho * sim[n, d]
                fc = _objective_free(gp, sp, &xe[0], fp, frp, n, k, mode)
                if fc <= fr:
                    for d in range(n):
                        sim[n, d] = xe[d]
                    fs[n] = fc
                    continue
            else:
                for d in range(n):
                    xe[d] = (1 - psi) * xbar[d] + psi * sim[n, d]
                fc = _objective_free(gp, sp, &xe[0], fp, frp, n, k, mode)
                if fc < fs[n]:
                    for d in range(n):
                        sim[n, d] = xe[d]
                    fs[n] = fc
                    continue
            for j in range(1, n + 1):
                for d in range(n):
                    sim[j, d] = sim[0, d] + sigma * (sim[j, d] - sim[0, d])
                fs[j] = _objective_free(gp, sp, &sim[j, 0], fp, frp, n, k, mode)

    best = 0
    for i in range(1, n + 1):
        if fs[i] < fs[best]:
            best = i
    return np.array(sim[best], copy=True), float(fs[best]), nit, bool(converged)
