"""Pure-Python oracle kernels; mirror of ``_kernels.pyx`` used when the
compiled extension is unavailable."""
import cmath
import math

import numpy as np

MAXIMIZE = 0
MINIMIZE = 1


def _euler(phi, theta, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    ep = cmath.exp(-0.5j * (phi + lam))
    em = cmath.exp(-0.5j * (phi - lam))
    return (ep * c, -em * s, em.conjugate() * s, ep.conjugate() * c)


def propagate(gate, state, x, k):
    """Push ``state`` through ``k`` (local layer, gate) pairs; return 4 amplitudes.

    ``x`` holds 6 ZYZ angles per layer (qubit A then qubit B).
    """
    g = [[complex(gate[i, j]) for j in range(4)] for i in range(4)]
    s = [complex(v) for v in state]
    for layer in range(k):
        o = 6 * layer
        a = _euler(x[o], x[o + 1], x[o + 2])
        b = _euler(x[o + 3], x[o + 4], x[o + 5])
        # (a (x) b) s with s viewed as the 2x2 matrix M -> a M b^T
        m00, m01, m10, m11 = s
        t00 = a[0] * m00 + a[1] * m10
        t01 = a[0] * m01 + a[1] * m11
        t10 = a[2] * m00 + a[3] * m10
        t11 = a[2] * m01 + a[3] * m11
        r = (
            t00 * b[0] + t01 * b[1],
            t00 * b[2] + t01 * b[3],
            t10 * b[0] + t11 * b[1],
            t10 * b[2] + t11 * b[3],
        )
        s = [gi[0] * r[0] + gi[1] * r[1] + gi[2] * r[2] + gi[3] * r[3] for gi in g]
    return s


def circuit_concurrence(gate, state, x, k):
    s = propagate(gate, state, x, k)
    return min(1.0, 2.0 * abs(s[0] * s[3] - s[1] * s[2]))


def objective(gate, state, x, k, mode):
    c = circuit_concurrence(gate, state, x, k)
    return 1.0 - c * c if mode == MAXIMIZE else c * c


def nelder_mead(gate, state, x0, k, mode, maxiter, step, fatol, xatol, base=None, free=None):
    """Adaptive Nelder-Mead on the circuit objective.

    Only the angles listed in ``free`` are searched; the rest keep their
    value in ``base``. By default all ``6 * k`` angles are free.

    Returns ``(x_best, f_best, iterations, converged)`` where ``x_best`` holds
    the free angles only.
    """
    gate = np.asarray(gate, dtype=complex)
    state = np.asarray(state, dtype=complex)
    x0 = np.asarray(x0, dtype=float)
    full = np.zeros(6 * k) if base is None else np.array(base, dtype=float)
    free = np.arange(len(x0)) if free is None else np.asarray(free, dtype=np.intp)
    n = len(x0)
    rho, chi = 1.0, 1.0 + 2.0 / n
    psi, sigma = 0.75 - 1.0 / (2.0 * n), 1.0 - 1.0 / n

    def f(x):
        full[free] = x
        return objective(gate, state, full, k, mode)

    sim = np.empty((n + 1, n))
    sim[0] = x0
    for i in range(n):
        sim[i + 1] = x0
        sim[i + 1, i] += step
    fs = np.array([f(v) for v in sim])

    nit = 0
    converged = False
    while nit < maxiter:
        order = np.argsort(fs, kind="stable")
        sim, fs = sim[order], fs[order]
        if (np.max(np.abs(fs[1:] - fs[0])) <= fatol
                and np.max(np.abs(sim[1:] - sim[0])) <= xatol):
            converged = True
            break
        nit += 1
        xbar = sim[:-1].sum(axis=0) / n
        xr = (1 + rho) * xbar - rho * sim[-1]
        fr = f(xr)
        if fr < fs[0]:
            xe = (1 + rho * chi) * xbar - rho * chi * sim[-1]
            fe = f(xe)
            if fe < fr:
                sim[-1], fs[-1] = xe, fe
            else:
                sim[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-1]:
            xc = (1 + psi * rho) * xbar - psi * rho * sim[-1]
            fc = f(xc)
            if fc <= fr:
                sim[-1], fs[-1] = xc, fc
                continue
        else:
            xcc = (1 - psi) * xbar + psi * sim[-1]
            fcc = f(xcc)
            if fcc < fs[-1]:
                sim[-1], fs[-1] = xcc, fcc
                continue
        for j in range(1, n + 1):
            sim[j] = sim[0] + sigma * (sim[j] - sim[0])
            fs[j] = f(sim[j])
    best = int(np.argmin(fs))
    return sim[best].copy(), float(fs[best]), nit, converged
