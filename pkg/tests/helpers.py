"""Shared generators and independent reference computations for the tests."""
import numpy as np
from scipy.linalg import expm

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
XX, YY, ZZ = np.kron(X, X), np.kron(Y, Y), np.kron(Z, Z)

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
KET00 = np.array([1, 0, 0, 0], dtype=complex)
BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
PLUS_PLUS = np.full(4, 0.5, dtype=complex)


def cp(phi):
    return np.diag([1, 1, 1, np.exp(1j * phi)])


def core_expm(ax, ay, az):
    """Interaction core by direct matrix exponential (independent of the package)."""
    return expm(1j * (ax * XX + ay * YY + az * ZZ))


def haar(dim, rng):
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_local(rng):
    return np.kron(haar(2, rng), haar(2, rng))


def random_state(rng):
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return v / np.linalg.norm(v)


def state_with_concurrence(c):
    """``cos a |00> + sin a |11>`` with ``sin 2a = c``."""
    a = np.arcsin(c) / 2
    return np.array([np.cos(a), 0, 0, np.sin(a)], dtype=complex)


def brute_arc(phases, grid=None):
    """Smallest covering arc by trying every phase as the arc's start.

    Independent of the largest-gap method: for each start point, the arc
    length needed to reach every other point counter-clockwise.
    """
    p = np.mod(np.asarray(phases, dtype=float), 2 * np.pi)
    best = 2 * np.pi
    for s in p:
        best = min(best, np.max(np.mod(p - s, 2 * np.pi)))
    return best


def brute_omega(u):
    """Omega from the doubled eigenphases of the core, via scipy's eig."""
    from scipy.linalg import eigvals

    m = u @ YY @ u.T @ YY
    return brute_arc(np.angle(eigvals(m)))


def weyl_direction(rng):
    x = rng.uniform(0, np.pi / 4)
    y = rng.uniform(0, x)
    z = rng.uniform(-y, y)
    return np.array([x, y, z])


_LAMBDA_MAP = np.array([[1, -1, 1], [-1, 1, 1], [-1, -1, -1], [1, 1, -1]], dtype=float)


def _arcs(doubled):
    """Vectorized smallest covering arc over the last axis (largest-gap free)."""
    p = np.mod(doubled, 2 * np.pi)
    diff = np.mod(p[..., :, None] - p[..., None, :], 2 * np.pi)
    return np.min(np.max(diff, axis=-2), axis=-1)


def alphas_with_omega(target, rng):
    """Random Weyl-chamber angles whose core has the requested Omega.

    Scales a random chamber direction until the doubled-phase arc first
    reaches ``target`` (continuity in the scale gives a crossing).
    """
    grid = np.linspace(0, 1, 257)
    while True:
        d = weyl_direction(rng)
        vals = _arcs(2 * (grid[:, None] * d) @ _LAMBDA_MAP.T)
        hits = np.flatnonzero(vals >= target)
        if hits.size == 0 or hits[0] == 0:
            continue
        lo, hi = grid[hits[0] - 1], grid[hits[0]]
        for _ in range(60):
            mid = (lo + hi) / 2
            if _arcs(2 * _LAMBDA_MAP @ (mid * d)) >= target:
                hi = mid
            else:
                lo = mid
        return hi * d


def random_gate_with_omega(target, rng):
    a = alphas_with_omega(target, rng)
    return random_local(rng) @ core_expm(*a) @ random_local(rng)


def small_arc_unitary(max_arc, dim, rng):
    """Random unitary whose eigenphases lie in an arc shorter than ``max_arc``."""
    start = rng.uniform(-np.pi, np.pi)
    phases = start + rng.uniform(0, max_arc, dim)
    q = haar(dim, rng)
    return q @ np.diag(np.exp(1j * phases)) @ q.conj().T


def up_to_phase_error(a, b):
    ov = np.vdot(b, a)
    ph = ov / abs(ov) if abs(ov) > 0 else 1
    return float(np.max(np.abs(a - ph * b)))
