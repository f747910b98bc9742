"""Fixed-size complex linear algebra for one- and two-qubit objects.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` (shape ``(2, 2)``
or ``(4, 4)``); two-qubit states are length-4 arrays in the computational
order ``|00>, |01>, |10>, |11>``.
"""
from typing import NamedTuple

import numpy as np

from .errors import NotUnitary

DEFAULT_TOL = 1e-8
INTERNAL_TOL = 1e-10
STATE_NORM_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def as_matrix(m, dim=None):
    """Coerce ``m`` to a finite complex square matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def as_state(s, normalized=True):
    """Coerce ``s`` to a two-qubit state vector.

    Args:
        s: four complex amplitudes.
        normalized: if True, require unit norm within ``STATE_NORM_TOL``.

    Raises:
        ValueError: wrong shape, non-finite entries, or bad norm.
    """
    a = np.asarray(s, dtype=complex).reshape(-1)
    if a.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("state has non-finite amplitudes")
    if normalized and abs(np.vdot(a, a).real - 1.0) > STATE_NORM_TOL:
        raise ValueError("state is not normalized")
    return a


def normalize(s):
    s = np.asarray(s, dtype=complex).reshape(-1)
    return s / np.linalg.norm(s)


def dagger(m):
    return np.conj(np.transpose(m))


def check_unitary(m, tol=DEFAULT_TOL):
    """Return True iff ``max|m^dagger m - I| <= tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=complex)
    d = m.shape[0]
    return bool(np.max(np.abs(dagger(m) @ m - np.eye(d))) <= tol)


def require_unitary(m, dim=4, tol=DEFAULT_TOL):
    m = as_matrix(m, dim)
    if not check_unitary(m, tol):
        raise NotUnitary(f"matrix is not unitary within {tol:g}")
    return m


def tensor(a, b):
    """Kronecker product ``a (x) b`` in computational-basis ordering."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def eigenphases(u, tol=DEFAULT_TOL):
    """Eigenvalue arguments of a 4x4 unitary, each in ``(-pi, pi]``.

    Order is unspecified. Uses the Schur-based general eigensolver, which is
    backward stable; normality of ``u`` makes the phases well conditioned.
    """
    u = require_unitary(u, 4, tol)
    p = np.angle(np.linalg.eigvals(u))
    p[p <= -np.pi] = np.pi
    return p


def pauli_exp(alpha, pauli):
    """``exp(i * alpha * pauli)`` for a one-qubit Pauli matrix."""
    return np.cos(alpha) * I2 + 1j * np.sin(alpha) * pauli


class Schmidt(NamedTuple):
    coefficients: tuple
    local_a: np.ndarray
    local_b: np.ndarray


def schmidt(s):
    """Schmidt decomposition of a two-qubit pure state.

    Returns coefficients ``c0 >= c1 >= 0`` and one-qubit unitaries ``A, B``
    with ``(A (x) B)(c0|00> + c1|11>) = s``. For ``c0 == c1`` the bases are not
    unique and any valid pair is returned.
    """
    s = as_state(s)
    left, sv, right_h = np.linalg.svd(s.reshape(2, 2))
    return Schmidt((float(sv[0]), float(sv[1])), left, right_h.T)


def schmidt_reassemble(decomp):
    c0, c1 = decomp.coefficients
    core = np.array([c0, 0, 0, c1], dtype=complex)
    return tensor(decomp.local_a, decomp.local_b) @ core


def haar_unitary(dim, rng):
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(rng):
    return normalize(rng.standard_normal(4) + 1j * rng.standard_normal(4))


def align_phase(a, b):
    """Return ``(phase, residual)`` with ``a ~ exp(i*phase) * b``.

    The phase maximizes the overlap ``Re tr(b^dagger a e^{-i phase})``;
    residual is the max-norm of ``a - exp(i phase) b``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    overlap = np.vdot(b, a)
    phase = float(np.angle(overlap)) if abs(overlap) > 0 else 0.0
    residual = float(np.max(np.abs(a - np.exp(1j * phase) * b)))
    return phase, residual
