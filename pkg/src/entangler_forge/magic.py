"""Magic basis, concurrence and the canonical (KAK) decomposition.

In the magic basis every local unitary ``a (x) b`` with ``a, b`` in SU(2) is a
real orthogonal matrix, and the interaction core
``exp(i(ax XX + ay YY + az ZZ))`` is diagonal. ``kak_decompose`` exploits this
to split a two-qubit unitary into two local layers around the core, with the
interaction angles folded into the Weyl chamber
``pi/4 >= ax >= ay >= |az|``.
"""
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    I2,
    PAULIS,
    align_phase,
    as_state,
    dagger,
    pauli_exp,
    require_unitary,
    tensor,
)

_S = 1 / np.sqrt(2)

# Columns are |Psi_1>..|Psi_4>.
MAGIC = _S * np.array(
    [
        [1, 1j, 0, 0],
        [0, 0, 1, -1j],
        [0, 0, -1, -1j],
        [1, -1j, 0, 0],
    ],
    dtype=complex,
)
MAGIC_DAG = dagger(MAGIC)

# Row k gives lambda_k as a combination of (ax, ay, az): the eigenvalues of
# XX, YY, ZZ on |Psi_k>.
ALPHA_TO_LAMBDA = np.array(
    [
        [1, -1, 1],
        [-1, 1, 1],
        [-1, -1, -1],
        [1, 1, -1],
    ],
    dtype=float,
)

_JOINT_DIAG_MIX = (0.5772156649015329, 1.4142135623730951, 2.718281828459045, 0.3183098861837907)
_JOINT_DIAG_TOL = 1e-9


def magic_state(k):
    """Return ``|Psi_k>`` for ``k`` in 1..4."""
    return MAGIC[:, k - 1].copy()


def to_magic_basis(s):
    """Coefficients ``mu`` with ``s = sum_k mu_k |Psi_k>``."""
    return MAGIC_DAG @ as_state(s)


def from_magic_basis(mu):
    return MAGIC @ np.asarray(mu, dtype=complex)


def concurrence(s):
    """Pure-state concurrence ``|sum_k mu_k^2|`` over magic coefficients."""
    mu = to_magic_basis(s)
    return float(min(1.0, abs(np.sum(mu * mu))))


def alphas_to_lambdas(alphas):
    return ALPHA_TO_LAMBDA @ np.asarray(alphas, dtype=float)


def lambdas_to_alphas(lambdas):
    l1, l2, _, l4 = lambdas
    return np.array([(l1 + l4) / 2, (l2 + l4) / 2, (l1 + l2) / 2])


def core_matrix(alphas):
    """``exp(i(ax XX + ay YY + az ZZ))`` built from its magic-basis spectrum."""
    lam = alphas_to_lambdas(alphas)
    return MAGIC @ np.diag(np.exp(1j * lam)) @ MAGIC_DAG


@dataclass(frozen=True)
class CanonicalForm:
    """``U = e^{i phase} (k1[0] (x) k1[1]) core(alphas) (k2[0] (x) k2[1])``."""

    k1: tuple
    alphas: tuple
    k2: tuple
    global_phase: float

    @property
    def lambdas(self):
        return alphas_to_lambdas(self.alphas)

    def in_weyl_chamber(self, tol=1e-12):
        ax, ay, az = self.alphas
        return np.pi / 4 + tol >= ax >= ay - tol and ay + tol >= abs(az)


def reconstruct(c):
    outer = tensor(*c.k1)
    inner = tensor(*c.k2)
    return np.exp(1j * c.global_phase) * outer @ core_matrix(c.alphas) @ inner


def interaction_core(c):
    """The core ``U_d``, diagonal in the magic basis with phases ``c.lambdas``."""
    return core_matrix(c.alphas)


def _joint_eigvecs(m):
    """Real orthogonal P (det +1) diagonalizing the complex symmetric unitary m."""
    re, im = m.real, m.imag
    best, best_res = None, np.inf
    for c in _JOINT_DIAG_MIX:
        _, p = np.linalg.eigh(re + c * im)
        d = p.T @ m @ p
        res = np.max(np.abs(d - np.diag(np.diag(d))))
        if res < best_res:
            best, best_res = p, res
        if res <= _JOINT_DIAG_TOL:
            break
    if best_res > _JOINT_DIAG_TOL:
        best = _jacobi_refine(m, best)
    if np.linalg.det(best) < 0:
        best = best.copy()
        best[:, 0] *= -1
    return best


def _jacobi_refine(m, p, sweeps=20):
    """Drive off-diagonals of ``p^T Re(m) p`` and ``p^T Im(m) p`` to zero."""
    p = p.copy()
    mats = (m.real, m.imag)
    for _ in range(sweeps):
        off = 0.0
        for i in range(3):
            for j in range(i + 1, 4):
                for a in mats:
                    d = p.T @ a @ p
                    off = max(off, abs(d[i, j]))
                    if abs(d[i, j]) < 1e-15:
                        continue
                    theta = 0.5 * np.arctan2(2 * d[i, j], d[j, j] - d[i, i])
                    c, s = np.cos(theta), np.sin(theta)
                    rot = np.eye(4)
                    rot[i, i] = rot[j, j] = c
                    rot[i, j], rot[j, i] = s, -s
                    p = p @ rot
        if off < 1e-14:
            break
    return p


def kron_factor(k):
    """Split ``k ~ a (x) b`` into one-qubit unitaries using the largest block."""
    blocks = [(i, j, k[2 * i:2 * i + 2, 2 * j:2 * j + 2]) for i in range(2) for j in range(2)]
    i0, j0, pivot = max(blocks, key=lambda t: np.linalg.norm(t[2]))
    b = pivot / np.sqrt(np.linalg.det(pivot))
    a = np.empty((2, 2), dtype=complex)
    for i, j, blk in blocks:
        a[i, j] = np.trace(blk @ dagger(b)) / 2
    return a, b


class _Tracker:
    """Keeps ``e^{i phase} (a1 (x) b1) core(alphas) (a2 (x) b2)`` invariant."""

    def __init__(self, k1, alphas, k2):
        self.a1, self.b1 = k1
        self.a2, self.b2 = k2
        self.alphas = np.array(alphas, dtype=float)
        self.phase = 0.0

    def shift(self, j, n):
        # core(alpha) = core(alpha - n*pi/2 e_j) (i^n (sigma_j (x) sigma_j)^n)
        if n == 0:
            return
        self.alphas[j] -= n * np.pi / 2
        self.phase += n * np.pi / 2
        if n % 2:
            self.a2 = PAULIS[j] @ self.a2
            self.b2 = PAULIS[j] @ self.b2

    def swap(self, j, k):
        m = 3 - j - k
        c = pauli_exp(np.pi / 4, PAULIS[m])
        # c sigma_j c^dag = +-sigma_k on both qubits, so the core transforms by
        # exchanging alpha_j and alpha_k.
        self.a1, self.b1 = self.a1 @ dagger(c), self.b1 @ dagger(c)
        self.a2, self.b2 = c @ self.a2, c @ self.b2
        self.alphas[[j, k]] = self.alphas[[k, j]]

    def flip(self, j, k):
        m = 3 - j - k
        f = PAULIS[m]
        self.a1 = self.a1 @ f
        self.a2 = f @ self.a2
        self.alphas[j] *= -1
        self.alphas[k] *= -1


def _canonicalize(t):
    quarter = np.pi / 4
    for j in range(3):
        t.shift(j, int(np.ceil((t.alphas[j] - quarter) / (np.pi / 2))))
    for j, k in ((0, 1), (1, 2), (0, 1)):
        if abs(t.alphas[k]) > abs(t.alphas[j]):
            t.swap(j, k)
    if t.alphas[0] < 0 and t.alphas[1] < 0:
        t.flip(0, 1)
    elif t.alphas[0] < 0:
        t.flip(0, 2)
    elif t.alphas[1] < 0:
        t.flip(1, 2)


def kak_decompose(u, tol=DEFAULT_TOL):
    """Canonical decomposition of a two-qubit unitary.

    Args:
        u: 4x4 unitary.
        tol: unitarity tolerance.

    Returns:
        CanonicalForm with alphas in the Weyl chamber.

    Raises:
        NotUnitary: if ``u`` fails the unitarity check.
    """
    u = require_unitary(u, 4, tol)
    su = u * np.exp(-1j * np.angle(np.linalg.det(u)) / 4)
    m = MAGIC_DAG @ su @ MAGIC
    p = _joint_eigvecs(m.T @ m)
    d2 = np.diag(p.T @ m.T @ m @ p)
    lam = np.angle(d2) / 2
    # det(m) = 1 forces sum(lam) to a multiple of pi; pick the det +1 branch.
    if round(np.sum(lam) / np.pi) % 2:
        lam[0] += np.pi
    lam[0] -= 2 * np.pi * round(np.sum(lam) / (2 * np.pi))
    o1 = (m @ p @ np.diag(np.exp(-1j * lam))).real
    k1 = kron_factor(MAGIC @ o1 @ MAGIC_DAG)
    k2 = kron_factor(MAGIC @ p.T @ MAGIC_DAG)
    t = _Tracker(k1, lambdas_to_alphas(lam), k2)
    _canonicalize(t)
    bare = CanonicalForm((t.a1, t.b1), tuple(float(a) for a in t.alphas), (t.a2, t.b2), 0.0)
    phase, _ = align_phase(u, reconstruct(bare))
    return CanonicalForm(bare.k1, bare.alphas, bare.k2, phase)


def canonical_from_alphas(alphas, k1=(I2, I2), k2=(I2, I2), global_phase=0.0):
    return CanonicalForm(tuple(k1), tuple(float(a) for a in alphas), tuple(k2), float(global_phase))
