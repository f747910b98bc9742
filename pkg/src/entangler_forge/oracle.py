"""Brute-force oracle: optimize output concurrence over local interleavings.

Every one-qubit layer is a Z-Y-Z Euler rotation. The layer after the last
gate use cannot change concurrence, so it is pinned to the identity. The
input is rotated into its Schmidt form and that local frame is absorbed into
the first layer, whose angles that only add a phase are then frozen:

* product input ``|00>``: both leading Z rotations;
* maximally entangled input: the whole qubit-B rotation, since
  ``(a (x) b)|Phi> = (a b^T (x) I)|Phi>``;
* otherwise: the leading Z rotation on qubit B.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .arcs import TOL_ZERO, omega
from .errors import BadBudget, BudgetExhausted, NotEntangling
from .linalg import as_state, dagger, require_unitary, schmidt
from .magic import concurrence

REACH_ONE = 1e-6
REACH_ZERO = 1e-6
ENTANGLED_INPUT_TOL = 1e-8
SCHMIDT_CLASS_TOL = 1e-12


@dataclass(frozen=True)
class OracleBudget:
    restarts: int = 32
    max_iterations: int = 2000
    run_cap: int = 16
    step: float = 0.4
    fatol: float = 1e-15
    xatol: float = 1e-10
    polish_rounds: int = 3
    workers: int = 1

    def validate(self):
        if self.restarts < 1:
            raise BadBudget("restarts must be >= 1")
        if self.max_iterations < 1:
            raise BadBudget("max_iterations must be >= 1")
        if self.run_cap < 0:
            raise BadBudget("run_cap must be >= 0")
        if self.workers < 1:
            raise BadBudget("workers must be >= 1")
        if not (self.step > 0 and self.fatol >= 0 and self.xatol >= 0):
            raise BadBudget("step must be positive and tolerances non-negative")


# Near a zero, concurrence grows linearly with parameter error (near one it is
# quadratic), so reaching ``<= REACH_ZERO`` needs angles ~1e-6 accurate.
DISENTANGLE_BUDGET = OracleBudget(max_iterations=4000)


def euler_zyz(phi, theta, lam):
    """``Rz(phi) Ry(theta) Rz(lam)``."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [np.exp(-0.5j * (phi + lam)) * c, -np.exp(-0.5j * (phi - lam)) * s],
            [np.exp(0.5j * (phi - lam)) * s, np.exp(0.5j * (phi + lam)) * c],
        ]
    )


def zyz_angles(u):
    """Euler angles ``(phi, theta, lam)`` reproducing ``u`` up to global phase."""
    u = np.asarray(u, dtype=complex)
    su = u / np.sqrt(np.linalg.det(u))
    theta = 2 * math.atan2(abs(su[1, 0]), abs(su[0, 0]))
    plus = -2 * np.angle(su[0, 0]) if abs(su[0, 0]) > 1e-15 else 0.0
    minus = 2 * np.angle(su[1, 0]) if abs(su[1, 0]) > 1e-15 else 0.0
    return (plus + minus) / 2, theta, (plus - minus) / 2


@dataclass(frozen=True)
class LocalParams:
    """Euler angles for the ``2 (k + 1)`` one-qubit unitaries of a k-use circuit.

    ``angles[2j]`` and ``angles[2j + 1]`` are the qubit-A and qubit-B
    rotations of layer ``j``.
    """

    angles: np.ndarray

    @classmethod
    def from_search_vector(cls, x, k, frame=None):
        """Angles for a k-use circuit from the ``6 * k`` searched angles.

        ``frame`` is the input's Schmidt frame ``(A, B)``; the first layer is
        mapped back from Schmidt coordinates to the original input.
        """
        full = np.zeros((2 * (k + 1), 3))
        full[: 2 * k] = np.asarray(x, dtype=float).reshape(2 * k, 3)
        if frame is not None and k > 0:
            fa, fb = frame
            full[0] = zyz_angles(euler_zyz(*full[0]) @ dagger(fa))
            full[1] = zyz_angles(euler_zyz(*full[1]) @ dagger(fb))
        return cls(full)

    @property
    def uses(self):
        return len(self.angles) // 2 - 1

    def layers(self):
        return [
            (euler_zyz(*self.angles[2 * j]), euler_zyz(*self.angles[2 * j + 1]))
            for j in range(self.uses + 1)
        ]


@dataclass(frozen=True)
class OracleResult:
    best_concurrence: float
    best_params: LocalParams
    restarts: int
    seed: int
    converged: bool
    k: int = 0
    minimize: bool = False


def _schmidt_frame(state, k):
    """Canonical input, its local frame, and the searched angle indices."""
    dec = schmidt(state)
    c0, c1 = dec.coefficients
    canonical = np.array([c0, 0, 0, c1], dtype=complex)
    if c1 <= SCHMIDT_CLASS_TOL:
        frozen = {2, 5}
    elif c0 - c1 <= SCHMIDT_CLASS_TOL:
        frozen = {3, 4, 5}
    else:
        frozen = {5}
    free = np.array([i for i in range(6 * k) if i not in frozen], dtype=np.intp)
    return canonical, (dec.local_a, dec.local_b), free


def _run_restart(backend, gate, state, k, mode, x0, free, budget):
    x, f, remaining, converged = x0, np.inf, budget.max_iterations, False
    base = np.zeros(6 * k)
    for _ in range(budget.polish_rounds + 1):
        xn, fn, nit, converged = backend.nelder_mead(
            gate, state, x, k, mode, remaining, budget.step, budget.fatol, budget.xatol,
            base, free,
        )
        remaining -= nit
        improved = fn < f - budget.fatol
        if fn <= f:
            x, f = xn, fn
        if remaining <= 0 or not improved:
            break
    return x, f, converged


def _value(f, mode):
    c2 = 1.0 - f if mode == kernels.MAXIMIZE else f
    return math.sqrt(min(1.0, max(0.0, c2)))


def _search(u, k, state, budget, seed, mode, target, backend):
    budget.validate()
    if k < 0:
        raise ValueError("k must be non-negative")
    gate = require_unitary(u)
    state = as_state(state)
    if k == 0:
        return OracleResult(concurrence(state), LocalParams(np.zeros((2, 3))), 0, seed, True, 0,
                            mode == kernels.MINIMIZE)
    impl = kernels.get_backend(backend)
    canonical, frame, free = _schmidt_frame(state, k)
    seeds = np.random.SeedSequence(seed).spawn(budget.restarts)
    starts = [np.random.default_rng(s).uniform(0, 2 * np.pi, len(free)) for s in seeds]

    def run(x0):
        return _run_restart(impl, gate, canonical, k, mode, x0, free, budget)

    better = (lambda a, b: a > b) if mode == kernels.MAXIMIZE else (lambda a, b: a < b)
    best = None
    done = 0
    if budget.workers > 1:
        with ThreadPoolExecutor(budget.workers) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = (run(x0) for x0 in starts)
    for x, f, conv in outcomes:
        done += 1
        val = _value(f, mode)
        if best is None or better(val, best[0]):
            best = (val, x, conv)
        if target is not None and not better(target, best[0]):
            break
    val, x, conv = best
    full = np.zeros(6 * k)
    full[free] = x
    return OracleResult(val, LocalParams.from_search_vector(full, k, frame), done, seed,
                        bool(conv), k, mode == kernels.MINIMIZE)


def max_concurrence_k_uses(u, k, state, budget=OracleBudget(), seed=0, target=None, backend=None):
    """Largest output concurrence found over k-use interleavings of ``u``.

    Args:
        u: 4x4 unitary gate.
        k: number of gate uses.
        state: input state.
        budget: restarts and iteration limits.
        seed: root seed; each restart derives its own sub-seed.
        target: stop early once a restart reaches this concurrence.
        backend: ``"compiled"`` or ``"python"``; default is the active kernel.

    Returns:
        OracleResult. ``best_concurrence`` is a lower bound on the true maximum.
    """
    return _search(u, k, state, budget, seed, kernels.MAXIMIZE, target, backend)


def min_concurrence_k_uses(u, k, state, budget=OracleBudget(), seed=0, target=None, backend=None):
    """Smallest output concurrence found over k-use interleavings of ``u``."""
    return _search(u, k, state, budget, seed, kernels.MINIMIZE, target, backend)


def _require_entangling(u):
    om = omega(u)
    if om <= TOL_ZERO:
        raise NotEntangling(f"omega={om:.3e}")


def min_runs_to_one(u, state, budget=OracleBudget(), seed=0, backend=None):
    """Fewest uses after which the oracle reaches concurrence ``>= 1 - 1e-6``."""
    _require_entangling(u)
    goal = 1 - REACH_ONE
    for k in range(budget.run_cap + 1):
        res = max_concurrence_k_uses(u, k, state, budget, seed, target=goal, backend=backend)
        if res.best_concurrence >= goal:
            return k
    raise BudgetExhausted(f"no maximally entangled output within {budget.run_cap} uses")


def min_runs_to_disentangle(u, state, budget=DISENTANGLE_BUDGET, seed=0, backend=None):
    """Fewest uses after which the oracle maps a maximally entangled state to a product."""
    _require_entangling(u)
    state = as_state(state)
    if concurrence(state) < 1 - ENTANGLED_INPUT_TOL:
        raise ValueError("input must be maximally entangled")
    for k in range(budget.run_cap + 1):
        res = min_concurrence_k_uses(u, k, state, budget, seed, target=REACH_ZERO, backend=backend)
        if res.best_concurrence <= REACH_ZERO:
            return k
    raise BudgetExhausted(f"no product output within {budget.run_cap} uses")


def analytic_ceiling(om, k, theta=0.0):
    """``sin(min(theta + k*Omega/2, pi/2))``: the best concurrence after k uses."""
    return math.sin(min(theta + k * om / 2, math.pi / 2))
