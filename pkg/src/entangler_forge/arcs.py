"""Eigenphase-arc functionals: Theta, Omega, run counts and bounds."""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlreadyMaximal, NotEntangling, OutOfRegime
from .linalg import DEFAULT_TOL, PAULI_Y, as_state, eigenphases, require_unitary, tensor
from .magic import concurrence, kak_decompose

TOL_ZERO = 1e-9
TOL_ARC = 1e-9
SNAP_TOL = 1e-7
TOL_MAXIMAL = 1e-12

YY = tensor(PAULI_Y, PAULI_Y)
TWO_PI = 2 * np.pi


def arc_of_phases(phases):
    """Length of the smallest arc of the unit circle covering ``phases``."""
    p = np.sort(np.mod(np.asarray(phases, dtype=float), TWO_PI))
    gaps = np.diff(np.concatenate([p, [p[0] + TWO_PI]]))
    arc = TWO_PI - float(np.max(gaps))
    # Clamp rounding spill so the result stays in [0, 2pi).
    return min(max(arc, 0.0), np.nextafter(TWO_PI, 0))


def theta(u, tol=DEFAULT_TOL):
    return arc_of_phases(eigenphases(u, tol))


def omega_product(u):
    """``U (Y (x) Y) U^T (Y (x) Y)``, whose spectrum is that of ``U_d^2``."""
    return u @ YY @ u.T @ YY


def omega(u, tol=DEFAULT_TOL):
    u = require_unitary(u, 4, tol)
    return theta(omega_product(u), tol)


def omega_from_lambdas(lambdas):
    return arc_of_phases(2 * np.asarray(lambdas, dtype=float))


def is_perfect_entangler(u, tol=DEFAULT_TOL, tol_arc=TOL_ARC):
    return omega(u, tol) >= np.pi - tol_arc


def snap_ceil(r, snap=SNAP_TOL):
    """``ceil(r)``, except values within ``snap`` of an integer round to it."""
    nearest = round(r)
    if abs(r - nearest) < snap:
        return int(nearest)
    return int(math.ceil(r))


def _entangling_omega(u, tol):
    om = omega(u, tol)
    if om <= TOL_ZERO:
        raise NotEntangling(f"omega={om:.3e} is below {TOL_ZERO:g}")
    return om


def n_runs(u, tol=DEFAULT_TOL):
    """Optimal number of uses of ``u`` to realize a perfect entangler."""
    return max(1, snap_ceil(np.pi / _entangling_omega(u, tol)))


def _state_angle(tau):
    c = concurrence(as_state(tau))
    if c >= 1 - TOL_MAXIMAL:
        raise AlreadyMaximal("input state is already maximally entangled")
    return math.asin(c)


def n_runs_from_state(u, tau, tol=DEFAULT_TOL):
    """Uses of ``u`` needed to turn ``tau`` into a maximally entangled state."""
    om = _entangling_omega(u, tol)
    th = _state_angle(tau)
    return max(1, snap_ceil((np.pi - 2 * th) / om))


def single_use_max_concurrence(u, tau, tol=DEFAULT_TOL):
    """Largest concurrence one use of ``u`` (plus locals) reaches from ``tau``."""
    om = _entangling_omega(u, tol)
    c = concurrence(as_state(tau))
    if c >= 1 - TOL_MAXIMAL:
        return 1.0
    if n_runs_from_state(u, tau, tol) == 1:
        return 1.0
    return min(1.0, math.sin(math.asin(c) + om / 2))


def simulation_lower_bound(u, v, tol=DEFAULT_TOL):
    """Lower bound on uses of ``u`` needed to simulate ``v`` exactly.

    Raises:
        NotEntangling: ``u`` is not entangling.
        OutOfRegime: either gate is a perfect entangler.
    """
    om_u = _entangling_omega(u, tol)
    om_v = omega(v, tol)
    if om_u >= np.pi - TOL_ARC or om_v >= np.pi - TOL_ARC:
        raise OutOfRegime("bound only holds when neither gate is a perfect entangler")
    return max(1, snap_ceil(om_v / om_u))


@dataclass
class AnalysisReport:
    omega: float
    n_runs: int | None
    is_perfect_entangler: bool
    canonical: object
    tolerances_used: dict = field(default_factory=dict)

    @property
    def reason(self):
        return None if self.n_runs is not None else "not_entangling"


def analyze(u, tol=DEFAULT_TOL):
    u = require_unitary(u, 4, tol)
    om = omega(u, tol)
    runs = max(1, snap_ceil(np.pi / om)) if om > TOL_ZERO else None
    return AnalysisReport(
        omega=om,
        n_runs=runs,
        is_perfect_entangler=om >= np.pi - TOL_ARC,
        canonical=kak_decompose(u, tol),
        tolerances_used={
            "unitary": tol,
            "zero": TOL_ZERO,
            "arc": TOL_ARC,
            "snap": SNAP_TOL,
        },
    )
