"""Explicit perfect-entangler circuits built from a fixed two-qubit gate.

The construction works in the frame of the interaction core ``U_d``: a
product seed on the two magic vectors bounding the smallest eigenphase arc
gains concurrence ``sin(m * Omega / 2)`` after ``m`` uses; a local layer then
moves it onto a preimage of a maximally entangled state, and one more use
finishes the job. The outer local factors of the canonical decomposition are
folded into the neighbouring layers so the circuit uses the gate itself.
"""
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .arcs import TOL_ZERO, arc_of_phases, n_runs, omega
from .errors import ConcurrenceMismatch, DegenerateCore, NotEntangling, TargetOutOfRange
from .linalg import I2, as_state, dagger, require_unitary, schmidt, tensor
from .magic import MAGIC, MAGIC_DAG, concurrence, interaction_core, kak_decompose

BAND_TOL = 1e-9
CONNECT_TOL = 1e-8
CERTIFY_TOL = 1e-8
VERIFY_ARC_TOL = 1e-6
_PHASE_TIE = 1e-12

KET00 = np.array([1, 0, 0, 0], dtype=complex)


def core_phases(core, tol=1e-10):
    """Eigenphases ``lambda_k`` of a core that is diagonal in the magic basis."""
    d = MAGIC_DAG @ np.asarray(core, dtype=complex) @ MAGIC
    if np.max(np.abs(d - np.diag(np.diag(d)))) > tol:
        raise ValueError("core is not diagonal in the magic basis")
    return np.angle(np.diag(d))


def extreme_pair(lambdas):
    """Magic indices (0-based) ``(a, b)`` at the ends of the smallest arc.

    The arc is taken over the doubled phases ``2 * lambda``; ``a`` ends the
    arc and ``b`` starts it, so going counter-clockwise from ``b`` to ``a``
    covers every doubled phase. Coincident phases resolve to the lowest index.
    """
    doubled = np.mod(2 * np.asarray(lambdas, dtype=float), 2 * np.pi)
    order = sorted(range(4), key=lambda k: (doubled[k], k))
    vals = doubled[order]
    gaps = np.diff(np.concatenate([vals, [vals[0] + 2 * np.pi]]))
    g = int(np.argmax(gaps))
    end_val, start_val = vals[g], vals[(g + 1) % 4]

    def lowest(v):
        dist = np.abs(np.angle(np.exp(1j * (doubled - v))))
        return int(np.flatnonzero(dist <= _PHASE_TIE)[0])

    return lowest(end_val), lowest(start_val)


def seed_product_state(core):
    """Product state ``(|Psi_a> + i|Psi_b>)/sqrt(2)`` on the extreme magic pair.

    Raises:
        DegenerateCore: the core has zero arc (cannot entangle).
    """
    lam = core_phases(core)
    if arc_of_phases(2 * lam) <= TOL_ZERO:
        raise DegenerateCore("core has a single squared eigenphase")
    a, b = extreme_pair(lam)
    return (MAGIC[:, a] + 1j * MAGIC[:, b]) / np.sqrt(2)


@dataclass(frozen=True)
class TrajectoryStep:
    index: int
    state: np.ndarray
    concurrence: float


def trajectory(core, seed, steps):
    """States ``core^m seed`` for ``m = 0..steps`` with their concurrences."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    s = as_state(seed)
    core = np.asarray(core, dtype=complex)
    out = []
    for m in range(steps + 1):
        out.append(TrajectoryStep(m, s.copy(), concurrence(s)))
        s = core @ s
    return out


def _zero_hull_weights(points):
    """Convex weights ``w`` with ``sum w_k z_k = 0``, or None if 0 is outside.

    Tries antipodal pairs and then triangles, keeping the candidate whose
    smallest active weight is largest.
    """
    best, best_score = None, -np.inf
    for j, k in itertools.combinations(range(4), 2):
        if abs(points[j] + points[k]) <= 1e-12:
            w = np.zeros(4)
            w[[j, k]] = 0.5
            return w
    for tri in itertools.combinations(range(4), 3):
        z = points[list(tri)]
        a = np.vstack([z.real, z.imag, np.ones(3)])
        if abs(np.linalg.det(a)) < 1e-14:
            continue
        bary = np.linalg.solve(a, [0.0, 0.0, 1.0])
        if bary.min() >= -1e-12 and bary.min() > best_score:
            best_score = bary.min()
            best = np.zeros(4)
            best[list(tri)] = np.clip(bary, 0.0, None)
    if best is not None:
        best /= best.sum()
    return best


def _preimage(lam, target, clamp):
    om = arc_of_phases(2 * lam)
    a, b = extreme_pair(lam)
    if om >= np.pi:
        if target < -BAND_TOL or target > 1 + BAND_TOL:
            raise TargetOutOfRange(f"target {target} outside [0, 1]")
        w0 = _zero_hull_weights(np.exp(-2j * lam))
        if w0 is None:
            raise RuntimeError("zero not found in the convex hull of a perfect entangler")
        tgt = min(max(target, 0.0), 1.0)
        w = (1 - tgt) * w0
        w[a] += tgt
        coeffs = np.sqrt(w)
    else:
        edge = math.cos(om / 2)
        if target < edge - BAND_TOL and not clamp:
            raise TargetOutOfRange(f"target {target} below reachable edge {edge}")
        if target > 1 + BAND_TOL:
            raise TargetOutOfRange(f"target {target} above 1")
        tgt = min(max(target, edge), 1.0)
        t = _preimage_angle(tgt, om)
        coeffs = np.zeros(4)
        coeffs[a], coeffs[b] = math.cos(t), math.sin(t)
    return MAGIC @ (np.exp(-1j * lam) * coeffs)


def _preimage_angle(target, om):
    half = math.sin(om / 2) ** 2
    if target - math.cos(om / 2) > BAND_TOL:
        return 0.5 * math.asin(math.sqrt(min(1.0, (1 - target * target) / half)))

    def conc(t):
        return math.sqrt(max(0.0, 1 - math.sin(2 * t) ** 2 * half))

    lo, hi = 0.0, math.pi / 4
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if conc(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def max_entangled_preimage(core, target_concurrence):
    """State of the given concurrence that the core maps to a maximally entangled one.

    For a non-perfect-entangling core the reachable band is
    ``[cos(Omega/2), 1]``; a perfect-entangling core reaches all of ``[0, 1]``.

    Raises:
        TargetOutOfRange: target outside the reachable band.
    """
    lam = core_phases(core)
    return _preimage(lam, float(target_concurrence), clamp=False)


def _connect(src, dst):
    # Equal Schmidt coefficients make this exact, phase included.
    da, db = schmidt(src), schmidt(dst)
    return db.local_a @ dagger(da.local_a), db.local_b @ dagger(da.local_b)


def equal_concurrence_connector(src, dst, tol=CONNECT_TOL):
    """Local pair ``(w_a, w_b)`` with ``(w_a (x) w_b) src = dst``.

    Raises:
        ConcurrenceMismatch: the two concurrences differ by more than ``tol``.
    """
    src, dst = as_state(src), as_state(dst)
    if abs(concurrence(src) - concurrence(dst)) > tol:
        raise ConcurrenceMismatch("states have different concurrence")
    return _connect(src, dst)


def apply_layers(layers, gate, state, uses=None):
    """Apply ``layers[0], gate, layers[1], ..., gate, layers[-1]`` to ``state``."""
    uses = len(layers) - 1 if uses is None else uses
    s = np.asarray(state, dtype=complex)
    for j in range(max(len(layers), uses + 1)):
        if j < len(layers):
            a, b = layers[j]
            s = tensor(a, b) @ s
        if j < uses:
            s = gate @ s
    return s


@dataclass
class SynthesizedCircuit:
    locals: list
    gate: np.ndarray
    uses: int
    product_input: np.ndarray
    certified_output_concurrence: float = float("nan")

    def total_operator(self):
        total = np.eye(4, dtype=complex)
        for j in range(max(len(self.locals), self.uses + 1)):
            if j < len(self.locals):
                total = tensor(*self.locals[j]) @ total
            if j < self.uses:
                total = self.gate @ total
        return total

    def output_state(self):
        return apply_layers(self.locals, self.gate, self.product_input, self.uses)

    def truncated(self, uses):
        """The first ``uses`` gate applications with their preceding layers."""
        layers = list(self.locals[:uses + 1])
        return SynthesizedCircuit(layers, self.gate, uses, self.product_input.copy())

    def reversed(self, state=None):
        """Adjoint circuit: layers and gate daggered, order reversed.

        Its product input slot holds ``state`` (default: this circuit's output).
        """
        layers = [(dagger(a), dagger(b)) for a, b in reversed(self.locals)]
        start = self.output_state() if state is None else state
        return SynthesizedCircuit(layers, dagger(self.gate), self.uses, np.asarray(start, dtype=complex))


@dataclass(frozen=True)
class VerificationReport:
    output_concurrence: float
    omega_of_total: float
    ok: bool
    notes: tuple = field(default_factory=tuple)


def synthesize_perfect_entangler(u):
    """Interleave ``N(U)`` uses of ``u`` with local layers into a perfect entangler.

    The product input is ``|00>``.

    Raises:
        NotEntangling: ``u`` cannot create entanglement.
    """
    u = require_unitary(u)
    om = omega(u)
    if om <= TOL_ZERO:
        raise NotEntangling(f"omega={om:.3e}")
    n = n_runs(u)
    canon = kak_decompose(u)
    core = interaction_core(canon)
    lam = core_phases(core)

    ident = (I2, I2)
    y = [ident] * (n + 1)
    if n == 1:
        psi = _preimage(lam, 0.0, clamp=True)
        y[0] = _connect(KET00, psi)
    else:
        phi = seed_product_state(core)
        y[0] = _connect(KET00, phi)
        s = np.linalg.matrix_power(core, n - 1) @ phi
        psi = _preimage(lam, concurrence(s), clamp=True)
        y[n - 1] = _connect(s, psi)

    # u = e^{i g} K1 core K2, so core = e^{-i g} K1^dag u K2^dag.
    k1a, k1b = (dagger(m) for m in canon.k1)
    k2a, k2b = (dagger(m) for m in canon.k2)
    layers = []
    for j, (ya, yb) in enumerate(y):
        a, b = ya, yb
        if j > 0:
            a, b = a @ k1a, b @ k1b
        if j < n:
            a, b = k2a @ a, k2b @ b
        layers.append((a, b))

    circ = SynthesizedCircuit(layers, u, n, KET00.copy())
    circ.certified_output_concurrence = concurrence(circ.output_state())
    return circ


def verify_circuit(c):
    """Multiply out a circuit and check that it is a perfect entangler.

    Failures are reported in the result rather than raised.
    """
    notes = []
    try:
        total = c.total_operator()
        out = total @ np.asarray(c.product_input, dtype=complex)
        norm = np.linalg.norm(out)
        conc = concurrence(out / norm) if norm > 0 else 0.0
        om = omega(total, tol=1e-6)
    except Exception as exc:  # malformed input must not crash verification
        return VerificationReport(0.0, 0.0, False, (f"error: {exc}",))
    if len(c.locals) != c.uses + 1:
        notes.append(f"expected {c.uses + 1} local layers, found {len(c.locals)}")
    if concurrence(c.product_input / np.linalg.norm(c.product_input)) > BAND_TOL:
        notes.append("input is not a product state")
    ok = conc >= 1 - CERTIFY_TOL and om >= np.pi - VERIFY_ARC_TOL and not notes
    return VerificationReport(conc, om, bool(ok), tuple(notes))
