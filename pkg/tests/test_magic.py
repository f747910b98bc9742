import numpy as np
import pytest

from entangler_forge.errors import NotUnitary
from entangler_forge.linalg import I2, schmidt
from entangler_forge.magic import (
    ALPHA_TO_LAMBDA,
    MAGIC,
    canonical_from_alphas,
    concurrence,
    interaction_core,
    kak_decompose,
    lambdas_to_alphas,
    reconstruct,
    to_magic_basis,
)

from helpers import (
    BELL,
    CNOT,
    KET00,
    PLUS_PLUS,
    SWAP,
    XX,
    YY,
    ZZ,
    core_expm,
    cp,
    haar,
    random_local,
    random_state,
    up_to_phase_error,
    weyl_direction,
)

S = 1 / np.sqrt(2)
# The four magic states written out from their definitions.
PSI = [
    np.array([1, 0, 0, 1]) * S,
    1j * np.array([1, 0, 0, -1]) * S,
    np.array([0, 1, -1, 0]) * S,
    -1j * np.array([0, 1, 1, 0]) * S,
]


def test_magic_columns_match_definitions():
    for k in range(4):
        assert np.allclose(MAGIC[:, k], PSI[k], atol=0)
    assert np.allclose(MAGIC.conj().T @ MAGIC, np.eye(4))


def test_alpha_lambda_map_from_pauli_eigenvalues():
    for k in range(4):
        row = [np.vdot(PSI[k], P @ PSI[k]).real for P in (XX, YY, ZZ)]
        assert np.allclose(row, ALPHA_TO_LAMBDA[k])


def test_to_magic_basis_examples():
    assert np.allclose(to_magic_basis(BELL), [1, 0, 0, 0])
    inv = np.linalg.inv(np.column_stack(PSI))
    assert np.allclose(to_magic_basis(KET00), inv @ KET00)
    assert np.allclose(to_magic_basis(KET00), [S, -1j * S, 0, 0])
    assert np.allclose(to_magic_basis(PLUS_PLUS), [S, 0, 0, 1j * S])


def test_concurrence_examples():
    assert concurrence(BELL) == pytest.approx(1, abs=1e-12)
    assert concurrence(KET00) == pytest.approx(0, abs=1e-12)
    assert concurrence(PLUS_PLUS) == pytest.approx(0, abs=1e-12)


def test_concurrence_local_invariance(rng):
    worst = 0.0
    for _ in range(1000):
        s = random_state(rng)
        worst = max(worst, abs(concurrence(random_local(rng) @ s) - concurrence(s)))
    assert worst <= 1e-10


def test_concurrence_matches_schmidt(rng):
    for _ in range(500):
        s = random_state(rng)
        c0, c1 = schmidt(s).coefficients
        assert abs(concurrence(s) - 2 * c0 * c1) <= 1e-10


def test_real_magic_coefficients_are_maximal(rng):
    for _ in range(200):
        mu = rng.standard_normal(4)
        mu /= np.linalg.norm(mu)
        s = np.exp(1j * rng.uniform(0, 2 * np.pi)) * (MAGIC @ mu)
        assert concurrence(s) == pytest.approx(1, abs=1e-12)


def _invariant_spectrum(u):
    m = u @ YY @ u.T @ YY
    m = m / np.linalg.det(m) ** 0.25
    return np.sort_complex(np.round(np.linalg.eigvals(m), 9))


@pytest.mark.parametrize(
    "gate, alphas",
    [
        (np.eye(4), (0, 0, 0)),
        (CNOT, (np.pi / 4, 0, 0)),
        (SWAP, (np.pi / 4, np.pi / 4, np.pi / 4)),
        (cp(np.pi / 2), (np.pi / 8, 0, 0)),
    ],
)
def test_kak_examples(gate, alphas):
    c = kak_decompose(gate)
    assert np.allclose(c.alphas, alphas, atol=1e-9)
    assert up_to_phase_error(gate, reconstruct(c)) <= 1e-8
    # same nonlocal class as the bare core, checked on the invariant spectrum
    assert up_to_phase_error(gate, reconstruct(c)) <= 1e-8
    d1 = np.sort(np.angle(np.linalg.eigvals(gate @ YY @ gate.T @ YY)) % (2 * np.pi))
    core = core_expm(*alphas)
    d2 = np.sort(np.angle(np.linalg.eigvals(core @ core)) % (2 * np.pi))
    # spectra agree up to a common rotation
    shifts = [(d1 - np.roll(d2, r)) for r in range(4)]
    assert any(np.ptp(np.angle(np.exp(1j * s))) < 1e-7 for s in shifts)


def test_kak_identity_locals():
    c = kak_decompose(np.eye(4))
    assert up_to_phase_error(np.kron(*c.k1) @ np.kron(*c.k2), np.eye(4)) <= 1e-10


def test_reconstruct_examples():
    assert np.allclose(reconstruct(canonical_from_alphas((0, 0, 0))), np.eye(4))
    swap_like = reconstruct(canonical_from_alphas((np.pi / 4,) * 3))
    assert up_to_phase_error(swap_like, SWAP) <= 1e-12
    assert np.allclose(swap_like, core_expm(np.pi / 4, np.pi / 4, np.pi / 4))
    c = kak_decompose(CNOT)
    assert np.max(np.abs(reconstruct(c) - CNOT)) <= 1e-8


def test_interaction_core_examples():
    assert np.allclose(interaction_core(canonical_from_alphas((0, 0, 0))), np.eye(4))
    for gate, lam in [
        (CNOT, [np.pi / 4, -np.pi / 4, -np.pi / 4, np.pi / 4]),
        (SWAP, [np.pi / 4, np.pi / 4, -3 * np.pi / 4, np.pi / 4]),
    ]:
        core = interaction_core(kak_decompose(gate))
        for k in range(4):
            assert np.allclose(core @ PSI[k], np.exp(1j * lam[k]) * PSI[k], atol=1e-9)


def test_core_matches_matrix_exponential(rng):
    for _ in range(50):
        a = rng.uniform(-1, 1, 3)
        assert np.allclose(interaction_core(canonical_from_alphas(a)), core_expm(*a), atol=1e-12)


def test_lambda_alpha_round_trip(rng):
    for _ in range(50):
        a = rng.uniform(-1, 1, 3)
        c = canonical_from_alphas(a)
        assert np.allclose(lambdas_to_alphas(c.lambdas), a)
        assert abs(np.sum(c.lambdas)) <= 1e-12


def test_kak_round_trip_random(rng):
    for _ in range(300):
        u = haar(4, rng)
        c = kak_decompose(u)
        assert c.in_weyl_chamber()
        assert np.max(np.abs(reconstruct(c) - u)) <= 1e-8
        for m in (*c.k1, *c.k2):
            assert np.allclose(m.conj().T @ m, I2, atol=1e-10)


def test_kak_fixes_chamber_points(rng):
    for _ in range(300):
        a = weyl_direction(rng)
        c = kak_decompose(core_expm(*a))
        assert np.allclose(c.alphas, a, atol=1e-8)


def test_kak_chamber_after_locals(rng):
    for _ in range(100):
        a = weyl_direction(rng)
        u = random_local(rng) @ core_expm(*a) @ random_local(rng)
        assert np.allclose(kak_decompose(u).alphas, a, atol=1e-8)


def test_kak_degenerate_spectra():
    for u in (np.eye(4), SWAP, CNOT, cp(np.pi), np.kron(haar(2, np.random.default_rng(1)), I2)):
        c = kak_decompose(u)
        assert c.in_weyl_chamber()
        assert up_to_phase_error(u, reconstruct(c)) <= 1e-8


def test_kak_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        kak_decompose(np.diag([1, 1, 1, 2]))
