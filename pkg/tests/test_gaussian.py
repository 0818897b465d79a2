"""Unit tests for the two-mode invariant / entanglement / discord layer."""

import math

import numpy as np
import pytest
import scipy.linalg

from optocorr import (
    DegenerateMeasuredMode,
    DomainError,
    NonPhysicalInput,
    PairCM,
    check_physical,
    entropy_f,
    gaussian_discord,
    nu_symplectic,
    pair_invariants,
    simon_eta_minus,
    squeeze_moments,
    symplectic_eigenvalues,
)

I2 = np.eye(2)


def tms_pair(r: float) -> PairCM:
    """Pure two-mode squeezed covariance: blocks (N+1/2)I, cross diag(M, -M)."""
    N, M = squeeze_moments(r)
    return PairCM(
        block_a=(N + 0.5) * I2,
        block_b=(N + 0.5) * I2,
        cross=np.diag([M, -M]),
        pair="o1o2",
    )


def random_physical_pair(rng) -> PairCM:
    # random symplectic S = expm(Omega H) applied to a thermal diagonal
    omega = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], float)
    H = rng.standard_normal((4, 4))
    H = 0.25 * (H + H.T)
    S = scipy.linalg.expm(omega @ H)
    nus = 0.5 + rng.uniform(0.0, 1.5, size=2)
    V = S @ np.diag([nus[0], nus[0], nus[1], nus[1]]) @ S.T
    return PairCM(block_a=V[:2, :2], block_b=V[2:, 2:], cross=V[:2, 2:], pair="o1o2")


def test_assemble_block_layout():
    a = np.arange(4.0).reshape(2, 2)
    b = a + 10.0
    c = a + 20.0
    V = PairCM(block_a=a, block_b=b, cross=c, pair="mo1").assemble()
    assert np.array_equal(V[:2, :2], a)
    assert np.array_equal(V[2:, 2:], b)
    assert np.array_equal(V[:2, 2:], c)
    assert np.array_equal(V[2:, :2], c.T)


def test_vacuum_invariants_exact():
    inv = pair_invariants(PairCM(0.5 * I2, 0.5 * I2, np.zeros((2, 2)), "o1o2"))
    assert inv.alpha == 0.25
    assert inv.beta == 0.25
    assert inv.theta == 0.0
    assert inv.lam == 0.0625
    assert inv.delta_pt == 0.5
    assert inv.delta_tilde == 0.5


def test_tms_invariants_r1():
    inv = pair_invariants(tms_pair(1.0))
    # det relations of the squeezed pair at r = 1
    np.testing.assert_allclose(inv.alpha, 3.5386, rtol=1e-4)
    np.testing.assert_allclose(inv.beta, inv.alpha, rtol=1e-15)
    np.testing.assert_allclose(inv.theta, -3.2886, rtol=1e-4)
    np.testing.assert_allclose(inv.lam, 1.0 / 16.0, rtol=1e-12)
    N, _ = squeeze_moments(1.0)
    np.testing.assert_allclose(inv.alpha, (N + 0.5) ** 2, rtol=1e-14)


@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0])
def test_eta_closed_form_tms(r):
    # eta of the pure squeezed pair is exp(-2r)/2; the stable evaluation must
    # hold this through the near-total cancellation at large r
    eta = simon_eta_minus(pair_invariants(tms_pair(r)))
    np.testing.assert_allclose(eta, 0.5 * math.exp(-2.0 * r), rtol=1e-10)


def test_eta_vacuum_exact():
    inv = pair_invariants(PairCM(0.5 * I2, 0.5 * I2, np.zeros((2, 2)), "o1o2"))
    assert simon_eta_minus(inv) == 0.5


def test_eta_rejects_indefinite_matrix():
    # lone cross entry makes the assembled matrix indefinite (lam < 0)
    pcm = PairCM(0.5 * I2, 0.5 * I2, np.diag([0.6, 0.0]), "o1o2")
    with pytest.raises(NonPhysicalInput):
        simon_eta_minus(pair_invariants(pcm))


def test_entropy_f_values():
    assert entropy_f(0.5) == 0.0
    assert entropy_f(0.5 - 5e-10) == 0.0  # clamp window
    np.testing.assert_allclose(entropy_f(1.5), 2.0 * math.log(2.0), rtol=1e-14)
    np.testing.assert_allclose(entropy_f(1.8811), 1.6199, atol=2e-4)


def test_entropy_f_domain_error():
    with pytest.raises(DomainError):
        entropy_f(0.4999)


def test_nu_thermal_product():
    pcm = PairCM(0.75 * I2, 1.25 * I2, np.zeros((2, 2)), "o1o2")
    nu_p, nu_m = nu_symplectic(pair_invariants(pcm))
    # the 4x4 determinant goes through LU, so allow an ulp of slack
    np.testing.assert_allclose([nu_p, nu_m], [1.25, 0.75], rtol=1e-14)


def test_nu_pure_tms():
    nu_p, nu_m = nu_symplectic(pair_invariants(tms_pair(1.0)))
    np.testing.assert_allclose([nu_p, nu_m], [0.5, 0.5], atol=1e-12)


def test_discord_vacuum_and_thermal_product_zero():
    vac = PairCM(0.5 * I2, 0.5 * I2, np.zeros((2, 2)), "o1o2")
    assert gaussian_discord(vac) == 0.0
    thermal = PairCM(0.75 * I2, 1.25 * I2, np.zeros((2, 2)), "o1o2")
    assert gaussian_discord(thermal) == 0.0


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_discord_pure_state_identity(r):
    # for a pure state the conditional entropy term cancels the local one,
    # leaving discord = f(sqrt(beta)) = f(sinh^2 r + 1/2)
    expected = entropy_f(math.sinh(r) ** 2 + 0.5)
    np.testing.assert_allclose(gaussian_discord(tms_pair(r)), expected, rtol=1e-8)


def test_discord_measured_mode_is_second():
    # asymmetric mixed state: measuring mode B is not the same as measuring A
    pcm = PairCM(1.0 * I2, 0.6 * I2, np.diag([0.3, -0.3]), "mo1")
    swapped = PairCM(pcm.block_b, pcm.block_a, pcm.cross.T, "mo1")
    d_ab = gaussian_discord(pcm)
    d_ba = gaussian_discord(swapped)
    assert d_ab > 0.0 and d_ba > 0.0
    assert abs(d_ab - d_ba) > 1e-3


def test_discord_degenerate_measured_mode():
    pcm = PairCM(0.5 * I2, 0.2 * I2, np.zeros((2, 2)), "o1o2")
    with pytest.raises(DegenerateMeasuredMode):
        gaussian_discord(pcm)


def test_eta_swap_invariance_random():
    rng = np.random.default_rng(11)
    for _ in range(200):
        pcm = random_physical_pair(rng)
        swapped = PairCM(pcm.block_b, pcm.block_a, pcm.cross.T, pcm.pair)
        e1 = simon_eta_minus(pair_invariants(pcm))
        e2 = simon_eta_minus(pair_invariants(swapped))
        np.testing.assert_allclose(e1, e2, rtol=1e-9)


def test_random_physical_states_well_behaved():
    rng = np.random.default_rng(7)
    for _ in range(200):
        pcm = random_physical_pair(rng)
        nu_p, nu_m = nu_symplectic(pair_invariants(pcm))
        assert nu_p >= nu_m >= 0.5 - 1e-9
        d = gaussian_discord(pcm)
        assert math.isfinite(d) and d >= 0.0
        report = check_physical(pcm.assemble())
        assert report.passed, report
        # the pairwise route must agree with the generic spectrum
        np.testing.assert_allclose(
            symplectic_eigenvalues(pcm.assemble()), [nu_m, nu_p], rtol=1e-8
        )


def test_symplectic_eigenvalues_diagonal():
    V = np.diag([0.5, 0.5, 1.5, 1.5, 2.5, 2.5])
    np.testing.assert_allclose(symplectic_eigenvalues(V), [0.5, 1.5, 2.5], rtol=1e-12)


def test_symplectic_eigenvalues_rejects_odd_dimension():
    with pytest.raises(ValueError):
        symplectic_eigenvalues(np.eye(3))


def test_check_physical_pass_and_fail():
    assert check_physical(0.5 * np.eye(4)).passed
    below = check_physical(0.25 * np.eye(4))
    assert not below.passed
    assert below.min_symplectic == 0.25
    lopsided = 0.5 * np.eye(4)
    lopsided[0, 1] = 0.3  # asymmetric
    assert not check_physical(lopsided).passed
