import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wigner_epr.errors import ConditioningError
from wigner_epr.little_group import delta_orthogonal, epsilon_orthogonal
from wigner_epr.states import (
    DOWN,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    UP,
    PhotonPairAmplitudes,
    SpinHalfAmplitudes,
    apply_local,
    condition_on_outcome,
    entanglement_entropy,
    expectation,
    helicity_phase,
    linear_polarization_ket,
    measure_correlation,
    photon_epr_state,
    polarization_matrix,
    post_measurement_partner,
    product_state,
    reduced_density_matrix,
    relativistic_epr_massive,
    singlet,
    spin_eigenstate,
    spin_matrix,
    transform_pair_massive,
    transform_pair_massless,
    triplet,
    wigner_d_half,
)

angles = st.floats(-10, 10, allow_nan=False)


def unit(rng):
    n = rng.normal(size=3)
    return n / np.linalg.norm(n)


def test_pair_state_rejects_bad_input():
    with pytest.raises(ValueError):
        SpinHalfAmplitudes([1, 0, 0])
    with pytest.raises(ValueError):
        SpinHalfAmplitudes([1, 1, 0, 0])
    with pytest.raises(ValueError):
        SpinHalfAmplitudes([np.nan, 0, 0, 1])


def test_amplitude_accessors():
    s = singlet()
    assert s.a_uu == 0 and s.a_dd == 0
    assert s.a_ud == pytest.approx(1 / math.sqrt(2))
    assert s.a_du == pytest.approx(-1 / math.sqrt(2))
    assert not s.amplitudes.flags.writeable


@given(angles)
def test_d_half_is_unitary(d):
    u = wigner_d_half(d)
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-14)
    assert np.linalg.det(u) == pytest.approx(1, abs=1e-14)


@given(angles, angles)
def test_d_half_group_law(a, b):
    assert np.allclose(wigner_d_half(a) @ wigner_d_half(b), wigner_d_half(a + b), atol=1e-12)


def test_d_half_is_exp_of_sigma_y():
    d = 0.73
    w, v = np.linalg.eigh(SIGMA_Y)
    expected = v @ np.diag(np.exp(-1j * w * d / 2)) @ v.conj().T
    assert np.allclose(wigner_d_half(d), expected, atol=1e-14)


def test_massive_closed_form_matches_rotated_singlet(rng):
    for _ in range(300):
        d = rng.uniform(-math.pi, math.pi)
        rotated = apply_local(singlet(), wigner_d_half(d), wigner_d_half(-d))
        assert np.max(np.abs(relativistic_epr_massive(d).amplitudes - rotated.amplitudes)) <= 1e-14


def test_transform_pair_massive(rng):
    s = transform_pair_massive(0.0, 0.0)
    assert s.same_ray(singlet())
    for _ in range(100):
        xi, chi = rng.uniform(0, 6, 2)
        s = transform_pair_massive(xi, chi)
        d = delta_orthogonal(xi, chi)
        assert s.a_uu == pytest.approx(math.sin(d) / math.sqrt(2), abs=1e-14)
        assert s.a_ud == pytest.approx(math.cos(d) / math.sqrt(2), abs=1e-14)
        assert float(s.branch1.x) > 0 > float(s.branch2.x)
        assert abs(np.vdot(s.amplitudes, s.amplitudes) - 1) <= 1e-12


def test_entropy():
    assert entanglement_entropy(singlet()) == pytest.approx(math.log(2), abs=1e-14)
    assert entanglement_entropy(product_state(UP, DOWN)) == pytest.approx(0, abs=1e-14)
    for d in np.linspace(0, math.pi, 9):
        assert entanglement_entropy(relativistic_epr_massive(d)) == pytest.approx(math.log(2), abs=1e-12)
    for chi, phi in [(0.5, 0.3), (3, 1.1)]:
        assert entanglement_entropy(transform_pair_massless(chi, phi)) == pytest.approx(math.log(2), abs=1e-12)
    rho = reduced_density_matrix(singlet())
    assert np.allclose(rho, np.eye(2) / 2)


def test_triplet_correlations():
    t = triplet()
    assert measure_correlation(t, [0, 0, 1], [0, 0, 1]) == pytest.approx(1)
    assert measure_correlation(t, [0, 1, 0], [0, 1, 0]) == pytest.approx(-1)
    assert measure_correlation(t, [1, 0, 0], [1, 0, 0]) == pytest.approx(1)


def test_triplet_outcomes_along_tilted_axis():
    m = np.array([1.0, 1.0, 0.0]) / math.sqrt(2)
    a = triplet().amplitudes
    for s1 in (1, -1):
        for s2 in (1, -1):
            ket = np.kron(spin_eigenstate(m, s1), spin_eigenstate(m, s2))
            assert abs(np.vdot(ket, a)) ** 2 == pytest.approx(0.25, abs=1e-14)


def test_singlet_is_rotation_invariant(rng):
    s = singlet()
    for _ in range(100):
        n = unit(rng)
        assert measure_correlation(s, n, n) == pytest.approx(-1, abs=1e-14)


def _brute_correlation(a, n1, n2):
    # sum over outcome products with explicit eigenvectors
    total = 0.0
    for s1 in (1, -1):
        for s2 in (1, -1):
            ket = np.kron(spin_eigenstate(n1, s1), spin_eigenstate(n2, s2))
            total += s1 * s2 * abs(np.vdot(ket, a)) ** 2
    return total


def test_transformed_correlations(rng):
    for _ in range(100):
        d = rng.uniform(-math.pi, math.pi)
        s = relativistic_epr_massive(d)
        assert measure_correlation(s, [0, 1, 0], [0, 1, 0]) == pytest.approx(-1, abs=1e-14)
        assert measure_correlation(s, [0, 0, 1], [0, 0, 1]) == pytest.approx(-math.cos(2 * d), abs=1e-14)
        n1, n2 = unit(rng), unit(rng)
        assert measure_correlation(s, n1, n2) == pytest.approx(_brute_correlation(s.amplitudes, n1, n2), abs=1e-12)


def test_partner_state(rng):
    for _ in range(100):
        d = rng.uniform(-math.pi / 2, math.pi / 2)
        psi = post_measurement_partner(d, 1)
        assert psi == pytest.approx(np.array([math.sin(d), math.cos(d)]), abs=1e-14) or psi == pytest.approx(
            -np.array([math.sin(d), math.cos(d)]), abs=1e-14
        )
        n = [-math.sin(2 * d), 0, math.cos(2 * d)]
        assert np.vdot(psi, spin_matrix(n) @ psi).real == pytest.approx(-1, abs=1e-14)
        psi = post_measurement_partner(d, -1)
        n = [math.sin(2 * d), 0, -math.cos(2 * d)]
        assert np.vdot(psi, spin_matrix(n) @ psi).real == pytest.approx(-1, abs=1e-14)


def test_partner_state_quarter_turn():
    psi = post_measurement_partner(math.pi / 4, 1)
    # spin -1 along -x, i.e. +1 along +x
    assert abs(np.vdot(psi, SIGMA_X @ psi).real - 1) <= 1e-14
    assert abs(np.vdot(psi, SIGMA_Z @ psi).real) <= 1e-14
    with pytest.raises(ValueError):
        post_measurement_partner(0.1, 0)


def test_conditioning_on_impossible_outcome():
    with pytest.raises(ConditioningError):
        condition_on_outcome(product_state(UP, UP), SIGMA_Z, -1)


def test_polarization_kets_are_eigenstates(rng):
    for z in rng.uniform(-math.pi, math.pi, 50):
        p = polarization_matrix(z)
        for parity in (1, -1):
            k = linear_polarization_ket(z, parity)
            assert np.allclose(p @ k, parity * k, atol=1e-14)
    with pytest.raises(ValueError):
        linear_polarization_ket(0, 2)


def test_photon_epr_state_in_helicity_basis():
    s = photon_epr_state(0.4, 0.4)
    assert isinstance(s, PhotonPairAmplitudes)
    assert s.same_ray(PhotonPairAmplitudes(np.array([0, -1, 1, 0]) / math.sqrt(2)))
    assert expectation(s, polarization_matrix(0.4), polarization_matrix(0.4)) == pytest.approx(-1, abs=1e-14)


def test_helicity_probabilities_invariant(rng):
    base = photon_epr_state(0.0, 0.0)
    for _ in range(50):
        chi, phi = rng.uniform(0, 5), rng.uniform(0, 2 * math.pi)
        s = transform_pair_massless(chi, phi, xi=rng.uniform(0, 3))
        assert np.abs(s.amplitudes) ** 2 == pytest.approx(np.abs(base.amplitudes) ** 2, abs=1e-14)
        eps = epsilon_orthogonal(chi, phi)
        assert (s.zeta1, s.zeta2) == pytest.approx((eps, -eps), abs=1e-15)


def test_transform_pair_massless_labels_follow_zeta():
    s = transform_pair_massless(math.acosh(2), math.pi / 4, zeta=0.3)
    eps = math.atan(1 / 3)
    assert (s.zeta1, s.zeta2) == pytest.approx((0.3 + eps, 0.3 - eps), abs=1e-15)
    assert np.allclose(
        s.amplitudes,
        apply_local(photon_epr_state(0.3, 0.3), helicity_phase(eps), helicity_phase(-eps)).amplitudes,
        atol=1e-14,
    )


def test_local_observable_type_checks():
    with pytest.raises(ValueError):
        measure_correlation(singlet(), 0.3, 0.3)
    with pytest.raises(ValueError):
        measure_correlation(photon_epr_state(0, 0), [0, 0, 1], [0, 0, 1])
    with pytest.raises(ValueError):
        measure_correlation(singlet(), [0, 0, 2], [0, 0, 1])


@settings(max_examples=50)
@given(angles)
def test_same_ray_ignores_global_phase(p):
    s = singlet()
    t = SpinHalfAmplitudes(np.exp(1j * p) * s.amplitudes)
    assert s.same_ray(t)
