import math

import pytest
import numpy as np

from boostcoh.basics import (
    THERMAL_NEUTRON_SIGMA_MEV,
    UCN_SIGMA_MEV,
    X_HAT,
    BoostParams,
    GaussianPacket,
    InvalidKinematicsError,
    PacketDimension,
    QuadratureError,
)
from boostcoh.wigner import wigner_1d
from boostcoh.srdm import (
    QuadratureConfig,
    QuadratureScheme,
    SrdmIntegrandTerms1D,
    SrdmIntegrandTerms3D,
    analytic_deficit_1d,
    coherence_deficit_narrow,
    integrate_srdm_1d,
    integrate_srdm_3d,
    srdm_analytic_1d,
    srdm_boosted_1d,
    srdm_boosted_3d,
    srdm_narrow_3d,
)


ELECTRON = 0.5
NEUTRON = 939.36


def packet_1d(sigma, center=0.0):
    return GaussianPacket(PacketDimension.ONE_D, sigma, center)


def test_integrand_identities_1d():
    rng = np.random.default_rng(3)
    for alpha in rng.uniform(0, 4, size=10):
        terms = SrdmIntegrandTerms1D(alpha, ELECTRON)
        p = rng.normal(scale=2.0, size=1000)
        a_sq, b_sq, ab = terms.a_sq(p), terms.b_sq(p), terms.ab(p)
        assert np.allclose(a_sq + b_sq, 2.0, rtol=1e-12, atol=0)
        # A_p B_p = √(A_p² B_p²) pointwise
        assert np.allclose(ab**2, a_sq * b_sq, rtol=1e-12, atol=0)
        assert np.all(a_sq * b_sq >= 0)
        assert np.allclose(terms.one_minus_ab(p), 1.0 - ab, rtol=0, atol=1e-14)


def test_integrand_stacked_columns():
    terms = SrdmIntegrandTerms1D(1.3, ELECTRON)
    p = np.array([-0.2, 0.0, 0.7])
    stacked = terms.stacked(p)
    assert stacked.shape == (3, 4)
    assert np.array_equal(stacked[:, 3], terms.sin_phi(p))
    assert np.array_equal(stacked[:, 0], 1.0 + terms.sin_phi(p))
    assert terms.stacked(0.1).shape == (1, 4)


def test_one_minus_ab_keeps_precision_for_narrow_packets():
    terms = SrdmIntegrandTerms1D(2.0, NEUTRON)
    p = 1e-9
    x = p / NEUTRON
    expected = math.tanh(1.0) ** 2 * x * x / 2
    assert terms.one_minus_ab(p) == pytest.approx(expected, rel=1e-10)


def test_integrand_identities_3d():
    rng = np.random.default_rng(5)
    for alpha in rng.uniform(0, 4, size=10):
        terms = SrdmIntegrandTerms3D(alpha, ELECTRON)
        p_z = rng.normal(scale=2.0, size=1000)
        p_perp_sq = rng.exponential(scale=2.0, size=1000)
        total = terms.m_term(p_z, p_perp_sq) + terms.n_term(p_z, p_perp_sq)
        assert np.allclose(total, terms.ab_term(p_z, p_perp_sq), rtol=1e-12, atol=0)
        stacked = terms.stacked(p_z, p_perp_sq)
        assert np.allclose(stacked.sum(axis=-1), 1.0, rtol=1e-12, atol=0)


def test_integrands_reject_massless_particles():
    with pytest.raises(InvalidKinematicsError):
        SrdmIntegrandTerms1D(1.0, 0.0)
    with pytest.raises(InvalidKinematicsError):
        SrdmIntegrandTerms3D(1.0, -1.0)


@pytest.mark.parametrize("sigma, center", [(0.1, 0.0), (0.3, 0.2887), (0.5, -0.4)])
def test_no_boost_keeps_initial_state(sigma, center):
    rho = srdm_boosted_1d(packet_1d(sigma, center), BoostParams(0.0), ELECTRON)
    assert np.allclose(rho.matrix, 0.5, rtol=0, atol=1e-14)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 5.0])
def test_sharp_packet_at_rest_is_not_rotated(alpha):
    result = integrate_srdm_1d(packet_1d(0.0), BoostParams(alpha), ELECTRON)
    assert np.allclose(result.density.matrix, 0.5, rtol=0, atol=1e-15)
    assert result.deficit == 0.0
    assert result.error == 0.0


@pytest.mark.parametrize("alpha", [0.5, 2.0, 5.0])
def test_sharp_packet_with_momentum_is_purely_rotated(alpha):
    center = 1.0 / (2.0 * math.sqrt(3.0))
    boost = BoostParams(alpha)
    rho = srdm_boosted_1d(packet_1d(0.0, center), boost, ELECTRON)
    rotation = wigner_1d(boost, center, ELECTRON)
    expected = 0.5 * (rotation.cos_half**2 - rotation.sin_half**2)
    assert rho.rho12.real == pytest.approx(expected, abs=1e-15)
    assert rho.purity == pytest.approx(1.0, abs=1e-14)


def test_sharp_branch_is_the_limit_of_narrow_packets():
    center = 0.2
    boost = BoostParams(1.5)
    sharp = srdm_boosted_1d(packet_1d(0.0, center), boost, ELECTRON)
    narrow = srdm_boosted_1d(packet_1d(1e-6, center), boost, ELECTRON)
    assert np.allclose(sharp.matrix, narrow.matrix, rtol=0, atol=1e-11)


@pytest.mark.parametrize(
    "alpha, sigma, center",
    [(1.0, 0.25, 0.0), (3.0, 0.5, 0.2887), (5.0, 0.1, 0.2887), (0.2, 0.5, -0.3)],
)
def test_boosted_1d_is_a_valid_state(alpha, sigma, center):
    result = integrate_srdm_1d(packet_1d(sigma, center), BoostParams(alpha), ELECTRON)
    rho = result.density
    assert rho.rho11 + rho.rho22 == pytest.approx(1.0, abs=1e-10)
    assert rho.min_eigenvalue >= -1e-10
    assert rho.rho12.imag == 0.0
    assert 0 <= result.deficit <= 1
    assert result.error <= 1e-10
    length = math.hypot(2 * rho.rho12.real, rho.rho11 - rho.rho22)
    assert result.deficit == pytest.approx(1.0 - length, abs=1e-12)


def test_boosted_1d_rejects_other_geometries():
    with pytest.raises(InvalidKinematicsError):
        srdm_boosted_1d(packet_1d(0.1), BoostParams(1.0, X_HAT), ELECTRON)
    with pytest.raises(InvalidKinematicsError):
        srdm_boosted_1d(
            GaussianPacket(PacketDimension.THREE_D, 0.1), BoostParams(1.0), ELECTRON
        )


def test_boosted_1d_reports_quadrature_failure():
    quad = QuadratureConfig(max_refinements=1, rel_tol=1e-300)
    with pytest.raises(QuadratureError):
        srdm_boosted_1d(packet_1d(0.5), BoostParams(2.0), ELECTRON, quad)


@pytest.mark.parametrize("alpha", [0.5, 5.0])
@pytest.mark.parametrize("ratio", [3.0, 10.0])
def test_wide_1d_packets_fall_back_to_simpson(alpha, ratio):
    packet = packet_1d(ratio * ELECTRON)
    result = integrate_srdm_1d(packet, BoostParams(alpha), ELECTRON)
    simpson = QuadratureConfig(scheme=QuadratureScheme.ADAPTIVE_SIMPSON)
    reference = srdm_boosted_1d(packet, BoostParams(alpha), ELECTRON, simpson)
    assert np.allclose(result.density.matrix, reference.matrix, rtol=0, atol=1e-9)
    assert result.error <= 1e-10
    assert 0 < result.deficit < 1


def test_boosted_1d_monotone_for_centered_packet():
    alphas = np.linspace(0, 5, 8)
    sigmas = np.linspace(0.05, 0.5, 8)
    rho12 = np.array(
        [
            [
                srdm_boosted_1d(packet_1d(s), BoostParams(a), ELECTRON).rho12.real
                for s in sigmas
            ]
            for a in alphas
        ]
    )
    assert np.all(np.diff(rho12, axis=0) <= 1e-15)
    assert np.all(np.diff(rho12[1:], axis=1) <= 1e-15)


@pytest.mark.parametrize("alpha, sigma", [(1.0, 0.2), (3.0, 0.5), (4.0, 0.05)])
@pytest.mark.parametrize("center", [0.0, 0.2887])
def test_simpson_agrees_with_gauss_hermite_1d(alpha, sigma, center):
    packet = packet_1d(sigma, center)
    boost = BoostParams(alpha)
    simpson = QuadratureConfig(scheme=QuadratureScheme.ADAPTIVE_SIMPSON)
    hermite = srdm_boosted_1d(packet, boost, ELECTRON)
    adaptive = srdm_boosted_1d(packet, boost, ELECTRON, simpson)
    assert np.allclose(hermite.matrix, adaptive.matrix, rtol=0, atol=1e-9)


def test_analytic_1d_values():
    assert srdm_analytic_1d(0.0, 0.3, ELECTRON).rho12 == 0.5
    assert srdm_analytic_1d(2.0, 0.0, ELECTRON).rho12 == 0.5
    rho = srdm_analytic_1d(2.0, 0.1 * ELECTRON, ELECTRON)
    ratio = (math.cosh(2.0) - 1) / (math.cosh(2.0) + 1)
    assert rho.rho12.real == pytest.approx(0.5 - ratio * 0.01 / 8, abs=1e-16)
    assert rho.rho11 == rho.rho22 == 0.5
    assert analytic_deficit_1d(2.0, 0.05, ELECTRON) == pytest.approx(
        ratio * 0.01 / 4, rel=1e-14
    )


def test_analytic_1d_agrees_with_quadrature_to_fourth_order():
    rho = srdm_boosted_1d(packet_1d(0.1 * ELECTRON), BoostParams(2.0), ELECTRON)
    analytic = srdm_analytic_1d(2.0, 0.1 * ELECTRON, ELECTRON)
    assert rho.rho12.real == pytest.approx(analytic.rho12.real, rel=1e-4)


@pytest.mark.parametrize("alpha", [0.0, 2.0])
def test_3d_trivial_limits(alpha):
    sharp = integrate_srdm_3d(0.0, BoostParams(alpha), NEUTRON)
    assert (sharp.density.rho11, sharp.density.rho22) == (1.0, 0.0)
    assert sharp.deficit == 0.0
    if alpha == 0.0:
        rho = srdm_boosted_3d(50.0, BoostParams(alpha), NEUTRON)
        assert rho.rho11 == pytest.approx(1.0, abs=1e-13)
        assert rho.rho22 == 0.0


@pytest.mark.parametrize("alpha, sigma", [(1.0, 50.0), (3.0, 100.0), (5.0, 10.0)])
def test_3d_is_a_valid_diagonal_state(alpha, sigma):
    result = integrate_srdm_3d(sigma, BoostParams(alpha), NEUTRON)
    rho = result.density
    assert rho.rho12 == 0
    assert rho.rho11 + rho.rho22 == pytest.approx(1.0, abs=1e-10)
    assert rho.rho22 > 0
    assert result.deficit == pytest.approx(2 * rho.rho22, rel=1e-6)


def test_3d_narrow_packet_population():
    alpha, sigma = 2.0, 1.0
    result = integrate_srdm_3d(sigma, BoostParams(alpha), NEUTRON)
    narrow = coherence_deficit_narrow(alpha, sigma, NEUTRON)
    # The flipped population is (σ/(2m) tanh(α/2))² to leading order
    assert result.density.rho22 == pytest.approx(narrow, rel=1e-4)
    assert result.deficit == pytest.approx(2 * narrow, rel=1e-4)


def test_3d_failure_carries_a_finite_estimate():
    # Wide packets exhaust the Gauss-Laguerre orders scipy can represent
    with pytest.raises(QuadratureError) as excinfo:
        integrate_srdm_3d(1.0, BoostParams(5.0), ELECTRON)
    assert math.isfinite(excinfo.value.estimate)
    assert excinfo.value.estimate > 1e-10


def test_3d_rejects_negative_width():
    with pytest.raises(InvalidKinematicsError):
        srdm_boosted_3d(-1.0, BoostParams(1.0), NEUTRON)


def test_3d_simpson_agrees_with_gauss_hermite():
    boost = BoostParams(3.0)
    simpson = QuadratureConfig(scheme=QuadratureScheme.ADAPTIVE_SIMPSON, rel_tol=1e-9)
    hermite = srdm_boosted_3d(50.0, boost, NEUTRON)
    adaptive = srdm_boosted_3d(50.0, boost, NEUTRON, simpson)
    assert np.allclose(hermite.matrix, adaptive.matrix, rtol=0, atol=1e-9)


def test_narrow_3d_values():
    alpha = 2 * math.atanh(0.5)
    rho = srdm_narrow_3d(alpha, 0.4, 1.0)
    assert rho.rho11 == pytest.approx(0.995, abs=1e-15)
    assert rho.rho22 == pytest.approx(0.005, abs=1e-15)
    assert srdm_narrow_3d(0.0, 10.0, NEUTRON).rho11 == 1.0


@pytest.mark.parametrize(
    "sigma, expected",
    [(UCN_SIGMA_MEV, 2.5498e-32), (THERMAL_NEUTRON_SIGMA_MEV, 1.7707e-22)],
)
def test_narrow_deficit_for_neutrons(sigma, expected):
    # tanh(α/2) → 1
    deficit = coherence_deficit_narrow(1e3, sigma, NEUTRON)
    assert deficit == pytest.approx(expected, rel=1e-4)
    assert coherence_deficit_narrow(0.0, sigma, NEUTRON) == 0.0
