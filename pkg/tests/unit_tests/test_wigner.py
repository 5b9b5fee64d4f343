import math

import pytest
import numpy as np
from hypothesis import given, strategies as st

from boostcoh.basics import (
    IDENTITY,
    X_HAT,
    Y_HAT,
    Z_HAT,
    BoostParams,
    InvalidKinematicsError,
    ParticleKinematics,
)
from boostcoh.wigner import (
    so3_from_su2,
    su2_parameters_from_so3,
    wigner_1d,
    wigner_3d_zboost,
    wigner_from_boost_product,
    wigner_general,
)


def _random_unit_vector(rng):
    v = rng.normal(size=3)
    return tuple(v / np.linalg.norm(v))


def _assert_su2(d, atol=1e-12):
    assert np.allclose(d.conj().T @ d, IDENTITY, rtol=0, atol=atol)
    assert abs(np.linalg.det(d) - 1.0) < atol


@pytest.mark.parametrize("beta", [0.0, 0.3, 2.0])
def test_no_boost_no_rotation(beta):
    rotation = wigner_general(BoostParams(0.0), ParticleKinematics(1.0), beta)
    assert rotation.cos_half == pytest.approx(1.0, abs=1e-15)
    assert rotation.sin_half == 0.0
    assert rotation.axis == Y_HAT


@pytest.mark.parametrize("alpha", [0.0, 0.5, 4.0])
def test_particle_at_rest_no_rotation(alpha):
    rotation = wigner_general(BoostParams(alpha), ParticleKinematics(1.0), 0.0)
    assert rotation.cos_half == pytest.approx(1.0, abs=1e-15)
    assert rotation.sin_half == 0.0


def test_collinear_boosts_do_not_rotate():
    rotation = wigner_general(BoostParams(1.2), ParticleKinematics(1.0, Z_HAT), 0.7)
    assert rotation.sin_half == 0.0
    assert rotation.cos_half == pytest.approx(1.0, abs=1e-14)


def test_general_rotation_substitution():
    alpha, beta = 1.0, 0.5
    rotation = wigner_general(BoostParams(alpha), ParticleKinematics(1.0, X_HAT), beta)
    denom = math.sqrt(0.5 + 0.5 * math.cosh(alpha) * math.cosh(beta))
    assert rotation.cos_half == pytest.approx(
        math.cosh(alpha / 2) * math.cosh(beta / 2) / denom, abs=1e-15
    )
    assert rotation.sin_half == pytest.approx(
        math.sinh(alpha / 2) * math.sinh(beta / 2) / denom, abs=1e-15
    )
    # ẑ × x̂ = ŷ
    assert np.allclose(rotation.axis, Y_HAT, atol=1e-15)
    assert rotation.cos_half**2 + rotation.sin_half**2 == pytest.approx(1.0, abs=1e-12)


def test_general_rejects_negative_beta():
    with pytest.raises(InvalidKinematicsError):
        wigner_general(BoostParams(1.0), ParticleKinematics(1.0), -0.1)


@pytest.mark.parametrize("alpha, p", [(0.0, 0.3), (1.0, 0.0)])
def test_wigner_1d_trivial_cases(alpha, p):
    rotation = wigner_1d(BoostParams(alpha), p, 0.5)
    assert rotation.cos_half == pytest.approx(1.0, abs=1e-15)
    assert rotation.sin_half == 0.0
    assert rotation.axis == Y_HAT


def test_wigner_1d_matches_general():
    m = 0.5
    boost = BoostParams(1.0)
    p = 0.1 * m
    rotation = wigner_1d(boost, p, m)
    general = wigner_general(boost, ParticleKinematics(m, X_HAT), math.asinh(p / m))
    assert rotation.cos_half == pytest.approx(general.cos_half, abs=1e-14)
    assert rotation.sin_half == pytest.approx(general.sin_half, abs=1e-14)


def test_wigner_1d_is_odd_in_momentum():
    boost = BoostParams(2.0)
    plus = wigner_1d(boost, 0.3, 0.5)
    minus = wigner_1d(boost, -0.3, 0.5)
    assert minus.cos_half == plus.cos_half
    assert minus.sin_half == -plus.sin_half
    assert minus.angle == pytest.approx(-plus.angle)


def test_wigner_1d_small_momentum_limit():
    alpha, m = 1.7, 0.5
    p = 1e-4 * m
    rotation = wigner_1d(BoostParams(alpha), p, m)
    # Leading order: tanh(α/2) p / (2m)
    expected = math.tanh(alpha / 2) * p / (2 * m)
    assert rotation.sin_half == pytest.approx(expected, rel=1e-6)


def test_wigner_1d_rejects_bad_input():
    with pytest.raises(InvalidKinematicsError):
        wigner_1d(BoostParams(1.0), 0.1, 0.0)
    with pytest.raises(InvalidKinematicsError):
        wigner_1d(BoostParams(1.0, X_HAT), 0.1, 0.5)


def test_wigner_3d_identity_without_boost():
    d = wigner_3d_zboost(BoostParams(0.0), (0.3, -0.2, 0.7), 0.5)
    assert np.allclose(d, IDENTITY, rtol=0, atol=1e-15)


@pytest.mark.parametrize("alpha", [0.5, 3.0])
def test_wigner_3d_collinear_momentum_is_identity(alpha):
    d = wigner_3d_zboost(BoostParams(alpha), (0.0, 0.0, 0.8), 0.5)
    assert np.allclose(d, IDENTITY, rtol=0, atol=1e-13)


@pytest.mark.parametrize("alpha, px", [(1.0, 0.05), (2.5, -0.4), (0.3, 3.0)])
def test_wigner_3d_reduces_to_1d(alpha, px):
    boost = BoostParams(alpha)
    d = wigner_3d_zboost(boost, (px, 0.0, 0.0), 0.5)
    assert np.allclose(d, wigner_1d(boost, px, 0.5).matrix(), rtol=0, atol=1e-13)


@given(
    st.floats(min_value=0.0, max_value=6.0),
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=-5.0, max_value=5.0),
)
def test_wigner_3d_is_su2(alpha, px, py, pz):
    _assert_su2(wigner_3d_zboost(BoostParams(alpha), (px, py, pz), 0.5))


@given(st.floats(min_value=0.0, max_value=6.0), st.floats(min_value=-20, max_value=20))
def test_wigner_1d_is_su2(alpha, p):
    rotation = wigner_1d(BoostParams(alpha), p, 0.5)
    _assert_su2(rotation.matrix())


def test_general_rotation_is_su2_for_random_directions():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        boost = BoostParams(rng.uniform(0, 5), _random_unit_vector(rng))
        kin = ParticleKinematics(rng.uniform(0.1, 2), _random_unit_vector(rng))
        rotation = wigner_general(boost, kin, rng.uniform(0, 5))
        _assert_su2(rotation.matrix())
        assert rotation.sin_half >= 0


def test_general_rotation_matches_boost_product():
    rng = np.random.default_rng(7)
    signs = set()
    for _ in range(1000):
        boost = BoostParams(rng.uniform(0, 3), _random_unit_vector(rng))
        kin = ParticleKinematics(rng.uniform(0.1, 2), _random_unit_vector(rng))
        beta = rng.uniform(0, 3)

        rotation = wigner_general(boost, kin, beta)
        spatial = wigner_from_boost_product(boost, kin, beta)
        # W is a pure rotation
        assert np.allclose(spatial @ spatial.T, np.eye(3), rtol=0, atol=1e-10)

        cos_half, vector = su2_parameters_from_so3(spatial)
        assert rotation.cos_half == pytest.approx(cos_half, abs=1e-10)
        if rotation.sin_half > 1e-3:
            sign = np.sign(np.dot(rotation.rotation_vector, vector))
            signs.add(sign)
            assert np.allclose(
                rotation.rotation_vector, sign * vector, rtol=0, atol=1e-10
            )
    # One orientation convention for all samples
    assert len(signs) == 1


def test_so3_from_su2_of_rotation_about_y():
    rotation = wigner_1d(BoostParams(1.5), 0.4, 0.5)
    r = so3_from_su2(rotation.matrix())
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-12)
    assert np.allclose(r[:, 1], Y_HAT, atol=1e-12)
    assert np.trace(r) == pytest.approx(1 + 2 * math.cos(rotation.angle), abs=1e-12)
