import numpy as np
import pytest

from wavefield.errors import PoleError
from wavefield.minkowski import (EPS, EPS_CONJ, GAMMA, IDENTITY4, METRIC, P_EPS,
                                 P_EPS_CONJ, P_LONG, P_MINUS, P_PLUS, SLASH_EPS,
                                 SLASH_EPS_CONJ, SLASH_K, WAVE_K, dot,
                                 longitudinal_project, slash, tanh_projector_identity,
                                 transverse_project, transverse_spectral, vector)

EPS64 = np.finfo(float).eps


def test_null_contractions_are_exact_zero():
    # these combinations cancel termwise, no rounding survives
    assert dot(EPS, EPS) == 0.0
    assert dot(EPS_CONJ, EPS_CONJ) == 0.0
    assert dot(WAVE_K, WAVE_K) == 0.0
    assert dot(WAVE_K, EPS) == 0.0
    assert dot(WAVE_K, EPS_CONJ) == 0.0


def test_normalization_within_rounding():
    # (1/sqrt 2)^2 + (1/sqrt 2)^2 is one ulp away from 1 in binary floats
    assert abs(dot(EPS, EPS_CONJ) - 1.0) <= 4 * EPS64


def test_dot_is_bilinear_not_sesquilinear():
    u = vector(1.0, 2.0j, 0.5, -1.0)
    assert dot(1j * u, u) == pytest.approx(1j * dot(u, u))


def test_projection_split():
    rng = np.random.default_rng(3)
    for _ in range(10):
        x = rng.normal(size=4) + 1j * rng.normal(size=4)
        t = transverse_project(x)
        l = longitudinal_project(x)
        assert np.allclose(t + l, x, atol=1e-14)
        assert abs(dot(WAVE_K, t)) < 1e-14
        assert t[2] == 0.0 and t[3] == 0.0


def test_clifford_relation_all_pairs():
    for mu in range(4):
        for nu in range(4):
            anti = GAMMA[mu] @ GAMMA[nu] + GAMMA[nu] @ GAMMA[mu]
            want = 2.0 * (METRIC[mu] if mu == nu else 0.0) * IDENTITY4
            assert np.max(np.abs(anti - want)) < 1e-12


def test_slash_squares_to_invariant():
    rng = np.random.default_rng(4)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    sq = slash(v) @ slash(v)
    assert np.allclose(sq, dot(v, v) * IDENTITY4, atol=1e-12)
    assert np.max(np.abs(SLASH_EPS @ SLASH_EPS)) < 1e-14
    assert np.max(np.abs(SLASH_K @ SLASH_K)) < 1e-14


def test_projector_algebra():
    assert np.max(np.abs(P_PLUS + P_MINUS - IDENTITY4)) <= 4 * EPS64
    assert np.max(np.abs(P_PLUS @ P_PLUS - P_PLUS)) < 1e-12
    assert np.max(np.abs(P_MINUS @ P_MINUS - P_MINUS)) < 1e-12
    assert np.max(np.abs(P_PLUS @ P_MINUS)) < 1e-12
    assert np.max(np.abs(P_MINUS @ P_PLUS)) < 1e-12
    # each projector annihilates one null slash per side and absorbs the other
    assert np.max(np.abs(SLASH_EPS @ P_PLUS)) < 1e-14
    assert np.max(np.abs(P_PLUS @ SLASH_EPS_CONJ)) < 1e-14
    assert np.max(np.abs(P_MINUS @ SLASH_EPS)) < 1e-14
    assert np.max(np.abs(SLASH_EPS_CONJ @ P_MINUS)) < 1e-14
    assert np.max(np.abs(P_PLUS @ SLASH_EPS - SLASH_EPS)) < 1e-14


def test_tanh_projector_identity_random_arguments():
    rng = np.random.default_rng(5)
    for _ in range(20):
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
        lhs, rhs = tanh_projector_identity(alpha)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_tanh_projector_identity_pole():
    with pytest.raises(PoleError):
        tanh_projector_identity(1j * np.pi)


def test_transverse_spectral_projectors():
    assert np.allclose(P_EPS @ EPS, EPS, atol=1e-14)
    assert np.max(np.abs(P_EPS @ EPS_CONJ)) < 1e-14
    assert np.allclose(P_EPS_CONJ @ EPS_CONJ, EPS_CONJ, atol=1e-14)
    assert np.allclose(P_EPS + P_EPS_CONJ + P_LONG, IDENTITY4, atol=1e-14)
    # spectral assembly reproduces a plain rotation on the transverse plane
    w = 0.8
    rot = transverse_spectral(np.exp(1j * w), np.exp(-1j * w), 1.0)
    x = vector(1.0, 0.0, 0.3, -0.2)
    out = rot @ x
    assert out[0] == pytest.approx(np.cos(w), abs=1e-14)
    assert out[1] == pytest.approx(-np.sin(w), abs=1e-14)
    assert out[2] == pytest.approx(0.3) and out[3] == pytest.approx(-0.2)
