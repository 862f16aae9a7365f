import math

import numpy as np
import pytest
import scipy.linalg

from quaplectic.kinematics import (BoostParams, PhysicalConstants, born_form,
                                   born_metric, force_boost,
                                   infinitesimal_transform, phase_scale_matrix,
                                   planck_scales, pure_boost, velocity_boost)

K = PhysicalConstants(c=1.3, b=0.7, hbar=1.1)


class TestPlanckScales:
    def test_natural_units(self):
        assert planck_scales(PhysicalConstants()) == (1.0, 1.0, 1.0, 1.0)

    def test_spot_values(self):
        lt, lq, lp, le = planck_scales(PhysicalConstants(c=2.0, b=1.0, hbar=1.0))
        assert lt == pytest.approx(math.sqrt(0.5))
        assert lq == pytest.approx(math.sqrt(2.0))
        assert lp == pytest.approx(math.sqrt(0.5))
        assert le == pytest.approx(math.sqrt(2.0))

    def test_identities_random(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            c, b, h = np.exp(rng.normal(size=3))
            lt, lq, lp, le = planck_scales(PhysicalConstants(c=c, b=b, hbar=h))
            assert lq * lp == pytest.approx(h, rel=1e-12)
            assert lt * le == pytest.approx(h, rel=1e-12)
            assert lq / lt == pytest.approx(c, rel=1e-12)
            assert lp / lt == pytest.approx(b, rel=1e-12)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            PhysicalConstants(c=-1.0)


class TestInfinitesimal:
    def test_zero_params_identity_generator(self):
        M = infinitesimal_transform(BoostParams())
        assert np.allclose(M, 0)

    def test_energy_row_velocity_only(self):
        # beta = (b1, 0, 0): E row picks up c * beta * P1 with corrections on
        M = infinitesimal_transform(BoostParams(beta=(0.4, 0, 0)), K)
        assert M[1, 5] == pytest.approx(K.c * 0.4)
        assert M[1, 2] == 0.0

    def test_uncorrected_variant_differs(self):
        M = infinitesimal_transform(BoostParams(beta=(0.4, 0, 0)), K, corrections=False)
        assert M[1, 5] == pytest.approx(K.b * 0.4)

    def test_finite_difference_of_pure_boost(self):
        beta, gamma = (0.3, 0.1, -0.2), (0.2, -0.4, 0.1)
        M = infinitesimal_transform(BoostParams(beta=beta, gamma=gamma), K)
        h = 1e-5
        plus = pure_boost([x * h for x in beta], [x * h for x in gamma], K)
        minus = pure_boost([-x * h for x in beta], [-x * h for x in gamma], K)
        assert np.max(np.abs((plus - minus) / (2 * h) - M)) < 1e-8

    def test_rotation_term_placement(self):
        Mc = infinitesimal_transform(BoostParams(alpha=(0, 0, 0.3)), K)
        # corrected: rotations act on Q and on P blocks alike
        assert Mc[2, 3] != 0 and Mc[5, 6] != 0 and Mc[5, 3] == 0
        Mp = infinitesimal_transform(BoostParams(alpha=(0, 0, 0.3)), K, corrections=False)
        assert Mp[5, 3] != 0 and Mp[5, 6] == 0


class TestPureBoost:
    def test_zero_is_identity(self):
        assert np.allclose(pure_boost((0, 0, 0), (0, 0, 0), K), np.eye(8))

    def test_velocity_limit_exact(self):
        beta = (0.3, -0.2, 0.5)
        d = np.max(np.abs(pure_boost(beta, (0, 0, 0), K) - velocity_boost(beta, K)))
        assert d < 1e-14

    def test_force_limit_exact(self):
        gamma = (0.1, 0.4, -0.3)
        d = np.max(np.abs(pure_boost((0, 0, 0), gamma, K) - force_boost(gamma, K)))
        assert d < 1e-14

    def test_matches_matrix_exponential(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(30):
            beta = rng.normal(size=3, scale=0.7)
            gamma = rng.normal(size=3, scale=0.7)
            if math.sqrt(float(np.sum(beta ** 2 + gamma ** 2))) > 3.0:
                continue
            M = infinitesimal_transform(BoostParams(beta=tuple(beta), gamma=tuple(gamma)), K)
            worst = max(worst, float(np.max(np.abs(pure_boost(beta, gamma, K)
                                                   - scipy.linalg.expm(M)))))
        assert worst < 1e-8

    def test_small_omega_series(self):
        B = pure_boost((1e-6, 0, 0), (0, 1e-7, 0), K)
        M = infinitesimal_transform(BoostParams(beta=(1e-6, 0, 0), gamma=(0, 1e-7, 0)), K)
        assert np.max(np.abs(B - scipy.linalg.expm(M))) < 1e-15

    def test_mixed_boost_has_cross_block(self):
        B = pure_boost((0.6, 0, 0), (0, 0.6, 0), K)
        # Q1 row picks up a P2 component only through the cross term
        assert abs(B[2, 6]) > 1e-3


class TestBornForm:
    def test_zero_vector(self):
        assert born_form(np.zeros(8), K) == 0.0

    def test_null_vector_natural_units(self):
        v = np.array([1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        assert born_form(v, PhysicalConstants()) == 0.0

    def test_invariance_sweep(self):
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(60):
            beta = rng.normal(size=3, scale=0.6)
            gamma = rng.normal(size=3, scale=0.6)
            B = pure_boost(beta, gamma, K)
            v = rng.normal(size=8, scale=2.0)
            worst = max(worst, abs(born_form(B @ v, K) - born_form(v, K)))
        assert worst < 1e-10

    def test_metric_signature(self):
        d = np.diag(born_metric(PhysicalConstants()))
        assert list(np.sign(d)) == [-1, -1, 1, 1, 1, 1, 1, 1]


def test_unit_scaling_covariance():
    k = PhysicalConstants(c=2.1, b=0.4, hbar=1.7)
    beta, gamma = (0.3, 0.1, -0.2), (0.2, -0.4, 0.1)
    D = phase_scale_matrix(k)
    B = pure_boost(beta, gamma, k)
    Bn = pure_boost(beta, gamma, PhysicalConstants())
    assert np.max(np.abs(np.linalg.solve(D, B @ D) - Bn)) < 1e-12
