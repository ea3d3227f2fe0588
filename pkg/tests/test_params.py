import math

import numpy as np
import pytest

from sgb.errors import DegenerateError, DomainError, ValidationError
from sgb.params import (
    CurvatureBounds,
    HypersurfaceData,
    R_of_t,
    check_thm13_condition,
    t_of_R,
    thm13_threshold,
    validate_pair,
)


def cb(n=2, k=2.0, K=1.0):
    return CurvatureBounds(n=n, k=k, K=K)


def hs(H=0.0, S=1.0, R=1.0):
    return HypersurfaceData(H_sigma=H, S_sigma=S, roll_R=R)


class TestConversions:
    def test_t_of_R_sqrt2(self):
        roll = t_of_R(cb(), hs(S=2.0, R=math.pi / 4))
        assert roll.t_R == pytest.approx(math.sqrt(2), rel=1e-12)
        assert roll.r == 1.0

    def test_t_of_R_torus_values(self):
        # S, R of the a=0.6 product torus; 0.6435011 = arctan(0.75)
        roll = t_of_R(cb(), hs(S=2.3403, R=0.6435))
        assert roll.t_R == pytest.approx(1.147350281385, rel=1e-9)
        assert roll.r == 1.0

    def test_R_of_t_values(self):
        assert R_of_t(cb(), 2.0, math.sqrt(2)) == pytest.approx(math.pi / 4, rel=1e-12)
        assert R_of_t(cb(), 1.0, 1.0) == pytest.approx(math.pi / 4, rel=1e-12)
        assert R_of_t(cb(), 1.0, 1e-12) == pytest.approx(1e-12, rel=1e-6)

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            K = float(rng.uniform(0.1, 9.0))
            S = float(rng.uniform(1e-3, 9.0))
            R = float(rng.uniform(0.02, 0.98) * math.pi / (2 * math.sqrt(K)))
            c = cb(K=K)
            roll = t_of_R(c, hs(S=S, R=R))
            assert R_of_t(c, S, roll.t_R) == pytest.approx(R, rel=1e-12)
            assert 0.0 < roll.r <= 1.0
            assert (roll.r == 1.0) == (roll.t_R >= 1.0)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            t_of_R(cb(K=1.0), hs(S=1.0, R=math.pi / 2))
        with pytest.raises(DomainError):
            t_of_R(cb(K=4.0), hs(S=1.0, R=math.pi / 4 + 0.1))
        with pytest.raises(DegenerateError):
            t_of_R(cb(), hs(S=0.0, R=0.5))
        with pytest.raises(DegenerateError):
            R_of_t(cb(), 0.0, 1.0)
        with pytest.raises(DomainError):
            R_of_t(cb(), 1.0, 0.0)


class TestThm13Condition:
    def test_clifford_true(self):
        # threshold arctan(0.5/sqrt(2)) ~ 0.33984 below the rolling radius pi/4
        assert thm13_threshold(cb(), 2.0) == pytest.approx(0.3398369094541219, rel=1e-12)
        assert check_thm13_condition(cb(), hs(S=2.0, R=math.pi / 4))

    def test_small_radius_false(self):
        assert not check_thm13_condition(cb(), hs(S=2.0, R=0.1))

    def test_large_S_limit(self):
        assert check_thm13_condition(cb(), hs(S=1e12, R=1e-3))

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            check_thm13_condition(cb(), hs(S=0.0))

    def test_monotone_in_R(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            K = float(rng.uniform(0.2, 5.0))
            S = float(rng.uniform(0.01, 5.0))
            R0 = float(rng.uniform(0.01, 1.2))
            R1 = R0 + float(rng.uniform(0.0, 1.0))
            c = cb(K=K)
            if check_thm13_condition(c, hs(S=S, R=R0)):
                assert check_thm13_condition(c, hs(S=S, R=R1))


class TestValidation:
    def test_curvature_bounds_invariants(self):
        for bad in (dict(n=0), dict(k=0.0), dict(k=-1.0), dict(K=0.0)):
            with pytest.raises(ValidationError):
                CurvatureBounds(**{**dict(n=2, k=2.0, K=1.0), **bad})

    def test_unit_sphere_preset(self):
        c = CurvatureBounds.unit_sphere(3)
        assert c.k == 3.0 and c.K == 1.0 and c.is_unit_sphere

    def test_hypersurface_invariants(self):
        for bad in (dict(H_sigma=-0.1), dict(S_sigma=-0.1), dict(roll_R=0.0)):
            with pytest.raises(ValidationError):
                HypersurfaceData(**{**dict(H_sigma=0.0, S_sigma=1.0, roll_R=1.0), **bad})

    def test_cauchy_pair_check(self):
        validate_pair(cb(), hs(H=math.sqrt(2.0), S=1.0))  # H^2 = nS boundary
        with pytest.raises(ValidationError):
            validate_pair(cb(), hs(H=1.5, S=1.0))  # 2*1 < 2.25
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            S = float(rng.uniform(1e-3, 5.0))
            H = float(rng.uniform(0.0, 1.0)) * math.sqrt(n * S)
            validate_pair(cb(n=n), hs(H=H, S=S))
