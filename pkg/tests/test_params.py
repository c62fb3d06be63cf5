import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from circumnav import (
    DesignParams,
    compute_delta_bound,
    compute_gain_k,
    kappa_threshold,
    min_safe_bearing,
    validate_radii,
)
from circumnav.errors import (
    DeltaBoundError,
    GeometricMeanError,
    GeometryError,
    OrderingError,
    TriangleError,
)
from conftest import random_radii


def mp_delta(r_d, r_a, r_s):
    mpmath.mp.dps = 50
    r_d, r_a, r_s = (mpmath.mpf(str(v)) for v in (r_d, r_a, r_s))
    beta = mpmath.sqrt(r_d**2 - r_a**2) / r_a
    return float(mpmath.atan(beta) / beta + mpmath.log(r_d / r_a) - r_s / r_a)


class TestValidateRadii:
    def test_reference_radii(self):
        r = validate_radii(1.0, 0.7, 0.4)
        assert (r.r_d, r.r_a, r.r_s) == (1.0, 0.7, 0.4)

    def test_triangle_violation(self):
        with pytest.raises(TriangleError, match="r_d < r_s \\+ r_a"):
            validate_radii(1.0, 0.7, 0.2)

    def test_geometric_mean_violation(self):
        with pytest.raises(GeometricMeanError, match="r_a\\^2 > r_d\\*r_s") as info:
            validate_radii(1.0, 0.7, 0.5)
        # both sides of the inequality are reported
        assert "0.49" in str(info.value) and "0.5" in str(info.value)

    @pytest.mark.parametrize("radii", [(0.7, 1.0, 0.4), (1.0, 0.4, 0.7), (1.0, 0.7, -0.1), (1.0, 0.7, math.nan)])
    def test_ordering_violation(self, radii):
        with pytest.raises(OrderingError):
            validate_radii(*radii)

    def test_equality_is_rejected(self):
        # r_d == r_s + r_a exactly
        with pytest.raises(TriangleError):
            validate_radii(1.0, 0.75, 0.25)

    def test_errors_share_a_base(self):
        for cls in (OrderingError, TriangleError, GeometricMeanError):
            assert issubclass(cls, GeometryError) and cls.condition


class TestGainK:
    def test_reference(self, radii):
        assert compute_gain_k(radii) == pytest.approx(1.4003, abs=5e-5)

    def test_unit(self):
        assert compute_gain_k(validate_radii(math.sqrt(2.0), 1.0, 0.5)) == pytest.approx(1.0, rel=1e-15)

    def test_scaled_case(self):
        # k depends only on r_d and r_a; r_s chosen to keep the triple valid
        assert compute_gain_k(validate_radii(2.0, 1.5, 1.1)) == pytest.approx(0.755928946018454, rel=1e-14)

    def test_cos_asin_identity(self):
        for r in random_radii(np.random.default_rng(1), 1000):
            k = compute_gain_k(r)
            assert abs(k * math.cos(math.asin(r.r_a / r.r_d)) - 1.0 / r.r_d) <= 1e-12 * max(1.0, 1.0 / r.r_d)


class TestDeltaBound:
    def test_reference(self, radii):
        assert compute_delta_bound(radii) == pytest.approx(0.5649, abs=5e-5)

    def test_high_precision_oracle(self):
        r = validate_radii(2.0, 1.5, 1.1)
        assert abs(compute_delta_bound(r) - mp_delta(2.0, 1.5, 1.1)) < 1e-12

    def test_strictly_between_zero_and_one(self):
        radii = random_radii(np.random.default_rng(7), 1000)
        values = np.array([compute_delta_bound(r) for r in radii])
        assert np.all(values > 0.0) and np.all(values < 1.0)

    def test_matches_direct_evaluation(self):
        for r in random_radii(np.random.default_rng(3), 200):
            assert abs(compute_delta_bound(r) - mp_delta(r.r_d, r.r_a, r.r_s)) < 1e-12

    def test_near_degenerate_corner(self):
        # r_d -> r_a+, r_s -> r_a-: Delta shrinks but stays positive
        r = validate_radii(1.0 + 1e-6, 1.0, 1.0 - 1e-6)
        assert 0.0 < compute_delta_bound(r) < 1.0


class TestMinSafeBearing:
    def test_reference(self, radii):
        assert min_safe_bearing(radii) == pytest.approx(0.608245578910210, abs=1e-12)
        assert math.degrees(min_safe_bearing(radii)) == pytest.approx(34.85, abs=5e-3)

    def test_half_ratio(self):
        assert min_safe_bearing(validate_radii(1.0, 0.8, 0.4)) == pytest.approx(math.pi / 6, rel=1e-15)

    def test_chord_inversion(self, radii):
        assert radii.r_a * math.sin(min_safe_bearing(radii)) == pytest.approx(radii.r_s, rel=1e-15)

    @given(
        st.floats(0.5, 5.0),
        st.floats(0.05, 0.95),
        st.floats(0.001, 0.02),
    )
    def test_monotone(self, r_a, frac, bump):
        r_s = frac * r_a
        r_d = r_a * 1.0001
        base = validate_radii(r_d, r_a, r_s)
        more_rs = validate_radii(r_d, r_a, r_s * (1 + bump))
        more_ra = validate_radii(r_d * (1 + bump), r_a * (1 + bump), r_s)
        assert min_safe_bearing(more_rs) > min_safe_bearing(base)
        assert min_safe_bearing(more_ra) < min_safe_bearing(base)


class TestKappaThreshold:
    def test_reference(self, radii):
        k = compute_gain_k(radii)
        assert kappa_threshold(k, 0.6, 0.5, 0.7891) == pytest.approx(0.0433, abs=5e-5)

    def test_no_attenuation(self):
        assert kappa_threshold(1.3, 0.7, 0.4, 0.0) == pytest.approx(1.3 * 0.7 * 0.16, rel=1e-15)

    def test_derived(self):
        assert kappa_threshold(1.0, 1.0, 0.25, 0.5) == pytest.approx(0.022992465073215145, rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            kappa_threshold(1.0, 0.0, 0.5, 0.1)


class TestDesignParams:
    def test_derived_fields(self, radii):
        p = DesignParams(radii, 0.6, 0.05, 0.5)
        assert p.k == compute_gain_k(radii)
        assert p.k == 1.0 / math.sqrt(radii.r_d**2 - radii.r_a**2)
        assert p.Delta == compute_delta_bound(radii)

    def test_auto_delta(self, radii):
        p = DesignParams(radii, 0.6, 0.05)
        assert p.delta == pytest.approx(0.9 * compute_delta_bound(radii), rel=1e-15)

    def test_delta_above_bound(self, radii):
        with pytest.raises(DeltaBoundError, match="0.5649") as info:
            DesignParams(radii, 0.6, 0.05, 0.6)
        assert info.value.Delta == compute_delta_bound(radii)

    def test_delta_equal_to_bound_is_accepted(self, radii):
        D = compute_delta_bound(radii)
        assert DesignParams(radii, 0.6, 0.05, D).delta == D

    @pytest.mark.parametrize("kw", [dict(V=0.0), dict(kappa=0.0), dict(kappa=-1.0), dict(delta=0.0)])
    def test_rejects_bad_values(self, radii, kw):
        args = dict(V=0.6, kappa=0.05, delta=0.5) | kw
        with pytest.raises(ValueError):
            DesignParams(radii, **args)
