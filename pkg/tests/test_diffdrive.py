import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circumnav import DriveGeometry, max_feasible_omega, wheel_speeds
from circumnav.diffdrive import body_rates


def test_orbit_wheel_speeds():
    cmd = wheel_speeds(0.6, -0.6)
    assert cmd.v_right == pytest.approx(0.56838, abs=1e-12)
    assert cmd.v_left == pytest.approx(0.63162, abs=1e-12)
    assert not cmd.saturated


def test_pure_rotation():
    cmd = wheel_speeds(0.0, 2.0, DriveGeometry(d_w=0.2))
    assert (cmd.v_right, cmd.v_left) == pytest.approx((0.2, -0.2))


def test_saturation_is_reported_not_clipped():
    cmd = wheel_speeds(0.6, 5.0)
    assert cmd.saturated
    assert cmd.v_right == pytest.approx(0.6 + 2.5 * 0.1054)


def test_max_feasible_omega():
    assert max_feasible_omega(0.6) == pytest.approx(4.0607211, abs=1e-7)
    assert not wheel_speeds(0.6, max_feasible_omega(0.6) * (1 - 1e-9)).saturated
    assert wheel_speeds(0.6, max_feasible_omega(0.6) * (1 + 1e-9)).saturated


def test_no_turning_authority():
    with pytest.raises(ValueError):
        max_feasible_omega(0.814)


def test_bad_geometry():
    with pytest.raises(ValueError):
        DriveGeometry(d_w=0.0)
    with pytest.raises(ValueError):
        wheel_speeds(-0.1, 0.0)


@given(st.floats(0.0, 2.0), st.floats(-20.0, 20.0), st.floats(0.01, 1.0))
def test_round_trip(V, w, d_w):
    geom = DriveGeometry(d_w=d_w)
    V2, w2 = body_rates(wheel_speeds(V, w, geom), geom)
    assert math.isclose(V2, V, rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(w2, w, rel_tol=1e-9, abs_tol=1e-9)
