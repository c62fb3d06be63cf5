"""Unicycle command to differential-drive wheel speeds.

Defaults match a Khepera IV base (10.54 cm track, 0.814 m/s per wheel).
Speeds are never clipped; saturation is reported so a design can be checked
against the hardware instead of silently altering the commanded motion.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DriveGeometry:
    d_w: float = 0.1054
    v_wheel_max: float = 0.814

    def __post_init__(self):
        if not (self.d_w > 0.0 and self.v_wheel_max > 0.0):
            raise ValueError("wheel separation and wheel speed limit must be positive")


@dataclass(frozen=True)
class WheelCommand:
    v_right: float
    v_left: float
    saturated: bool


def wheel_speeds(V: float, omega: float, geom: DriveGeometry = DriveGeometry()) -> WheelCommand:
    if V < 0.0:
        raise ValueError(f"forward speed must be non-negative, got {V!r}")
    half = 0.5 * omega * geom.d_w
    v_r, v_l = V + half, V - half
    return WheelCommand(v_r, v_l, abs(v_r) > geom.v_wheel_max or abs(v_l) > geom.v_wheel_max)


def body_rates(cmd: WheelCommand, geom: DriveGeometry = DriveGeometry()) -> tuple[float, float]:
    """Inverse of :func:`wheel_speeds`: ``(V, omega)``."""
    return 0.5 * (cmd.v_right + cmd.v_left), (cmd.v_right - cmd.v_left) / geom.d_w


def max_feasible_omega(V: float, geom: DriveGeometry = DriveGeometry()) -> float:
    """Largest ``|omega|`` executable at forward speed ``V`` without saturating a wheel."""
    if V >= geom.v_wheel_max:
        raise ValueError(
            f"V = {V!r} leaves no turning authority below the wheel limit {geom.v_wheel_max!r}"
        )
    return 2.0 * (geom.v_wheel_max - V) / geom.d_w
