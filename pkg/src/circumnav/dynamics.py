"""Unicycle kinematics in world (Cartesian) and engagement (polar) coordinates.

The polar state is measured relative to the target: ``r`` is the line-of-sight
range, ``gamma`` the world-frame direction from robot to target and ``theta``
the robot heading relative to that line, so ``psi = theta + gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from circumnav.errors import DomainError

TWO_PI = 2.0 * math.pi


def wrap_2pi(angle: float) -> float:
    """Wrap an angle to [0, 2*pi)."""
    a = math.fmod(angle, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    # fmod of a tiny negative value can land exactly on 2*pi after the shift
    return 0.0 if a >= TWO_PI else a


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    psi: float

    def __post_init__(self):
        object.__setattr__(self, "psi", wrap_2pi(self.psi))


@dataclass(frozen=True)
class TargetPosition:
    x_H: float = 0.0
    y_H: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x_H) and math.isfinite(self.y_H)):
            raise ValueError("target position must be finite")


@dataclass(frozen=True)
class PolarState:
    r: float
    theta: float
    gamma: float = 0.0


def cartesian_derivatives(pose: Pose, V: float, omega: float) -> tuple[float, float, float]:
    return V * math.cos(pose.psi), V * math.sin(pose.psi), omega


def polar_derivatives(state: PolarState, V: float, omega: float) -> tuple[float, float]:
    """Range rate and bearing rate of the engagement model."""
    if state.r <= 0.0:
        raise DomainError("polar model is singular at r = 0")
    return -V * math.cos(state.theta), omega + V * math.sin(state.theta) / state.r


def polar_components(x, y, psi, x_H, y_H):
    """Scalar core of :func:`polar_from_cartesian`; returns ``(r, theta, gamma)``."""
    dx = x_H - x
    dy = y_H - y
    r = math.hypot(dx, dy)
    if r == 0.0:
        raise DomainError("robot coincides with the target; bearing undefined")
    gamma = wrap_2pi(math.atan2(dy, dx))
    return r, wrap_2pi(psi - gamma), gamma


def polar_from_cartesian(pose: Pose, target: TargetPosition) -> PolarState:
    r, theta, gamma = polar_components(pose.x, pose.y, pose.psi, target.x_H, target.y_H)
    return PolarState(r, theta, gamma)


def pose_from_bearing(x: float, y: float, theta: float, target: TargetPosition) -> Pose:
    """World pose at ``(x, y)`` whose bearing to ``target`` equals ``theta``."""
    _, _, gamma = polar_components(x, y, 0.0, target.x_H, target.y_H)
    return Pose(x, y, theta + gamma)
