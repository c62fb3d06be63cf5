"""Barrier-Lyapunov turn-rate law and its ingredients.

Outside the auxiliary circle (``r >= r_a``) the commanded turn rate drives

    eta(r, theta) = 1 - sin(theta) + phi(r)

to zero while the barrier

    W(eta) = 0.5 * ln(delta**2 / (delta**2 - eta**2))

keeps ``eta < delta``. Inside the auxiliary circle the robot coasts straight
(zero turn rate). ``eta`` vanishes only on the clockwise orbit
``(r, theta) = (r_d, pi/2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from circumnav.dynamics import PolarState
from circumnav.errors import BarrierBreachError, DomainError
from circumnav.params import DesignParams


class ControllerMode(str, enum.Enum):
    BLF_STATE = "blf_state"
    BLF_RANGE_ONLY = "blf_range_only"
    BASELINE = "baseline"


def _cos_asin(r, r_a):
    # cos(asin(r_a / r)) without the inverse-trig round trip
    return math.sqrt(r * r - r_a * r_a) / r


def phi(r: float, params: DesignParams) -> float:
    """Range part of ``eta``: non-negative on ``r >= r_a``, zero only at ``r_d``.

    Closed form of the integral of ``k*cos(asin(r_a/s)) - 1/s`` from ``r_d``
    to ``r``.
    """
    r_d, r_a = params.radii.r_d, params.radii.r_a
    if r < r_a:
        raise DomainError(f"phi is defined for r >= r_a = {r_a}, got r = {r!r}")
    k = params.k
    a = math.sqrt(r * r - r_a * r_a)
    b = math.sqrt(r_d * r_d - r_a * r_a)
    return (
        k * (a - b)
        - k * r_a * (math.atan(a / r_a) - math.atan(b / r_a))
        + math.log(r_d / r)
    )


def eta(r: float, theta: float, params: DesignParams) -> float:
    return 1.0 - math.sin(theta) + phi(r, params)


def blf_value(eta_val: float, delta: float) -> float:
    """Logarithmic barrier ``W``; diverges as ``eta_val`` approaches ``delta``."""
    if eta_val >= delta:
        raise BarrierBreachError(
            f"barrier violated: eta = {eta_val!r} >= delta = {delta!r}", eta_val, delta
        )
    if eta_val < 0.0:
        raise ValueError(f"eta must be non-negative, got {eta_val!r}")
    return -0.5 * math.log1p(-((eta_val / delta) ** 2))


def _one_minus_sin(s, c):
    # 1 - sin(theta) without cancellation near theta = pi/2
    return c * c / (1.0 + s) if s > 0.0 else 1.0 - s


def _barrier_denominator(eta_val, delta):
    den = (delta - eta_val) * (delta + eta_val)
    if not den > 0.0:
        raise BarrierBreachError(
            f"barrier violated: eta = {eta_val!r} >= delta = {delta!r}", eta_val, delta
        )
    return den


def turn_rate(r: float, theta: float, params: DesignParams) -> float:
    """Scalar form of :func:`omega`."""
    r_a = params.radii.r_a
    if r < r_a:
        return 0.0
    V = params.V
    s = math.sin(theta)
    c = math.cos(theta)
    oms = _one_minus_sin(s, c)
    e = oms + phi(r, params)
    den = _barrier_denominator(e, params.delta)
    return (V / r) * oms - params.k * V * _cos_asin(r, r_a) + params.kappa * c / den


def omega(polar: PolarState, params: DesignParams) -> float:
    """Commanded turn rate from the full polar state ``(r, theta)``.

    Raises
    ------
    BarrierBreachError
        If ``eta >= delta`` at a point outside the auxiliary circle.
    """
    return turn_rate(polar.r, polar.theta, params)


def _check_rdot(rdot, V):
    if abs(rdot) > V:
        raise ValueError(f"|rdot| = {abs(rdot)!r} exceeds the speed V = {V!r}")


def omega_from_range(r: float, rdot: float, params: DesignParams) -> float:
    """Same law as :func:`omega`, written with range and range rate only.

    ``sin(theta)`` is recovered as ``+sqrt(V**2 - rdot**2) / V``, so the two
    forms agree only for bearings in (0, pi).
    """
    V = params.V
    _check_rdot(rdot, V)
    r_a = params.radii.r_a
    if r < r_a:
        return 0.0
    q = math.sqrt((V - rdot) * (V + rdot))
    oms = rdot * rdot / (V * (V + q)) if q > 0.0 else 1.0
    e = oms + phi(r, params)
    den = _barrier_denominator(e, params.delta)
    return (V / r) * oms - params.k * V * _cos_asin(r, r_a) - (params.kappa / V) * (rdot / den)


def omega_baseline(r: float, rdot: float, k: float, V: float, r_a: float) -> float:
    """Range-rate law without any safety consideration, for comparison."""
    _check_rdot(rdot, V)
    if r < r_a:
        return 0.0
    return k * (-V * _cos_asin(r, r_a) - rdot)


def estimate_range_rate(r_now: float, r_prev: float, T: float, V: float | None = None) -> float:
    """Backward-difference range rate, clamped to ``[-V, V]`` when ``V`` is given."""
    if not T > 0.0:
        raise ValueError(f"sample period must be positive, got {T!r}")
    rdot = (r_now - r_prev) / T
    if V is not None:
        rdot = min(max(rdot, -V), V)
    return rdot


def eta_tight_bound(delta: float, W0: float) -> float:
    """Upper bound on ``eta`` along a run that started with barrier value ``W0``."""
    if not delta > 0.0 or W0 < 0.0:
        raise ValueError("need delta > 0 and W0 >= 0")
    return delta * math.sqrt(-math.expm1(-2.0 * W0))


def omega_bound(params: DesignParams, W0: float) -> float:
    """Uniform bound on ``|omega|`` for a run that started with barrier value ``W0``."""
    return params.V * (params.k + 1.0 / params.radii.r_a) + params.kappa * math.exp(2.0 * W0) / params.delta**2


@dataclass
class ControllerState:
    """Per-run controller: mode, parameters and the range-rate estimator memory.

    Build with :meth:`start`. Not shareable between runs.
    """

    mode: ControllerMode
    params: DesignParams
    rdot0: float = 0.0
    eta0: float | None = None
    W0: float | None = None
    last_range: float | None = field(default=None, repr=False)
    last_rdot: float = field(default=0.0, repr=False)

    @classmethod
    def start(cls, params, mode, r0, theta0, rdot0=0.0):
        mode = ControllerMode(mode)
        eta0 = W0 = None
        if r0 >= params.radii.r_a:
            e = eta(r0, theta0, params)
            if 0.0 <= e < params.delta and 0.0 < theta0 < math.pi:
                eta0, W0 = e, blf_value(e, params.delta)
        return cls(mode, params, rdot0=rdot0, eta0=eta0, W0=W0, last_rdot=rdot0)

    def range_rate(self, r_now: float, T: float) -> float:
        """Feed one range sample; returns the Euler range-rate estimate.

        The first call returns the configured initial range rate.
        """
        if self.last_range is None:
            rdot = self.rdot0
        else:
            rdot = estimate_range_rate(r_now, self.last_range, T, self.params.V)
        self.last_range = r_now
        self.last_rdot = rdot
        return rdot

    def command(self, r: float, theta: float, T: float) -> float:
        """Turn rate for the current sample. ``theta`` is used only by the
        state-feedback and baseline modes (the latter via the exact range rate)."""
        p = self.params
        if self.mode is ControllerMode.BLF_STATE:
            return turn_rate(r, theta, p)
        if self.mode is ControllerMode.BLF_RANGE_ONLY:
            return omega_from_range(r, self.range_rate(r, T), p)
        rdot = -p.V * math.cos(theta)
        return omega_baseline(r, rdot, p.k, p.V, p.radii.r_a)
