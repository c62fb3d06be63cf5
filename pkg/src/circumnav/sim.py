"""Fixed-step closed-loop simulation with auxiliary-circle event detection.

The world-frame kinematics are integrated with classic RK4. The turn rate is
evaluated once at the start of every step from the polar state and held
for the whole step, so the switch at ``r = r_a`` takes effect at the next
step boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from circumnav.controller import ControllerMode, ControllerState, blf_value, eta
from circumnav.dynamics import Pose, TargetPosition, polar_components, pose_from_bearing, wrap_2pi
from circumnav.errors import (
    BarrierBreachError,
    DoomedStartError,
    InitialConditionError,
    NonFiniteStateError,
)
from circumnav.params import DesignParams, RadiiTriple, min_safe_bearing

#: Convergence band around the desired orbit.
CONVERGENCE_R_FRAC = 0.01
CONVERGENCE_THETA = math.radians(1.0)
#: Tolerance, in radians of bearing, on the safe-entry condition.
ENTRY_BEARING_TOL = 1e-3


class EventKind(enum.IntEnum):
    NONE = 0
    ENTRY = 1
    EXIT = -1


class Event(NamedTuple):
    kind: EventKind
    fraction: float | None


def detect_events(prev_r: float, next_r: float, r_a: float) -> Event:
    """Classify one step's range change against the auxiliary circle.

    ``fraction`` locates the crossing within the step by linear
    interpolation of ``r - r_a``.

    >>> detect_events(0.71, 0.69, 0.7).kind
    <EventKind.ENTRY: 1>
    """
    if prev_r >= r_a > next_r:
        return Event(EventKind.ENTRY, (prev_r - r_a) / (prev_r - next_r))
    if prev_r < r_a <= next_r:
        return Event(EventKind.EXIT, (r_a - prev_r) / (next_r - prev_r))
    return Event(EventKind.NONE, None)


@dataclass(frozen=True)
class SimConfig:
    """One closed-loop run.

    Give the initial heading either as a bearing ``theta0`` relative to the
    line of sight or as a world heading ``psi0``.
    """

    params: DesignParams
    x0: float
    y0: float
    theta0: float | None = None
    psi0: float | None = None
    target: TargetPosition = TargetPosition()
    mode: ControllerMode = ControllerMode.BLF_STATE
    dt: float = 1e-3
    t_final: float = 120.0
    record_stride: int = 1
    allow_outside_theta: bool = False
    rdot0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mode", ControllerMode(self.mode))
        if (self.theta0 is None) == (self.psi0 is None):
            raise ValueError("give exactly one of theta0 (bearing) or psi0 (heading)")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if not self.t_final > self.dt:
            raise ValueError("t_final must exceed dt")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise ValueError("record_stride must be a positive integer")
        # the switch at r_a is only resolved at step boundaries
        if self.params.V * self.dt > self.params.radii.r_a / 100.0:
            raise ValueError(
                f"step too coarse: V*dt = {self.params.V * self.dt!r} > r_a/100"
            )

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    def initial_pose(self) -> Pose:
        if self.psi0 is not None:
            return Pose(self.x0, self.y0, self.psi0)
        return pose_from_bearing(self.x0, self.y0, self.theta0, self.target)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        return d


def check_initial_condition(config: SimConfig) -> tuple[float, float]:
    """Return the initial ``(r, theta)`` or raise if the start is rejected."""
    pose = config.initial_pose()
    r0, th0, _ = polar_components(pose.x, pose.y, pose.psi, config.target.x_H, config.target.y_H)
    radii = config.params.radii
    if r0 <= radii.r_s:
        raise InitialConditionError(f"start inside the safety circle: r0 = {r0:.6g}")
    if r0 < radii.r_a:
        lim = math.asin(radii.r_s / r0)
        if th0 < lim or th0 > 2.0 * math.pi - lim:
            raise DoomedStartError(
                f"start inside the auxiliary circle heading into the safety circle "
                f"(r0 = {r0:.6g}, theta0 = {math.degrees(th0):.4g} deg)"
            )
    if config.allow_outside_theta:
        return r0, th0
    if r0 < radii.r_a:
        raise InitialConditionError(f"r0 = {r0:.6g} is inside the auxiliary circle")
    if not 0.0 < th0 < math.pi:
        raise InitialConditionError(f"theta0 = {math.degrees(th0):.6g} deg is outside (0, 180)")
    e0 = eta(r0, th0, config.params)
    if not e0 < config.params.delta:
        raise InitialConditionError(
            f"eta0 = {e0:.6g} is not below delta = {config.params.delta:.6g}"
        )
    return r0, th0


def initial_barrier(config: SimConfig) -> tuple[float | None, float | None]:
    """``(eta0, W0)`` of the configured start, or ``(None, None)`` if it is
    outside the admissible set."""
    pose = config.initial_pose()
    r0, th0, _ = polar_components(pose.x, pose.y, pose.psi, config.target.x_H, config.target.y_H)
    ctrl = ControllerState.start(config.params, config.mode, r0, th0)
    return ctrl.eta0, ctrl.W0


@dataclass
class Trajectory:
    """Recorded samples. ``eta`` and ``W`` are NaN where undefined (inside the
    auxiliary circle, at event rows, or for the baseline controller).

    ``event`` marks interpolated crossing rows (+1 entry, -1 exit); those
    rows count as inside the auxiliary circle and carry zero turn rate.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    psi: np.ndarray
    r: np.ndarray
    theta: np.ndarray
    omega: np.ndarray
    eta: np.ndarray
    W: np.ndarray
    inside_Ca: np.ndarray
    event: np.ndarray = None
    config: SimConfig | None = field(default=None, repr=False)

    COLUMNS = ("t", "x", "y", "psi", "r", "theta", "omega", "eta", "W", "inside_Ca")

    def __post_init__(self):
        if self.event is None:
            self.event = np.zeros(len(self.t), dtype=np.int8)

    def __len__(self):
        return len(self.t)

    def window(self, t_start: float) -> np.ndarray:
        """Boolean mask of samples at or after ``t_start``."""
        return self.t >= t_start


@dataclass
class SimSummary:
    entry_count: int
    entry_intervals: list[tuple[float, float | None]]
    min_range: float
    min_range_time: float
    safety_violated: bool
    converged: bool
    convergence_time: float | None
    final_omega: float
    max_abs_omega: float
    eta_monotone_outside_Ca: bool | None
    eta0: float | None = None
    W0: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["entry_intervals"] = [list(iv) for iv in self.entry_intervals]
        return d


def _rk4_unicycle(x, y, psi, V, w, dt):
    # constant turn rate over the step, so psi stages are exact
    h = 0.5 * dt
    c1, s1 = math.cos(psi), math.sin(psi)
    pm = psi + h * w
    c2, s2 = math.cos(pm), math.sin(pm)
    pe = psi + dt * w
    c4, s4 = math.cos(pe), math.sin(pe)
    x += dt * V * (c1 + 4.0 * c2 + c4) / 6.0
    y += dt * V * (s1 + 4.0 * s2 + s4) / 6.0
    return x, y, wrap_2pi(pe)


def simulate(config: SimConfig) -> tuple[Trajectory, SimSummary]:
    """Run the closed loop and return the recorded trajectory and its summary.

    Identical configurations give bit-identical results.

    Raises
    ------
    InitialConditionError
        For starts outside the admissible set (unless overridden) and for
        starts that are already doomed.
    BarrierBreachError
        If the barrier is crossed during the run; ``err.t`` holds the time.
    """
    from circumnav.analysis import eta_monotone_violations

    p = config.params
    V, dt = p.V, config.dt
    r_a, r_s, r_d = p.radii.r_a, p.radii.r_s, p.radii.r_d
    xH, yH = config.target.x_H, config.target.y_H
    stride = int(config.record_stride)
    n = config.n_steps
    with_eta = config.mode is not ControllerMode.BASELINE

    r, th = check_initial_condition(config)
    pose = config.initial_pose()
    x, y, psi = pose.x, pose.y, pose.psi
    ctrl = ControllerState.start(p, config.mode, r, th, config.rdot0)

    cols = {c: [] for c in Trajectory.COLUMNS}
    events = []
    last_t = -math.inf

    def record(t, x, y, psi, r, th, w, inside, ev=0):
        nonlocal last_t
        if t <= last_t:
            return
        last_t = t
        e = W = math.nan
        if with_eta and not inside:
            e = eta(r, th, p)
            W = blf_value(e, p.delta) if 0.0 <= e < p.delta else math.nan
        for c, v in zip(Trajectory.COLUMNS, (t, x, y, psi, r, th, w, e, W, inside)):
            cols[c].append(v)
        events.append(ev)

    def in_band(r, th):
        return abs(r - r_d) < CONVERGENCE_R_FRAC * r_d and abs(th - 0.5 * math.pi) < CONVERGENCE_THETA

    intervals = []
    open_entry = None
    min_r, min_t = r, 0.0
    last_bad = None if in_band(r, th) else 0.0
    max_w = 0.0

    for i in range(n):
        t = i * dt
        try:
            w = ctrl.command(r, th, dt)
        except BarrierBreachError as exc:
            exc.t = t
            raise
        aw = abs(w)
        if aw > max_w:
            max_w = aw
        if i % stride == 0:
            record(t, x, y, psi, r, th, w, r < r_a)

        x1, y1, psi1 = _rk4_unicycle(x, y, psi, V, w, dt)
        if not (math.isfinite(x1) and math.isfinite(y1) and math.isfinite(psi1)):
            raise NonFiniteStateError(f"non-finite state at t = {t + dt:.6f} s")
        r1, th1, _ = polar_components(x1, y1, psi1, xH, yH)

        kind, frac = detect_events(r, r1, r_a)
        if kind is not EventKind.NONE:
            te = t + frac * dt
            xe, ye = x + frac * (x1 - x), y + frac * (y1 - y)
            pe = wrap_2pi(psi + frac * dt * w)
            re, the, _ = polar_components(xe, ye, pe, xH, yH)
            record(te, xe, ye, pe, re, the, 0.0, True, int(kind))
            if kind is EventKind.ENTRY:
                open_entry = te
            else:
                intervals.append((open_entry, te))
                open_entry = None
        if r1 < min_r:
            min_r, min_t = r1, t + dt
        if not in_band(r1, th1):
            last_bad = t + dt
        x, y, psi, r, th = x1, y1, psi1, r1, th1

    t_end = n * dt
    try:
        w_final = ctrl.command(r, th, dt)
    except BarrierBreachError as exc:
        exc.t = t_end
        raise
    record(t_end, x, y, psi, r, th, w_final, r < r_a)
    max_w = max(max_w, abs(w_final))
    if open_entry is not None:
        intervals.append((open_entry, None))

    traj = Trajectory(
        **{c: np.asarray(v, dtype=float) for c, v in cols.items() if c != "inside_Ca"},
        inside_Ca=np.asarray(cols["inside_Ca"], dtype=bool),
        event=np.asarray(events, dtype=np.int8),
        config=config,
    )
    if with_eta:
        monotone = eta_monotone_violations(traj.eta, traj.inside_Ca).size == 0
    else:
        monotone = None
    converged = last_bad is None or last_bad < t_end
    if last_bad is None:
        conv_time = 0.0
    elif converged:
        conv_time = last_bad + dt
    else:
        conv_time = None
    summary = SimSummary(
        entry_count=len(intervals),
        entry_intervals=intervals,
        min_range=min_r,
        min_range_time=min_t,
        safety_violated=min_r < r_s,
        converged=converged,
        convergence_time=conv_time,
        final_omega=w_final,
        max_abs_omega=max_w,
        eta_monotone_outside_Ca=monotone,
        eta0=ctrl.eta0,
        W0=ctrl.W0,
    )
    return traj, summary


def entry_bearing_check(
    trajectory: Trajectory, radii: RadiiTriple, tol: float = ENTRY_BEARING_TOL
) -> tuple[bool, list[float]]:
    """Bearings at every auxiliary-circle entry and whether all are safe.

    An entry is a transition of ``inside_Ca`` from false to true. The
    bearing is interpolated at ``r = r_a`` when the crossing straddles the
    two rows, otherwise taken from the first inside row (an event row).
    """
    inside = np.asarray(trajectory.inside_Ca, dtype=bool)
    r, th = trajectory.r, trajectory.theta
    floor = math.sin(min_safe_bearing(radii) - tol)
    bearings = []
    for i in np.flatnonzero(~inside[:-1] & inside[1:]):
        kind, frac = detect_events(r[i], r[i + 1], radii.r_a)
        if kind is EventKind.ENTRY:
            d = (th[i + 1] - th[i] + math.pi) % (2.0 * math.pi) - math.pi
            bearings.append(float(wrap_2pi(th[i] + frac * d)))
        else:
            bearings.append(float(th[i + 1]))
    ok = all(math.sin(b) >= floor for b in bearings)
    return ok, bearings
