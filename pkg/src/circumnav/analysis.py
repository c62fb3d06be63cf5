"""Local stability of the desired orbit and trajectory invariant audits."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from circumnav.controller import ControllerMode, eta_tight_bound, omega_bound
from circumnav.params import DesignParams

ETA_MONOTONE_RTOL = 1e-6
THETA_RANGE_TOL = 1e-6
STEADY_OMEGA_TOL = 0.01


class Regime(str, enum.Enum):
    UNDERDAMPED = "underdamped"
    CRITICAL_OR_OVERDAMPED = "critical_or_overdamped"


@dataclass(frozen=True)
class LinearizationResult:
    A11: float
    A12: float
    A21: float
    A22: float
    eigenvalues: tuple[complex, complex]
    regime: Regime

    @property
    def A(self) -> np.ndarray:
        return np.array([[self.A11, self.A12], [self.A21, self.A22]])


def linearize(params: DesignParams) -> LinearizationResult:
    """Jacobian of ``(rdot, thetadot)`` at ``(r_d, pi/2)`` in closed form.

    The matrix is ``[[0, V], [-k**2 V, -kappa/delta**2]]``, so the
    eigenvalues are ``(-kappa +/- sqrt(kappa**2 - 4 k**2 V**2 delta**4)) / (2 delta**2)``,
    listed with the ``+`` root first.
    """
    k, V, d2, kap = params.k, params.V, params.delta**2, params.kappa
    disc = kap * kap - 4.0 * k * k * V * V * d2 * d2
    if disc < 0.0:
        root = cmath.sqrt(disc)
        lam = ((-kap + root) / (2.0 * d2), (-kap - root) / (2.0 * d2))
    else:
        # the small root from the product of roots avoids cancellation
        big = -(kap + math.sqrt(disc)) / (2.0 * d2)
        lam = (complex(k * k * V * V / big), complex(big))
    regime = Regime.UNDERDAMPED if disc < 0.0 else Regime.CRITICAL_OR_OVERDAMPED
    return LinearizationResult(0.0, V, -k * k * V, -kap / d2, lam, regime)


def local_convergence_rate(result: LinearizationResult) -> float:
    """Slowest exponential decay rate near the orbit, in 1/s."""
    return min(-z.real for z in result.eigenvalues)


def eta_monotone_violations(eta, inside, rtol: float = ETA_MONOTONE_RTOL) -> np.ndarray:
    """Indices ``i`` where ``eta`` rises from sample ``i`` to ``i + 1`` by more
    than ``rtol * max(1, |eta_i|)``, considering only pairs of consecutive
    samples that are both outside the auxiliary circle."""
    eta = np.asarray(eta, dtype=float)
    inside = np.asarray(inside, dtype=bool)
    if eta.size < 2:
        return np.empty(0, dtype=int)
    outside = ~inside & np.isfinite(eta)
    pair = outside[:-1] & outside[1:]
    rise = np.diff(eta)
    allowed = rtol * np.maximum(1.0, np.abs(eta[:-1]))
    return np.flatnonzero(pair & (rise > allowed))


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: Status
    margin: float | None = None
    time: float | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status is not Status.FAIL


@dataclass(frozen=True)
class InvariantReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [dict(asdict(c), status=c.status.value) for c in self.checks],
        }


CHECK_NAMES = (
    "barrier",
    "eta_monotone",
    "eta_tight_bound",
    "theta_range",
    "omega_bound",
    "entry_bearing",
    "safety",
    "steady_state_omega",
)


def _na(name, why):
    return CheckResult(name, Status.NOT_APPLICABLE, detail=why)


def _verdict(name, ok, margin, t, detail=""):
    return CheckResult(
        name,
        Status.PASS if ok else Status.FAIL,
        None if margin is None else float(margin),
        None if t is None else float(t),
        detail,
    )


def audit(trajectory, params: DesignParams, W0: float | None, mode=None) -> InvariantReport:
    """Check every invariant the theory promises over the recorded samples.

    eta-based checks use only samples outside the auxiliary circle. For the
    baseline controller they are reported as not applicable, as are the
    checks that need ``W0`` when the run started outside the admissible set.
    """
    # deferred: sim imports this module
    from circumnav.sim import CONVERGENCE_R_FRAC, CONVERGENCE_THETA, entry_bearing_check

    if mode is None:
        cfg = getattr(trajectory, "config", None)
        mode = cfg.mode if cfg is not None else ControllerMode.BLF_STATE
    mode = ControllerMode(mode)
    t = np.asarray(trajectory.t, dtype=float)
    r = np.asarray(trajectory.r, dtype=float)
    th = np.asarray(trajectory.theta, dtype=float)
    w = np.asarray(trajectory.omega, dtype=float)
    eta = np.asarray(trajectory.eta, dtype=float)
    inside = np.asarray(trajectory.inside_Ca, dtype=bool)
    radii = params.radii
    blf = mode is not ControllerMode.BASELINE
    guaranteed = blf and W0 is not None
    outside = ~inside & np.isfinite(eta)
    checks = []

    # barrier: eta < delta wherever eta is defined
    if not blf:
        checks.append(_na("barrier", "eta is not defined for the baseline controller"))
    else:
        outside_rows = ~inside
        if not outside_rows.any():
            checks.append(_verdict("barrier", True, None, None, "no samples outside C_a"))
        else:
            # NaN eta outside C_a means the barrier was already gone
            gap = np.where(np.isfinite(eta), params.delta - eta, -np.inf)
            gap = np.where(outside_rows, gap, np.inf)
            i = int(np.argmin(gap))
            checks.append(_verdict("barrier", gap[i] > 0.0, gap[i] if np.isfinite(gap[i]) else None, t[i]))

    if not blf:
        checks.append(_na("eta_monotone", "eta is not defined for the baseline controller"))
    else:
        bad = eta_monotone_violations(eta, inside)
        pair = outside[:-1] & outside[1:]
        if pair.any():
            slack = ETA_MONOTONE_RTOL * np.maximum(1.0, np.abs(eta[:-1])) - np.diff(eta)
            slack = np.where(pair, slack, np.inf)
            i = int(np.argmin(slack))
            checks.append(_verdict("eta_monotone", bad.size == 0, slack[i], t[i + 1],
                                   f"{bad.size} rising pairs"))
        else:
            checks.append(_verdict("eta_monotone", True, None, None, "no consecutive outside pairs"))

    if not guaranteed:
        checks.append(_na("eta_tight_bound", "needs a BLF run started in the admissible set"))
    else:
        bound = eta_tight_bound(params.delta, W0)
        tol = ETA_MONOTONE_RTOL * max(1.0, bound)
        gap = np.where(outside, bound - eta, np.inf)
        i = int(np.argmin(gap)) if outside.any() else None
        if i is None:
            checks.append(_verdict("eta_tight_bound", True, None, None))
        else:
            checks.append(_verdict("eta_tight_bound", gap[i] >= -tol, gap[i], t[i], f"bound {bound:.9g}"))

    if not guaranteed:
        checks.append(_na("theta_range", "needs a BLF run started in the admissible set"))
    else:
        gap = np.minimum(th, math.pi - th) - THETA_RANGE_TOL
        i = int(np.argmin(gap))
        checks.append(_verdict("theta_range", gap[i] > 0.0, gap[i], t[i]))

    if not guaranteed:
        checks.append(_na("omega_bound", "needs a BLF run started in the admissible set"))
    else:
        bound = omega_bound(params, W0)
        i = int(np.argmax(np.abs(w)))
        checks.append(_verdict("omega_bound", abs(w[i]) <= bound, bound - abs(w[i]), t[i], f"bound {bound:.9g}"))

    if not guaranteed:
        checks.append(_na("entry_bearing", "needs a BLF run started in the admissible set"))
    else:
        ok, bearings = entry_bearing_check(trajectory, radii)
        if bearings:
            margin = min(bearings) - math.asin(radii.r_s / radii.r_a)
            checks.append(_verdict("entry_bearing", ok, margin, None, f"{len(bearings)} entries"))
        else:
            checks.append(_verdict("entry_bearing", True, None, None, "no entries"))

    i = int(np.argmin(r))
    checks.append(_verdict("safety", r[i] > radii.r_s, r[i] - radii.r_s, t[i]))

    band = (np.abs(r - radii.r_d) < CONVERGENCE_R_FRAC * radii.r_d) & (
        np.abs(th - 0.5 * math.pi) < CONVERGENCE_THETA
    )
    if not band[-1]:
        checks.append(_na("steady_state_omega", "not converged within the horizon"))
    else:
        out = np.flatnonzero(~band)
        start = 0 if out.size == 0 else int(out[-1]) + 1
        tail = w[start:]
        j = int(np.argmax(tail))
        target = -params.V / radii.r_d
        final_err = abs(w[-1] - target)
        ok = tail[j] < 0.0 and final_err <= STEADY_OMEGA_TOL
        checks.append(_verdict("steady_state_omega", ok, min(-tail[j], STEADY_OMEGA_TOL - final_err),
                               t[start + j], f"final omega {w[-1]:.6g}, target {target:.6g}"))

    return InvariantReport(tuple(checks))
