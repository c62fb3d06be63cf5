"""Circle geometry validation and controller design constants.

All lengths are in meters, speeds in m/s and angles in radians.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from circumnav.errors import (
    DeltaBoundError,
    GeometricMeanError,
    OrderingError,
    TriangleError,
)

#: Fraction of the admissible bound used when no delta is supplied.
AUTO_DELTA_FRACTION = 0.9


@dataclass(frozen=True)
class RadiiTriple:
    """Radii of the desired, auxiliary and safety circles around the target.

    Construct through :func:`validate_radii` (or directly, which runs the
    same checks).
    """

    r_d: float
    r_a: float
    r_s: float

    def __post_init__(self):
        _check_radii(self.r_d, self.r_a, self.r_s)


def _check_radii(r_d, r_a, r_s):
    for name, value in (("r_d", r_d), ("r_a", r_a), ("r_s", r_s)):
        if not math.isfinite(value) or value <= 0.0:
            raise OrderingError(f"{name} must be finite and positive, got {value!r}")
    if not (r_d > r_a > r_s):
        raise OrderingError(
            f"ordering r_d > r_a > r_s violated: r_d={r_d!r}, r_a={r_a!r}, r_s={r_s!r}"
        )
    if not r_d < r_s + r_a:
        raise TriangleError(
            f"triangle condition r_d < r_s + r_a violated: {r_d:.12g} >= {r_s + r_a:.12g}"
        )
    if not r_a * r_a > r_d * r_s:
        raise GeometricMeanError(
            f"geometric-mean condition r_a^2 > r_d*r_s violated: "
            f"{r_a * r_a:.12g} <= {r_d * r_s:.12g}"
        )


def validate_radii(r_d: float, r_a: float, r_s: float) -> RadiiTriple:
    """Return a :class:`RadiiTriple`, raising a :class:`GeometryError` subclass
    naming the first violated inequality.

    Examples
    --------
    >>> validate_radii(1.0, 0.7, 0.4)
    RadiiTriple(r_d=1.0, r_a=0.7, r_s=0.4)
    """
    return RadiiTriple(float(r_d), float(r_a), float(r_s))


def compute_gain_k(radii: RadiiTriple) -> float:
    """Curvature gain that makes the desired circle an equilibrium orbit."""
    return 1.0 / math.sqrt(radii.r_d**2 - radii.r_a**2)


def compute_beta(radii: RadiiTriple) -> float:
    return math.sqrt(radii.r_d**2 - radii.r_a**2) / radii.r_a


def compute_delta_bound(radii: RadiiTriple) -> float:
    """Largest barrier half-width that keeps every auxiliary-circle entry safe.

    Always lies strictly inside (0, 1) for valid radii.
    """
    beta = compute_beta(radii)
    return math.atan(beta) / beta + math.log(radii.r_d / radii.r_a) - radii.r_s / radii.r_a


def min_safe_bearing(radii: RadiiTriple) -> float:
    """Smallest entry bearing whose straight chord through the auxiliary
    circle stays clear of the safety circle."""
    return math.asin(radii.r_s / radii.r_a)


def kappa_threshold(k: float, V: float, delta: float, W0: float) -> float:
    """Turn-rate gain at or above which the robot enters the auxiliary circle
    at most once, for a run starting with barrier value ``W0``."""
    for name, value in (("k", k), ("V", V), ("delta", delta)):
        if not value > 0.0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    if W0 < 0.0:
        raise ValueError(f"W0 must be non-negative, got {W0!r}")
    return k * V * delta**2 * math.exp(-2.0 * W0)


def auto_delta(radii: RadiiTriple) -> float:
    return AUTO_DELTA_FRACTION * compute_delta_bound(radii)


@dataclass(frozen=True)
class DesignParams:
    """Everything the controller needs.

    ``delta=None`` selects ``0.9 * Delta``. ``k``, ``beta`` and ``Delta`` are
    derived from the radii and cannot be passed in.
    """

    radii: RadiiTriple
    V: float
    kappa: float
    delta: float | None = None
    k: float = field(init=False)
    beta: float = field(init=False)
    Delta: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.V) and self.V > 0.0):
            raise ValueError(f"speed V must be positive, got {self.V!r}")
        if not (math.isfinite(self.kappa) and self.kappa > 0.0):
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")
        Delta = compute_delta_bound(self.radii)
        delta = Delta * AUTO_DELTA_FRACTION if self.delta is None else float(self.delta)
        if not (math.isfinite(delta) and delta > 0.0):
            raise DeltaBoundError(f"delta must be positive, got {delta!r}", delta, Delta)
        # delta == Delta is accepted; the entry guarantee is then tight.
        if delta > Delta:
            raise DeltaBoundError(
                f"delta = {delta!r} exceeds Delta = {Delta:.4f}", delta, Delta
            )
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "k", compute_gain_k(self.radii))
        object.__setattr__(self, "beta", compute_beta(self.radii))
        object.__setattr__(self, "Delta", Delta)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DesignReport:
    k: float
    beta: float
    Delta: float
    delta: float
    min_safe_bearing: float
    kappa: float
    kappa_threshold: float | None
    omega_bound: float | None
    eigenvalues: tuple[complex, complex]
    convergence_rate: float
    eta0: float | None
    W0: float | None

    @property
    def single_entry_predicted(self) -> bool | None:
        if self.kappa_threshold is None:
            return None
        return self.kappa >= self.kappa_threshold

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = [[z.real, z.imag] for z in self.eigenvalues]
        d["min_safe_bearing_deg"] = math.degrees(self.min_safe_bearing)
        d["single_entry_predicted"] = self.single_entry_predicted
        return d


def design_report(params: DesignParams, W0: float | None, eta0: float | None = None) -> DesignReport:
    """Collect the derived constants for a run whose initial barrier value is ``W0``.

    With ``W0=None`` (start outside the admissible set) the run-dependent
    entries are left as ``None``.
    """
    # deferred: analysis and controller both import this module
    from circumnav.analysis import linearize, local_convergence_rate
    from circumnav.controller import omega_bound

    lin = linearize(params)
    if W0 is not None and eta0 is None:
        eta0 = params.delta * math.sqrt(-math.expm1(-2.0 * W0))
    return DesignReport(
        k=params.k,
        beta=params.beta,
        Delta=params.Delta,
        delta=params.delta,
        min_safe_bearing=min_safe_bearing(params.radii),
        kappa=params.kappa,
        kappa_threshold=None if W0 is None else kappa_threshold(params.k, params.V, params.delta, W0),
        omega_bound=None if W0 is None else omega_bound(params, W0),
        eigenvalues=lin.eigenvalues,
        convergence_rate=local_convergence_rate(lin),
        eta0=eta0,
        W0=W0,
    )
