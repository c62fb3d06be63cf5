"""Safe circumnavigation of a hostile target with a barrier-Lyapunov turn-rate law."""

from circumnav.analysis import InvariantReport, LinearizationResult, audit, linearize, local_convergence_rate
from circumnav.controller import (
    ControllerMode,
    ControllerState,
    blf_value,
    estimate_range_rate,
    eta,
    eta_tight_bound,
    omega,
    omega_baseline,
    omega_bound,
    omega_from_range,
    phi,
)
from circumnav.diffdrive import DriveGeometry, WheelCommand, max_feasible_omega, wheel_speeds
from circumnav.dynamics import (
    PolarState,
    Pose,
    TargetPosition,
    cartesian_derivatives,
    polar_derivatives,
    polar_from_cartesian,
)
from circumnav.errors import (
    BarrierBreachError,
    DeltaBoundError,
    DoomedStartError,
    GeometryError,
    InitialConditionError,
)
from circumnav.params import (
    DesignParams,
    DesignReport,
    RadiiTriple,
    compute_delta_bound,
    compute_gain_k,
    design_report,
    kappa_threshold,
    min_safe_bearing,
    validate_radii,
)
from circumnav.sim import SimConfig, SimSummary, Trajectory, detect_events, entry_bearing_check, simulate

__version__ = "0.1.0"
