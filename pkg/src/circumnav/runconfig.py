"""JSON run configuration for the command-line tool.

Angles are in degrees in the file and converted to radians here, once.
Unknown keys are rejected at every level.

Example::

    {
      "radii": {"r_d": 1.0, "r_a": 0.7, "r_s": 0.4},
      "V": 0.6,
      "gains": {"delta": 0.5},
      "kappa": 0.05,
      "controller_mode": "blf_state",
      "initial": {"x": 1.0, "y": 0.8, "theta0_deg": 38.0},
      "target": {"x": 0.0, "y": 0.0},
      "integration": {"dt": 0.001, "t_final": 120.0, "record_stride": 10}
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from circumnav.controller import ControllerMode
from circumnav.diffdrive import DriveGeometry
from circumnav.dynamics import TargetPosition
from circumnav.params import DesignParams, RadiiTriple, validate_radii
from circumnav.sim import SimConfig


class ConfigError(ValueError):
    pass


_REQUIRED = {"radii", "V", "gains", "kappa", "initial", "target", "integration"}
_OPTIONAL = {"controller_mode", "drive", "allow_outside_theta", "rdot0"}
_SECTIONS = {
    "radii": ({"r_d", "r_a", "r_s"}, set()),
    "gains": ({"delta"}, set()),
    "initial": ({"x", "y", "theta0_deg"}, set()),
    "target": ({"x", "y"}, set()),
    "integration": ({"dt", "t_final"}, {"record_stride"}),
    "drive": (set(), {"d_w", "v_wheel_max"}),
}


def _check_keys(where, got, required, optional):
    unknown = set(got) - required - optional
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")
    missing = required - set(got)
    if missing:
        raise ConfigError(f"missing key(s) in {where}: {sorted(missing)}")


def _num(where, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class RunConfig:
    r_d: float
    r_a: float
    r_s: float
    V: float
    delta: float | str
    kappa: float
    x0: float
    y0: float
    theta0_deg: float
    controller_mode: ControllerMode = ControllerMode.BLF_STATE
    target_x: float = 0.0
    target_y: float = 0.0
    dt: float = 1e-3
    t_final: float = 120.0
    record_stride: int = 1
    drive: DriveGeometry = field(default_factory=DriveGeometry)
    allow_outside_theta: bool = False
    rdot0: float = 0.0

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        if not isinstance(d, dict):
            raise ConfigError("configuration must be a JSON object")
        _check_keys("config", d, _REQUIRED, _OPTIONAL)
        for name, (req, opt) in _SECTIONS.items():
            if name in d:
                if not isinstance(d[name], dict):
                    raise ConfigError(f"section {name!r} must be an object")
                _check_keys(name, d[name], req, opt)
        delta = d["gains"]["delta"]
        if delta != "auto":
            delta = _num("gains.delta", delta)
        try:
            mode = ControllerMode(d.get("controller_mode", "blf_state"))
        except ValueError:
            raise ConfigError(f"unknown controller_mode {d.get('controller_mode')!r}") from None
        integ = d["integration"]
        stride = integ.get("record_stride", 1)
        if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
            raise ConfigError("integration.record_stride must be a positive integer")
        allow = d.get("allow_outside_theta", False)
        if not isinstance(allow, bool):
            raise ConfigError("allow_outside_theta must be true or false")
        drive = DriveGeometry(**{k: _num(f"drive.{k}", v) for k, v in d.get("drive", {}).items()})
        return cls(
            r_d=_num("radii.r_d", d["radii"]["r_d"]),
            r_a=_num("radii.r_a", d["radii"]["r_a"]),
            r_s=_num("radii.r_s", d["radii"]["r_s"]),
            V=_num("V", d["V"]),
            delta=delta,
            kappa=_num("kappa", d["kappa"]),
            x0=_num("initial.x", d["initial"]["x"]),
            y0=_num("initial.y", d["initial"]["y"]),
            theta0_deg=_num("initial.theta0_deg", d["initial"]["theta0_deg"]),
            controller_mode=mode,
            target_x=_num("target.x", d["target"]["x"]),
            target_y=_num("target.y", d["target"]["y"]),
            dt=_num("integration.dt", integ["dt"]),
            t_final=_num("integration.t_final", integ["t_final"]),
            record_stride=stride,
            drive=drive,
            allow_outside_theta=allow,
            rdot0=_num("rdot0", d.get("rdot0", 0.0)),
        )

    def to_dict(self) -> dict:
        return {
            "radii": {"r_d": self.r_d, "r_a": self.r_a, "r_s": self.r_s},
            "V": self.V,
            "gains": {"delta": self.delta},
            "kappa": self.kappa,
            "controller_mode": self.controller_mode.value,
            "initial": {"x": self.x0, "y": self.y0, "theta0_deg": self.theta0_deg},
            "target": {"x": self.target_x, "y": self.target_y},
            "integration": {"dt": self.dt, "t_final": self.t_final, "record_stride": self.record_stride},
            "drive": {"d_w": self.drive.d_w, "v_wheel_max": self.drive.v_wheel_max},
            "allow_outside_theta": self.allow_outside_theta,
            "rdot0": self.rdot0,
        }

    def with_values(self, **changes) -> RunConfig:
        return replace(self, **changes)

    def radii(self) -> RadiiTriple:
        return validate_radii(self.r_d, self.r_a, self.r_s)

    def design_params(self) -> DesignParams:
        delta = None if self.delta == "auto" else self.delta
        return DesignParams(self.radii(), self.V, self.kappa, delta)

    def sim_config(self, params: DesignParams | None = None) -> SimConfig:
        return SimConfig(
            params=params or self.design_params(),
            x0=self.x0,
            y0=self.y0,
            theta0=math.radians(self.theta0_deg),
            target=TargetPosition(self.target_x, self.target_y),
            mode=self.controller_mode,
            dt=self.dt,
            t_final=self.t_final,
            record_stride=self.record_stride,
            allow_outside_theta=self.allow_outside_theta,
            rdot0=self.rdot0,
        )


def load_config(path) -> RunConfig:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return RunConfig.from_dict(data)
