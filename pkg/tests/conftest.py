import math
import re

import numpy as np
import pytest

from circumnav import DesignParams, SimConfig, simulate, validate_radii

REFERENCE_RADII = (1.0, 0.7, 0.4)
REFERENCE_V = 0.6
REFERENCE_DELTA = 0.5
REFERENCE_X0, REFERENCE_Y0, REFERENCE_THETA0_DEG = 1.0, 0.8, 38.0


def random_radii(rng, n):
    """Radii triples drawn uniformly from the admissible region (scaled)."""
    out = []
    while len(out) < n:
        r_a = rng.uniform(0.1, 10.0)
        r_s = rng.uniform(0.0, r_a)
        hi = min(r_s + r_a, r_a * r_a / r_s) if r_s > 0 else r_s + r_a
        r_d = rng.uniform(r_a, hi)
        try:
            out.append(validate_radii(r_d, r_a, r_s))
        except ValueError:
            continue
    return out


def reference_params(kappa=0.05, delta=REFERENCE_DELTA):
    return DesignParams(validate_radii(*REFERENCE_RADII), REFERENCE_V, kappa, delta)


def reference_config(kappa=0.05, **kw):
    kw.setdefault("t_final", 120.0)
    return SimConfig(
        reference_params(kappa),
        REFERENCE_X0,
        REFERENCE_Y0,
        theta0=math.radians(REFERENCE_THETA0_DEG),
        **kw,
    )


_RUNS = {}


def cached_run(kappa=0.05, **kw):
    """Simulations are deterministic, so runs are shared across test modules."""
    key = (kappa, tuple(sorted(kw.items())))
    if key not in _RUNS:
        _RUNS[key] = simulate(reference_config(kappa, **kw))
    return _RUNS[key]


def admissible_starts(params, n, seed, r_max=2.0):
    """Random ``(r0, theta0)`` pairs with ``eta < delta`` (the admissible set)."""
    from circumnav import eta

    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        r0 = rng.uniform(params.radii.r_a, r_max)
        th0 = rng.uniform(0.0, math.pi)
        if 0.0 < th0 < math.pi and eta(r0, th0, params) < params.delta:
            out.append((r0, th0))
    return out


@pytest.fixture
def params():
    return reference_params()


@pytest.fixture
def radii():
    return validate_radii(*REFERENCE_RADII)


# ---- one summary line per acceptance criterion ----------------------------

CRITERIA = {
    1: "design constants",
    2: "single-entry run",
    3: "multiple-entry run",
    4: "barrier invariants",
    5: "bearing stays in (0, pi)",
    6: "kappa sweep entry counts",
    7: "local stability",
    8: "oracle equivalence",
    9: "range-only closed loop",
    10: "determinism and step halving",
}
_OUTCOMES = {}
_CRITERION_ID = re.compile(r"test_acceptance\.py::test_c(\d+)_")


def pytest_runtest_logreport(report):
    m = _CRITERION_ID.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.failed:
        _OUTCOMES.setdefault(int(m.group(1)), {})[report.nodeid] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n, name in CRITERIA.items():
        results = _OUTCOMES.get(n)
        if results is None:
            line = "not run"
        else:
            failed = [k.split("::")[-1] for k, ok in results.items() if not ok]
            status = "FAIL" if failed else "PASS"
            line = f"{status} ({len(results) - len(failed)}/{len(results)} checks)"
            if failed:
                line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {n:2d} {name}: {line}")
