"""Trajectory CSV and summary JSON files."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from circumnav.sim import Trajectory

SIG_DIGITS = 9


class TrajectoryFormatError(ValueError):
    pass


def _fmt(v):
    return "" if math.isnan(v) else f"{v:.{SIG_DIGITS}g}"


def write_trajectory_csv(traj: Trajectory, fh) -> int:
    """Write the fixed-column CSV to an open text file; returns the row count."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(Trajectory.COLUMNS)
    numeric = [getattr(traj, c) for c in Trajectory.COLUMNS[:-1]]
    for i in range(len(traj)):
        w.writerow([_fmt(float(col[i])) for col in numeric] + [int(bool(traj.inside_Ca[i]))])
    return len(traj)


def trajectory_csv_text(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_trajectory_csv(traj, buf)
    return buf.getvalue()


def read_trajectory_csv(fh) -> Trajectory:
    """Parse a trajectory CSV. Raises :class:`TrajectoryFormatError` on any
    structural problem (bad header, short or unparsable rows, no data)."""
    rows = csv.reader(fh)
    header = next(rows, None)
    if header is None or tuple(header) != Trajectory.COLUMNS:
        raise TrajectoryFormatError(f"unexpected header {header!r}")
    cols = [[] for _ in Trajectory.COLUMNS]
    ncol = len(Trajectory.COLUMNS)
    for lineno, row in enumerate(rows, start=2):
        if len(row) != ncol:
            raise TrajectoryFormatError(f"line {lineno}: expected {ncol} fields, got {len(row)}")
        try:
            for j, field in enumerate(row[:-1]):
                if field == "":
                    if Trajectory.COLUMNS[j] not in ("eta", "W"):
                        raise ValueError(f"empty {Trajectory.COLUMNS[j]}")
                    cols[j].append(math.nan)
                else:
                    cols[j].append(float(field))
            flag = row[-1]
            if flag not in ("0", "1"):
                raise ValueError(f"inside_Ca must be 0 or 1, got {flag!r}")
            cols[-1].append(flag == "1")
        except ValueError as exc:
            raise TrajectoryFormatError(f"line {lineno}: {exc}") from None
    if not cols[0]:
        raise TrajectoryFormatError("no data rows")
    t = np.asarray(cols[0])
    if np.any(np.diff(t) < 0.0):
        raise TrajectoryFormatError("time column is not increasing")
    data = {c: np.asarray(v, dtype=float) for c, v in zip(Trajectory.COLUMNS[:-1], cols[:-1])}
    return Trajectory(**data, inside_Ca=np.asarray(cols[-1], dtype=bool))


def quantized(traj: Trajectory) -> Trajectory:
    """The trajectory exactly as it reads back from its CSV file."""
    out = read_trajectory_csv(io.StringIO(trajectory_csv_text(traj)))
    out.event = traj.event.copy()
    out.config = traj.config
    return out


def dump_json(obj, fh) -> None:
    json.dump(obj, fh, indent=2, allow_nan=False)
    fh.write("\n")
