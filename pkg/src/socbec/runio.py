"""Plain-text artifact formats shared with downstream tooling.

All CSVs carry exact headers and 17-significant-digit values so that
reruns are byte-identical and round-trip losslessly through float64.
Snapshot rows are ordered by ascending position; momentum-space data is
never written (consumers rebuild it with the documented DFT layout).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import SpatialGrid, SpinorField, make_grid
from .dynamics import Trajectory

SNAPSHOT_HEADER = "x,re_up,im_up,re_down,im_down"
TRAJECTORY_HEADER = "t,P,sx,sy,sz,x_sz,width,norm,energy,d"
PROFILE_HEADER = "x,density"

_ROW_TOL = 1e-10


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_csv(path, header: str, columns) -> None:
    rows = zip(*columns)
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def write_snapshot(field: SpinorField, path) -> None:
    _write_csv(path, SNAPSHOT_HEADER, (
        field.grid.x, field.up.real, field.up.imag,
        field.down.real, field.down.imag))


def read_snapshot(path, grid: SpatialGrid | None = None) -> SpinorField:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    x = data[:, 0]
    if grid is None:
        dx = x[1] - x[0]
        grid = make_grid(x[0], x[-1] + dx, len(x))
    up = data[:, 1] + 1j * data[:, 2]
    down = data[:, 3] + 1j * data[:, 4]
    return SpinorField(grid, np.stack([up, down]))


def write_trajectory(traj: Trajectory, path) -> None:
    """Write the sampled observables; rows are re-validated before writing."""
    p_err = np.abs(traj.purity - (traj.sx**2 + traj.sy**2 + traj.sz**2))
    if p_err.size and p_err.max() > _ROW_TOL:
        raise ValueError(
            f"trajectory row violates purity = |s|^2 by {p_err.max():.2e}")
    if traj.purity.size and (traj.purity.min() < 0.0 or traj.purity.max() > 1.0):
        raise ValueError("trajectory row has purity outside [0, 1]")
    _write_csv(path, TRAJECTORY_HEADER, (
        traj.t, traj.purity, traj.sx, traj.sy, traj.sz,
        traj.x_sz, traj.width, traj.norm, traj.energy, traj.d))


def read_trajectory(path) -> dict:
    """Columns of a trajectory CSV as a name -> array mapping."""
    with open(path) as fh:
        header = fh.readline().strip()
    if header != TRAJECTORY_HEADER:
        raise ValueError(f"unexpected trajectory header {header!r}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {name: data[:, i] for i, name in enumerate(TRAJECTORY_HEADER.split(","))}


def write_profile(x: np.ndarray, density: np.ndarray, path) -> None:
    _write_csv(path, PROFILE_HEADER, (x, density))


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n",
                          newline="\n")
