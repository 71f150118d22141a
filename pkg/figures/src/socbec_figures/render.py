"""Figure rendering: pure views of validated artifact files.

No physics is recomputed here.  The only transforms applied to stored
columns are presentational: |psi|^2 from the stored re/im pairs of a
snapshot, and axis selection.  Line styles follow the house convention of
one (color, dash) pair per interaction strength, ordered black solid, red
dashed, blue dash-dotted, green dotted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .schema import (  # noqa: E402
    SchemaError,
    load_ground_record,
    load_profile,
    load_run_snapshots,
    load_sweep_index,
    load_trajectory,
)

KINDS = ("profile_overlay", "sweep_curves", "density_map", "timeseries",
         "bloch3d")

LINE_STYLES = (("black", "solid"), ("tab:red", "dashed"),
               ("tab:blue", "dashdot"), ("tab:green", "dotted"))

COLUMN_LABELS = {"P": "purity", "sx": "<sigma_x>", "sy": "<sigma_y>",
                 "sz": "<sigma_z>", "x_sz": "<x sigma_z>", "width": "width",
                 "energy": "energy", "norm": "norm", "d": "trap center"}

_SAVE_OPTS = dict(dpi=150, metadata={"Software": "socbec-figures"})


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: a kind, its input artifacts, and style options."""

    kind: str
    inputs: tuple
    style: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        object.__setattr__(self, "inputs", tuple(str(p) for p in self.inputs))


def _style_cycle(i):
    color, dash = LINE_STYLES[i % len(LINE_STYLES)]
    return dict(color=color, linestyle=dash)


def _render_profile_overlay(spec):
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    labels = spec.style.get("labels")
    for i, path in enumerate(spec.inputs):
        cols = load_profile(path)
        label = labels[i] if labels else Path(path).parent.name
        ax.plot(cols["x"], cols["density"], label=label, **_style_cycle(i))
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    span = spec.style.get("xlim")
    if span:
        ax.set_xlim(*span)
    ax.legend(frameon=False)
    return fig


def _render_sweep_curves(spec):
    index_path = Path(spec.inputs[0])
    runs = load_sweep_index(index_path)
    points = []
    for run in runs:
        if not run.get("valid", False):
            continue
        record = load_ground_record(index_path.parent / run["output_dir"]
                                    / "ground.json")
        points.append((record["g1N"], record["energy"], record["width"]))
    if not points:
        raise SchemaError(f"{index_path}: no valid ground-state runs")
    points.sort()
    g, e, w = (np.array(v) for v in zip(*points))
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(g, e, label="ground-state energy", **_style_cycle(0))
    ax.plot(g, w, label="condensate width", **_style_cycle(1))
    ax.set_xlabel("g1N")
    ax.legend(frameon=False)
    return fig


def _render_density_map(spec):
    n_runs = len(spec.inputs)
    fig, axes = plt.subplots(n_runs, 2, figsize=(7.4, 2.6 * n_runs),
                             squeeze=False)
    titles = spec.style.get("labels") or [Path(p).parent.name
                                          for p in spec.inputs]
    for row, meta_path in enumerate(spec.inputs):
        times, snaps = load_run_snapshots(meta_path)
        x = snaps[0]["x"]
        dens_up = np.array([s["re_up"] ** 2 + s["im_up"] ** 2 for s in snaps])
        dens_dn = np.array([s["re_down"] ** 2 + s["im_down"] ** 2 for s in snaps])
        for col, (dens, name) in enumerate(
                [(dens_up, "spin up"), (dens_dn, "spin down")]):
            ax = axes[row][col]
            ax.pcolormesh(times, x, dens.T, shading="nearest", cmap="inferno")
            ax.set_ylabel("x")
            ax.set_xlabel("t")
            ax.set_title(f"{titles[row]}: {name}", fontsize=9)
    fig.tight_layout()
    return fig


def _render_timeseries(spec):
    columns = spec.style.get("columns", ["P"])
    labels = spec.style.get("labels")
    runs = [load_trajectory(p) for p in spec.inputs]
    fig, axes = plt.subplots(len(columns), 1, figsize=(5.6, 2.2 * len(columns)),
                             sharex=True, squeeze=False)
    for r, column in enumerate(columns):
        if column not in runs[0]:
            raise SchemaError(f"unknown trajectory column '{column}'")
        ax = axes[r][0]
        for i, cols in enumerate(runs):
            label = labels[i] if labels else Path(spec.inputs[i]).parent.name
            ax.plot(cols["t"], cols[column],
                    label=label if r == 0 else None, **_style_cycle(i))
        ax.set_ylabel(COLUMN_LABELS.get(column, column))
    axes[-1][0].set_xlabel("t")
    axes[0][0].legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return fig


def _render_bloch3d(spec):
    cols = load_trajectory(spec.inputs[0])
    sx, sy, sz = cols["sx"], cols["sy"], cols["sz"]
    fig = plt.figure(figsize=(4.8, 4.8))
    ax = fig.add_subplot(projection="3d")
    u = np.linspace(0.0, 2.0 * np.pi, 25)
    v = np.linspace(0.0, np.pi, 13)
    ax.plot_wireframe(np.outer(np.cos(u), np.sin(v)),
                      np.outer(np.sin(u), np.sin(v)),
                      np.outer(np.ones_like(u), np.cos(v)),
                      color="lightgray", linewidth=0.4)
    ax.plot(sx, sy, sz, color="tab:blue", linewidth=1.0)
    # initial spin vector green, final red
    ax.quiver(0, 0, 0, sx[0], sy[0], sz[0], color="green", linewidth=2.0)
    ax.quiver(0, 0, 0, sx[-1], sy[-1], sz[-1], color="red", linewidth=2.0)
    ax.set_xlim(-1, 1), ax.set_ylim(-1, 1), ax.set_zlim(-1, 1)
    ax.set_xlabel("<sigma_x>")
    ax.set_ylabel("<sigma_y>")
    ax.set_zlabel("<sigma_z>")
    return fig


_RENDERERS = {
    "profile_overlay": _render_profile_overlay,
    "sweep_curves": _render_sweep_curves,
    "density_map": _render_density_map,
    "timeseries": _render_timeseries,
    "bloch3d": _render_bloch3d,
}


def validate_inputs(spec: FigureSpec) -> None:
    """Check existence and schema of every input before drawing anything."""
    if not spec.inputs:
        raise SchemaError("figure spec has no inputs")
    for path in spec.inputs:
        if not Path(path).exists():
            raise SchemaError(f"{path}: file does not exist")
    if spec.kind in ("timeseries", "bloch3d"):
        for path in spec.inputs:
            load_trajectory(path)
    elif spec.kind == "profile_overlay":
        for path in spec.inputs:
            load_profile(path)
    elif spec.kind == "sweep_curves":
        load_sweep_index(spec.inputs[0])
    elif spec.kind == "density_map":
        for path in spec.inputs:
            load_run_snapshots(path)


def render(spec: FigureSpec, out) -> Path:
    """Validate inputs, draw the figure, write a deterministic image file."""
    validate_inputs(spec)
    fig = _RENDERERS[spec.kind](spec)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, **_SAVE_OPTS)
    plt.close(fig)
    return out
