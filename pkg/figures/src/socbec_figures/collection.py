"""The standard seven-figure set from a conventional data layout.

Expected subdirectories of the data root (produced by the simulator CLI
with the configs shipped alongside it):

    fig1_hermite, fig1_tf            ground profiles at g1N = 40
    fig2                             ground sweep (index.json)
    fig3_expand, fig3_trap           snapshot runs for the density maps
    fig4_g{0,10,20}                  released-condensate trajectories
    fig5_g{0,10,20,60}               static-trap trajectories
    fig6_g{0,10,20}                  driven runs, plain initial state
    fig7_g{0,10,20}                  driven runs, phase-imprinted state
"""

from __future__ import annotations

from pathlib import Path

from .render import FigureSpec, render


def _g_labels(values):
    return [f"g1N = {g}" for g in values]


def standard_figure_specs(data_dir) -> dict[str, FigureSpec]:
    data = Path(data_dir)
    traj = "trajectory.csv"
    specs = {
        "fig1": FigureSpec(
            "profile_overlay",
            (data / "fig1_hermite" / "profile.csv",
             data / "fig1_tf" / "profile.csv"),
            {"labels": ["basis minimization", "Thomas-Fermi"],
             "xlim": (-6.0, 6.0)}),
        "fig2": FigureSpec("sweep_curves", (data / "fig2" / "index.json",)),
        "fig3": FigureSpec(
            "density_map",
            (data / "fig3_expand" / "metadata.json",
             data / "fig3_trap" / "metadata.json"),
            {"labels": ["released", "trapped"]}),
        "fig4": FigureSpec(
            "timeseries",
            tuple(data / f"fig4_g{g}" / traj for g in (0, 10, 20)),
            {"columns": ["P", "sx"], "labels": _g_labels((0, 10, 20))}),
        "fig5": FigureSpec(
            "timeseries",
            tuple(data / f"fig5_g{g}" / traj for g in (0, 10, 20, 60)),
            {"columns": ["P", "sx", "x_sz"], "labels": _g_labels((0, 10, 20, 60))}),
        "fig6_traces": FigureSpec(
            "timeseries",
            tuple(data / f"fig6_g{g}" / traj for g in (0, 10, 20)),
            {"columns": ["P", "sx"], "labels": _g_labels((0, 10, 20))}),
        "fig6_bloch": FigureSpec("bloch3d", (data / "fig6_g20" / traj,)),
        "fig7_traces": FigureSpec(
            "timeseries",
            tuple(data / f"fig7_g{g}" / traj for g in (0, 10, 20)),
            {"columns": ["P", "sx"], "labels": _g_labels((0, 10, 20))}),
        "fig7_bloch": FigureSpec("bloch3d", (data / "fig7_g20" / traj,)),
    }
    return specs


def render_standard_set(data_dir, out_dir) -> list[Path]:
    out = Path(out_dir)
    written = []
    for name, spec in standard_figure_specs(data_dir).items():
        written.append(render(spec, out / f"{name}.png"))
    return written
