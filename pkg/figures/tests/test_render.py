"""Rendering behavior: pure views, determinism, validation before drawing."""

import numpy as np
import pytest

from conftest import needs_simulator
from socbec_figures import FigureSpec, SchemaError, render
from socbec_figures.schema import load_trajectory


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        FigureSpec("pie_chart", ("x.csv",))


def test_missing_input_rejected(tmp_path):
    spec = FigureSpec("timeseries", (tmp_path / "absent.csv",))
    with pytest.raises(SchemaError, match="does not exist"):
        render(spec, tmp_path / "out.png")


@needs_simulator
class TestWithArtifacts:
    def test_timeseries_is_pure_view(self, data_root, tmp_path):
        # the drawn values are exactly the stored columns
        traj_path = data_root / "fig6_g20" / "trajectory.csv"
        cols = load_trajectory(traj_path)
        assert np.array_equal(
            cols["P"], np.loadtxt(traj_path, delimiter=",", skiprows=1)[:, 1])
        out = render(FigureSpec("timeseries", (traj_path,),
                                {"columns": ["P", "sx"]}),
                     tmp_path / "ts.png")
        assert out.stat().st_size > 0

    def test_render_is_deterministic(self, data_root, tmp_path):
        spec = FigureSpec("bloch3d",
                          (data_root / "fig6_g20" / "trajectory.csv",))
        a = render(spec, tmp_path / "a.png")
        b = render(spec, tmp_path / "b.png")
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_column_rejected(self, data_root, tmp_path):
        spec = FigureSpec("timeseries",
                          (data_root / "fig6_g20" / "trajectory.csv",),
                          {"columns": ["momentum"]})
        with pytest.raises(SchemaError, match="momentum"):
            render(spec, tmp_path / "x.png")

    def test_density_map_requires_snapshots(self, data_root, tmp_path):
        spec = FigureSpec("density_map",
                          (data_root / "fig4_g0" / "metadata.json",))
        with pytest.raises(SchemaError, match="no snapshots"):
            render(spec, tmp_path / "x.png")

    def test_profile_overlay(self, data_root, tmp_path):
        spec = FigureSpec("profile_overlay",
                          (data_root / "fig1_hermite" / "profile.csv",
                           data_root / "fig1_tf" / "profile.csv"),
                          {"labels": ["numeric", "closed form"]})
        out = render(spec, tmp_path / "overlay.png")
        assert out.exists()
