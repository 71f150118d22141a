"""Generate a reduced-size artifact set through the simulator CLI.

The figure package only ever consumes files, so the fixtures shell out to
the `socbec` command line (the primary package must be installed) and lay
the results out in the conventional data structure.  Evolution times are
shortened: rendering does not depend on trajectory length.
"""

import shutil
import subprocess

import pytest

SOCBEC = shutil.which("socbec")
needs_simulator = pytest.mark.skipif(SOCBEC is None,
                                     reason="socbec CLI not installed")


def _run(*args):
    proc = subprocess.run([SOCBEC, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(f"socbec {' '.join(args)} failed "
                           f"({proc.returncode}): {proc.stderr}")


@pytest.fixture(scope="session")
def data_root(tmp_path_factory):
    if SOCBEC is None:
        pytest.skip("socbec CLI not installed")
    root = tmp_path_factory.mktemp("data")

    _run("ground", "--out", str(root / "fig1_hermite"), "--set", "g1N=40")
    _run("ground", "--out", str(root / "fig1_tf"), "--set", "g1N=40",
         "--set", "method=thomas_fermi")

    sweep_cfgs = []
    cfg_dir = tmp_path_factory.mktemp("cfgs")
    for g in (0, 20, 40):
        p = cfg_dir / f"ground_g{g}.cfg"
        p.write_text(f"scenario = ground\ng1N = {g}\noutput_dir = ground_g{g}\n")
        sweep_cfgs.append(str(p))
    _run("sweep", "--out", str(root / "fig2"), "--configs", *sweep_cfgs)

    _run("expand", "--out", str(root / "fig3_expand"), "--set", "g1N=20",
         "--set", "t_final=1", "--set", "snapshot_times=0,0.5,1")
    _run("trap", "--out", str(root / "fig3_trap"), "--set", "g1N=20",
         "--set", "t_final=2", "--set", "snapshot_times=0,1,2")

    for g in (0, 10, 20):
        _run("expand", "--out", str(root / f"fig4_g{g}"), "--set", f"g1N={g}",
             "--set", "t_final=1", "--set", "snapshot_times=")
    for g in (0, 10, 20, 60):
        _run("trap", "--out", str(root / f"fig5_g{g}"), "--set", f"g1N={g}",
             "--set", "t_final=2", "--set", "snapshot_times=")
    for g in (0, 10, 20):
        _run("drive", "--out", str(root / f"fig6_g{g}"), "--set", f"g1N={g}",
             "--set", "alpha=0.2", "--set", "d0=1", "--set", "t_final=2",
             "--set", "sample_stride=50")
        _run("drive", "--out", str(root / f"fig7_g{g}"), "--set", f"g1N={g}",
             "--set", "alpha=0.2", "--set", "d0=1", "--set", "t_final=2",
             "--set", "sample_stride=50", "--set", "init_phase=imprinted")
    return root
