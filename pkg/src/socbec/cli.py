"""Command-line orchestration of the four standard scenarios.

Subcommands: ground | expand | trap | drive | sweep.  Every run is fully
deterministic (no seeds, no timestamps), so identical configs produce
byte-identical artifacts.  Exit codes: 0 success, 1 configuration error,
2 numerical failure, 3 boundary-guard trip (run recorded as invalid).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import VERSION_STRING
from .config import (
    ConfigError,
    RunConfig,
    apply_overrides,
    config_from_mapping,
    config_to_jsonable,
    parse_document,
)
from .dynamics import NumericalError, build_initial_state, evolve, schedule_from_params
from .ground_state import (
    ConvergenceError,
    gaussian_profile,
    gaussian_variational,
    imaginary_time_ground_state,
    minimize_hermite,
    thomas_fermi_profile,
)
from .grid import make_grid
from .runio import write_json, write_profile, write_snapshot, write_trajectory

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_INVALID = 3


@dataclass
class RunResult:
    status: int
    valid: bool
    output_dir: str
    error: str | None = None


def _ground_profile(config: RunConfig, grid):
    """Scalar input profile for the dynamic scenarios (interacting ground state)."""
    if config.model.g1N == 0.0:
        return gaussian_profile(grid)
    _, result = minimize_hermite(config.model.g1N, n_max=config.n_max,
                                 tol=config.tol, grid=grid)
    return result.psi0


def _run_ground(config: RunConfig, out: Path) -> RunResult:
    grid = make_grid(*config.grid)
    g1N = config.model.g1N
    if config.method == "hermite":
        _, res = minimize_hermite(g1N, n_max=config.n_max, tol=config.tol, grid=grid)
    elif config.method == "imaginary_time":
        res = imaginary_time_ground_state(g1N, grid)
    elif config.method == "thomas_fermi":
        res = thomas_fermi_profile(g1N, grid)
    else:  # gaussian
        var = gaussian_variational(g1N)
        psi = gaussian_profile(grid, width=var.width)
        from .ground_state import GroundStateResult
        res = GroundStateResult(psi0=psi, grid=grid, energy=var.energy,
                                width=var.width, method="gaussian")
    record = {
        "g1N": g1N,
        "method": res.method,
        "energy": res.energy,
        "width": res.width,
        "n_max": res.n_max,
        "converged": res.converged,
    }
    write_json(record, out / "ground.json")
    write_profile(grid.x, np.abs(res.psi0) ** 2, out / "profile.csv")
    return RunResult(EXIT_OK, True, str(out))


def _run_evolution(config: RunConfig, out: Path) -> RunResult:
    grid = make_grid(*config.grid)
    params = config.model
    schedule = schedule_from_params(params)
    psi_in = _ground_profile(config, grid)
    initial = build_initial_state(psi_in, grid, params.init_phase, params.alpha)
    traj = evolve(initial, params, schedule, config.evolution)
    write_trajectory(traj, out / "trajectory.csv")
    snap_files = []
    for t_snap, field in traj.snapshots:
        name = f"snapshot_t{t_snap:012.6f}.csv"
        write_snapshot(field, out / name)
        snap_files.append({"t": t_snap, "file": name})
    meta_extra = {
        "artifacts": {"trajectory": "trajectory.csv", "snapshots": snap_files},
        "valid": traj.valid,
        "invalid_reason": traj.invalid_reason,
    }
    _write_metadata(config, out, meta_extra)
    if not traj.valid:
        return RunResult(EXIT_INVALID, False, str(out), traj.invalid_reason)
    return RunResult(EXIT_OK, True, str(out))


def _write_metadata(config: RunConfig, out: Path, extra: dict) -> None:
    meta = config_to_jsonable(config)
    meta["version"] = VERSION_STRING
    meta.update(extra)
    write_json(meta, out / "metadata.json")


def run_scenario(config: RunConfig, output_dir) -> RunResult:
    """Execute one configured run, writing all artifacts into output_dir."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        if config.scenario == "ground":
            result = _run_ground(config, out)
            _write_metadata(config, out, {
                "artifacts": {"record": "ground.json", "profile": "profile.csv"},
                "valid": True, "invalid_reason": None})
            return result
        return _run_evolution(config, out)
    except (NumericalError, ConvergenceError) as exc:
        _write_metadata(config, out, {"artifacts": {}, "valid": False,
                                      "invalid_reason": str(exc)})
        return RunResult(EXIT_NUMERICAL, False, str(out), str(exc))


def _load_config(path: str | None, assignments: list[str],
                 scenario: str | None = None) -> RunConfig:
    values = {}
    if path is not None:
        values = parse_document(Path(path).read_text())
    if scenario is not None:
        values.setdefault("scenario", scenario)
    values = apply_overrides(values, assignments)
    return config_from_mapping(values)


def _sweep_worker(args):
    index, config, out_dir = args
    try:
        result = run_scenario(config, out_dir)
        return index, result
    except Exception as exc:  # run isolation: a failure must not kill the sweep
        return index, RunResult(EXIT_NUMERICAL, False, str(out_dir),
                                f"{type(exc).__name__}: {exc}")


def sweep(configs: list[RunConfig], out_root, parallelism: int = 1) -> dict:
    """Run many configs independently; write an index of outcomes.

    Output directories must be pairwise distinct (checked before any run);
    a failing run is recorded in the index without aborting the others, and
    the artifacts are identical for any parallelism level.
    """
    out_root = Path(out_root)
    out_root.mkdir(parents=True, exist_ok=True)
    dirs = []
    for i, cfg in enumerate(configs):
        sub = cfg.output_dir or f"run_{i:03d}"
        dirs.append(out_root / sub)
    resolved = [str(d.resolve()) for d in dirs]
    if len(set(resolved)) != len(resolved):
        raise ConfigError("sweep requires pairwise-distinct output directories")

    jobs = [(i, cfg, str(d)) for i, (cfg, d) in enumerate(zip(configs, dirs))]
    results: dict[int, RunResult] = {}
    if parallelism <= 1:
        for job in jobs:
            i, res = _sweep_worker(job)
            results[i] = res
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as pool:
            for i, res in pool.map(_sweep_worker, jobs):
                results[i] = res

    index = {
        "version": VERSION_STRING,
        "runs": [
            {
                "scenario": configs[i].scenario,
                "g1N": configs[i].model.g1N,
                "output_dir": str(dirs[i].name),
                "status": results[i].status,
                "valid": results[i].valid,
                "error": results[i].error,
            }
            for i in range(len(configs))
        ],
    }
    write_json(index, out_root / "index.json")
    return index


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socbec",
        description="Spin-orbit-coupled two-component BEC simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("ground", "expand", "trap", "drive"):
        p = sub.add_parser(name, help=f"run the {name} scenario")
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--set", dest="assignments", action="append", default=[],
                       metavar="KEY=VALUE", help="override a config key")
    p = sub.add_parser("sweep", help="run several configs independently")
    p.add_argument("--configs", nargs="+", required=True,
                   help="config files, one per run")
    p.add_argument("--out", required=True, help="root output directory")
    p.add_argument("--set", dest="assignments", action="append", default=[],
                   metavar="KEY=VALUE", help="override applied to every run")
    p.add_argument("--parallelism", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            configs = []
            for path in args.configs:
                values = parse_document(Path(path).read_text())
                values = apply_overrides(values, args.assignments)
                cfg = config_from_mapping(values)
                if cfg.output_dir is None:
                    cfg.output_dir = Path(path).stem
                configs.append(cfg)
            index = sweep(configs, args.out, args.parallelism)
            bad = [r for r in index["runs"] if r["status"] != EXIT_OK]
            if any(r["status"] == EXIT_NUMERICAL for r in bad):
                return EXIT_NUMERICAL
            if bad:
                return EXIT_INVALID
            return EXIT_OK
        config = _load_config(args.config, args.assignments, scenario=args.command)
        if config.scenario != args.command:
            raise ConfigError(
                f"config scenario {config.scenario!r} does not match "
                f"subcommand {args.command!r}")
        result = run_scenario(config, args.out)
        if result.error:
            print(f"error: {result.error}", file=sys.stderr)
        return result.status
    except (NumericalError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, TypeError, FileNotFoundError) as exc:
        # ConfigError and precondition violations (grid too narrow, ...)
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception:
        traceback.print_exc()
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
