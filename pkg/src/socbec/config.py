"""Run configuration: flat key=value documents with scenario defaults.

The config format is a plain text file of `key = value` lines (# starts a
comment).  Nested structure uses dotted keys (grid.x_min).  Unknown keys
are rejected; every default mirrors the standard figure parameters so each
scenario is runnable with a one- or two-key config.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grid import ModelParams
from .dynamics import EvolutionConfig, rabi_parameters

SCENARIOS = ("ground", "expand", "trap", "drive")
GROUND_METHODS = ("hermite", "imaginary_time", "thomas_fermi", "gaussian")


class ConfigError(ValueError):
    """Invalid configuration; message names the offending key."""


@dataclass
class RunConfig:
    scenario: str
    model: ModelParams
    evolution: EvolutionConfig | None
    grid: tuple[float, float, int]
    output_dir: str | None = None
    method: str = "hermite"        # ground scenario only
    n_max: int = 32
    tol: float = 1e-10
    overrides: dict = field(default_factory=dict)


def _parse_bool(key, raw):
    low = raw.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def _parse_float(key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


def _parse_int(key, raw):
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None
    return value


def _parse_float_list(key, raw):
    raw = raw.strip()
    if not raw:
        return ()
    return tuple(_parse_float(key, part) for part in raw.split(","))


def _parse_choice(choices):
    def parse(key, raw):
        if raw not in choices:
            raise ConfigError(f"{key}: must be one of {choices}, got {raw!r}")
        return raw
    return parse


_KEY_PARSERS = {
    "scenario": _parse_choice(SCENARIOS),
    "g1N": _parse_float,
    "alpha": _parse_float,
    "delta": _parse_float,
    "d0": _parse_float,
    "drive": _parse_choice(("none", "resonant_sine")),
    "init_phase": _parse_choice(("plain", "imprinted")),
    "trap_on": _parse_bool,
    "dt": _parse_float,
    "t_final": _parse_float,
    "sample_stride": _parse_int,
    "snapshot_times": _parse_float_list,
    "grid.x_min": _parse_float,
    "grid.x_max": _parse_float,
    "grid.n_points": _parse_int,
    "method": _parse_choice(GROUND_METHODS),
    "n_max": _parse_int,
    "tol": _parse_float,
    "output_dir": lambda key, raw: raw,
}


def parse_document(text: str) -> dict:
    """key = value lines -> typed mapping; unknown keys are an error."""
    values = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _KEY_PARSERS:
            raise ConfigError(f"unknown key {key!r} (line {lineno})")
        values[key] = _KEY_PARSERS[key](key, raw)
    return values


_SNAP_DEFAULTS = {
    "expand": tuple(0.25 * i for i in range(41)),       # 0 .. 10
    "trap": tuple(1.5 * i for i in range(101)),         # 0 .. 150
    "drive": (),
}

_MODEL_DEFAULTS = {
    "ground": dict(g1N=40.0, alpha=0.0, delta=0.0, d0=0.0,
                   drive="none", init_phase="plain", trap_on=True),
    "expand": dict(g1N=0.0, alpha=0.2, delta=0.0, d0=0.0,
                   drive="none", init_phase="plain", trap_on=False),
    "trap": dict(g1N=20.0, alpha=0.2, delta=0.0, d0=0.0,
                 drive="none", init_phase="plain", trap_on=True),
    "drive": dict(g1N=10.0, alpha=0.1, delta=0.1, d0=2.0,
                  drive="resonant_sine", init_phase="plain", trap_on=True),
}

_GRID_DEFAULTS = {
    "ground": (-16.0, 16.0, 512),
    "expand": (-64.0, 64.0, 2048),
    "trap": (-16.0, 16.0, 512),
    "drive": (-16.0, 16.0, 512),
}

_T_FINAL_DEFAULTS = {"expand": 10.0, "trap": 150.0}


def config_from_mapping(values: dict) -> RunConfig:
    """Fill scenario defaults and enforce scenario constraints."""
    if "scenario" not in values:
        raise ConfigError("missing required key 'scenario'")
    scenario = values["scenario"]
    model_kw = dict(_MODEL_DEFAULTS[scenario])
    for key in model_kw:
        if key in values:
            model_kw[key] = values[key]
    try:
        model = ModelParams(**model_kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    if scenario == "expand" and model.trap_on:
        raise ConfigError("scenario 'expand' requires trap_on = false")
    if scenario in ("trap", "drive") and not model.trap_on:
        raise ConfigError(f"scenario {scenario!r} requires trap_on = true")
    if scenario == "drive" and model.drive != "resonant_sine":
        raise ConfigError("scenario 'drive' requires drive = resonant_sine")
    if scenario in ("expand", "trap") and model.drive != "none":
        raise ConfigError(f"scenario {scenario!r} requires drive = none")

    gx = _GRID_DEFAULTS[scenario]
    grid = (values.get("grid.x_min", gx[0]),
            values.get("grid.x_max", gx[1]),
            values.get("grid.n_points", gx[2]))
    if grid[1] <= grid[0]:
        raise ConfigError("grid.x_max must exceed grid.x_min")

    evolution = None
    if scenario != "ground":
        if "t_final" in values:
            t_default = values["t_final"]
        elif scenario == "drive":
            try:
                t_default = 2.0 * rabi_parameters(model).T_sf  # two spin flips
            except ValueError as exc:
                raise ConfigError(f"t_final: {exc}") from None
        else:
            t_default = _T_FINAL_DEFAULTS[scenario]
        # expansion of strongly interacting clouds needs the finer step
        dt_default = 5e-4 if (scenario == "expand" and model.g1N >= 20) else 1e-3
        try:
            evolution = EvolutionConfig(
                dt=values.get("dt", dt_default),
                t_final=t_default,
                sample_stride=values.get("sample_stride", 100),
                snapshot_times=values.get("snapshot_times", _SNAP_DEFAULTS[scenario]),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    return RunConfig(
        scenario=scenario, model=model, evolution=evolution, grid=grid,
        output_dir=values.get("output_dir"),
        method=values.get("method", "hermite"),
        n_max=values.get("n_max", 32),
        tol=values.get("tol", 1e-10),
        overrides=dict(values),
    )


def parse_config(text: str) -> RunConfig:
    return config_from_mapping(parse_document(text))


def apply_overrides(values: dict, assignments: list[str]) -> dict:
    """Apply repeatable `--set key=value` assignments on top of a mapping."""
    out = dict(values)
    for item in assignments:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _KEY_PARSERS:
            raise ConfigError(f"unknown key {key!r} in --set")
        out[key] = _KEY_PARSERS[key](key, raw)
    return out


def config_to_jsonable(config: RunConfig) -> dict:
    model = config.model
    meta = {
        "scenario": config.scenario,
        "model": {
            "g1N": model.g1N, "alpha": model.alpha, "delta": model.delta,
            "d0": model.d0, "drive": model.drive,
            "init_phase": model.init_phase, "trap_on": model.trap_on,
        },
        "grid": {"x_min": config.grid[0], "x_max": config.grid[1],
                 "n_points": config.grid[2]},
    }
    if config.evolution is not None:
        ev = config.evolution
        meta["evolution"] = {
            "dt": ev.dt, "t_final": ev.t_final,
            "sample_stride": ev.sample_stride,
            "snapshot_times": list(ev.snapshot_times),
        }
    else:
        meta["ground"] = {"method": config.method, "n_max": config.n_max,
                          "tol": config.tol}
    return meta
