"""Schema validation for simulation artifacts.

The CSV/JSON layouts are the contract between the simulator and this
package, so they are re-declared and checked here independently: a file
that drifted from the writer spec is rejected with a column-level message
before any rendering happens.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

TRAJECTORY_COLUMNS = ("t", "P", "sx", "sy", "sz", "x_sz", "width", "norm",
                      "energy", "d")
SNAPSHOT_COLUMNS = ("x", "re_up", "im_up", "re_down", "im_down")
PROFILE_COLUMNS = ("x", "density")
GROUND_KEYS = {"g1N", "method", "energy", "width", "n_max", "converged"}
METADATA_KEYS = {"scenario", "model", "grid", "version", "valid", "artifacts"}


class SchemaError(ValueError):
    """An artifact does not match its declared layout."""


def _check_columns(path, expected) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: file does not exist")
    with open(path) as fh:
        header = fh.readline().strip()
        body = fh.read().strip()
    names = tuple(header.split(",")) if header else ()
    for want, got in zip(expected, names):
        if want != got:
            raise SchemaError(f"{path}: expected column '{want}', found '{got}'")
    if len(names) < len(expected):
        missing = expected[len(names)]
        raise SchemaError(f"{path}: missing column '{missing}'")
    if len(names) > len(expected):
        raise SchemaError(f"{path}: unexpected column '{names[len(expected)]}'")
    if not body:
        raise SchemaError(f"{path}: no data rows")
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric data ({exc})") from None
    if data.shape[1] != len(expected):
        raise SchemaError(f"{path}: row width {data.shape[1]} != {len(expected)}")
    return data


def load_trajectory(path) -> dict[str, np.ndarray]:
    data = _check_columns(path, TRAJECTORY_COLUMNS)
    return {name: data[:, i] for i, name in enumerate(TRAJECTORY_COLUMNS)}


def load_snapshot(path) -> dict[str, np.ndarray]:
    data = _check_columns(path, SNAPSHOT_COLUMNS)
    return {name: data[:, i] for i, name in enumerate(SNAPSHOT_COLUMNS)}


def load_profile(path) -> dict[str, np.ndarray]:
    data = _check_columns(path, PROFILE_COLUMNS)
    return {name: data[:, i] for i, name in enumerate(PROFILE_COLUMNS)}


def _load_json(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: file does not exist")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def load_ground_record(path) -> dict:
    record = _load_json(path)
    missing = GROUND_KEYS - set(record)
    if missing:
        raise SchemaError(f"{path}: missing key '{sorted(missing)[0]}'")
    return record


def load_metadata(path) -> dict:
    meta = _load_json(path)
    missing = METADATA_KEYS - set(meta)
    if missing:
        raise SchemaError(f"{path}: missing key '{sorted(missing)[0]}'")
    return meta


def load_run_snapshots(metadata_path):
    """Snapshot series referenced by a run's metadata, ordered in time."""
    meta = load_metadata(metadata_path)
    base = Path(metadata_path).parent
    entries = meta["artifacts"].get("snapshots", [])
    if not entries:
        raise SchemaError(f"{metadata_path}: run has no snapshots")
    times, fields = [], []
    for entry in sorted(entries, key=lambda e: e["t"]):
        times.append(float(entry["t"]))
        fields.append(load_snapshot(base / entry["file"]))
    return np.array(times), fields


def load_sweep_index(path) -> list[dict]:
    index = _load_json(path)
    if "runs" not in index:
        raise SchemaError(f"{path}: missing key 'runs'")
    return index["runs"]
