"""Run configuration: documented TOML schema with strict validation.

Schema (all keys optional unless noted):

    n = 256                  # grid size, even, >= 8   (required)
    seed = 0                 # seeds the enclosing-circle shuffle
    sample_interval = 0.05   # time between recorded snapshots
    output_dir = "out"       # overridable via $CURVEFLOW_OUTPUT_DIR
    snapshot_count = 8       # JSON/SVG snapshots kept per run

    [shape]                  # required
    kind = "circle" | "ellipse" | "fourier" | "raw"
    R = 1.0                  # circle
    a = 2.0                  # ellipse semi-axes
    b = 1.0
    r0 = 1.0                 # fourier base radius
    harmonics = [[2, 0.1, 0.0]]   # fourier [k, a_k, b_k], k >= 2
    kappa = [...]            # raw curvature samples (length n)

    [stepper]
    cfl = 0.5
    stencil_order = 2        # 2 or 4
    projection_period = 100  # steps between closing re-projections
    t_max = 60.0
    stop_uniformity = 1e-10  # stop when kappa_max/kappa_min - 1 drops below
    stop_deficit = 1e-12     # stop when L^2 - 4*pi*A drops below
    dt = 0.0                 # 0 = automatic parabolic cap
    max_steps = 0            # 0 = unlimited

    [tolerances]             # per-claim overrides, see diagnostics.DEFAULT_TOLERANCES

Unknown keys anywhere are rejected by name.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .diagnostics import merge_tolerances
from .shapes import Circle, Ellipse, FourierShape, RawProfile, ShapeSpec
from .solver import StepperConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    shape: ShapeSpec
    n: int
    stepper: StepperConfig = StepperConfig()
    sample_interval: float = 0.05
    output_dir: str = "out"
    tolerances: dict[str, float] = field(default_factory=dict)
    seed: int = 0
    snapshot_count: int = 8


def _take(table: dict, section: str, key: str, default=None, required=False):
    if key in table:
        return table.pop(key)
    if required:
        raise ConfigError(f"missing required key '{key}' in [{section}]" if section
                          else f"missing required key '{key}'")
    return default


def _reject_unknown(table: dict, section: str) -> None:
    if table:
        name = next(iter(table))
        where = f" in [{section}]" if section else ""
        raise ConfigError(f"unknown key '{name}'{where}")


def _as_number(value, section: str, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{key}'{f' in [{section}]' if section else ''} "
                          f"must be a number, got {value!r}")
    return float(value)


def _parse_shape(table) -> ShapeSpec:
    if not isinstance(table, dict):
        raise ConfigError("[shape] must be a table")
    table = dict(table)
    kind = _take(table, "shape", "kind", required=True)
    try:
        if kind == "circle":
            spec = Circle(radius=_as_number(_take(table, "shape", "R", required=True),
                                            "shape", "R"))
        elif kind == "ellipse":
            spec = Ellipse(a=_as_number(_take(table, "shape", "a", required=True), "shape", "a"),
                           b=_as_number(_take(table, "shape", "b", required=True), "shape", "b"))
        elif kind == "fourier":
            r0 = _as_number(_take(table, "shape", "r0", required=True), "shape", "r0")
            raw_harmonics = _take(table, "shape", "harmonics", default=[])
            harmonics = []
            for item in raw_harmonics:
                if len(item) != 3:
                    raise ConfigError(f"harmonics entries must be [k, a_k, b_k], got {item!r}")
                harmonics.append((int(item[0]), float(item[1]), float(item[2])))
            spec = FourierShape(r0=r0, harmonics=tuple(harmonics))
        elif kind == "raw":
            kappa = _take(table, "shape", "kappa", required=True)
            spec = RawProfile(kappa=tuple(float(v) for v in kappa))
        else:
            raise ConfigError(f"unknown shape kind {kind!r} "
                              "(expected circle, ellipse, fourier or raw)")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid [shape]: {exc}") from exc
    _reject_unknown(table, "shape")
    return spec


def _parse_stepper(table) -> StepperConfig:
    if not isinstance(table, dict):
        raise ConfigError("[stepper] must be a table")
    table = dict(table)
    defaults = StepperConfig()
    kwargs = {}
    for key, cast in (("cfl", float), ("stencil_order", int), ("projection_period", int),
                      ("t_max", float), ("stop_uniformity", float), ("stop_deficit", float),
                      ("dt", float), ("max_steps", int)):
        if key in table:
            kwargs[key] = cast(_as_number(table.pop(key), "stepper", key))
        else:
            kwargs[key] = getattr(defaults, key)
    _reject_unknown(table, "stepper")
    try:
        return StepperConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"invalid [stepper]: {exc}") from exc


def _parse_tolerances(table) -> dict[str, float]:
    if not isinstance(table, dict):
        raise ConfigError("[tolerances] must be a table")
    overrides = {key: _as_number(value, "tolerances", key) for key, value in table.items()}
    try:
        merge_tolerances(overrides)  # validates the key names
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return overrides


def load_config(text: str) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    n = _take(data, "", "n", required=True)
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigError(f"'n' must be an integer, got {n!r}")
    if n < 8 or n % 2 != 0:
        raise ConfigError("grid size must be even and ≥ 8")

    shape = _parse_shape(_take(data, "", "shape", required=True))
    stepper = _parse_stepper(_take(data, "", "stepper", default={}))
    tolerances = _parse_tolerances(_take(data, "", "tolerances", default={}))

    sample_interval = _as_number(_take(data, "", "sample_interval", default=0.05),
                                 "", "sample_interval")
    if sample_interval <= 0:
        raise ConfigError("'sample_interval' must be positive")
    seed = _take(data, "", "seed", default=0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError(f"'seed' must be an integer, got {seed!r}")
    snapshot_count = _take(data, "", "snapshot_count", default=8)
    if not isinstance(snapshot_count, int) or snapshot_count < 1:
        raise ConfigError(f"'snapshot_count' must be a positive integer, got {snapshot_count!r}")
    output_dir = _take(data, "", "output_dir", default="out")
    if not isinstance(output_dir, str):
        raise ConfigError(f"'output_dir' must be a string, got {output_dir!r}")
    output_dir = os.environ.get("CURVEFLOW_OUTPUT_DIR", output_dir)

    _reject_unknown(data, "")
    return RunConfig(shape=shape, n=n, stepper=stepper,
                     sample_interval=float(sample_interval), output_dir=output_dir,
                     tolerances=tolerances, seed=seed, snapshot_count=snapshot_count)


def load_config_file(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return load_config(fh.read())


__all__ = ["ConfigError", "RunConfig", "load_config", "load_config_file"]
