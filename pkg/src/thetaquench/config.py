"""Run configuration for the command-line pipelines.

A configuration comes from a plain ``key = value`` file, from command-line
flags, or both (flags win).  Every mode has a fixed key schema; unknown
keys are rejected by name so typos fail loudly instead of silently running
with defaults.  There is no randomness anywhere, so a config fully
determines the output bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .free_theory import FreeParams, wrap_angle
from .lattice import LatticeParams

MODES = ("free-phase", "free-rate", "free-nu", "ed-run", "ed-scan")

# Keys shared by every mode.
_COMMON = {
    "out": (str, "."),
    "m": (float, 1.0),
}

# Per-mode schemas: key -> (type, default).  None means "no default; the
# value is optional and may stay unset".
_FREE_ANGLES = {
    "theta": (float, 0.0),
    "theta_prime": (float, None),
    "delta_theta": (float, None),
}
_FREE_KGRID = {
    "k_max": (float, 3.0),
    "k_points": (int, 401),
}
_FREE_TGRID = {
    "t_max": (float, 12.0),
    "t_points": (int, 401),
}
_ED_GEOMETRY = {
    "n_sites": (int, 8),
    "a": (float, 0.8),
}
_SCHEMAS: dict[str, dict] = {
    "free-phase": {**_COMMON, **_FREE_ANGLES, **_FREE_KGRID, **_FREE_TGRID},
    "free-rate": {**_COMMON, **_FREE_ANGLES, **_FREE_TGRID,
                  "cutoff": (float, None)},
    "free-nu": {**_COMMON, **_FREE_ANGLES, **_FREE_KGRID, **_FREE_TGRID,
                "cutoff": (float, None)},
    "ed-run": {**_COMMON, **_ED_GEOMETRY, "e": (float, 1.0),
               "t_max": (float, 4.0), "t_step": (float, 0.05)},
    "ed-scan": {**_COMMON, **_ED_GEOMETRY,
                "e_min": (float, 0.0), "e_max": (float, 3.0),
                "e_step": (float, 0.25),
                "t_max": (float, 20.0), "t_step": (float, 0.05)},
}


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of one pipeline run.

    ``physics`` holds the mode parameters (free theory or lattice); grids
    that a mode does not use stay None.  ``extras`` carries optional knobs
    (currently only the quadrature cutoff).
    """

    mode: str
    physics: FreeParams | LatticeParams
    t_grid: np.ndarray
    k_grid: np.ndarray | None
    e_values: np.ndarray | None
    out_dir: str
    extras: dict


def parse_kv_file(path: str) -> dict[str, str]:
    """Read ``key = value`` lines; '#' starts a comment, blanks ignored."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}:{lineno}: expected 'key = value', got {line!r}"
                )
            key, value = (part.strip() for part in line.split("=", 1))
            if key in values:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            values[key] = value
    return values


def _coerce(mode: str, raw: dict[str, str | float | int]) -> dict:
    schema = _SCHEMAS[mode]
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ValueError(
            f"unknown key(s) for {mode}: {', '.join(unknown)}"
        )
    values = {}
    for key, (kind, default) in schema.items():
        if key not in raw or raw[key] is None:
            values[key] = default
            continue
        try:
            values[key] = kind(raw[key])
        except (TypeError, ValueError):
            raise ValueError(
                f"key {key!r} expects {kind.__name__}, got {raw[key]!r}"
            ) from None
    return values


def _angles(values: dict) -> tuple[float, float]:
    """Resolve (theta, theta_prime), warning when the quench angle wraps."""
    theta = values["theta"]
    if values["theta_prime"] is not None and values["delta_theta"] is not None:
        raise ValueError("give either theta_prime or delta_theta, not both")
    if values["delta_theta"] is not None:
        requested = values["delta_theta"]
        theta_prime = theta + requested
    else:
        theta_prime = (values["theta_prime"] if values["theta_prime"]
                       is not None else theta + math.pi)
        requested = theta_prime - theta
    wrapped = float(wrap_angle(requested))
    if abs(wrapped - requested) > 1e-12:
        warnings.warn(
            f"quench angle {requested:.6g} lies outside (-pi, pi]; "
            f"wrapped to {wrapped:.6g}",
            UserWarning, stacklevel=3,
        )
    return theta, theta_prime


def _linspace_grid(lo: float, hi: float, points: int, name: str) -> np.ndarray:
    if points < 2:
        raise ValueError(f"{name} needs at least 2 points, got {points}")
    if not hi > lo:
        raise ValueError(f"{name} range is empty: [{lo}, {hi}]")
    return np.linspace(lo, hi, points)


def _step_grid(t_max: float, step: float) -> np.ndarray:
    if step <= 0.0:
        raise ValueError(f"t_step must be positive, got {step}")
    if t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    return np.arange(0.0, t_max + 0.5 * step, step)


def build_config(mode: str, raw: dict) -> RunConfig:
    """Validate raw key-value input for one mode into a RunConfig."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    values = _coerce(mode, raw)
    if values["m"] <= 0.0:
        raise ValueError(f"m must be positive, got {values['m']}")
    out_dir = values["out"]

    if mode.startswith("free"):
        theta, theta_prime = _angles(values)
        physics = FreeParams(m=values["m"], theta=theta,
                             theta_prime=theta_prime)
        t_grid = _linspace_grid(0.0, values["t_max"], values["t_points"],
                                "t grid")
        k_grid = None
        if "k_max" in values:
            if values["k_points"] % 2 == 0:
                raise ValueError(
                    "k_points must be odd so the grid contains k = 0"
                )
            k_grid = _linspace_grid(-values["k_max"], values["k_max"],
                                    values["k_points"], "k grid")
        extras = {}
        if values.get("cutoff") is not None:
            if values["cutoff"] <= 0.0:
                raise ValueError("cutoff must be positive")
            extras["cutoff"] = values["cutoff"]
        return RunConfig(mode=mode, physics=physics, t_grid=t_grid,
                         k_grid=k_grid, e_values=None, out_dir=out_dir,
                         extras=extras)

    physics = LatticeParams(
        n_sites=values["n_sites"], a=values["a"], m=values["m"],
        e=values.get("e", 0.0),
    )
    t_grid = _step_grid(values["t_max"], values["t_step"])
    e_values = None
    if mode == "ed-scan":
        if values["e_step"] <= 0.0:
            raise ValueError("e_step must be positive")
        if values["e_max"] < values["e_min"]:
            raise ValueError("e_max must not be below e_min")
        e_values = np.arange(values["e_min"],
                             values["e_max"] + 0.5 * values["e_step"],
                             values["e_step"])
    return RunConfig(mode=mode, physics=physics, t_grid=t_grid, k_grid=None,
                     e_values=e_values, out_dir=out_dir, extras={})


def config_summary(cfg: RunConfig) -> dict:
    """JSON-ready dump of every parameter that determines the run."""
    summary: dict = {"mode": cfg.mode, "out": cfg.out_dir}
    p = cfg.physics
    if isinstance(p, FreeParams):
        summary["physics"] = {
            "kind": "free", "m": p.m, "theta": p.theta,
            "theta_prime": p.theta_prime, "delta_theta": p.dtheta,
        }
    else:
        summary["physics"] = {
            "kind": "lattice", "n_sites": p.n_sites, "a": p.a,
            "m": p.m, "e": p.e,
        }
    summary["t_grid"] = {
        "start": float(cfg.t_grid[0]), "stop": float(cfg.t_grid[-1]),
        "points": int(cfg.t_grid.size),
    }
    if cfg.k_grid is not None:
        summary["k_grid"] = {
            "start": float(cfg.k_grid[0]), "stop": float(cfg.k_grid[-1]),
            "points": int(cfg.k_grid.size),
        }
    if cfg.e_values is not None:
        summary["e_values"] = [float(e) for e in cfg.e_values]
    if cfg.extras:
        summary["extras"] = dict(cfg.extras)
    return summary
