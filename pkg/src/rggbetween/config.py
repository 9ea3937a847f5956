"""Run configuration.

Config files are flat ``key = value`` text::

    # comment
    domain = disk            # disk | square | triangle | holed-square
    radius = 1
    densities = 10, 50, 500
    holes = 0.3,0.5,0.15; 0.7,0.5,0.15

Keys are case-insensitive and ``-``/``_`` are interchangeable.  Command-line
flags override file values.  A ``run.json`` manifest can be used in place of
a config file; its ``settings`` block is read.
"""

from __future__ import annotations

import configparser
import re
from pathlib import Path

from .csvio import read_manifest
from .errors import ConfigError, RGGError
from .experiment import ExperimentConfig
from .geometry import Domain, build_domain

KEYS = {
    "domain", "radius", "side", "holes", "rho", "densities", "realizations", "bins", "eta",
    "beta_mode", "beta", "r0", "seed", "workers", "min_count", "grid_step", "quadrature_points",
    "threshold", "k", "mode",
}

DEFAULTS = {
    "domain": "disk",
    "radius": "1",
    "side": "1",
    "densities": "10, 50, 500",
    "realizations": "500",
    "bins": "50",
    "eta": "2",
    "beta_mode": "threshold",
    "seed": "0",
    "min_count": "50",
}


def canonical_key(key: str) -> str:
    key = key.strip().lower().replace("-", "_")
    if key not in KEYS:
        raise ConfigError(f"unknown config key {key!r}")
    return key


def parse_config_text(text: str) -> dict[str, str]:
    cp = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#", ";"), inline_comment_prefixes=("#",),
        interpolation=None,
    )
    try:
        cp.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {str(exc).splitlines()[0]}") from None
    return {canonical_key(k): v.strip() for k, v in cp["run"].items()}


def load_config(path) -> dict[str, str]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    if path.suffix == ".json":
        settings = read_manifest(path).get("settings")
        if not isinstance(settings, dict):
            raise ConfigError(f"{path}: manifest has no settings block")
        return {canonical_key(k): str(v) for k, v in settings.items()}
    return parse_config_text(path.read_text(encoding="ascii"))


def resolve(file_values: dict[str, str] | None, overrides: dict) -> dict[str, str]:
    """Defaults, then file values, then non-None overrides."""
    out = dict(DEFAULTS)
    out.update(file_values or {})
    for k, v in overrides.items():
        if v is not None:
            out[canonical_key(k)] = v if isinstance(v, str) else _to_text(v)
    return out


def _to_text(v) -> str:
    if isinstance(v, (list, tuple)):
        return ", ".join(_to_text(x) for x in v)
    return repr(v) if isinstance(v, float) else str(v)


def get_float(s: dict, key: str) -> float:
    try:
        return float(s[key])
    except KeyError:
        raise ConfigError(f"missing required setting {key!r}") from None
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {s[key]!r}") from None


def get_int(s: dict, key: str) -> int:
    try:
        return int(s[key])
    except KeyError:
        raise ConfigError(f"missing required setting {key!r}") from None
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {s[key]!r}") from None


def get_floats(s: dict, key: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in re.split(r"[,\s]+", s[key].strip()) if x)
    except KeyError:
        raise ConfigError(f"missing required setting {key!r}") from None
    except ValueError:
        raise ConfigError(f"{key} must be a comma-separated list of numbers") from None


def parse_holes(text: str) -> list[tuple[float, float, float]]:
    holes = []
    for chunk in filter(None, (c.strip() for c in re.split(r"[;\s]+", text))):
        parts = chunk.split(",")
        if len(parts) != 3:
            raise ConfigError(f"hole must be cx,cy,r, got {chunk!r}")
        try:
            holes.append(tuple(float(p) for p in parts))
        except ValueError:
            raise ConfigError(f"hole must be numeric cx,cy,r, got {chunk!r}") from None
    return holes


def domain_from_settings(s: dict) -> Domain:
    holes = parse_holes(s["holes"]) if s.get("holes") else None
    try:
        return build_domain(s["domain"], radius=get_float(s, "radius"), side=get_float(s, "side"), holes=holes)
    except RGGError as exc:
        raise ConfigError(str(exc)) from None


def experiment_from_settings(s: dict) -> ExperimentConfig:
    return ExperimentConfig(
        domain=domain_from_settings(s),
        densities=get_floats(s, "densities"),
        realizations=get_int(s, "realizations"),
        bins=get_int(s, "bins"),
        eta=get_float(s, "eta"),
        beta_mode=s["beta_mode"],
        beta=get_float(s, "beta") if s.get("beta") else None,
        master_seed=get_int(s, "seed"),
        min_count=get_int(s, "min_count"),
    )
