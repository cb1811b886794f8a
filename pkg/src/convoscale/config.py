"""Run configuration: defaults shipped as package data, deep-merged with a
user config file, hashed for artifact provenance."""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from .scaling import RegimeMatrix
from .textprep import CleanProfile


def default_config() -> dict:
    ref = resources.files("convoscale").joinpath("data/default_config.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def _deep_merge(base: dict, override: dict) -> dict:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: str | None = None) -> dict:
    """Defaults merged with the given JSON config file, if any."""
    config = default_config()
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            user = json.load(fh)
        if not isinstance(user, dict):
            raise ValueError(f"config file {path} must hold a JSON object")
        config = _deep_merge(config, user)
    return config


def config_hash(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def regimes_from_config(config: dict) -> RegimeMatrix:
    section = config["regimes"]
    cells = {}
    for unit, row in section.get("classes", {}).items():
        for kind, bounds in row.items():
            cells[(unit, kind)] = (float(bounds[0]), float(bounds[1]))
    lo, hi = section["corpus_level"]
    return RegimeMatrix(corpus_level=(float(lo), float(hi)), cells=cells)


def profile_from_config(config: dict, name: str) -> CleanProfile:
    rules = config["clean_profiles"][name]
    return CleanProfile(name=name, rules=tuple((p, r) for p, r in rules))
