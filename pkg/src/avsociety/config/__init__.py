"""Configuration files and utilities for av-society."""

import os
from pathlib import Path
from typing import Any

import yaml

builtin_config_dir = Path(__file__).parent


class ConfigurationError(ValueError):
    """Raised when a configuration value is missing, unknown or out of range."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


def get_config_path(config_spec: str | Path) -> Path:
    """Get the path to a config file."""
    config_spec = Path(config_spec)
    if config_spec.suffix != ".yaml":
        config_spec = config_spec.with_suffix(".yaml")
    candidates = [
        Path(config_spec),
        Path(os.getenv("AVSOC_CONFIG_DIR", ".")) / config_spec,
        builtin_config_dir / config_spec,
        builtin_config_dir / "experiments" / config_spec,
    ]
    for candidate in candidates:
        if candidate.exists():
            return candidate

    raise FileNotFoundError(f"Could not find config file for {config_spec} (tried: {candidates})")


def load_config(config_spec: str | Path = "default") -> dict[str, Any]:
    return yaml.safe_load(get_config_path(config_spec).read_text()) or {}


__all__ = ["builtin_config_dir", "get_config_path", "load_config", "ConfigurationError"]
