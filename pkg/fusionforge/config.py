"""Configuration loader: reads YAML (or JSON) and applies sensible defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict

import yaml

CONFIG_ENV = "FUSIONFORGE_CONFIG"


@dataclass
class CapsConfig:
    """Size caps; inputs beyond them are rejected, never approximated."""

    closure_cap: int = 20160
    subgroup_cap: int = 1024
    saturation_cap: int = 64
    automorphism_cap: int = 256

    def __post_init__(self) -> None:
        for name in ("closure_cap", "subgroup_cap", "saturation_cap", "automorphism_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"caps.{name} must be positive")


def _default_max_order() -> Dict[str, int]:
    return {
        "goursat": 256,
        "bouc": 8,
        "mackey": 24,
        "quotient": 32,
        "inner": 64,
        "saturation": 64,
        "explorer": 16,
    }


@dataclass
class SuiteConfig:
    """Acceptance-suite execution."""

    parallelism: int = 1
    seed: int = 0
    failure_limit: int = 20  # failing cases kept per verdict
    max_order: Dict[str, int] = field(default_factory=_default_max_order)

    def __post_init__(self) -> None:
        if self.parallelism < 1:
            raise ValueError("suite.parallelism must be >= 1")
        if self.failure_limit < 0:
            raise ValueError("suite.failure_limit must be >= 0")
        merged = _default_max_order()
        merged.update(self.max_order)
        self.max_order = merged


@dataclass
class AppConfig:
    """Top-level application configuration."""

    caps: CapsConfig = field(default_factory=CapsConfig)
    suite: SuiteConfig = field(default_factory=SuiteConfig)
    log_level: str = "INFO"
    human: bool = False  # indented table output instead of canonical JSON


# ── YAML loader ────────────────────────────────────────────────────


def load_config(path: str | Path | None = None) -> AppConfig:
    """Load configuration from *path*, falling back to defaults.

    Environment variable ``FUSIONFORGE_CONFIG`` is checked when *path* is
    ``None``.  JSON files load too, JSON being a subset of YAML.
    """
    raw: Dict[str, Any] = {}

    if path is None:
        path = os.environ.get(CONFIG_ENV)

    if path is not None:
        p = Path(path)
        if p.exists():
            with open(p, "r", encoding="utf-8") as fh:
                raw = yaml.safe_load(fh) or {}

    return AppConfig(
        caps=CapsConfig(**raw.get("caps", {})),
        suite=SuiteConfig(**raw.get("suite", {})),
        log_level=raw.get("log_level", "INFO"),
        human=raw.get("human", False),
    )
