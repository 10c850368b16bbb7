"""Builtin scenarios shipped with the package."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from .config import ScenarioConfig, ScenarioValidationError, load_scenario

BUILTIN_PREFIX = "builtin:"


def _files():
    return resources.files(__package__).joinpath("builtin")


def builtin_names() -> list:
    return sorted(p.name[: -len(".yaml")] for p in _files().iterdir() if p.name.endswith(".yaml"))


def builtin_text(name: str) -> str:
    path = _files().joinpath(f"{name}.yaml")
    if not path.is_file():
        raise ScenarioValidationError(
            f"no builtin scenario {name!r}; available: {', '.join(builtin_names())}"
        )
    return path.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def builtin(name: str) -> ScenarioConfig:
    return load_scenario(builtin_text(name))


def load_path(spec: str) -> ScenarioConfig:
    """Load ``builtin:<name>`` or a scenario file path."""
    if spec.startswith(BUILTIN_PREFIX):
        return builtin(spec[len(BUILTIN_PREFIX):])
    try:
        text = Path(spec).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioValidationError(f"cannot read scenario file {spec!r}: {exc}") from exc
    return load_scenario(text)
