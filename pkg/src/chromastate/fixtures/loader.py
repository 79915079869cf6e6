from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from chromastate.core.errors import FixtureLoadError, GraphParseError
from chromastate.core.graph import parse_graph_file
from chromastate.models.config import LimitConfig, ToleranceConfig
from chromastate.models.fixture import FixtureDef


def load_fixtures(fixtures_dir: Path) -> list[FixtureDef]:
    """
    Discover every *.yaml file directly under fixtures_dir, skipping files whose
    name starts with '_' (the limits file). Returns validated FixtureDef instances
    sorted by file name.
    """
    fixtures: list[FixtureDef] = []
    for yaml_file in sorted(fixtures_dir.glob("*.yaml")):
        if yaml_file.name.startswith("_"):
            continue
        try:
            data = _load_yaml(yaml_file)
            fixtures.append(_parse_fixture(data))
        except FixtureLoadError as e:
            raise FixtureLoadError(f"{yaml_file}: {e}") from e
    return fixtures


def load_app_limits(fixtures_dir: Path) -> tuple[LimitConfig, ToleranceConfig]:
    """Load <fixtures_dir>/_limits.yaml; defaults when the file is absent."""
    limits_file = fixtures_dir / "_limits.yaml"
    if not limits_file.exists():
        return LimitConfig(), ToleranceConfig()

    data = _load_yaml(limits_file)
    defaults = LimitConfig().as_dict()
    tolerance_defaults = ToleranceConfig().as_dict()
    limits_data = data.get("limits", {}) or {}
    tolerance_data = data.get("tolerances", {}) or {}
    unknown = (set(limits_data) - set(defaults)) | (set(tolerance_data) - set(tolerance_defaults))
    if unknown:
        raise FixtureLoadError(f"{limits_file}: unknown keys {sorted(unknown)}")
    try:
        limits = LimitConfig(**{k: int(limits_data.get(k, v)) for k, v in defaults.items()})
        tolerances = ToleranceConfig(
            **{k: float(tolerance_data.get(k, v)) for k, v in tolerance_defaults.items()}
        )
        limits.validate()
        tolerances.validate()
    except (TypeError, ValueError) as e:
        raise FixtureLoadError(f"{limits_file}: {e}") from e
    return limits, tolerances


def _load_yaml(path: Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
        if not isinstance(data, dict):
            raise FixtureLoadError("YAML file must contain a mapping at the top level")
        return data
    except yaml.YAMLError as e:
        raise FixtureLoadError(f"YAML parse error: {e}") from e


def _parse_fixture(data: dict[str, Any]) -> FixtureDef:
    required = ["id", "name", "description", "reference", "graph", "dims"]
    for field in required:
        if field not in data:
            raise FixtureLoadError(f"Missing required field '{field}'")

    graph = str(data["graph"])
    try:
        parse_graph_file(graph)
    except GraphParseError as e:
        raise FixtureLoadError(f"graph: {e}") from e

    try:
        return FixtureDef(
            id=str(data["id"]),
            name=str(data["name"]),
            description=str(data["description"]).strip(),
            reference=str(data["reference"]),
            graph=graph,
            dims=tuple(int(d) for d in data["dims"]),
            special=bool(data.get("special", False)),
            expected=dict(data.get("expected", {}) or {}),
            per_dim={int(d): dict(v) for d, v in (data.get("per_dim", {}) or {}).items()},
            version=int(data.get("version", 1)),
        )
    except (TypeError, ValueError) as e:
        raise FixtureLoadError(f"Invalid field value: {e}") from e
