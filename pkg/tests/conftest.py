from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pytest

from chromastate.core.coloring import Coloring, chromatic_coloring
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import GraphFile, WeightedGraph, parse_graph_file
from chromastate.fixtures.loader import load_fixtures
from chromastate.fixtures.registry import FixtureRegistry

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"

SIX_CYCLE = """\
dim 2
vertices 6
edge 0 3 1
edge 3 1 1
edge 1 4 1
edge 4 2 1
edge 2 5 1
edge 5 0 1
"""

TRIANGLE = """\
dim 2
vertices 3
edge 0 1 1
edge 1 2 1
edge 0 2 1
"""


@pytest.fixture
def d2() -> PrimeDimension:
    return PrimeDimension(2)


@pytest.fixture
def d3() -> PrimeDimension:
    return PrimeDimension(3)


@pytest.fixture(scope="session")
def registry() -> FixtureRegistry:
    return FixtureRegistry(load_fixtures(FIXTURES_DIR))


@pytest.fixture(scope="session")
def fixture_graph(
    registry: FixtureRegistry,
) -> Callable[[str, int], tuple[WeightedGraph, Coloring]]:
    """Graph of a stored fixture at dimension d, with its hint or exact coloring."""

    def build(fixture_id: str, d: int = 2) -> tuple[WeightedGraph, Coloring]:
        fixture = registry.get_fixture(fixture_id)
        assert fixture is not None, fixture_id
        parsed: GraphFile = parse_graph_file(fixture.graph)
        g = parsed.graph.with_dimension(PrimeDimension(d))
        return g, chromatic_coloring(g, parsed.color_hint)

    return build


@pytest.fixture
def six_cycle() -> WeightedGraph:
    return parse_graph_file(SIX_CYCLE).graph


@pytest.fixture
def triangle() -> WeightedGraph:
    return parse_graph_file(TRIANGLE).graph


@pytest.fixture
def write_graph(tmp_path: Path) -> Callable[[str, str], Path]:
    def write(text: str, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
