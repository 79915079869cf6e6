from __future__ import annotations

import logging

import networkx as nx
import numpy as np
import pytest

from chromastate.core.catalog import connected_catalog
from chromastate.core.coloring import (
    Coloring,
    SpecialClassRejection,
    SpecialClassStructure,
    all_minors_nonsingular,
    block_decompose,
    chromatic_coloring,
    detect_special_class,
    kuniform_adjacency_check,
)
from chromastate.core.errors import CapExceededError, ColoringError
from chromastate.core.field import FieldMatrix, PrimeDimension
from chromastate.core.graph import WeightedGraph


class TestChromaticColoring:
    def test_six_cycle(self, six_cycle: WeightedGraph) -> None:
        c = chromatic_coloring(six_cycle)
        assert c.chi == 2
        assert c.classes == ((0, 1, 2), (3, 4, 5))
        assert c.labels() == ("R", "B")

    def test_triangle(self, triangle: WeightedGraph) -> None:
        c = chromatic_coloring(triangle)
        assert c.chi == 3
        assert c.classes == ((0,), (1,), (2,))

    @pytest.mark.parametrize(
        ("graph", "chi"),
        [
            (nx.petersen_graph(), 3),
            (nx.complete_graph(5), 5),
            (nx.cycle_graph(7), 3),
            (nx.empty_graph(3), 1),
            (nx.star_graph(4), 2),
        ],
    )
    def test_known_chromatic_numbers(self, graph: nx.Graph, chi: int, d2: PrimeDimension) -> None:
        c = chromatic_coloring(WeightedGraph.from_networkx(graph, d2))
        assert c.chi == chi

    def test_hint_keeps_label_order_on_ties(self, fixture_graph) -> None:
        _, c = fixture_graph("ame_six")
        assert c.sizes == (2, 2, 2)
        assert c.classes == ((0, 3), (2, 4), (1, 5))
        assert c.labels() == ("R", "G", "B")

    def test_improper_hint(self, triangle: WeightedGraph) -> None:
        with pytest.raises(ColoringError, match="edge 0-1"):
            chromatic_coloring(triangle, {0: 0, 1: 0, 2: 1})

    def test_incomplete_hint(self, triangle: WeightedGraph) -> None:
        with pytest.raises(ColoringError):
            chromatic_coloring(triangle, {0: 0, 1: 1})

    def test_vertex_cap(self, triangle: WeightedGraph) -> None:
        with pytest.raises(CapExceededError):
            chromatic_coloring(triangle, max_n=2)

    def test_logs_backtracking_calls_per_k(
        self,
        triangle: WeightedGraph,
        caplog: pytest.LogCaptureFixture,
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        monkeypatch.setattr(logging.getLogger("chromastate"), "propagate", True)
        caplog.set_level(logging.DEBUG, logger="chromastate.core.coloring")
        chromatic_coloring(triangle)
        assert "k=2 backtracking made 3 calls" in caplog.text
        assert "k=3 backtracking made 4 calls" in caplog.text


class TestColoringModel:
    def test_sizes_must_be_nondecreasing(self) -> None:
        with pytest.raises(ColoringError):
            Coloring(chi=2, assignment=(0, 0, 1), classes=((0, 1), (2,)))

    def test_from_assignment_sorts_by_size(self) -> None:
        c = Coloring.from_assignment([5, 5, 7])
        assert c.classes == ((2,), (0, 1))
        assert c.assignment == (1, 1, 0)
        assert c.free_vertices == (2,)
        assert c.last == (0, 1)


class TestBlockDecomposition:
    @pytest.mark.parametrize("fixture_id", ["six_cycle", "ame_six", "special_example_1"])
    def test_blocks_reassemble_adjacency(self, fixture_graph, fixture_id: str) -> None:
        g, c = fixture_graph(fixture_id, 3)
        blocks = block_decompose(g, c)
        np.testing.assert_array_equal(blocks.reassemble(), g.to_array())
        assert blocks.class_sizes == c.sizes

    def test_catalog_colorings_reassemble(self, d3: PrimeDimension) -> None:
        for g in connected_catalog(d3, max_n=6):
            for c in (chromatic_coloring(g), Coloring.from_assignment(range(g.n))):
                np.testing.assert_array_equal(block_decompose(g, c).reassemble(), g.to_array())

    def test_block_shape(self, six_cycle: WeightedGraph) -> None:
        blocks = block_decompose(six_cycle, chromatic_coloring(six_cycle))
        assert blocks.block(1, 0).to_lists() == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]


class TestSpecialClass:
    def test_two_colorable_is_special(self, six_cycle: WeightedGraph) -> None:
        s = detect_special_class(six_cycle, chromatic_coloring(six_cycle))
        assert isinstance(s, SpecialClassStructure)
        assert s.red == (0, 1, 2)
        assert s.b_u == (3, 4, 5)
        assert s.s == 0

    def test_single_component(self, fixture_graph) -> None:
        g, c = fixture_graph("special_example_1")
        s = detect_special_class(g, c)
        assert isinstance(s, SpecialClassStructure)
        assert s.red == (0, 1, 2, 3)
        assert s.b_u == (4, 5, 6, 7, 8, 9)
        assert s.components == (((11,), (10, 12)),)
        assert s.hadamard_targets == (4, 5, 6, 7, 8, 9, 10, 12)

    def test_two_components(self, fixture_graph) -> None:
        g, c = fixture_graph("special_example_2")
        s = detect_special_class(g, c)
        assert isinstance(s, SpecialClassStructure)
        assert s.s == 2
        assert s.components == (((10,), (9,)), ((12,), (11,)))
        assert s.greens == (10, 12)

    def test_triangle_rejected(self, triangle: WeightedGraph) -> None:
        r = detect_special_class(triangle, chromatic_coloring(triangle))
        assert isinstance(r, SpecialClassRejection)
        assert r.condition == "n_R <= n_B_u"

    def test_ame_rejected(self, fixture_graph) -> None:
        g, c = fixture_graph("ame_six")
        assert isinstance(detect_special_class(g, c), SpecialClassRejection)

    def test_four_colors_rejected(self, d2: PrimeDimension) -> None:
        k4 = WeightedGraph.from_networkx(nx.complete_graph(4), d2)
        r = detect_special_class(k4, chromatic_coloring(k4))
        assert isinstance(r, SpecialClassRejection)
        assert r.condition == "chromatic"


class TestKUniformAdjacency:
    def test_minors(self, d2: PrimeDimension, d3: PrimeDimension) -> None:
        assert all_minors_nonsingular(FieldMatrix.from_rows([[1, 1], [1, 2]], d3))
        assert not all_minors_nonsingular(FieldMatrix.from_rows([[1, 1], [1, 1]], d2))
        assert not all_minors_nonsingular(FieldMatrix.from_rows([[1, 0], [1, 1]], d3))

    def test_bell_pair(self, d2: PrimeDimension) -> None:
        g = WeightedGraph.from_edges(2, d2, [(0, 1, 1)])
        report = kuniform_adjacency_check(g, chromatic_coloring(g))
        assert report.a_ok
        assert report.b1_ok is None

    def test_six_cycle_fails(self, six_cycle: WeightedGraph) -> None:
        report = kuniform_adjacency_check(six_cycle, chromatic_coloring(six_cycle))
        assert not report.a_ok
        assert report.a_shape == (3, 3)

    def test_special_structure(self, fixture_graph) -> None:
        g, c = fixture_graph("special_example_1")
        report = kuniform_adjacency_check(g, c)
        assert report.a_shape == (4, 9)
        assert report.b1_shape == (1, 2)
        assert report.b1_ok

    def test_non_special_three_colorable(self, triangle: WeightedGraph) -> None:
        with pytest.raises(ColoringError):
            kuniform_adjacency_check(triangle, chromatic_coloring(triangle))

    def test_dimension_cap(self, d3: PrimeDimension) -> None:
        with pytest.raises(CapExceededError):
            all_minors_nonsingular(FieldMatrix.from_array(np.ones((3, 3)), d3), max_dim=2)
