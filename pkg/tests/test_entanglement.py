from __future__ import annotations

from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from chromastate.core.catalog import connected_catalog, random_weighted_graphs
from chromastate.core.closedform import compile_chi_color
from chromastate.core.coloring import Coloring, chromatic_coloring
from chromastate.core.entanglement import odd_cycle_transversal, schmidt_bounds, term_count
from chromastate.core.errors import CapExceededError
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import WeightedGraph


class TestSchmidtBounds:
    def test_six_cycle(self, six_cycle: WeightedGraph) -> None:
        b = schmidt_bounds(six_cycle, chromatic_coloring(six_cycle))
        assert b.rank_gamma == 4
        assert b.lower_rank == Fraction(2)
        assert b.lower_color == 3
        assert b.color_condition
        assert b.upper == 3
        assert b.term_lower == 8
        assert b.term_upper == 8
        assert b.rank_ab == 2
        assert "min_rank_ab" in b.claims

    def test_triangle(self, triangle: WeightedGraph) -> None:
        b = schmidt_bounds(triangle, chromatic_coloring(triangle))
        assert b.lower_rank == Fraction(1)
        assert b.lower_color == 1
        assert not b.color_condition
        assert b.oct_size == 1
        assert b.upper == 2
        assert b.term_upper is None

    def test_rank_depends_on_dimension(self, triangle: WeightedGraph) -> None:
        g = triangle.with_dimension(PrimeDimension(3))
        assert schmidt_bounds(g, chromatic_coloring(g)).lower_rank == Fraction(3, 2)

    def test_star(self, fixture_graph) -> None:
        g, c = fixture_graph("star_ghz")
        b = schmidt_bounds(g, c)
        assert b.lower_color == 1
        assert b.upper == 2
        assert b.term_upper == 4

    def test_four_colors(self, d2: PrimeDimension) -> None:
        k4 = WeightedGraph.from_networkx(nx.complete_graph(4), d2)
        b = schmidt_bounds(k4, chromatic_coloring(k4))
        assert b.lower_color is None
        assert b.term_lower is None
        assert b.oct_size == 2
        assert b.upper == 3

    @pytest.mark.parametrize("d", [2, 3])
    def test_relabelling_leaves_bounds_unchanged(self, d: int) -> None:
        rng = np.random.default_rng(d)
        for g in random_weighted_graphs(10, PrimeDimension(d), n_range=(3, 6), seed=20 + d):
            c = chromatic_coloring(g)
            order = [int(v) for v in rng.permutation(g.n)]
            relabelled = g.permuted(order)
            mapped = Coloring.from_assignment([c.assignment[v] for v in order])
            assert schmidt_bounds(relabelled, mapped) == schmidt_bounds(g, c)

    def test_as_dict_is_sorted(self, six_cycle: WeightedGraph) -> None:
        out = schmidt_bounds(six_cycle, chromatic_coloring(six_cycle)).as_dict()
        assert out["lower_rank"] == "2"
        assert list(out["provenance"]) == sorted(out["provenance"])


class TestOddCycleTransversal:
    @pytest.mark.parametrize(
        ("graph", "expected"),
        [
            (nx.cycle_graph(6), 0),
            (nx.cycle_graph(5), 1),
            (nx.complete_graph(4), 2),
            (nx.complete_graph(5), 3),
        ],
    )
    def test_values(self, d2: PrimeDimension, graph: nx.Graph, expected: int) -> None:
        assert odd_cycle_transversal(WeightedGraph.from_networkx(graph, d2)) == expected

    def test_cap(self, six_cycle: WeightedGraph) -> None:
        with pytest.raises(CapExceededError):
            odd_cycle_transversal(six_cycle, max_n=5)


class TestTermCount:
    def test_meets_size_bound(self, six_cycle: WeightedGraph) -> None:
        c = chromatic_coloring(six_cycle)
        tc = term_count(compile_chi_color(six_cycle, c), schmidt_bounds(six_cycle, c))
        assert (tc.count, tc.m, tc.meets_lower) == (8, 3, True)

    def test_bound_not_applicable(self, triangle: WeightedGraph) -> None:
        c = chromatic_coloring(triangle)
        tc = term_count(compile_chi_color(triangle, c), schmidt_bounds(triangle, c))
        assert tc.count == 4
        assert tc.meets_lower is None

    def test_without_bounds(self, fixture_graph) -> None:
        g, c = fixture_graph("ame_six", 3)
        tc = term_count(compile_chi_color(g, c))
        assert (tc.count, tc.m, tc.meets_lower) == (81, 4, None)


@pytest.mark.slow
def test_bounds_are_coherent_on_catalog(d2: PrimeDimension) -> None:
    for g in connected_catalog(d2, max_n=6):
        c = chromatic_coloring(g)
        b = schmidt_bounds(g, c)
        assert b.upper is not None
        assert b.lower_rank <= b.upper
        if b.lower_color is not None:
            assert b.lower_color <= b.upper
        assert (odd_cycle_transversal(g) == 0) == (c.chi <= 2)
        if c.chi == 2:
            assert compile_chi_color(g, c).term_count == 2 ** c.sizes[0]
