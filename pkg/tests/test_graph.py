from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from chromastate.core.catalog import random_weighted_graphs
from chromastate.core.errors import FieldDomainError, GraphParseError, ShapeError
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import (
    WeightedGraph,
    find_two_colorable_lc,
    format_graph,
    is_two_colorable,
    local_complement,
    parse_graph,
    parse_graph_file,
)


class TestParse:
    def test_six_cycle(self, six_cycle: WeightedGraph) -> None:
        assert six_cycle.n == 6
        assert six_cycle.d == 2
        assert len(six_cycle.edges()) == 6
        assert all(six_cycle.degree(v) == 2 for v in range(6))
        assert six_cycle.neighbors(0) == [3, 5]

    def test_weights_reduced(self) -> None:
        g = parse_graph("dim 3\nvertices 2\nedge 0 1 5\n")
        assert g.weight(0, 1) == 2

    def test_color_hint(self) -> None:
        parsed = parse_graph_file("dim 2\nvertices 2\nedge 0 1 1\ncolor 0 0\ncolor 1 1\n")
        assert parsed.color_hint == {0: 0, 1: 1}

    @pytest.mark.parametrize(
        ("text", "needle"),
        [
            ("dim 2\nvertices 2\nedge 0 0 1\n", "self-loop"),
            ("dim 4\nvertices 2\n", "not prime"),
            ("dim 3\nvertices 2\nedge 0 1 3\n", "= 0 mod 3"),
            ("dim 2\nvertices 2\nedge 0 2 1\n", "out of range"),
            ("dim 2\nvertices 2\nedge 0 1\n", "takes 3 argument"),
            ("vertices 2\n", "missing 'dim'"),
            ("dim 2\nvertices 2\nwire 0 1\n", "unknown directive"),
            ("dim 3\nvertices 2\nedge 0 1 1\nedge 1 0 2\n", "redeclared"),
            ("dim 2\nvertices 3\nedge 0 1 1\ncolor 0 0\n", "color hint incomplete"),
        ],
    )
    def test_errors(self, text: str, needle: str) -> None:
        with pytest.raises(GraphParseError, match=needle):
            parse_graph_file(text)

    def test_error_carries_line(self) -> None:
        with pytest.raises(GraphParseError) as info:
            parse_graph_file("# header\ndim 2\nvertices 2\nedge 0 0 1\n")
        assert info.value.line == 4
        assert str(info.value).startswith("line 4: ")

    def test_format_round_trip(self, six_cycle: WeightedGraph) -> None:
        text = format_graph(six_cycle, comments=["six-cycle"])
        assert text.startswith("# six-cycle\ndim 2\nvertices 6\n")
        assert parse_graph(text) == six_cycle


class TestWeightedGraph:
    def test_rejects_asymmetric(self, d3: PrimeDimension) -> None:
        with pytest.raises(ShapeError):
            WeightedGraph.from_array(np.array([[0, 1], [2, 0]]), d3)

    def test_rejects_diagonal(self, d3: PrimeDimension) -> None:
        with pytest.raises(ShapeError):
            WeightedGraph.from_array(np.array([[1, 0], [0, 0]]), d3)

    def test_from_networkx(self, d3: PrimeDimension) -> None:
        g = WeightedGraph.from_networkx(nx.path_graph(["a", "b", "c"]), d3)
        assert g.edges() == [(0, 1, 1), (1, 2, 1)]

    def test_with_dimension(self, six_cycle: WeightedGraph) -> None:
        g5 = six_cycle.with_dimension(PrimeDimension(5))
        assert g5.d == 5
        assert g5.edges() == six_cycle.edges()

    def test_with_dimension_rejects_vanishing_weight(self) -> None:
        g = parse_graph("dim 5\nvertices 2\nedge 0 1 3\n")
        with pytest.raises(FieldDomainError):
            g.with_dimension(PrimeDimension(3))


class TestLocalComplement:
    def test_triangle_becomes_path(self, triangle: WeightedGraph) -> None:
        lc = local_complement(triangle, 0)
        assert lc.edges() == [(0, 1, 1), (0, 2, 1)]

    def test_weighted_star(self, d3: PrimeDimension) -> None:
        star = WeightedGraph.from_edges(3, d3, [(0, 1, 1), (0, 2, 2)])
        lc = local_complement(star, 0, 1)
        assert lc.weight(1, 2) == 2
        assert lc.weight(0, 1) == 1 and lc.weight(0, 2) == 2

    def test_qubit_involution(self, six_cycle: WeightedGraph) -> None:
        for a in range(six_cycle.n):
            assert local_complement(local_complement(six_cycle, a), a) == six_cycle

    @pytest.mark.parametrize("d", [3, 5, 7])
    def test_opposite_lambda_restores(self, d: int) -> None:
        dim = PrimeDimension(d)
        for g in random_weighted_graphs(5, dim, n_range=(3, 6), seed=d):
            for a in range(g.n):
                for lam in range(1, d):
                    assert local_complement(local_complement(g, a, lam), a, d - lam) == g

    @pytest.mark.parametrize("d", [3, 5])
    def test_lambdas_accumulate(self, d: int) -> None:
        dim = PrimeDimension(d)
        for g in random_weighted_graphs(5, dim, n_range=(3, 6), seed=10 + d):
            for lam1 in range(1, d):
                for lam2 in range(1, d):
                    if (lam1 + lam2) % d == 0:
                        continue
                    twice = local_complement(local_complement(g, 0, lam1), 0, lam2)
                    assert twice == local_complement(g, 0, lam1 + lam2)

    def test_lambda_zero(self, triangle: WeightedGraph) -> None:
        with pytest.raises(FieldDomainError):
            local_complement(triangle, 0, 2)

    def test_vertex_range(self, triangle: WeightedGraph) -> None:
        with pytest.raises(ShapeError):
            local_complement(triangle, 3)


class TestTwoColorableSearch:
    def test_already_bipartite(self, six_cycle: WeightedGraph) -> None:
        assert is_two_colorable(six_cycle)
        assert find_two_colorable_lc(six_cycle) == []

    def test_triangle(self, triangle: WeightedGraph) -> None:
        assert not is_two_colorable(triangle)
        assert find_two_colorable_lc(triangle) == [(0, 1)]

    def test_triangle_qutrit(self, triangle: WeightedGraph) -> None:
        g = triangle.with_dimension(PrimeDimension(3))
        steps = find_two_colorable_lc(g)
        assert steps == [(0, 2)]
        result = g
        for a, lam in steps:
            result = local_complement(result, a, lam)
        assert is_two_colorable(result)

    def test_depth_limit(self, d2: PrimeDimension) -> None:
        k4 = WeightedGraph.from_networkx(nx.complete_graph(4), d2)
        assert find_two_colorable_lc(k4, max_depth=0) is None
