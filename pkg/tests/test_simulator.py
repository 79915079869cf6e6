from __future__ import annotations

import itertools

import numpy as np
import pytest

from chromastate.core.catalog import random_weighted_graphs
from chromastate.core.errors import CapExceededError, DimensionError, ShapeError
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import WeightedGraph
from chromastate.core.simulator import (
    DensityMatrix,
    Gate,
    StateVector,
    apply_gate,
    apply_gates,
    basis_index,
    build_graph_state,
    fidelity_up_to_phase,
    graph_state_amplitude,
    identity_fixtures,
    k_uniformity,
    lc_unitary_check,
    partial_trace,
    plus_state,
)


class TestGates:
    @pytest.mark.parametrize("d", [2, 3, 5, 7])
    def test_identity_fixtures(self, d: int) -> None:
        report = identity_fixtures(PrimeDimension(d))
        assert report.passed, report.results
        assert [r.name for r in report.results] == [
            "hadamard_cz_to_cx",
            "x_from_conjugated_z",
            "kronecker_delta_sum",
        ]

    def test_basis_index_most_significant_first(self) -> None:
        assert basis_index([1, 0, 2], 3) == 11
        assert basis_index([0, 0, 1], 2) == 1

    def test_x_shifts_and_cycles(self, d3: PrimeDimension) -> None:
        s = StateVector.basis([0, 1], d3)
        shifted = apply_gate(s, Gate.x(1, 2))
        assert shifted.amplitude([0, 0]) == pytest.approx(1.0)
        back = apply_gates(shifted, [Gate.x(1)] * 3)
        np.testing.assert_allclose(back.amps, shifted.amps)

    def test_cx_adds_control(self, d3: PrimeDimension) -> None:
        s = apply_gate(StateVector.basis([2, 2], d3), Gate.cx(0, 1))
        assert s.amplitude([2, 1]) == pytest.approx(1.0)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_inverse_pairs(self, d: int) -> None:
        rng = np.random.default_rng(d)
        dim = PrimeDimension(d)
        amps = rng.normal(size=d ** 3) + 1j * rng.normal(size=d ** 3)
        s = StateVector.from_amplitudes(amps / np.linalg.norm(amps), 3, dim)
        pairs = [
            (Gate.h(2), Gate.hdag(2)),
            (Gate.hdag(0), Gate.h(0)),
        ]
        for a in range(1, d):
            pairs.append((Gate.z(1, a), Gate.z(1, d - a)))
            pairs.append((Gate.x(0, a), Gate.x(0, d - a)))
            pairs.append((Gate.cz(0, 2, a), Gate.cz(0, 2, d - a)))
        for first, second in pairs:
            back = apply_gates(s, [first, second])
            np.testing.assert_allclose(back.amps, s.amps, atol=1e-12, err_msg=str(first))
        undone = apply_gates(s, [Gate.cx(1, 2)] + [Gate.cx(1, 2)] * (d - 1))
        np.testing.assert_allclose(undone.amps, s.amps, atol=1e-12)

    def test_repeated_qudit(self, d2: PrimeDimension) -> None:
        with pytest.raises(ShapeError):
            apply_gate(plus_state(2, d2), Gate.cz(1, 1))

    def test_amplitude_cap(self, d2: PrimeDimension) -> None:
        with pytest.raises(CapExceededError):
            plus_state(10, d2, cap=100)


class TestGraphState:
    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_amplitudes_match_closed_phase(self, triangle: WeightedGraph, d: int) -> None:
        g = triangle.with_dimension(PrimeDimension(d))
        state = build_graph_state(g)
        for ket in itertools.product(range(d), repeat=g.n):
            assert state.amplitude(ket) == pytest.approx(graph_state_amplitude(g, ket))

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_amplitudes_on_random_weighted_graphs(self, d: int) -> None:
        rng = np.random.default_rng(100 + d)
        dim = PrimeDimension(d)
        for g in random_weighted_graphs(4, dim, n_range=(3, 6), seed=d):
            state = build_graph_state(g)
            for _ in range(50):
                ket = [int(x) for x in rng.integers(0, d, size=g.n)]
                assert state.amplitude(ket) == pytest.approx(graph_state_amplitude(g, ket))

    def test_normalized(self, six_cycle: WeightedGraph) -> None:
        assert build_graph_state(six_cycle).norm() == pytest.approx(1.0)

    def test_edge_order_irrelevant(self, six_cycle: WeightedGraph) -> None:
        forward = build_graph_state(six_cycle)
        backward = build_graph_state(six_cycle, edge_order=list(reversed(six_cycle.edges())))
        assert fidelity_up_to_phase(forward, backward) == pytest.approx(1.0)

    def test_fidelity_shape_mismatch(self, d2: PrimeDimension, d3: PrimeDimension) -> None:
        with pytest.raises(ShapeError):
            fidelity_up_to_phase(plus_state(2, d2), plus_state(2, d3))


class TestReductions:
    def test_plus_state_reductions_are_pure(self, d3: PrimeDimension) -> None:
        rho = partial_trace(plus_state(3, d3), [0])
        assert rho.mixed_residual() > 0.5
        assert k_uniformity(plus_state(3, d3)) == 0

    def test_rejects_non_hermitian(self, d2: PrimeDimension) -> None:
        with pytest.raises(ShapeError):
            DensityMatrix(1, d2, np.array([[0.5, 1.0], [0.0, 0.5]], dtype=np.complex128))

    def test_empty_keep(self, six_cycle: WeightedGraph) -> None:
        with pytest.raises(ShapeError):
            partial_trace(build_graph_state(six_cycle), [])

    @pytest.mark.parametrize(
        ("fixture_id", "d", "k_star"),
        [
            ("k2_bell", 2, 1),
            ("k2_bell", 5, 1),
            ("star_ghz", 3, 1),
            ("six_cycle", 2, 2),
            ("ame_six", 3, 3),
        ],
    )
    def test_k_uniformity(self, fixture_graph, fixture_id: str, d: int, k_star: int) -> None:
        g, _ = fixture_graph(fixture_id, d)
        assert k_uniformity(build_graph_state(g)) == k_star


class TestLocalUnitaryCheck:
    def test_triangle(self, triangle: WeightedGraph) -> None:
        for a in range(3):
            assert lc_unitary_check(triangle, a) == pytest.approx(1.0, abs=1e-9)

    def test_six_cycle(self, six_cycle: WeightedGraph) -> None:
        for a in range(6):
            assert lc_unitary_check(six_cycle, a) == pytest.approx(1.0, abs=1e-9)

    def test_qubits_only(self, triangle: WeightedGraph) -> None:
        with pytest.raises(DimensionError):
            lc_unitary_check(triangle.with_dimension(PrimeDimension(3)), 0)
