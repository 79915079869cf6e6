"""
Chain-shaped B_c components.

For a chain x_1 - x_2 - ... - x_k with edge weights Gamma_{j,j+1}, the operator

    O = Hdag(odd positions) . prod CZ^{Gamma} . H^{(x) k}

sends |i_1, ..., i_k> to d^{-(#even)/2} X^{i_odd} Z^{i_even} sum_{l_even} |kets>, where
every even position carries its own l and every odd position carries the
weighted sum of its neighbours' l. Positions are 1-based here as in the usual
presentation; code indices are 0-based, so "odd" positions are indices 0, 2, ...
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from chromastate.core.errors import ShapeError, StructureError
from chromastate.core.field import FieldVector, PrimeDimension, enumerate_array, roots_of_unity
from chromastate.core.graph import WeightedGraph
from chromastate.core.simulator import Gate, basis_index, operator_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainForm:
    k: int
    dim: PrimeDimension
    weights: tuple[int, ...]
    closed: bool = False

    @property
    def d(self) -> int:
        return self.dim.d

    @property
    def x_positions(self) -> tuple[int, ...]:
        return tuple(range(0, self.k, 2))

    @property
    def z_positions(self) -> tuple[int, ...]:
        return tuple(range(1, self.k, 2))

    def edges(self) -> list[tuple[int, int, int]]:
        out = [(j, j + 1, self.weights[j]) for j in range(self.k - 1)]
        if self.closed:
            out.append((0, self.k - 1, self.weights[self.k - 1]))
        return out

    def inner_forms(self) -> tuple[dict[int, int], ...]:
        """Per position, coefficients over the even-position summation indices."""
        forms: list[dict[int, int]] = [{} for _ in range(self.k)]
        for p in self.z_positions:
            forms[p] = {p: 1}
        for u, v, w in self.edges():
            odd, even = (u, v) if u % 2 == 0 else (v, u)
            forms[odd][even] = (forms[odd].get(even, 0) + w) % self.d
        return tuple(forms)

    def prefactor_string(self) -> str:
        kinds = ("X" if p % 2 == 0 else "Z" for p in range(self.k))
        return " ".join(f"{kind}^(i{p + 1})" for p, kind in enumerate(kinds))

    def inner_string(self) -> str:
        entries = []
        for form in self.inner_forms():
            terms = [
                f"l{p + 1}" if w == 1 else f"{w}*l{p + 1}"
                for p, w in sorted(form.items())
                if w
            ]
            entries.append("+".join(terms) if terms else "0")
        indices = ", ".join(f"l{p + 1}" for p in self.z_positions)
        return f"Σ_({indices}) |" + ", ".join(entries) + "⟩"

    def image(self, ket: Sequence[int]) -> np.ndarray:
        """Amplitudes of O|ket> evaluated from the factored form."""
        if len(ket) != self.k:
            raise ShapeError(f"chain of length {self.k} got a ket of length {len(ket)}")
        d = self.d
        omega = roots_of_unity(d)
        evens = self.z_positions
        forms = self.inner_forms()
        amps = np.zeros(d ** self.k, dtype=np.complex128)
        for row in enumerate_array(len(evens), self.dim):
            levels = dict(zip(evens, (int(x) for x in row)))
            out = []
            for p, form in enumerate(forms):
                value = sum(w * levels[e] for e, w in form.items())
                if p % 2 == 0:
                    value += ket[p]
                out.append(value % d)
            phase = sum(ket[e] * levels[e] for e in evens) % d
            amps[basis_index(out, d)] += omega[phase]
        return amps * d ** (-len(evens) / 2)

    def direct_matrix(self) -> np.ndarray:
        gates = [Gate.h(q) for q in range(self.k)]
        gates += [Gate.cz(u, v, w) for u, v, w in self.edges()]
        gates += [Gate.hdag(q) for q in self.x_positions]
        return operator_matrix(self.k, self.dim, gates)


def chain_operator_form(
    chain_length: int, weights: FieldVector, closed: bool = False
) -> ChainForm:
    """
    Factored action of O on a chain. closed=True joins the last particle back to
    the first; the cycle must have even length so the X/Z alternation closes.
    """
    k = chain_length
    if k < 2:
        raise ShapeError(f"chain needs at least 2 particles, got {k}")
    expected = k if closed else k - 1
    if len(weights) != expected:
        raise ShapeError(f"chain of length {k} needs {expected} weights, got {len(weights)}")
    if closed and (k % 2 or k < 4):
        raise StructureError(f"closed chains need even length >= 4, got {k}")
    if any(w == 0 for w in weights):
        raise StructureError("chain edge weights must be nonzero")
    return ChainForm(k=k, dim=weights.dim, weights=tuple(weights), closed=closed)


def chain_residual(form: ChainForm) -> float:
    """Max deviation between the factored images and O applied to every basis ket."""
    direct = form.direct_matrix()
    worst = 0.0
    for index, ket in enumerate(enumerate_array(form.k, form.dim)):
        worst = max(worst, float(np.max(np.abs(form.image(ket) - direct[:, index]))))
    logger.debug("chain k=%d closed=%s residual %.3e", form.k, form.closed, worst)
    return worst


def component_chain(
    g: WeightedGraph, vertices: Sequence[int], x_vertices: Sequence[int] | None = None
) -> tuple[tuple[int, ...], bool] | None:
    """
    Order a component as a chain from an endpoint, or as an even cycle, so that
    the first particle lies in x_vertices (all vertices when omitted). Returns
    (ordered vertices, closed) or None when no such ordering exists.
    """
    allowed = set(vertices if x_vertices is None else x_vertices)
    sub = g.support_graph().subgraph(vertices)
    if len(vertices) < 2 or not nx.is_connected(sub):
        return None
    degrees = dict(sub.degree())
    if max(degrees.values()) > 2:
        return None
    if sub.number_of_edges() == len(vertices) - 1:
        starts = [v for v, deg in degrees.items() if deg == 1 and v in allowed]
        closed = False
    elif len(vertices) % 2 == 0 and len(vertices) >= 4:
        starts = [v for v in vertices if v in allowed]
        closed = True
    else:
        return None
    if not starts:
        return None
    order = [min(starts)]
    while len(order) < len(vertices):
        order.append(min(v for v in sub.neighbors(order[-1]) if v not in order))
    return tuple(order), closed


def chain_from_component(
    g: WeightedGraph, vertices: Sequence[int], x_vertices: Sequence[int] | None = None
) -> ChainForm | None:
    found = component_chain(g, vertices, x_vertices)
    if found is None:
        return None
    order, closed = found
    weights = [g.weight(order[j], order[j + 1]) for j in range(len(order) - 1)]
    if closed:
        weights.append(g.weight(order[-1], order[0]))
    return chain_operator_form(len(order), FieldVector(tuple(weights), g.dim), closed=closed)
