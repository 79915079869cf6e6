"""Small-graph catalogs and compile/verify sweeps over them."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from chromastate.core.closedform import (
    compile_chi_color,
    compile_special,
    expand,
    expand_factored,
    verify,
)
from chromastate.core.coloring import (
    SpecialClassStructure,
    chromatic_coloring,
    detect_special_class,
)
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import WeightedGraph
from chromastate.core.simulator import PIPELINE_TOL, lc_unitary_check

logger = logging.getLogger(__name__)

ATLAS_MAX_N = 7


def connected_catalog(
    dim: PrimeDimension, max_n: int = 6, min_n: int = 2
) -> Iterator[WeightedGraph]:
    """Every connected unit-weight graph on min_n..max_n vertices, up to isomorphism."""
    if max_n > ATLAS_MAX_N:
        raise ValueError(f"the graph atlas stops at {ATLAS_MAX_N} vertices, got max_n={max_n}")
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(graph):
            yield WeightedGraph.from_networkx(graph, dim)


def random_weighted_graphs(
    count: int,
    dim: PrimeDimension,
    n_range: tuple[int, int] = (2, 6),
    seed: int = 0,
    edge_probability: float = 0.5,
) -> list[WeightedGraph]:
    """Connected random graphs with weights drawn uniformly from [1, d); reproducible per seed."""
    rng = np.random.default_rng(seed)
    lo, hi = n_range
    graphs: list[WeightedGraph] = []
    while len(graphs) < count:
        n = int(rng.integers(lo, hi + 1))
        edges = [
            (u, v, int(rng.integers(1, dim.d)))
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < edge_probability
        ]
        g = WeightedGraph.from_edges(n, dim, edges)
        if g.is_connected():
            graphs.append(g)
    return graphs


@dataclass(frozen=True)
class SweepEntry:
    index: int
    n: int
    edges: int
    chi: int
    fidelity: float
    special_fidelity: float | None = None
    factored_residual: float | None = None
    lc_min: float | None = None


@dataclass
class SweepResult:
    entries: list[SweepEntry] = field(default_factory=list)
    tolerance: float = PIPELINE_TOL

    @property
    def count(self) -> int:
        return len(self.entries)

    @property
    def min_fidelity(self) -> float:
        values = [e.fidelity for e in self.entries]
        values += [e.special_fidelity for e in self.entries if e.special_fidelity is not None]
        return min(values, default=1.0)

    @property
    def min_lc(self) -> float | None:
        values = [e.lc_min for e in self.entries if e.lc_min is not None]
        return min(values) if values else None

    def failures(self) -> list[SweepEntry]:
        floor = 1.0 - self.tolerance
        return [
            e
            for e in self.entries
            if e.fidelity < floor
            or (e.special_fidelity is not None and e.special_fidelity < floor)
            or (e.lc_min is not None and e.lc_min < floor)
            or (e.factored_residual is not None and e.factored_residual > self.tolerance)
        ]

    @property
    def passed(self) -> bool:
        return not self.failures()


def sweep(
    graphs: Iterable[WeightedGraph],
    lc: bool = False,
    special: bool = True,
    cap: int | None = None,
    tolerance: float = PIPELINE_TOL,
) -> SweepResult:
    """Compile and verify every graph; optionally check special forms and LC unitaries."""
    result = SweepResult(tolerance=tolerance)
    for index, g in enumerate(graphs):
        c = chromatic_coloring(g)
        fidelity = verify(compile_chi_color(g, c), g, c, cap)
        special_fidelity: float | None = None
        factored: float | None = None
        if special and c.chi == 3:
            structure = detect_special_class(g, c)
            if isinstance(structure, SpecialClassStructure):
                sf = compile_special(g, structure)
                special_fidelity = verify(sf, g, cap=cap)
                diff = expand(sf, cap).amps - expand_factored(sf, cap).amps
                factored = float(np.max(np.abs(diff)))
        lc_min: float | None = None
        if lc and g.d == 2:
            lc_min = min(lc_unitary_check(g, a, cap) for a in range(g.n))
        entry = SweepEntry(
            index=index,
            n=g.n,
            edges=len(g.edges()),
            chi=c.chi,
            fidelity=fidelity,
            special_fidelity=special_fidelity,
            factored_residual=factored,
            lc_min=lc_min,
        )
        result.entries.append(entry)
    logger.info("swept %d graphs, min fidelity %.12f", result.count, result.min_fidelity)
    return result
