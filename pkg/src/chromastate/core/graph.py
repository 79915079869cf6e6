"""Weighted graphs over F_d, the graph file format, and local complementation."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import networkx as nx
import numpy as np

from chromastate.core.errors import DimensionError, FieldDomainError, GraphParseError, ShapeError
from chromastate.core.field import FieldMatrix, PrimeDimension

logger = logging.getLogger(__name__)

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    dim: PrimeDimension
    gamma: FieldMatrix

    def __post_init__(self) -> None:
        if self.gamma.shape != (self.n, self.n):
            raise ShapeError(f"adjacency must be {self.n}x{self.n}, got {self.gamma.shape}")
        if self.gamma.dim != self.dim:
            raise ShapeError("adjacency field does not match graph dimension")
        arr = self.gamma.to_array()
        if np.any(np.diag(arr) != 0):
            raise ShapeError("adjacency diagonal must be zero")
        if not np.array_equal(arr, arr.T):
            raise ShapeError("adjacency must be symmetric")

    @classmethod
    def from_edges(cls, n: int, dim: PrimeDimension, edges: Iterable[Edge]) -> WeightedGraph:
        arr = np.zeros((n, n), dtype=np.int64)
        for u, v, w in edges:
            arr[u, v] = arr[v, u] = w % dim.d
        return cls(n, dim, FieldMatrix.from_array(arr, dim))

    @classmethod
    def from_array(cls, array: np.ndarray, dim: PrimeDimension) -> WeightedGraph:
        gamma = FieldMatrix.from_array(array, dim)
        return cls(gamma.rows, dim, gamma)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, dim: PrimeDimension) -> WeightedGraph:
        """Relabels nodes 0..n-1 in sorted order; edge attribute 'weight' defaults to 1."""
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = [
            (index[u], index[v], int(data.get("weight", 1)))
            for u, v, data in graph.edges(data=True)
        ]
        return cls.from_edges(len(nodes), dim, edges)

    @property
    def d(self) -> int:
        return self.dim.d

    def to_array(self) -> np.ndarray:
        return self.gamma.to_array()

    def weight(self, i: int, j: int) -> int:
        return self.gamma[i, j]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.gamma[i, j] != 0]

    def edges(self) -> list[Edge]:
        arr = self.to_array()
        rows, cols = np.nonzero(np.triu(arr, k=1))
        return [(int(u), int(v), int(arr[u, v])) for u, v in zip(rows, cols)]

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def support_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((u, v) for u, v, _ in self.edges())
        return graph

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.support_graph())

    def permuted(self, order: list[int]) -> WeightedGraph:
        """Graph whose vertex k is vertex order[k] of this one."""
        arr = self.to_array()[np.ix_(order, order)]
        return WeightedGraph.from_array(arr, self.dim)

    def with_dimension(self, dim: PrimeDimension) -> WeightedGraph:
        """Same edges with weights reduced mod the new d; a weight vanishing there is an error."""
        if dim == self.dim:
            return self
        edges = self.edges()
        for u, v, w in edges:
            if w % dim.d == 0:
                raise FieldDomainError(f"edge {u} {v} has weight {w} = 0 mod {dim.d}")
        return WeightedGraph.from_edges(self.n, dim, edges)


@dataclass(frozen=True)
class GraphFile:
    graph: WeightedGraph
    color_hint: dict[int, int] | None = None


def parse_graph_file(text: str) -> GraphFile:
    """
    Parse the line-oriented graph format:

        # comment
        dim 3
        vertices 4
        edge 0 1 2
        color 0 0

    Vertices are 0-indexed. An edge weight congruent to 0 mod d is rejected,
    other weights are reduced mod d. Repeating an edge with the same weight is
    allowed; with a different weight it is an error.
    """
    d: int | None = None
    n: int | None = None
    edges: dict[tuple[int, int], tuple[int, int]] = {}
    colors: dict[int, int] = {}
    pending_edges: list[tuple[int, int, int, int]] = []
    pending_colors: list[tuple[int, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword, args = parts[0].lower(), parts[1:]
        try:
            values = [int(a) for a in args]
        except ValueError as e:
            raise GraphParseError(f"non-integer argument in '{line}'", lineno) from e

        if keyword == "dim":
            _expect_args(keyword, values, 1, lineno)
            if d is not None:
                raise GraphParseError("duplicate 'dim' line", lineno)
            d = values[0]
        elif keyword == "vertices":
            _expect_args(keyword, values, 1, lineno)
            if n is not None:
                raise GraphParseError("duplicate 'vertices' line", lineno)
            if values[0] < 1:
                raise GraphParseError(f"vertex count must be positive, got {values[0]}", lineno)
            n = values[0]
        elif keyword == "edge":
            _expect_args(keyword, values, 3, lineno)
            pending_edges.append((values[0], values[1], values[2], lineno))
        elif keyword == "color":
            _expect_args(keyword, values, 2, lineno)
            pending_colors.append((values[0], values[1], lineno))
        else:
            raise GraphParseError(f"unknown directive '{keyword}'", lineno)

    if d is None:
        raise GraphParseError("missing 'dim' line")
    if n is None:
        raise GraphParseError("missing 'vertices' line")
    try:
        dim = PrimeDimension(d)
    except DimensionError as e:
        raise GraphParseError(str(e)) from e

    for u, v, w, lineno in pending_edges:
        for vertex in (u, v):
            if not 0 <= vertex < n:
                raise GraphParseError(f"vertex {vertex} out of range [0, {n})", lineno)
        if u == v:
            raise GraphParseError(f"self-loop on vertex {u}", lineno)
        reduced = w % dim.d
        if reduced == 0:
            raise GraphParseError(
                f"edge {u} {v} has weight {w} = 0 mod {dim.d}; omit the line for no edge", lineno
            )
        key = (min(u, v), max(u, v))
        if key in edges and edges[key][0] != reduced:
            raise GraphParseError(
                f"edge {key[0]} {key[1]} redeclared with weight {reduced}, "
                f"line {edges[key][1]} gave {edges[key][0]}",
                lineno,
            )
        edges[key] = (reduced, lineno)

    for vertex, color, lineno in pending_colors:
        if not 0 <= vertex < n:
            raise GraphParseError(f"vertex {vertex} out of range [0, {n})", lineno)
        if color < 0:
            raise GraphParseError(f"color index must be nonnegative, got {color}", lineno)
        if vertex in colors and colors[vertex] != color:
            raise GraphParseError(f"vertex {vertex} colored twice", lineno)
        colors[vertex] = color

    if colors and len(colors) != n:
        missing = sorted(set(range(n)) - set(colors))
        raise GraphParseError(f"color hint incomplete, missing vertices {missing}")

    graph = WeightedGraph.from_edges(n, dim, ((u, v, w) for (u, v), (w, _) in edges.items()))
    logger.debug("parsed graph n=%d d=%d edges=%d", n, dim.d, len(edges))
    return GraphFile(graph=graph, color_hint=colors or None)


def parse_graph(text: str) -> WeightedGraph:
    return parse_graph_file(text).graph


def _expect_args(keyword: str, values: list[int], count: int, lineno: int) -> None:
    if len(values) != count:
        raise GraphParseError(f"'{keyword}' takes {count} argument(s), got {len(values)}", lineno)


def format_graph(
    g: WeightedGraph,
    color_hint: Mapping[int, int] | None = None,
    comments: Iterable[str] = (),
) -> str:
    """Canonical graph-file text: header, edges sorted by (u, v), then color lines."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"dim {g.d}")
    lines.append(f"vertices {g.n}")
    lines.extend(f"edge {u} {v} {w}" for u, v, w in g.edges())
    if color_hint:
        lines.extend(f"color {v} {color_hint[v]}" for v in sorted(color_hint))
    return "\n".join(lines) + "\n"


def local_complement(g: WeightedGraph, a: int, lam: int = 1) -> WeightedGraph:
    """
    Weighted local complementation at vertex a:

        Gamma'_bc = Gamma_bc + lam * Gamma_ab * Gamma_ac   (b != c, both != a)

    For d = 2 and lam = 1 this toggles every edge inside the neighborhood of a.
    Edges incident to a are untouched.
    """
    if not 0 <= a < g.n:
        raise ShapeError(f"vertex {a} out of range [0, {g.n})")
    if lam % g.d == 0:
        raise FieldDomainError("local complementation needs lambda != 0")
    arr = g.to_array()
    column = arr[:, a]
    update = (lam % g.d) * np.outer(column, column)
    np.fill_diagonal(update, 0)
    return WeightedGraph.from_array((arr + update) % g.d, g.dim)


def is_two_colorable(g: WeightedGraph) -> bool:
    return bool(nx.is_bipartite(g.support_graph()))


def find_two_colorable_lc(
    g: WeightedGraph, max_depth: int = 2
) -> list[tuple[int, int]] | None:
    """
    Breadth-first search over sequences of local complementations (vertex, lambda)
    for one that leaves a bipartite support graph. [] when g already is bipartite,
    None when no sequence of length <= max_depth works.
    """
    if is_two_colorable(g):
        return []
    seen = {g.to_array().tobytes()}
    frontier: list[tuple[WeightedGraph, list[tuple[int, int]]]] = [(g, [])]
    for depth in range(1, max_depth + 1):
        next_frontier = []
        for current, path in frontier:
            for a in range(current.n):
                if len(current.neighbors(a)) < 2:
                    continue
                for lam in range(1, current.d):
                    candidate = local_complement(current, a, lam)
                    key = candidate.to_array().tobytes()
                    if key in seen:
                        continue
                    seen.add(key)
                    steps = path + [(a, lam)]
                    if is_two_colorable(candidate):
                        logger.debug("two-colorable after %d complementations", depth)
                        return steps
                    next_frontier.append((candidate, steps))
        frontier = next_frontier
    return None
