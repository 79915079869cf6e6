"""Proper colorings, block decomposition and special-class structure recognition."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from chromastate.core.errors import CapExceededError, ColoringError
from chromastate.core.field import FieldMatrix, is_nonsingular
from chromastate.core.graph import WeightedGraph

logger = logging.getLogger(__name__)

CHROMATIC_MAX_N = 24
KUNIFORM_MAX_DIM = 6


@dataclass(frozen=True)
class Coloring:
    """Color classes c_1..c_chi with nondecreasing sizes; assignment[v] indexes classes."""

    chi: int
    assignment: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.classes) != self.chi:
            raise ColoringError(f"chi={self.chi} but {len(self.classes)} classes")
        seen = sorted(v for cls in self.classes for v in cls)
        if seen != list(range(len(self.assignment))):
            raise ColoringError("classes must partition the vertex set")
        sizes = self.sizes
        if any(a > b for a, b in zip(sizes, sizes[1:])):
            raise ColoringError(f"class sizes must be nondecreasing, got {sizes}")
        for index, cls in enumerate(self.classes):
            if not cls:
                raise ColoringError("empty color class")
            if any(self.assignment[v] != index for v in cls):
                raise ColoringError("assignment disagrees with classes")

    @classmethod
    def from_assignment(
        cls, assignment: Mapping[int, int] | Sequence[int], keep_color_order: bool = False
    ) -> Coloring:
        """
        Canonicalize a raw assignment vertex -> color label.

        Classes are sorted by size. Ties keep the label order when keep_color_order
        is set (explicit hints), otherwise the class holding the smallest vertex
        comes first.
        """
        items = assignment.items() if isinstance(assignment, Mapping) else enumerate(assignment)
        groups: dict[int, list[int]] = {}
        for vertex, color in items:
            groups.setdefault(int(color), []).append(int(vertex))
        raw = [(color, sorted(vs)) for color, vs in groups.items()]
        if keep_color_order:
            raw.sort(key=lambda item: (len(item[1]), item[0]))
        else:
            raw.sort(key=lambda item: (len(item[1]), item[1][0]))
        classes = tuple(tuple(vs) for _, vs in raw)
        n = sum(len(c) for c in classes)
        canon = [0] * n
        for index, members in enumerate(classes):
            for v in members:
                canon[v] = index
        return cls(chi=len(classes), assignment=tuple(canon), classes=classes)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def last(self) -> tuple[int, ...]:
        return self.classes[-1] if self.classes else ()

    @property
    def free_vertices(self) -> tuple[int, ...]:
        """Vertices of c_1..c_{chi-1}, class by class."""
        return tuple(v for cls in self.classes[:-1] for v in cls)

    def labels(self) -> tuple[str, ...]:
        if self.chi == 2:
            return ("R", "B")
        if self.chi == 3:
            return ("R", "G", "B")
        return tuple(f"c{i + 1}" for i in range(self.chi))

    def as_hint(self) -> dict[int, int]:
        return dict(enumerate(self.assignment))


def is_proper(g: WeightedGraph, assignment: Sequence[int]) -> bool:
    return all(assignment[u] != assignment[v] for u, v, _ in g.edges())


def validate_coloring(g: WeightedGraph, c: Coloring) -> None:
    if c.n != g.n:
        raise ColoringError(f"coloring covers {c.n} vertices, graph has {g.n}")
    for u, v, _ in g.edges():
        if c.assignment[u] == c.assignment[v]:
            raise ColoringError(
                f"improper coloring: edge {u}-{v} inside class c{c.assignment[u] + 1}"
            )


def chromatic_coloring(
    g: WeightedGraph,
    hint: Mapping[int, int] | None = None,
    max_n: int = CHROMATIC_MAX_N,
) -> Coloring:
    """
    Validated hint, or an exact minimum coloring of the support graph found
    by trying k = 1, 2, ... with a backtracking k-coloring search.
    """
    if hint is not None:
        if sorted(hint) != list(range(g.n)):
            raise ColoringError("color hint must assign every vertex")
        if not is_proper(g, [hint[v] for v in range(g.n)]):
            bad = next((u, v) for u, v, _ in g.edges() if hint[u] == hint[v])
            raise ColoringError(f"improper color hint: edge {bad[0]}-{bad[1]} shares a color")
        coloring = Coloring.from_assignment(hint, keep_color_order=True)
        validate_coloring(g, coloring)
        return coloring

    if g.n > max_n:
        raise CapExceededError("exact chromatic search vertex count", g.n, max_n)

    adjacency = [set(g.neighbors(v)) for v in range(g.n)]
    order = sorted(range(g.n), key=lambda v: (-len(adjacency[v]), v))
    lower = 1 if not g.edges() else 2
    for k in range(lower, g.n + 1):
        search = _BacktrackingKColoring(adjacency, order, k)
        found = search.run()
        logger.debug("k=%d backtracking made %d calls", k, search.nodes)
        if found is not None:
            coloring = Coloring.from_assignment(found)
            validate_coloring(g, coloring)
            return coloring
    raise AssertionError("n colors always suffice")


class _BacktrackingKColoring:
    """
    Plain backtracking for a fixed k, without bounding. Vertices go in
    degree order and a new color is opened only after all used ones, so the
    search is exact and deterministic. `nodes` counts recursive calls.
    """

    def __init__(self, adjacency: list[set[int]], order: list[int], k: int) -> None:
        self.adjacency = adjacency
        self.order = order
        self.k = k
        self.colors = [-1] * len(order)
        self.nodes = 0

    def run(self) -> list[int] | None:
        if self._extend(0, 0):
            return list(self.colors)
        return None

    def _extend(self, depth: int, used: int) -> bool:
        self.nodes += 1
        if depth == len(self.order):
            return True
        vertex = self.order[depth]
        forbidden = {self.colors[u] for u in self.adjacency[vertex]}
        for color in range(min(used + 1, self.k)):
            if color in forbidden:
                continue
            self.colors[vertex] = color
            if self._extend(depth + 1, max(used, color + 1)):
                return True
        self.colors[vertex] = -1
        return False


@dataclass(frozen=True)
class BlockDecomposition:
    ordering: tuple[int, ...]
    class_sizes: tuple[int, ...]
    blocks: dict[tuple[int, int], FieldMatrix] = field(hash=False)
    dim_n: int = 0

    def block(self, i: int, k: int) -> FieldMatrix:
        """A_{c_i, c_k} (0-based class indices, k < i), shape n_i x n_k."""
        return self.blocks[(i, k)]

    def class_slice(self, i: int) -> tuple[int, ...]:
        start = sum(self.class_sizes[:i])
        return self.ordering[start:start + self.class_sizes[i]]

    def reassemble(self) -> np.ndarray:
        """Adjacency in original vertex labels rebuilt from the blocks alone."""
        n = len(self.ordering)
        arr = np.zeros((n, n), dtype=np.int64)
        for (i, k), block in self.blocks.items():
            rows, cols = self.class_slice(i), self.class_slice(k)
            arr[np.ix_(rows, cols)] = block.to_array()
            arr[np.ix_(cols, rows)] = block.to_array().T
        return arr


def block_decompose(g: WeightedGraph, c: Coloring) -> BlockDecomposition:
    validate_coloring(g, c)
    ordering = tuple(v for cls in c.classes for v in cls)
    blocks: dict[tuple[int, int], FieldMatrix] = {}
    for i in range(c.chi):
        for k in range(i):
            blocks[(i, k)] = g.gamma.submatrix(c.classes[i], c.classes[k])
    return BlockDecomposition(ordering=ordering, class_sizes=c.sizes, blocks=blocks, dim_n=g.n)


@dataclass(frozen=True)
class SpecialClassStructure:
    red: tuple[int, ...]
    b_u: tuple[int, ...]
    components: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def s(self) -> int:
        return len(self.components)

    @property
    def greens(self) -> tuple[int, ...]:
        return tuple(v for greens, _ in self.components for v in greens)

    @property
    def b_c_blues(self) -> tuple[int, ...]:
        return tuple(v for _, blues in self.components for v in blues)

    @property
    def hadamard_targets(self) -> tuple[int, ...]:
        return tuple(sorted(self.b_u + self.b_c_blues))


@dataclass(frozen=True)
class SpecialClassRejection:
    condition: str
    detail: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.detail}"


def detect_special_class(
    g: WeightedGraph, c: Coloring
) -> SpecialClassStructure | SpecialClassRejection:
    validate_coloring(g, c)
    if c.chi == 2:
        return SpecialClassStructure(red=c.classes[0], b_u=c.classes[1], components=())
    if c.chi != 3:
        return SpecialClassRejection("chromatic", f"needs 2 or 3 colors, coloring has {c.chi}")

    first: SpecialClassRejection | None = None
    for red_index, green_index in ((1, 0), (0, 1)):
        result = _try_special(g, c.classes[red_index], c.classes[green_index], c.classes[2])
        if isinstance(result, SpecialClassStructure):
            return result
        first = first or result
    assert first is not None
    return first


def _try_special(
    g: WeightedGraph,
    red: tuple[int, ...],
    green: tuple[int, ...],
    blue: tuple[int, ...],
) -> SpecialClassStructure | SpecialClassRejection:
    arr = g.to_array()
    sub = nx.Graph()
    sub.add_nodes_from(green + blue)
    sub.add_edges_from((u, v) for u in green + blue for v in green + blue if u < v and arr[u, v])
    green_set = set(green)

    components: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    b_u: list[int] = []
    for comp in sorted((sorted(cc) for cc in nx.connected_components(sub)), key=lambda cc: cc[0]):
        greens = tuple(v for v in comp if v in green_set)
        if greens:
            components.append((greens, tuple(v for v in comp if v not in green_set)))
        else:
            b_u.extend(comp)
    b_u_t = tuple(sorted(b_u))

    def edge_between(xs: Sequence[int], ys: Sequence[int]) -> tuple[int, int] | None:
        for x in xs:
            for y in ys:
                if x != y and arr[x, y]:
                    return (x, y)
        return None

    bc_all = tuple(v for greens, blues in components for v in greens + blues)
    checks: list[tuple[str, Sequence[int], Sequence[int]]] = [
        ("R-R block", red, red),
        ("B_u-B_u block", b_u_t, b_u_t),
        ("B_u-B_c block", b_u_t, bc_all),
    ]
    for k, (greens, blues) in enumerate(components):
        others = tuple(v for j, (gs, bs) in enumerate(components) if j != k for v in gs + bs)
        checks.append((f"B_c,{k + 1}-B_c cross block", greens + blues, others))
        checks.append((f"G_{k + 1}-G_{k + 1} block", greens, greens))
        checks.append((f"B_c,{k + 1}\\G-B_c,{k + 1}\\G block", blues, blues))
    for name, xs, ys in checks:
        hit = edge_between(xs, ys)
        if hit is not None:
            return SpecialClassRejection(name, f"edge {hit[0]}-{hit[1]} must be absent")

    if len(red) > len(b_u_t):
        return SpecialClassRejection("n_R <= n_B_u", f"n_R={len(red)} > n_B_u={len(b_u_t)}")
    for k, (greens, blues) in enumerate(components):
        if len(greens) > len(blues):
            return SpecialClassRejection(
                f"n_G <= n_B_c\\G (component {k + 1})",
                f"n_G={len(greens)} > n_B_c\\G={len(blues)}",
            )
    return SpecialClassStructure(red=tuple(red), b_u=b_u_t, components=tuple(components))


@dataclass(frozen=True)
class KUniformAdjacencyReport:
    a_ok: bool
    b1_ok: bool | None
    a_shape: tuple[int, int]
    b1_shape: tuple[int, int] | None = None


def all_minors_nonsingular(m: FieldMatrix, max_dim: int = KUNIFORM_MAX_DIM) -> bool:
    """True iff every square submatrix of m is nonsingular over F_d."""
    size = min(m.rows, m.cols)
    if size > max_dim:
        raise CapExceededError("all-minors check dimension", size, max_dim)
    arr = m.to_array()
    if np.any(arr == 0):
        return False
    for k in range(2, size + 1):
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                if not is_nonsingular(m.submatrix(rows, cols)):
                    return False
    return True


def kuniform_adjacency_check(
    g: WeightedGraph,
    c: Coloring,
    structure: SpecialClassStructure | None = None,
    max_dim: int = KUNIFORM_MAX_DIM,
) -> KUniformAdjacencyReport:
    """
    Block conditions behind the k-uniform graph-state construction: the
    red-to-rest block A (and, for the hierarchical three-colorable case, the
    green-to-B_c-blue block B_1) must have every square submatrix nonsingular.
    """
    validate_coloring(g, c)
    if c.chi == 2:
        a = g.gamma.submatrix(c.classes[0], c.classes[1])
        return KUniformAdjacencyReport(all_minors_nonsingular(a, max_dim), None, a.shape)
    if structure is None:
        detected = detect_special_class(g, c)
        if isinstance(detected, SpecialClassRejection):
            raise ColoringError(f"not a special three-colorable graph: {detected}")
        structure = detected
    rest = tuple(sorted(set(range(g.n)) - set(structure.red)))
    a = g.gamma.submatrix(structure.red, rest)
    b1 = g.gamma.submatrix(structure.greens, structure.b_c_blues)
    b1_ok = all_minors_nonsingular(b1, max_dim) if b1.rows and b1.cols else None
    return KUniformAdjacencyReport(
        all_minors_nonsingular(a, max_dim), b1_ok, a.shape, b1.shape
    )
