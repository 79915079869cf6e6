"""Orthogonal arrays from generator matrices, exact strength, QOA certification."""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from chromastate.core.closedform import ClosedForm, SpecialForm, expand
from chromastate.core.errors import CapExceededError, ShapeError, TableParseError
from chromastate.core.field import (
    ENUMERATION_CAP,
    FieldMatrix,
    PrimeDimension,
    enumerate_array,
    mat_rank,
)
from chromastate.core.graph import WeightedGraph
from chromastate.core.simulator import PIPELINE_TOL, k_uniformity, uniformity_residual

logger = logging.getLogger(__name__)

OA_MAX_ROWS = 1 << 20
OA_MAX_COLS = 16
EQUIVALENCE_MAX_COLS = 8
EQUIVALENCE_MAX_ROWS = 256


@dataclass(frozen=True)
class OrthogonalArray:
    dim: PrimeDimension
    table: np.ndarray
    strength: int | None = None

    def __post_init__(self) -> None:
        if self.table.ndim != 2:
            raise ShapeError(f"OA table must be 2-d, got shape {self.table.shape}")
        if np.any((self.table < 0) | (self.table >= self.dim.d)):
            raise ShapeError(f"OA symbols must lie in [0, {self.dim.d})")
        self.table.setflags(write=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], dim: PrimeDimension) -> OrthogonalArray:
        return cls(dim, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @property
    def rows(self) -> int:
        return int(self.table.shape[0])

    @property
    def cols(self) -> int:
        return int(self.table.shape[1])

    @property
    def d(self) -> int:
        return self.dim.d

    def with_strength(
        self, max_rows: int = OA_MAX_ROWS, max_cols: int = OA_MAX_COLS
    ) -> OrthogonalArray:
        return OrthogonalArray(self.dim, self.table, oa_strength(self, max_rows, max_cols))

    def header(self) -> str:
        strength = "?" if self.strength is None else str(self.strength)
        return f"OA {self.rows} {self.cols} {self.d} {strength}"


def is_balanced(table: np.ndarray, columns: Sequence[int], d: int) -> bool:
    """Every tuple of [0, d)^k occurs equally often in the chosen columns."""
    k = len(columns)
    r = table.shape[0]
    if r % d ** k:
        return False
    weights = d ** np.arange(k - 1, -1, -1, dtype=np.int64)
    codes = table[:, list(columns)] @ weights
    counts = np.bincount(codes, minlength=d ** k)
    return bool(np.all(counts == r // d ** k))


def oa_strength(
    oa: OrthogonalArray, max_rows: int = OA_MAX_ROWS, max_cols: int = OA_MAX_COLS
) -> int:
    """Largest k such that every k-column subset is balanced; multiset counting."""
    if oa.rows > max_rows:
        raise CapExceededError("orthogonal array rows", oa.rows, max_rows)
    if oa.cols > max_cols:
        raise CapExceededError("orthogonal array columns", oa.cols, max_cols)
    strength = 0
    for k in range(1, oa.cols + 1):
        if not all(
            is_balanced(oa.table, cols, oa.d)
            for cols in itertools.combinations(range(oa.cols), k)
        ):
            break
        strength = k
    logger.debug("OA %dx%d over F_%d has strength %d", oa.rows, oa.cols, oa.d, strength)
    return strength


def oa_from_generator(
    gmat: FieldMatrix,
    cap: int | None = None,
    max_rows: int = OA_MAX_ROWS,
    max_cols: int = OA_MAX_COLS,
) -> OrthogonalArray:
    """Rows x.G for every x in F_d^m, in enumeration order, with exact strength."""
    x = enumerate_array(gmat.rows, gmat.dim, cap)
    table = np.mod(x @ gmat.to_array(), gmat.dim.d)
    oa = OrthogonalArray(gmat.dim, table)
    return OrthogonalArray(gmat.dim, table, oa_strength(oa, max_rows, max_cols))


def generator_in_vertex_order(cf: ClosedForm | SpecialForm) -> FieldMatrix:
    """The closed form's generator with columns back in original vertex labels."""
    base = cf.base if isinstance(cf, SpecialForm) else cf
    order = np.argsort(np.asarray(base.vertex_order))
    return FieldMatrix.from_array(base.generator.to_array()[:, order], base.dim)


@dataclass(frozen=True)
class QoaCertificate:
    r: int
    n: int
    d: int
    m: int
    k_star: int
    residual: float | None

    @property
    def summary(self) -> str:
        return f"QOA r={self.r} n={self.n} d={self.d} k*={self.k_star}"


def qoa_certify(
    cf: ClosedForm | SpecialForm,
    g: WeightedGraph | None = None,
    cap: int | None = None,
    tol: float = PIPELINE_TOL,
) -> QoaCertificate:
    """
    Numerical certificate: expand the form, find the largest k whose every
    k-party reduction equals I/d^k, and report the worst residual at that k.
    A state that is not even 1-uniform certifies nothing, so its residual is None.
    """
    base = cf.base if isinstance(cf, SpecialForm) else cf
    if g is not None and (g.n != base.n or g.dim != base.dim):
        raise ShapeError(f"form has n={base.n}, d={base.d}; graph has n={g.n}, d={g.d}")
    state = expand(cf, cap).normalized()
    k_star = k_uniformity(state, tol, cap)
    residual = uniformity_residual(state, k_star, cap) if k_star else None
    return QoaCertificate(
        r=base.term_count, n=base.n, d=base.d, m=base.m, k_star=k_star, residual=residual
    )


def _affine_maps(d: int) -> list[tuple[int, int]]:
    return [(alpha, beta) for alpha in range(1, d) for beta in range(d)]


def oa_equivalence_probe(
    a: OrthogonalArray,
    b: OrthogonalArray,
    max_cols: int = EQUIVALENCE_MAX_COLS,
    max_rows: int = EQUIVALENCE_MAX_ROWS,
) -> bool:
    """
    Search column permutations plus per-column affine relabelings x -> alpha*x + beta
    mapping a's row multiset onto b's. For d = 2 the affine maps are every symbol
    permutation; for larger d the relabeling group is restricted.
    """
    if a.table.shape != b.table.shape or a.dim != b.dim:
        raise ShapeError(f"cannot compare {a.table.shape} over F_{a.d} with {b.table.shape}")
    if a.cols > max_cols:
        raise CapExceededError("equivalence probe columns", a.cols, max_cols)
    if a.rows > max_rows:
        raise CapExceededError("equivalence probe rows", a.rows, max_rows)
    d = a.d
    maps = _affine_maps(d)
    target_prefixes = [
        Counter(tuple(row[:j]) for row in b.table.tolist()) for j in range(b.cols + 1)
    ]
    columns: list[np.ndarray] = []
    nodes = 0

    def extend(used: frozenset[int]) -> bool:
        nonlocal nodes
        nodes += 1
        j = len(columns)
        if j == a.cols:
            return True
        for source in range(a.cols):
            if source in used:
                continue
            for alpha, beta in maps:
                columns.append((alpha * a.table[:, source] + beta) % d)
                prefix = Counter(zip(*(c.tolist() for c in columns)))
                if prefix == target_prefixes[j + 1] and extend(used | {source}):
                    return True
                columns.pop()
        return False

    found = extend(frozenset())
    logger.debug("equivalence probe visited %d nodes, match=%s", nodes, found)
    return found


def is_linear_code(table: np.ndarray, d: int) -> bool:
    """
    Distinct rows form a subspace of F_d^n. The row set is contained in its own
    span, so it is closed under addition exactly when it has d**rank elements.
    """
    table = np.asarray(table, dtype=np.int64)
    if table.shape[0] == 0:
        return False
    if table.shape[1] == 0:
        return True
    rows = np.unique(table, axis=0)
    rank = mat_rank(FieldMatrix.from_array(rows, PrimeDimension(d)))
    return int(rows.shape[0]) == d ** rank


def dual_distance(gmat: FieldMatrix, cap: int | None = None) -> int:
    """
    Minimum Hamming weight of a nonzero y with G y^T = 0. Returns n + 1 when the
    dual code is trivial, so strength = dual_distance - 1 holds for linear OAs.
    Candidates are counted weight layer by weight layer against the enumeration cap.
    """
    limit = ENUMERATION_CAP if cap is None else cap
    d = gmat.dim.d
    g = gmat.to_array()
    n = gmat.cols
    checked = 0
    for weight in range(1, n + 1):
        checked += math.comb(n, weight) * (d - 1) ** weight
        if checked > limit:
            raise CapExceededError("dual distance candidate vectors", checked, limit)
        values = np.asarray(list(itertools.product(range(1, d), repeat=weight)), dtype=np.int64)
        for support in itertools.combinations(range(n), weight):
            syndromes = np.mod(values @ g[:, list(support)].T, d)
            if not np.all(np.any(syndromes, axis=1)):
                return weight
    return n + 1


def format_oa(oa: OrthogonalArray) -> str:
    lines = [oa.header()]
    lines.extend(" ".join(str(int(x)) for x in row) for row in oa.table)
    return "\n".join(lines) + "\n"


def parse_oa(text: str) -> OrthogonalArray:
    """Parse 'OA r n d k' followed by r rows; k may be '?' when unknown."""
    lines = [
        (lineno, raw.split("#", 1)[0].strip())
        for lineno, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(lineno, line) for lineno, line in lines if line]
    if not lines:
        raise TableParseError("empty orthogonal-array text")
    header_line, header = lines[0]
    parts = header.split()
    if len(parts) != 5 or parts[0] != "OA":
        raise TableParseError("header must read 'OA r n d k'", header_line)
    try:
        r, n, d = (int(p) for p in parts[1:4])
        declared = None if parts[4] == "?" else int(parts[4])
    except ValueError as e:
        raise TableParseError(f"non-integer header field in '{header}'", header_line) from e
    dim = PrimeDimension(d)
    body = lines[1:]
    if len(body) != r:
        raise TableParseError(f"header declares {r} rows, found {len(body)}", header_line)
    rows = []
    for lineno, line in body:
        try:
            row = [int(x) for x in line.split()]
        except ValueError as e:
            raise TableParseError(f"non-integer symbol in '{line}'", lineno) from e
        if len(row) != n:
            raise TableParseError(f"expected {n} symbols, got {len(row)}", lineno)
        if any(not 0 <= x < d for x in row):
            raise TableParseError(f"symbols must lie in [0, {d})", lineno)
        rows.append(row)
    oa = OrthogonalArray.from_rows(rows, dim)
    return OrthogonalArray(dim, oa.table, declared)
