"""Exact arithmetic and dense linear algebra over a prime field F_d."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from chromastate.core.errors import (
    CapExceededError,
    DimensionError,
    FieldDomainError,
    ShapeError,
)
from chromastate.models.config import DEFAULT_AMP_CAP

logger = logging.getLogger(__name__)

MAX_DIM = 97
ENUMERATION_CAP = DEFAULT_AMP_CAP

FieldOp = Literal["add", "sub", "mul", "inv", "neg"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeDimension:
    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise DimensionError(f"dimension must be an integer, got {self.d!r}")
        if self.d < 2 or self.d > MAX_DIM:
            raise DimensionError(f"dimension must lie in [2, {MAX_DIM}], got {self.d}")
        if not is_prime(self.d):
            raise DimensionError(f"dimension {self.d} is not prime")

    def __int__(self) -> int:
        return self.d

    def reduce(self, value: int) -> int:
        return value % self.d

    def omega_powers(self) -> np.ndarray:
        """omega**k for k in [0, d), omega = exp(2*pi*i/d)."""
        return roots_of_unity(self.d)


@lru_cache(maxsize=None)
def roots_of_unity(d: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(d) / d)
    roots.setflags(write=False)
    return roots


def field_ops(a: int, b: int, op: FieldOp, dim: PrimeDimension) -> int:
    d = dim.d
    for name, value in (("a", a), ("b", b)):
        if not 0 <= value < d:
            raise FieldDomainError(f"{name}={value} is not an element of F_{d}")
    if op == "add":
        return (a + b) % d
    if op == "sub":
        return (a - b) % d
    if op == "mul":
        return (a * b) % d
    if op == "neg":
        return (-a) % d
    if op == "inv":
        if a == 0:
            raise FieldDomainError(f"0 has no inverse in F_{d}")
        return pow(a, -1, d)
    raise ValueError(f"Unknown field operation: {op}")


@dataclass(frozen=True)
class FieldVector:
    entries: tuple[int, ...]
    dim: PrimeDimension

    def __post_init__(self) -> None:
        d = self.dim.d
        if any(not 0 <= e < d for e in self.entries):
            raise FieldDomainError(f"vector entries must be reduced mod {d}: {self.entries}")

    @classmethod
    def of(cls, values: Iterable[int], dim: PrimeDimension) -> FieldVector:
        return cls(tuple(int(v) % dim.d for v in values), dim)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


@dataclass(frozen=True)
class FieldMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]
    dim: PrimeDimension

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        d = self.dim.d
        if any(not 0 <= e < d for e in self.entries):
            raise FieldDomainError(f"matrix entries must be reduced mod {d}")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], dim: PrimeDimension, cols: int | None = None
    ) -> FieldMatrix:
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else (cols or 0)
        for row in rows:
            if len(row) != n_cols:
                raise ShapeError("ragged rows")
        flat = tuple(int(v) % dim.d for row in rows for v in row)
        return cls(n_rows, n_cols, flat, dim)

    @classmethod
    def from_array(cls, array: np.ndarray, dim: PrimeDimension) -> FieldMatrix:
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got shape {arr.shape}")
        reduced = np.mod(arr, dim.d)
        return cls(arr.shape[0], arr.shape[1], tuple(int(v) for v in reduced.ravel()), dim)

    @classmethod
    def zeros(cls, rows: int, cols: int, dim: PrimeDimension) -> FieldMatrix:
        return cls(rows, cols, (0,) * (rows * cols), dim)

    @classmethod
    def identity(cls, size: int, dim: PrimeDimension) -> FieldMatrix:
        return cls.from_array(np.eye(size, dtype=np.int64), dim)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_lists(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> FieldMatrix:
        return FieldMatrix.from_array(self.to_array().T, self.dim)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> FieldMatrix:
        arr = self.to_array()
        if not rows or not cols:
            return FieldMatrix.zeros(len(rows), len(cols), self.dim)
        return FieldMatrix.from_array(arr[np.ix_(list(rows), list(cols))], self.dim)

    def hstack(self, other: FieldMatrix) -> FieldMatrix:
        if self.rows != other.rows or self.dim != other.dim:
            raise ShapeError(f"cannot hstack {self.shape} with {other.shape}")
        if self.cols == 0:
            return other
        if other.cols == 0:
            return self
        return FieldMatrix.from_array(np.hstack([self.to_array(), other.to_array()]), self.dim)

    def is_zero(self) -> bool:
        return not any(self.entries)


def mat_rank(m: FieldMatrix) -> int:
    """Rank over F_d by row reduction, first nonzero entry as pivot."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _rank_mod_p(m.to_array(), m.dim.d)


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.mod(a.copy(), p)
    n_rows, n_cols = a.shape
    r = 0
    for c in range(n_cols):
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot], :] = a[[pivot, r], :]
        inv = pow(int(a[r, c]), -1, p)
        a[r, :] = (a[r, :] * inv) % p
        below = a[r + 1:, c].copy()
        a[r + 1:, :] = (a[r + 1:, :] - np.outer(below, a[r, :])) % p
        r += 1
        if r == n_rows:
            break
    return r


def is_nonsingular(m: FieldMatrix) -> bool:
    return m.rows == m.cols and mat_rank(m) == m.rows


def mat_vec_mul(v: FieldVector, m: FieldMatrix) -> FieldVector:
    """Row vector times matrix, (v . m) mod d."""
    if len(v) != m.rows:
        raise ShapeError(f"vector of length {len(v)} cannot multiply a {m.rows}x{m.cols} matrix")
    if v.dim != m.dim:
        raise ShapeError(f"field mismatch: F_{v.dim.d} vector, F_{m.dim.d} matrix")
    if m.rows == 0:
        return FieldVector((0,) * m.cols, m.dim)
    product = np.mod(v.to_array() @ m.to_array(), m.dim.d)
    return FieldVector(tuple(int(x) for x in product), m.dim)


def _check_enumeration(length: int, d: int, cap: int | None) -> int:
    limit = ENUMERATION_CAP if cap is None else cap
    size = d ** length
    if size > limit:
        raise CapExceededError(f"enumeration of F_{d}^{length}", size, limit)
    return size


def enumerate_vectors(
    length: int, dim: PrimeDimension, cap: int | None = None
) -> Iterator[FieldVector]:
    """All of F_d^length, lexicographic, last coordinate fastest."""
    _check_enumeration(length, dim.d, cap)
    for entries in itertools.product(range(dim.d), repeat=length):
        yield FieldVector(entries, dim)


def enumerate_array(length: int, dim: PrimeDimension, cap: int | None = None) -> np.ndarray:
    """Same order as enumerate_vectors, as a (d**length, length) int64 array."""
    size = _check_enumeration(length, dim.d, cap)
    logger.debug("enumerating %d vectors of F_%d^%d", size, dim.d, length)
    index = np.arange(size, dtype=np.int64)
    powers = dim.d ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (index[:, None] // powers[None, :]) % dim.d
