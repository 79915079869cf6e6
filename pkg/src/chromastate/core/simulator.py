"""
Dense state-vector simulator for qudit graph states.

Basis ket |i_0, ..., i_{n-1}> sits at amplitude index sum_k i_k * d**(n-1-k),
so qudit 0 is the most significant digit. States are immutable; every
operation returns a new StateVector.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from chromastate.core.errors import CapExceededError, DimensionError, ShapeError
from chromastate.core.field import PrimeDimension, roots_of_unity
from chromastate.core.graph import WeightedGraph, local_complement
from chromastate.models.config import resolve_amp_cap

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-12
PIPELINE_TOL = 1e-9
HERMITIAN_TOL = 1e-10

GateKind = Literal["X", "Z", "H", "Hdag", "CZ", "CX"]


def check_amplitude_cap(
    n: int, dim: PrimeDimension, cap: int | None = None, what: str = ""
) -> int:
    limit = resolve_amp_cap(cap)
    size = dim.d ** n
    if size > limit:
        raise CapExceededError(what or f"d^n amplitudes (d={dim.d}, n={n})", size, limit)
    return size


@dataclass(frozen=True)
class StateVector:
    n: int
    dim: PrimeDimension
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.amps.shape != (self.dim.d ** self.n,):
            raise ShapeError(
                f"{self.n} qudits of dimension {self.dim.d} need {self.dim.d ** self.n} "
                f"amplitudes, got shape {self.amps.shape}"
            )
        self.amps.setflags(write=False)

    @classmethod
    def from_amplitudes(cls, amps: np.ndarray, n: int, dim: PrimeDimension) -> StateVector:
        return cls(n, dim, np.array(amps, dtype=np.complex128))

    @classmethod
    def basis(
        cls, ket: Sequence[int], dim: PrimeDimension, cap: int | None = None
    ) -> StateVector:
        n = len(ket)
        size = check_amplitude_cap(n, dim, cap)
        amps = np.zeros(size, dtype=np.complex128)
        amps[basis_index(ket, dim.d)] = 1.0
        return cls(n, dim, amps)

    @property
    def d(self) -> int:
        return self.dim.d

    def tensor(self) -> np.ndarray:
        return self.amps.reshape((self.d,) * self.n) if self.n else self.amps.reshape(())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> StateVector:
        norm = self.norm()
        if norm == 0.0:
            raise ShapeError("cannot normalize the zero vector")
        return StateVector(self.n, self.dim, self.amps / norm)

    def amplitude(self, ket: Sequence[int]) -> complex:
        return complex(self.amps[basis_index(ket, self.d)])


def basis_index(ket: Sequence[int], d: int) -> int:
    index = 0
    for value in ket:
        index = index * d + (int(value) % d)
    return index


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    targets: tuple[int, ...]
    power: int = 1

    @classmethod
    def x(cls, q: int, a: int = 1) -> Gate:
        return cls("X", (q,), a)

    @classmethod
    def z(cls, q: int, a: int = 1) -> Gate:
        return cls("Z", (q,), a)

    @classmethod
    def h(cls, q: int) -> Gate:
        return cls("H", (q,))

    @classmethod
    def hdag(cls, q: int) -> Gate:
        return cls("Hdag", (q,))

    @classmethod
    def cz(cls, q1: int, q2: int, beta: int = 1) -> Gate:
        return cls("CZ", (q1, q2), beta)

    @classmethod
    def cx(cls, control: int, target: int, gamma: int = 0) -> Gate:
        """|i>|j> -> |i>|i + j + gamma>; control first."""
        return cls("CX", (control, target), gamma)


def x_matrix(d: int, a: int = 1) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        m[(i + a) % d, i] = 1.0
    return m


def z_matrix(d: int, a: int = 1) -> np.ndarray:
    return np.diag(roots_of_unity(d)[(np.arange(d) * a) % d]).astype(np.complex128)


def h_matrix(d: int) -> np.ndarray:
    """H|j> = d^{-1/2} sum_k omega^{jk} |k>."""
    k = np.arange(d)
    return roots_of_unity(d)[np.outer(k, k) % d] / np.sqrt(d)


def hdag_matrix(d: int) -> np.ndarray:
    return h_matrix(d).conj().T


def cz_phases(d: int, beta: int = 1) -> np.ndarray:
    """(d, d) table omega^{i j beta}."""
    k = np.arange(d)
    return roots_of_unity(d)[(np.outer(k, k) * beta) % d]


def cx_matrix(d: int, gamma: int = 0) -> np.ndarray:
    m = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            m[i * d + (i + j + gamma) % d, i * d + j] = 1.0
    return m


def _check_qudits(s: StateVector, qudits: Sequence[int]) -> None:
    for q in qudits:
        if not 0 <= q < s.n:
            raise ShapeError(f"qudit {q} out of range [0, {s.n})")
    if len(set(qudits)) != len(qudits):
        raise ShapeError(f"repeated qudit in {tuple(qudits)}")


def apply_operator(s: StateVector, op: np.ndarray, qudits: Sequence[int]) -> StateVector:
    """Apply a d^k x d^k operator to the listed qudits (first listed is most significant)."""
    qudits = list(qudits)
    _check_qudits(s, qudits)
    k = len(qudits)
    d = s.d
    if op.shape != (d ** k, d ** k):
        raise ShapeError(f"operator shape {op.shape} does not act on {k} qudits of dim {d}")
    tensor = op.reshape((d,) * (2 * k))
    moved = np.tensordot(tensor, s.tensor(), axes=(list(range(k, 2 * k)), qudits))
    out = np.moveaxis(moved, list(range(k)), qudits)
    return StateVector(s.n, s.dim, np.ascontiguousarray(out).reshape(-1))


def _apply_pair_phases(s: StateVector, table: np.ndarray, q1: int, q2: int) -> StateVector:
    shape = [1] * s.n
    shape[q1] = shape[q2] = s.d
    phases = (table if q1 < q2 else table.T).reshape(shape)
    out = s.tensor() * phases
    return StateVector(s.n, s.dim, out.reshape(-1))


def apply_gate(s: StateVector, gate: Gate) -> StateVector:
    d = s.d
    _check_qudits(s, gate.targets)
    power = gate.power % d
    if gate.kind == "X":
        return apply_operator(s, x_matrix(d, power), gate.targets)
    if gate.kind == "Z":
        return apply_operator(s, z_matrix(d, power), gate.targets)
    if gate.kind == "H":
        return apply_operator(s, h_matrix(d), gate.targets)
    if gate.kind == "Hdag":
        return apply_operator(s, hdag_matrix(d), gate.targets)
    if gate.kind == "CZ":
        q1, q2 = gate.targets
        return _apply_pair_phases(s, cz_phases(d, power), q1, q2)
    if gate.kind == "CX":
        return apply_operator(s, cx_matrix(d, power), gate.targets)
    raise ValueError(f"Unknown gate kind: {gate.kind}")


def apply_gates(s: StateVector, gates: Iterable[Gate]) -> StateVector:
    for gate in gates:
        s = apply_gate(s, gate)
    return s


def apply_hdag(s: StateVector, qudits: Iterable[int]) -> StateVector:
    return apply_gates(s, (Gate.hdag(q) for q in sorted(qudits)))


def plus_state(n: int, dim: PrimeDimension, cap: int | None = None) -> StateVector:
    size = check_amplitude_cap(n, dim, cap)
    return StateVector(n, dim, np.full(size, dim.d ** (-n / 2), dtype=np.complex128))


def build_graph_state(
    g: WeightedGraph,
    cap: int | None = None,
    edge_order: Sequence[tuple[int, int, int]] | None = None,
) -> StateVector:
    """prod CZ^{Gamma_kj} applied to |+>^n, one gate per edge."""
    state = plus_state(g.n, g.dim, cap)
    edges = g.edges() if edge_order is None else edge_order
    for u, v, w in edges:
        state = apply_gate(state, Gate.cz(u, v, w))
    logger.debug("built graph state n=%d d=%d with %d CZ gates", g.n, g.d, len(edges))
    return state


def graph_state_amplitude(g: WeightedGraph, ket: Sequence[int]) -> complex:
    """Closed amplitude d^{-n/2} omega^{sum_{j<k} Gamma_jk i_j i_k}."""
    exponent = sum(w * ket[u] * ket[v] for u, v, w in g.edges()) % g.d
    return complex(roots_of_unity(g.d)[exponent] * g.d ** (-g.n / 2))


def fidelity_up_to_phase(a: StateVector, b: StateVector) -> float:
    if a.n != b.n or a.dim != b.dim:
        raise ShapeError(f"cannot compare n={a.n}, d={a.d} with n={b.n}, d={b.d}")
    overlap = abs(np.vdot(a.amps, b.amps)) ** 2
    return float(min(1.0, max(0.0, overlap)))


@dataclass(frozen=True)
class DensityMatrix:
    k: int
    dim: PrimeDimension
    entries: np.ndarray

    def __post_init__(self) -> None:
        size = self.dim.d ** self.k
        if self.entries.shape != (size, size):
            raise ShapeError(f"density matrix on {self.k} qudits must be {size}x{size}")
        if np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ShapeError("density matrix is not Hermitian")
        if abs(np.trace(self.entries) - 1.0) > PIPELINE_TOL:
            raise ShapeError(f"density matrix trace {np.trace(self.entries).real:.12f} != 1")
        self.entries.setflags(write=False)

    def mixed_residual(self) -> float:
        """Max entrywise deviation from I / d^k."""
        size = self.dim.d ** self.k
        return float(np.max(np.abs(self.entries - np.eye(size) / size)))


def partial_trace(
    s: StateVector, keep: Iterable[int], cap: int | None = None
) -> DensityMatrix:
    kept = sorted(set(keep))
    if not kept:
        raise ShapeError("partial trace must keep at least one qudit")
    _check_qudits(s, kept)
    check_amplitude_cap(2 * len(kept), s.dim, cap, what=f"reduced density matrix on {kept}")
    traced = [q for q in range(s.n) if q not in kept]
    matrix = np.moveaxis(s.tensor(), kept, list(range(len(kept))))
    matrix = matrix.reshape(s.d ** len(kept), s.d ** len(traced))
    rho = matrix @ matrix.conj().T
    return DensityMatrix(len(kept), s.dim, rho)


def uniformity_residual(s: StateVector, k: int, cap: int | None = None) -> float:
    """Worst deviation from I/d^k over every k-subset of qudits."""
    worst = 0.0
    for subset in itertools.combinations(range(s.n), k):
        worst = max(worst, partial_trace(s, subset, cap).mixed_residual())
    return worst


def k_uniformity(s: StateVector, tol: float = PIPELINE_TOL, cap: int | None = None) -> int:
    """Largest k <= n/2 with every k-qudit reduction maximally mixed."""
    s = s.normalized()
    best = 0
    for k in range(1, s.n // 2 + 1):
        residual = uniformity_residual(s, k, cap)
        logger.debug("k=%d uniformity residual %.3e", k, residual)
        if residual > tol:
            break
        best = k
    return best


def operator_matrix(n: int, dim: PrimeDimension, gates: Sequence[Gate]) -> np.ndarray:
    """Full d^n x d^n matrix of a gate sequence, column j = image of basis ket j."""
    size = dim.d ** n
    columns = []
    for index in range(size):
        amps = np.zeros(size, dtype=np.complex128)
        amps[index] = 1.0
        columns.append(apply_gates(StateVector(n, dim, amps), gates).amps)
    return np.stack(columns, axis=1)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class IdentityReport:
    d: int
    results: tuple[IdentityResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def identity_fixtures(dim: PrimeDimension, tol: float = EXACT_TOL) -> IdentityReport:
    """
    Check three gate identities on every basis input:

        Hdag_2 CZ_12      == CX_12 Hdag_2
        X^a               == Hdag Z^a H         (all a)
        (1/d) sum_l omega^{l(k-j)} == delta_kj  (all k, j)
    """
    d = dim.d
    lhs = operator_matrix(2, dim, [Gate.cz(0, 1), Gate.hdag(1)])
    rhs = operator_matrix(2, dim, [Gate.hdag(1), Gate.cx(0, 1)])
    hadamard_cx = float(np.max(np.abs(lhs - rhs)))

    conj = 0.0
    for a in range(d):
        direct = operator_matrix(1, dim, [Gate.x(0, a)])
        via_h = operator_matrix(1, dim, [Gate.h(0), Gate.z(0, a), Gate.hdag(0)])
        conj = max(conj, float(np.max(np.abs(direct - via_h))))

    omega = roots_of_unity(d)
    levels = np.arange(d)
    delta = 0.0
    for k in range(d):
        for j in range(d):
            total = omega[(levels * (k - j)) % d].sum() / d
            delta = max(delta, abs(total - (1.0 if k == j else 0.0)))

    results = tuple(
        IdentityResult(name, residual, residual <= tol)
        for name, residual in (
            ("hadamard_cz_to_cx", hadamard_cx),
            ("x_from_conjugated_z", conj),
            ("kronecker_delta_sum", delta),
        )
    )
    return IdentityReport(d, results)


def principal_sqrt(m: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eig(m)
    return vectors @ np.diag(np.sqrt(values.astype(np.complex128))) @ np.linalg.inv(vectors)


def lc_unitary_check(g: WeightedGraph, a: int, cap: int | None = None) -> float:
    """
    Qubit local complementation as a local unitary: sqrt(-iX) on a and sqrt(iZ)
    on each neighbor of a, compared with the graph state of the complemented graph.
    """
    if g.d != 2:
        raise DimensionError(f"the local-unitary LC check is defined for d=2, got d={g.d}")
    state = build_graph_state(g, cap)
    state = apply_operator(state, principal_sqrt(-1j * x_matrix(2)), [a])
    root_z = principal_sqrt(1j * z_matrix(2))
    for b in g.neighbors(a):
        state = apply_operator(state, root_z, [b])
    target = build_graph_state(local_complement(g, a, 1), cap)
    return fidelity_up_to_phase(state.normalized(), target)
