"""
Closed forms of colorable graph states.

A ClosedForm is the pair (G, Q) over F_d: free indices w range over F_d^m, the
ket of a term is w.G (columns laid out in vertex_order) and its phase is
omega^{sum_{a<b} Q_ab w_a w_b}. Every compiler path lands in this one normal
form; the special-class path also keeps its factored outer x Delta x inner
presentation for display and for an independent expansion.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from chromastate.core.coloring import (
    Coloring,
    SpecialClassStructure,
    validate_coloring,
)
from chromastate.core.errors import ColoringError, ShapeError, StructureError
from chromastate.core.field import (
    FieldMatrix,
    FieldVector,
    PrimeDimension,
    enumerate_array,
    roots_of_unity,
)
from chromastate.core.graph import WeightedGraph
from chromastate.core.simulator import (
    StateVector,
    apply_hdag,
    build_graph_state,
    check_amplitude_cap,
    fidelity_up_to_phase,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosedForm:
    n: int
    dim: PrimeDimension
    m: int
    vertex_order: tuple[int, ...]
    generator: FieldMatrix
    phase: FieldMatrix
    hadamard_targets: tuple[int, ...]
    chi: int
    class_sizes: tuple[int, ...]
    path: str = "chi_color"

    def __post_init__(self) -> None:
        if sorted(self.vertex_order) != list(range(self.n)):
            raise ShapeError("vertex_order must be a permutation of the vertices")
        if self.generator.shape != (self.m, self.n):
            raise ShapeError(f"generator must be {self.m}x{self.n}, got {self.generator.shape}")
        if self.phase.shape != (self.m, self.m):
            raise ShapeError(f"phase form must be {self.m}x{self.m}, got {self.phase.shape}")
        g = self.generator.to_array()
        if self.m and not np.array_equal(g[:, : self.m], np.eye(self.m, dtype=np.int64)):
            raise ShapeError("generator must start with an identity block on the free indices")
        if np.any(np.tril(self.phase.to_array())):
            raise ShapeError("phase form must be strictly upper triangular")
        if set(self.hadamard_targets) & set(self.free_vertices):
            raise ShapeError("free-index vertices cannot be Hadamard targets")

    @property
    def d(self) -> int:
        return self.dim.d

    @property
    def free_vertices(self) -> tuple[int, ...]:
        return self.vertex_order[: self.m]

    @property
    def dependent_vertices(self) -> tuple[int, ...]:
        return self.vertex_order[self.m:]

    @property
    def term_count(self) -> int:
        return self.d ** self.m

    def column_of(self, vertex: int) -> int:
        return self.vertex_order.index(vertex)

    def ket(self, w: Sequence[int]) -> tuple[int, ...]:
        """Basis ket, in original vertex labels, of the term with free indices w."""
        values = np.mod(np.asarray(w, dtype=np.int64) @ self.generator.to_array(), self.d)
        ket = [0] * self.n
        for column, vertex in enumerate(self.vertex_order):
            ket[vertex] = int(values[column])
        return tuple(ket)

    def phase_exponent(self, w: Sequence[int]) -> int:
        arr = np.asarray(w, dtype=np.int64)
        return int(arr @ self.phase.to_array() @ arr) % self.d


@dataclass(frozen=True)
class ComponentDelta:
    """One B_c component: greens take Z^{f_g(u)}, remaining blues take X^{f_b(u)}."""

    greens: tuple[int, ...]
    blues: tuple[int, ...]
    f_green: tuple[FieldVector, ...]
    f_blue: tuple[FieldVector, ...]
    inner_generator: FieldMatrix


@dataclass(frozen=True)
class SpecialForm:
    base: ClosedForm
    structure: SpecialClassStructure
    outer: FieldMatrix
    components: tuple[ComponentDelta, ...] = field(default=())

    @property
    def red(self) -> tuple[int, ...]:
        return self.structure.red

    def outer_generator(self) -> FieldMatrix:
        """[I_{n_R} | A_{R,B_u}] over columns red then B_u."""
        return self.outer

    def inner_generators(self) -> tuple[FieldMatrix, ...]:
        return tuple(c.inner_generator for c in self.components)

    def delta_exponents(self, u: Sequence[int]) -> dict[int, tuple[str, int]]:
        """vertex -> ("Z" | "X", exponent) for the Delta layer at red assignment u."""
        d = self.base.d
        u_arr = np.asarray(u, dtype=np.int64)
        out: dict[int, tuple[str, int]] = {}
        for comp in self.components:
            for vertex, f in zip(comp.greens, comp.f_green):
                out[vertex] = ("Z", int(u_arr @ f.to_array()) % d)
            for vertex, f in zip(comp.blues, comp.f_blue):
                out[vertex] = ("X", int(u_arr @ f.to_array()) % d)
        return out


def compile_two_color(g: WeightedGraph, c: Coloring) -> ClosedForm:
    """Sum over red assignments i of |i, i.A_RB>, no phases."""
    validate_coloring(g, c)
    if c.chi != 2:
        raise ColoringError(f"two-color compilation needs chi=2, coloring has chi={c.chi}")
    red, blue = c.classes
    dim = g.dim
    a_rb = g.gamma.submatrix(red, blue)
    generator = FieldMatrix.identity(len(red), dim).hstack(a_rb)
    return ClosedForm(
        n=g.n,
        dim=dim,
        m=len(red),
        vertex_order=red + blue,
        generator=generator,
        phase=FieldMatrix.zeros(len(red), len(red), dim),
        hadamard_targets=blue,
        chi=2,
        class_sizes=c.sizes,
        path="two_color",
    )


def compile_chi_color(g: WeightedGraph, c: Coloring) -> ClosedForm:
    """
    General chi-color form: free indices on c_1..c_{chi-1}, the last class
    carries linear combinations of them, and every cross-class edge among the
    free classes contributes its weight to the phase form.
    """
    validate_coloring(g, c)
    if c.chi == 2:
        return compile_two_color(g, c)
    dim = g.dim
    free = c.free_vertices
    last = c.last
    m = len(free)
    generator = FieldMatrix.identity(m, dim).hstack(g.gamma.submatrix(free, last))
    q = np.triu(g.gamma.submatrix(free, free).to_array(), k=1)
    cf = ClosedForm(
        n=g.n,
        dim=dim,
        m=m,
        vertex_order=free + last,
        generator=generator,
        phase=FieldMatrix.from_array(q.reshape(m, m), dim),
        hadamard_targets=last,
        chi=c.chi,
        class_sizes=c.sizes,
        path="chi_color",
    )
    logger.info("compiled chi=%d form: m=%d, %d terms", c.chi, m, cf.term_count)
    return cf


def _check_structure(g: WeightedGraph, s: SpecialClassStructure) -> None:
    parts = list(s.red) + list(s.b_u) + list(s.greens) + list(s.b_c_blues)
    if sorted(parts) != list(range(g.n)):
        raise StructureError("red, B_u and B_c components must partition the vertices")
    red = set(s.red)
    component_of: dict[int, tuple[int, str]] = {}
    for k, (greens, blues) in enumerate(s.components):
        component_of.update({v: (k, "G") for v in greens})
        component_of.update({v: (k, "B") for v in blues})
    for u, v, _ in g.edges():
        if (u in red) != (v in red):
            continue
        cu, cv = component_of.get(u), component_of.get(v)
        if cu and cv and cu[0] == cv[0] and cu[1] != cv[1]:
            continue
        raise StructureError(f"edge {u}-{v} is not allowed by the special-class block pattern")
    if len(s.red) > len(s.b_u):
        raise StructureError(f"n_R={len(s.red)} exceeds n_B_u={len(s.b_u)}")
    for k, (greens, blues) in enumerate(s.components):
        if len(greens) > len(blues):
            raise StructureError(
                f"component {k + 1}: n_G={len(greens)} exceeds n_B_c\\G={len(blues)}"
            )


def compile_special(g: WeightedGraph, structure: SpecialClassStructure) -> SpecialForm:
    """
    Special three-colorable form. Hadamard daggers act on B_u and on the blues of
    every B_c component; red and green indices stay free. The base form orders
    free indices red then green, and the dependents B_u then the B_c blues.
    """
    _check_structure(g, structure)
    dim = g.dim
    red, greens = structure.red, structure.greens
    blues = structure.b_u + structure.b_c_blues
    free = red + greens
    m = len(free)

    generator = FieldMatrix.identity(m, dim).hstack(g.gamma.submatrix(free, blues))
    q = np.zeros((m, m), dtype=np.int64)
    q[: len(red), len(red):] = g.gamma.submatrix(red, greens).to_array()
    chi = 3 if greens else 2
    sizes = tuple(sorted((len(red), len(greens), len(blues)) if greens else (len(red), len(blues))))
    base = ClosedForm(
        n=g.n,
        dim=dim,
        m=m,
        vertex_order=free + blues,
        generator=generator,
        phase=FieldMatrix.from_array(q, dim),
        hadamard_targets=tuple(sorted(blues)),
        chi=chi,
        class_sizes=sizes,
        path="special",
    )

    outer = FieldMatrix.identity(len(red), dim).hstack(g.gamma.submatrix(red, structure.b_u))
    components = []
    for comp_greens, comp_blues in structure.components:
        coupling_g = g.gamma.submatrix(red, comp_greens).transpose()
        coupling_b = g.gamma.submatrix(red, comp_blues).transpose()
        components.append(
            ComponentDelta(
                greens=comp_greens,
                blues=comp_blues,
                f_green=tuple(FieldVector.of(row, dim) for row in coupling_g.to_lists()),
                f_blue=tuple(FieldVector.of(row, dim) for row in coupling_b.to_lists()),
                inner_generator=FieldMatrix.identity(len(comp_greens), dim).hstack(
                    g.gamma.submatrix(comp_greens, comp_blues)
                ),
            )
        )
    logger.info("compiled special form: n_R=%d, s=%d", len(red), len(components))
    return SpecialForm(base=base, structure=structure, outer=outer, components=tuple(components))


def _as_base(cf: ClosedForm | SpecialForm) -> ClosedForm:
    return cf.base if isinstance(cf, SpecialForm) else cf


def expand(cf: ClosedForm | SpecialForm, cap: int | None = None) -> StateVector:
    """Normalized d^{-m/2} sum_w omega^{w.Q.w} |w.G>, in simulator index order."""
    base = _as_base(cf)
    d = base.d
    check_amplitude_cap(base.n, base.dim, cap)
    w = enumerate_array(base.m, base.dim, cap)
    kets = np.mod(w @ base.generator.to_array(), d)
    exponents = np.mod(np.einsum("ra,ab,rb->r", w, base.phase.to_array(), w), d)

    weights = d ** (base.n - 1 - np.asarray(base.vertex_order, dtype=np.int64))
    index = kets @ weights if base.n else np.zeros(len(w), dtype=np.int64)
    amps = np.zeros(d ** base.n, dtype=np.complex128)
    np.add.at(amps, index, roots_of_unity(d)[exponents] * d ** (-base.m / 2))
    logger.debug("expanded %d terms into %d amplitudes", len(w), amps.size)
    return StateVector(base.n, base.dim, amps)


def expand_factored(sf: SpecialForm, cap: int | None = None) -> StateVector:
    """
    Expand outer terms x Delta x inner terms directly: for every red assignment u,
    apply Delta(u) to each component's inner sum and place the product next to the
    outer ket |u, u.A_{R,B_u}>.
    """
    base = sf.base
    d, n = base.d, base.n
    check_amplitude_cap(n, base.dim, cap)
    omega = roots_of_unity(d)
    tensor = np.zeros((d,) * n, dtype=np.complex128)
    outer_vertices = sf.red + sf.structure.b_u
    comp_vertices = [v for comp in sf.components for v in comp.greens + comp.blues]
    axis_order = np.argsort(comp_vertices) if comp_vertices else np.array([], dtype=np.int64)

    inner_terms = []
    for comp in sf.components:
        g_rows = enumerate_array(len(comp.greens), base.dim, cap)
        blue_vals = np.mod(g_rows @ comp.inner_generator.to_array()[:, len(comp.greens):], d)
        inner_terms.append((g_rows, blue_vals))

    for u in enumerate_array(len(sf.red), base.dim, cap):
        outer_ket = np.concatenate([u, np.mod(u @ sf.outer.to_array()[:, len(sf.red):], d)])
        product = np.ones((), dtype=np.complex128)
        for comp, (g_rows, blue_vals) in zip(sf.components, inner_terms):
            f_g = np.array([f.to_array() @ u for f in comp.f_green], dtype=np.int64) % d
            f_b = np.array([f.to_array() @ u for f in comp.f_blue], dtype=np.int64) % d
            local = np.zeros((d,) * (len(comp.greens) + len(comp.blues)), dtype=np.complex128)
            for g_row, b_row in zip(g_rows, blue_vals):
                phase = omega[int(g_row @ f_g) % d]
                local[tuple(g_row) + tuple(np.mod(b_row + f_b, d))] += phase
            product = np.multiply.outer(product, local)
        index: list[int | slice] = [slice(None)] * n
        for vertex, value in zip(outer_vertices, outer_ket):
            index[vertex] = int(value)
        tensor[tuple(index)] += np.transpose(product, axis_order) if comp_vertices else product
    amps = tensor.reshape(-1) * d ** (-base.m / 2)
    return StateVector(n, base.dim, amps)


def target_state(
    cf: ClosedForm | SpecialForm, g: WeightedGraph, cap: int | None = None
) -> StateVector:
    """Graph state with Hadamard daggers on the form's target vertices."""
    base = _as_base(cf)
    return apply_hdag(build_graph_state(g, cap), base.hadamard_targets)


def verify(
    cf: ClosedForm | SpecialForm,
    g: WeightedGraph,
    c: Coloring | None = None,
    cap: int | None = None,
) -> float:
    base = _as_base(cf)
    if base.n != g.n or base.dim != g.dim:
        raise ShapeError(f"form has n={base.n}, d={base.d}; graph has n={g.n}, d={g.d}")
    if c is not None:
        validate_coloring(g, c)
        if base.path != "special" and base.hadamard_targets != c.last:
            raise ShapeError("form's Hadamard targets are not the coloring's last class")
    expanded = expand(cf, cap).normalized()
    fidelity = fidelity_up_to_phase(expanded, target_state(cf, g, cap).normalized())
    logger.info("verified %s form: fidelity %.12f", base.path, fidelity)
    return fidelity


def index_name(vertex: int) -> str:
    return f"i{vertex + 1}"


def linear_string(coefficients: Mapping[int, int]) -> str:
    """'i1+2*i3' from {0: 1, 2: 2}; '0' when every coefficient vanishes."""
    terms = [
        index_name(v) if w == 1 else f"{w}*{index_name(v)}"
        for v, w in sorted(coefficients.items())
        if w
    ]
    return "+".join(terms) if terms else "0"


def ket_string(cf: ClosedForm | SpecialForm) -> str:
    base = _as_base(cf)
    gen = base.generator.to_array()
    entries = []
    for vertex in range(base.n):
        column = base.column_of(vertex)
        coefficients = {base.free_vertices[a]: int(gen[a, column]) for a in range(base.m)}
        entries.append(linear_string(coefficients))
    return "|" + ", ".join(entries) + "⟩"


def phase_string(cf: ClosedForm | SpecialForm) -> str:
    base = _as_base(cf)
    q = base.phase.to_array()
    terms = []
    for a in range(base.m):
        for b in range(base.m):
            if q[a, b]:
                x, y = sorted((base.free_vertices[a], base.free_vertices[b]))
                prefix = "" if q[a, b] == 1 else f"{q[a, b]}*"
                terms.append(((x, y), f"{prefix}{index_name(x)}*{index_name(y)}"))
    return " + ".join(text for _, text in sorted(terms))


def summation_string(cf: ClosedForm | SpecialForm) -> str:
    phase = phase_string(cf)
    prefix = f"Σ ω^({phase}) " if phase else "Σ "
    return prefix + ket_string(cf)


def delta_string(sf: SpecialForm) -> str:
    """Delta layer per component, vertices ascending, components joined by ' ⊗ '."""
    parts = []
    for comp in sf.components:
        ops: list[tuple[int, str]] = []
        layers = (("Z", comp.greens, comp.f_green), ("X", comp.blues, comp.f_blue))
        for kind, vertices, forms in layers:
            for vertex, f in zip(vertices, forms):
                exponent = linear_string(dict(zip(sf.red, f.entries)))
                ops.append((vertex, f"{kind}^({exponent})"))
        parts.append(" ".join(text for _, text in sorted(ops)))
    return " ⊗ ".join(parts)


def _sum_string(free: Sequence[int], dependents: Sequence[int], block: FieldMatrix) -> str:
    arr = block.to_array()
    entries = [(v, index_name(v)) for v in free]
    for column, vertex in enumerate(dependents):
        coefficients = {u: int(arr[r, column]) for r, u in enumerate(free)}
        entries.append((vertex, linear_string(coefficients)))
    return "Σ |" + ", ".join(text for _, text in sorted(entries)) + "⟩"


def factored_string(sf: SpecialForm) -> str:
    """Outer sum, Delta layer in brackets, then one inner sum per component."""
    n_red = len(sf.red)
    outer_block = sf.outer.submatrix(range(n_red), range(n_red, sf.outer.cols))
    parts = [_sum_string(sf.red, sf.structure.b_u, outer_block)]
    delta = delta_string(sf)
    if delta:
        parts.append(f"[{delta}]")
    for comp in sf.components:
        k = len(comp.greens)
        inner = comp.inner_generator
        inner_block = inner.submatrix(range(k), range(k, inner.cols))
        parts.append(_sum_string(comp.greens, comp.blues, inner_block))
    return " ".join(parts)
