from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from chromastate.core.closedform import (
    ClosedForm,
    SpecialForm,
    compile_chi_color,
    compile_special,
    delta_string,
    factored_string,
    ket_string,
    phase_string,
    summation_string,
    verify,
)
from chromastate.core.coloring import (
    Coloring,
    SpecialClassRejection,
    SpecialClassStructure,
    chromatic_coloring,
    detect_special_class,
)
from chromastate.core.designs import (
    OrthogonalArray,
    QoaCertificate,
    generator_in_vertex_order,
    oa_from_generator,
    qoa_certify,
)
from chromastate.core.entanglement import SchmidtBounds, schmidt_bounds
from chromastate.core.errors import InputError, StructureError
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import (
    GraphFile,
    WeightedGraph,
    find_two_colorable_lc,
    parse_graph_file,
)
from chromastate.models.config import AppConfig
from chromastate.models.fixture import FixtureDef

logger = logging.getLogger(__name__)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class GraphInput:
    source: str
    text: str
    graph: WeightedGraph
    color_hint: dict[int, int] | None = None

    @property
    def digest(self) -> str:
        return digest(self.text)


def read_graph_input(path: Path, d_override: int | None = None) -> GraphInput:
    """Read and parse a graph file; d_override re-reduces the weights mod another prime."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    parsed: GraphFile = parse_graph_file(text)
    graph = parsed.graph
    if d_override is not None:
        graph = graph.with_dimension(PrimeDimension(d_override))
    return GraphInput(source=str(path), text=text, graph=graph, color_hint=parsed.color_hint)


def describe_graph(g: WeightedGraph) -> dict[str, Any]:
    return {
        "n": g.n,
        "d": g.d,
        "edges": [list(e) for e in g.edges()],
        "connected": g.is_connected(),
    }


def describe_coloring(c: Coloring) -> dict[str, Any]:
    return {
        "chi": c.chi,
        "classes": [list(cls) for cls in c.classes],
        "class_sizes": list(c.sizes),
        "labels": list(c.labels()),
    }


def describe_special(detection: SpecialClassStructure | SpecialClassRejection) -> dict[str, Any]:
    if isinstance(detection, SpecialClassRejection):
        return {
            "accepted": False,
            "condition": detection.condition,
            "detail": detection.detail,
        }
    return {
        "accepted": True,
        "red": list(detection.red),
        "b_u": list(detection.b_u),
        "components": [
            {"greens": list(greens), "blues": list(blues)}
            for greens, blues in detection.components
        ],
    }


def describe_form(cf: ClosedForm | SpecialForm) -> dict[str, Any]:
    base = cf.base if isinstance(cf, SpecialForm) else cf
    out: dict[str, Any] = {
        "path": base.path,
        "chi": base.chi,
        "class_sizes": list(base.class_sizes),
        "m": base.m,
        "term_count": base.term_count,
        "vertex_order": list(base.vertex_order),
        "generator": base.generator.to_lists(),
        "phase_form": base.phase.to_lists(),
        "hadamard_targets": list(base.hadamard_targets),
        "ket": ket_string(cf),
        "phase": phase_string(cf),
        "summation": summation_string(cf),
    }
    if isinstance(cf, SpecialForm):
        out["special"] = {
            **describe_special(cf.structure),
            "delta": delta_string(cf),
            "factored": factored_string(cf),
            "outer_generator": cf.outer_generator().to_lists(),
            "inner_generators": [m.to_lists() for m in cf.inner_generators()],
        }
    return out


@dataclass
class DimensionCheck:
    d: int
    fidelity: float | None = None
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "fidelity": None if self.fidelity is None else round(self.fidelity, 12),
            "passed": self.passed,
            "mismatches": list(self.mismatches),
        }


@dataclass
class FixtureCheck:
    fixture_id: str
    fingerprint: str
    checks: list[DimensionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict[str, Any]:
        return {
            "id": self.fixture_id,
            "fingerprint": self.fingerprint,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def _expect(mismatches: list[str], key: str, expected: dict[str, Any], actual: Any) -> None:
    if key in expected and expected[key] != actual:
        mismatches.append(f"{key}: expected {expected[key]!r}, got {actual!r}")


class Pipeline:
    """Coloring, compilation and verification with the configured caps and tolerances."""

    def __init__(self, config: AppConfig) -> None:
        self.config = config

    @property
    def cap(self) -> int:
        return self.config.limits.amp_cap

    @property
    def tolerance(self) -> float:
        return self.config.tolerances.pipeline

    def coloring(self, g: WeightedGraph, hint: dict[int, int] | None = None) -> Coloring:
        return chromatic_coloring(g, hint, max_n=self.config.limits.chromatic_max_n)

    def compile(
        self, g: WeightedGraph, c: Coloring, special: bool = False
    ) -> ClosedForm | SpecialForm:
        if not special:
            return compile_chi_color(g, c)
        detection = detect_special_class(g, c)
        if isinstance(detection, SpecialClassRejection):
            raise StructureError(f"not in the special three-colorable class: {detection}")
        return compile_special(g, detection)

    def verify(self, cf: ClosedForm | SpecialForm, g: WeightedGraph, c: Coloring) -> float:
        if isinstance(cf, SpecialForm):
            return verify(cf, g, cap=self.cap)
        return verify(cf, g, c, cap=self.cap)

    def passes(self, fidelity: float) -> bool:
        return fidelity >= 1.0 - self.tolerance

    def orthogonal_array(self, cf: ClosedForm | SpecialForm) -> OrthogonalArray:
        limits = self.config.limits
        return oa_from_generator(
            generator_in_vertex_order(cf),
            cap=limits.enumeration_cap,
            max_rows=limits.oa_max_rows,
            max_cols=limits.oa_max_cols,
        )

    def certify(self, cf: ClosedForm | SpecialForm, g: WeightedGraph) -> QoaCertificate:
        return qoa_certify(cf, g, cap=self.cap, tol=self.tolerance)

    def bounds(self, g: WeightedGraph, c: Coloring) -> SchmidtBounds:
        return schmidt_bounds(g, c, oct_max_n=self.config.limits.oct_max_n)

    def check_fixture(self, fixture: FixtureDef) -> FixtureCheck:
        """Recompile a stored fixture at each of its dimensions and compare with expectations."""
        parsed = parse_graph_file(fixture.graph)
        result = FixtureCheck(fixture.id, fixture.fingerprint())
        for d in fixture.dims:
            check = DimensionCheck(d)
            result.checks.append(check)
            self._check_dimension(fixture, parsed, check)
            logger.info("fixture %s d=%d passed=%s", fixture.id, d, check.passed)
        return result

    def _check_dimension(
        self, fixture: FixtureDef, parsed: GraphFile, check: DimensionCheck
    ) -> None:
        expected = fixture.expectations(check.d)
        bad = check.mismatches
        g = parsed.graph.with_dimension(PrimeDimension(check.d))
        c = self.coloring(g, parsed.color_hint)
        _expect(bad, "chi", expected, c.chi)
        _expect(bad, "class_sizes", expected, list(c.sizes))
        if "special" in expected:
            detection = detect_special_class(g, c)
            _expect(bad, "special", expected, isinstance(detection, SpecialClassStructure))
        if "two_colorable_lc" in expected:
            steps = find_two_colorable_lc(g)
            found = None if steps is None else [list(step) for step in steps]
            _expect(bad, "two_colorable_lc", expected, found)

        try:
            cf = self.compile(g, c, special=fixture.special)
        except StructureError as e:
            bad.append(f"compile: {e}")
            return
        check.fidelity = self.verify(cf, g, c)
        if not self.passes(check.fidelity):
            bad.append(f"fidelity {check.fidelity:.12f} below 1 - {self.tolerance:g}")

        summation = summation_string(cf)
        for piece in expected.get("summation_contains", []):
            if piece not in summation:
                bad.append(f"summation_contains: {piece!r} not in {summation!r}")
        _expect(bad, "phase", expected, phase_string(cf))
        _expect(bad, "m", expected, cf.base.m if isinstance(cf, SpecialForm) else cf.m)
        if "delta" in expected or "factored_contains" in expected:
            if not isinstance(cf, SpecialForm):
                bad.append("delta: fixture expects a special form")
            else:
                _expect(bad, "delta", expected, delta_string(cf))
                factored = factored_string(cf)
                for piece in expected.get("factored_contains", []):
                    if piece not in factored:
                        bad.append(f"factored_contains: {piece!r} not in {factored!r}")
        if "k_star" in expected:
            _expect(bad, "k_star", expected, self.certify(cf, g).k_star)
        if "oa_header" in expected:
            _expect(bad, "oa_header", expected, self.orthogonal_array(cf).header())
