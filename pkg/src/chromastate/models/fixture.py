from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

EXPECTED_KEYS = frozenset(
    {
        "chi",
        "class_sizes",
        "summation_contains",
        "phase",
        "delta",
        "factored_contains",
        "m",
        "k_star",
        "oa_header",
        "special",
        "two_colorable_lc",
    }
)


@dataclass(frozen=True)
class FixtureDef:
    id: str
    name: str
    description: str
    reference: str
    graph: str                # graph-file text, color hint included when the fixture needs one
    dims: tuple[int, ...]
    special: bool = False
    expected: dict[str, Any] = field(default_factory=dict)
    per_dim: dict[int, dict[str, Any]] = field(default_factory=dict)
    version: int = 1          # bump when the graph or an expectation changes

    def __post_init__(self) -> None:
        if not self.dims:
            raise ValueError(f"Fixture '{self.id}': dims must list at least one dimension")
        unknown = set(self.expected) - EXPECTED_KEYS
        for values in self.per_dim.values():
            unknown |= set(values) - EXPECTED_KEYS
        if unknown:
            raise ValueError(
                f"Fixture '{self.id}': unknown expectation keys {sorted(unknown)}. "
                f"Must be among {sorted(EXPECTED_KEYS)}"
            )
        stray = set(self.per_dim) - set(self.dims)
        if stray:
            raise ValueError(
                f"Fixture '{self.id}': per_dim names dimensions {sorted(stray)} not in dims"
            )

    def expectations(self, d: int) -> dict[str, Any]:
        """Shared expectations overlaid with the ones stored for this d."""
        merged = dict(self.expected)
        merged.update(self.per_dim.get(d, {}))
        return merged

    def fingerprint(self) -> str:
        """
        Stable signature of everything a fixture check depends on.

        Lets a stored check result be recognized as stale when the fixture
        changes without a version bump.
        """
        payload = {
            "id": self.id,
            "graph": self.graph,
            "dims": list(self.dims),
            "special": self.special,
            "expected": self.expected,
            "per_dim": {str(d): v for d, v in self.per_dim.items()},
            "version": self.version,
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
