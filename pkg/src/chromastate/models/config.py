from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

AMP_CAP_ENV = "CHROMASTATE_AMP_CAP"
DEFAULT_AMP_CAP = 1 << 22


@dataclass
class LimitConfig:
    amp_cap: int = DEFAULT_AMP_CAP            # d^n amplitudes per dense state
    enumeration_cap: int = DEFAULT_AMP_CAP    # d^L assignments per expansion
    chromatic_max_n: int = 24                 # exact coloring refused above this
    oct_max_n: int = 20
    kuniform_max_dim: int = 6                 # min(rows, cols) for the all-minors check
    oa_max_rows: int = 1 << 20
    oa_max_cols: int = 16
    equivalence_max_cols: int = 8
    equivalence_max_rows: int = 256
    max_dim: int = 97

    def validate(self) -> None:
        for name, value in self.as_dict().items():
            if value < 1:
                raise ValueError(f"Limit '{name}' must be positive, got {value}")
        if self.max_dim < 2:
            raise ValueError(f"max_dim must be at least 2, got {self.max_dim}")

    def as_dict(self) -> dict[str, int]:
        return {
            "amp_cap": self.amp_cap,
            "enumeration_cap": self.enumeration_cap,
            "chromatic_max_n": self.chromatic_max_n,
            "oct_max_n": self.oct_max_n,
            "kuniform_max_dim": self.kuniform_max_dim,
            "oa_max_rows": self.oa_max_rows,
            "oa_max_cols": self.oa_max_cols,
            "equivalence_max_cols": self.equivalence_max_cols,
            "equivalence_max_rows": self.equivalence_max_rows,
            "max_dim": self.max_dim,
        }


@dataclass
class ToleranceConfig:
    exact: float = 1e-12       # operator identities
    pipeline: float = 1e-9     # composed pipelines, fidelity contracts
    hermitian: float = 1e-10

    def validate(self) -> None:
        for name in ("exact", "pipeline", "hermitian"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"Tolerance '{name}' must be in (0, 1), got {value}")

    def as_dict(self) -> dict[str, float]:
        return {"exact": self.exact, "pipeline": self.pipeline, "hermitian": self.hermitian}


@dataclass
class AppConfig:
    fixtures_dir: str
    limits: LimitConfig = field(default_factory=LimitConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)


def resolve_amp_cap(cap: int | None = None) -> int:
    """Explicit cap wins, then $CHROMASTATE_AMP_CAP, then 2**22."""
    if cap is not None:
        return cap
    raw = os.environ.get(AMP_CAP_ENV)
    if raw is None:
        return DEFAULT_AMP_CAP
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{AMP_CAP_ENV} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ValueError(f"{AMP_CAP_ENV} must be positive, got {value}")
    logger.debug("amplitude cap from %s: %d", AMP_CAP_ENV, value)
    return value
