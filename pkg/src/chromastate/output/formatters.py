from __future__ import annotations

from chromastate.models.report import RunReport


def to_json(report: RunReport, indent: int = 2) -> str:
    return report.to_json(indent=indent)
