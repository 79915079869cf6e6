from __future__ import annotations

import json
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from chromastate import __version__

SCHEMA_VERSION = 1

Status = Literal["ok", "fail", "error"]


class RunReport(BaseModel):
    """One command's structured outcome; the JSON form is byte-stable for identical inputs."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__
    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    input_digest: str | None = None
    status: Status = "ok"
    results: dict[str, Any] = Field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1

    def to_json(self, indent: int = 2) -> str:
        payload = self.model_dump(mode="json")
        return json.dumps(payload, indent=indent, sort_keys=True, ensure_ascii=False) + "\n"
