from __future__ import annotations


class ChromaStateError(Exception):
    """Base class for every error raised by chromastate."""

    exit_code = 1


class InputError(ChromaStateError):
    exit_code = 2


class GraphParseError(InputError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class TableParseError(GraphParseError):
    """Malformed orthogonal-array text."""


class DimensionError(InputError):
    pass


class ColoringError(InputError):
    pass


class ShapeError(InputError):
    pass


class FieldDomainError(InputError):
    pass


class StructureError(InputError):
    pass


class FixtureLoadError(InputError):
    pass


class CapExceededError(ChromaStateError):
    exit_code = 3

    def __init__(self, what: str, size: int, cap: int) -> None:
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap}")
