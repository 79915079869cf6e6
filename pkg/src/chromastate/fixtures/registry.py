from __future__ import annotations

from chromastate.core.errors import FixtureLoadError
from chromastate.models.fixture import FixtureDef


class FixtureRegistry:
    def __init__(self, fixtures: list[FixtureDef]) -> None:
        self._fixtures: dict[str, FixtureDef] = {}
        for fixture in fixtures:
            if fixture.id in self._fixtures:
                raise FixtureLoadError(f"duplicate fixture id '{fixture.id}'")
            self._fixtures[fixture.id] = fixture

    def all_fixtures(self) -> list[FixtureDef]:
        return sorted(self._fixtures.values(), key=lambda f: f.id)

    def get_fixture(self, fixture_id: str) -> FixtureDef | None:
        return self._fixtures.get(fixture_id)

    def select(self, ids: list[str]) -> list[FixtureDef]:
        """Fixtures by id in the given order; every id must exist. No ids means all."""
        if not ids:
            return self.all_fixtures()
        missing = [i for i in ids if i not in self._fixtures]
        if missing:
            available = ", ".join(sorted(self._fixtures)) or "none"
            raise FixtureLoadError(
                f"unknown fixture id(s) {', '.join(missing)}. Available: {available}"
            )
        return [self._fixtures[i] for i in ids]
