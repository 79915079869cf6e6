from __future__ import annotations

import dataclasses
import json
from collections.abc import Callable
from pathlib import Path

import pytest
from click.testing import CliRunner

from chromastate.cli.main import chromastate
from chromastate.core.closedform import ClosedForm
from chromastate.core.field import FieldMatrix
from chromastate.core.graph import WeightedGraph, format_graph, parse_graph
from chromastate.core.pipeline import Pipeline


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def six_cycle_file(
    write_graph: Callable[[str, str], Path], six_cycle: WeightedGraph
) -> Path:
    return write_graph(format_graph(six_cycle), "six_cycle.txt")


@pytest.fixture
def triangle_file(write_graph: Callable[[str, str], Path], triangle: WeightedGraph) -> Path:
    return write_graph(format_graph(triangle), "triangle.txt")


class TestInspect:
    def test_reports_coloring(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(chromastate, ["inspect", str(six_cycle_file)])
        assert result.exit_code == 0, result.output
        assert "chi 2" in result.output
        assert "special accepted" in result.output

    def test_self_loop_is_an_input_error(
        self, runner: CliRunner, write_graph: Callable[[str, str], Path]
    ) -> None:
        path = write_graph("dim 2\nvertices 2\nedge 0 1 1\nedge 1 1 1\n", "loop.txt")
        result = runner.invoke(chromastate, ["inspect", str(path)])
        assert result.exit_code == 2
        assert "line 4: self-loop on vertex 1" in result.output

    def test_improper_hint(
        self, runner: CliRunner, write_graph: Callable[[str, str], Path]
    ) -> None:
        path = write_graph("dim 2\nvertices 2\nedge 0 1 1\ncolor 0 0\ncolor 1 0\n", "bad.txt")
        assert runner.invoke(chromastate, ["inspect", str(path)]).exit_code == 2
        ignored = runner.invoke(chromastate, ["inspect", "--no-color-hint", str(path)])
        assert ignored.exit_code == 0


class TestClosedForm:
    def test_six_cycle_summation(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(chromastate, ["closed-form", str(six_cycle_file)])
        assert result.exit_code == 0, result.output
        assert "Σ |i1, i2, i3, i1+i2, i2+i3, i1+i3⟩" in result.output

    def test_triangle_is_not_special(self, runner: CliRunner, triangle_file: Path) -> None:
        result = runner.invoke(chromastate, ["closed-form", "--special", str(triangle_file)])
        assert result.exit_code == 2
        assert "special three-colorable class" in result.output

    def test_json_is_deterministic(self, runner: CliRunner, triangle_file: Path) -> None:
        args = ["--format", "json", "closed-form", str(triangle_file)]
        first = runner.invoke(chromastate, args)
        second = runner.invoke(chromastate, args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        payload = json.loads(first.stdout)
        assert payload["command"] == "closed-form"
        assert payload["results"]["form"]["summation"] == "Σ ω^(i1*i2) |i1, i2, i1+i2⟩"
        assert payload["status"] == "ok"


class TestVerify:
    def test_fidelity_one(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(chromastate, ["verify", str(six_cycle_file)])
        assert result.exit_code == 0, result.output
        assert "fidelity 1.000000000000" in result.output

    def test_other_dimension(self, runner: CliRunner, triangle_file: Path) -> None:
        result = runner.invoke(chromastate, ["verify", "--d-override", "5", str(triangle_file)])
        assert result.exit_code == 0, result.output
        assert "fidelity 1.000000000000" in result.output

    def test_composite_override(self, runner: CliRunner, triangle_file: Path) -> None:
        result = runner.invoke(chromastate, ["verify", "--d-override", "4", str(triangle_file)])
        assert result.exit_code == 2

    def test_corrupted_form_fails(
        self, runner: CliRunner, triangle_file: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        original = Pipeline.compile

        def corrupted(self: Pipeline, *args: object, **kwargs: object) -> ClosedForm:
            cf = original(self, *args, **kwargs)  # type: ignore[arg-type]
            assert isinstance(cf, ClosedForm)
            return dataclasses.replace(cf, phase=FieldMatrix.zeros(cf.m, cf.m, cf.dim))

        monkeypatch.setattr(Pipeline, "compile", corrupted)
        result = runner.invoke(chromastate, ["--format", "json", "verify", str(triangle_file)])
        assert result.exit_code == 1
        payload = json.loads(result.stdout)
        assert payload["status"] == "fail"
        assert payload["results"]["fidelity"] < 0.5

    def test_amplitude_cap_from_environment(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(
            chromastate, ["verify", str(six_cycle_file)], env={"CHROMASTATE_AMP_CAP": "10"}
        )
        assert result.exit_code == 3
        assert "exceeds cap 10" in result.output

    def test_amplitude_cap_flag(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(chromastate, ["--amp-cap", "32", "verify", str(six_cycle_file)])
        assert result.exit_code == 3


class TestDesignsAndBounds:
    def test_oa_header(self, runner: CliRunner, six_cycle_file: Path, tmp_path: Path) -> None:
        out = tmp_path / "six.oa"
        result = runner.invoke(
            chromastate, ["designs", "--qoa", "--oa-out", str(out), str(six_cycle_file)]
        )
        assert result.exit_code == 0, result.output
        assert "OA 8 6 2 2" in result.output
        assert "QOA r=8 n=6 d=2 k*=2" in result.output
        assert out.read_text(encoding="utf-8").splitlines()[0] == "OA 8 6 2 2"

    def test_bounds(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(chromastate, ["bounds", str(six_cycle_file)])
        assert result.exit_code == 0, result.output
        assert "term_lower 8" in result.output
        assert "upper 3" in result.output

    def test_kuniform_state(self, runner: CliRunner, six_cycle_file: Path) -> None:
        result = runner.invoke(
            chromastate, ["--format", "json", "kuniform", "--state", str(six_cycle_file)]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert payload["results"]["k_star"] == 2
        assert payload["results"]["a_ok"] is False


class TestLocalComplementation:
    def test_round_trip(
        self, runner: CliRunner, triangle_file: Path, triangle: WeightedGraph, tmp_path: Path
    ) -> None:
        once = tmp_path / "once.txt"
        twice = tmp_path / "twice.txt"
        first = runner.invoke(
            chromastate, ["lc", "--vertex", "0", "-o", str(once), str(triangle_file)]
        )
        assert first.exit_code == 0, first.output
        assert "lc fidelity 1.000000000000" in first.output
        assert parse_graph(once.read_text(encoding="utf-8")).edges() == [(0, 1, 1), (0, 2, 1)]
        second = runner.invoke(chromastate, ["lc", "--vertex", "0", "-o", str(twice), str(once)])
        assert second.exit_code == 0, second.output
        assert parse_graph(twice.read_text(encoding="utf-8")) == triangle

    def test_two_color_search(self, runner: CliRunner, triangle_file: Path) -> None:
        result = runner.invoke(chromastate, ["lc", "--to-two-color", str(triangle_file)])
        assert result.exit_code == 0, result.output
        assert "two-colorable after (0, 1)" in result.output

    def test_needs_an_action(self, runner: CliRunner, triangle_file: Path) -> None:
        result = runner.invoke(chromastate, ["lc", str(triangle_file)])
        assert result.exit_code == 2


class TestFixturesCommand:
    def test_list(self, runner: CliRunner) -> None:
        result = runner.invoke(chromastate, ["fixtures", "list"])
        assert result.exit_code == 0, result.output
        assert "special_example_1" in result.output

    def test_show_unknown(self, runner: CliRunner) -> None:
        result = runner.invoke(chromastate, ["fixtures", "show", "missing_fixture"])
        assert result.exit_code == 2

    def test_check(self, runner: CliRunner) -> None:
        result = runner.invoke(
            chromastate, ["--format", "json", "fixtures", "check", "triangle", "k2_bell"]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.stdout)
        assert [f["id"] for f in payload["results"]["fixtures"]] == ["triangle", "k2_bell"]
        assert all(f["passed"] for f in payload["results"]["fixtures"])

    def test_check_unknown_id(self, runner: CliRunner) -> None:
        result = runner.invoke(chromastate, ["fixtures", "check", "missing_fixture"])
        assert result.exit_code == 2


def test_sweep_small_catalog(runner: CliRunner) -> None:
    result = runner.invoke(chromastate, ["sweep", "--max-n", "4", "--dim", "3"])
    assert result.exit_code == 0, result.output
    assert "graphs 9" in result.output
