from __future__ import annotations

import click

from chromastate.cli.main import chromastate, command_errors, emit
from chromastate.core.pipeline import Pipeline
from chromastate.fixtures.loader import load_fixtures
from chromastate.fixtures.registry import FixtureRegistry
from chromastate.models.report import RunReport
from chromastate.output.formatters import to_json
from chromastate.output.renderer import (
    render_error,
    render_fixture,
    render_fixture_checks,
    render_fixture_list,
)


@chromastate.group()
@click.pass_context
def fixtures(ctx: click.Context) -> None:
    """List, show and re-check the stored worked examples."""
    fixtures_dir = ctx.obj["fixtures_dir"]
    if fixtures_dir is None:
        raise click.UsageError(
            "Could not find the fixtures/ directory. "
            "Use --fixtures-dir to specify its location."
        )
    with command_errors():
        ctx.obj["registry"] = FixtureRegistry(load_fixtures(fixtures_dir))


@fixtures.command("list")
@click.pass_context
def list_fixtures(ctx: click.Context) -> None:
    """List all loaded fixtures."""
    registry: FixtureRegistry = ctx.obj["registry"]
    if ctx.obj["format"] == "json":
        report = RunReport(
            command="fixtures list",
            results={
                "fixtures": [
                    {"id": f.id, "name": f.name, "dims": list(f.dims), "version": f.version}
                    for f in registry.all_fixtures()
                ]
            },
        )
        click.echo(to_json(report), nl=False)
        return
    render_fixture_list(registry.all_fixtures())


@fixtures.command("show")
@click.argument("fixture_id")
@click.pass_context
def show_fixture(ctx: click.Context, fixture_id: str) -> None:
    """Show one fixture's graph and stored expectations."""
    registry: FixtureRegistry = ctx.obj["registry"]
    fixture = registry.get_fixture(fixture_id)
    if fixture is None:
        render_error(f"Fixture '{fixture_id}' not found")
        raise SystemExit(2)
    if ctx.obj["format"] == "json":
        report = RunReport(
            command="fixtures show",
            arguments={"id": fixture_id},
            results={
                "id": fixture.id,
                "name": fixture.name,
                "description": fixture.description,
                "reference": fixture.reference,
                "graph": fixture.graph,
                "dims": list(fixture.dims),
                "special": fixture.special,
                "expected": {str(d): fixture.expectations(d) for d in fixture.dims},
                "fingerprint": fixture.fingerprint(),
            },
        )
        click.echo(to_json(report), nl=False)
        return
    render_fixture(fixture)


@fixtures.command("check")
@click.argument("fixture_ids", nargs=-1)
@click.pass_context
def check_fixtures(ctx: click.Context, fixture_ids: tuple[str, ...]) -> None:
    """Recompile fixtures (all by default) and compare with their expectations."""
    registry: FixtureRegistry = ctx.obj["registry"]
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        selected = registry.select(list(fixture_ids))
        checks = [pipeline.check_fixture(f) for f in selected]
    report = RunReport(
        command="fixtures check",
        arguments={"ids": list(fixture_ids)},
        status="ok" if all(c.passed for c in checks) else "fail",
        results={"fixtures": [c.as_dict() for c in checks]},
    )
    emit(ctx, report, render_fixture_checks)
