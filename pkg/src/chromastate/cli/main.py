from __future__ import annotations

import os
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from pathlib import Path

import click

from chromastate import __version__
from chromastate.core.errors import ChromaStateError
from chromastate.core.pipeline import Pipeline
from chromastate.fixtures.loader import load_app_limits
from chromastate.models.config import AMP_CAP_ENV, AppConfig, resolve_amp_cap
from chromastate.models.report import RunReport
from chromastate.output.formatters import to_json
from chromastate.output.renderer import configure_logging, render_error

# Default fixtures directory: repo root's fixtures/ folder
_DEFAULT_FIXTURES_DIR = Path(__file__).parent.parent.parent.parent / "fixtures"


def _resolve_fixtures_dir(override: str | None) -> Path | None:
    if override:
        p = Path(override)
        if not p.is_dir():
            raise click.BadParameter(f"Fixtures directory does not exist: {p}")
        return p
    if _DEFAULT_FIXTURES_DIR.is_dir():
        return _DEFAULT_FIXTURES_DIR
    return None


@contextmanager
def command_errors() -> Iterator[None]:
    """Render library errors and exit with the code their class maps to."""
    try:
        yield
    except ChromaStateError as e:
        render_error(str(e))
        raise SystemExit(e.exit_code) from e


def emit(ctx: click.Context, report: RunReport, render: Callable[[RunReport], None]) -> None:
    if ctx.obj["format"] == "json":
        click.echo(to_json(report), nl=False)
    else:
        render(report)
    if report.exit_code:
        raise SystemExit(report.exit_code)


graph_argument = click.argument(
    "graph_file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
color_hint_option = click.option(
    "--color-hint/--no-color-hint",
    default=True,
    show_default=True,
    help="Use the file's color lines instead of the exact chromatic search",
)


@click.group()
@click.version_option(__version__, prog_name="chromastate")
@click.option(
    "--fixtures-dir",
    default=None,
    envvar="CHROMASTATE_FIXTURES_DIR",
    help="Path to fixtures/ directory (default: auto-detected)",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Output format",
)
@click.option(
    "--amp-cap",
    type=int,
    default=None,
    help=f"Maximum dense amplitudes d^n (default: ${AMP_CAP_ENV}, _limits.yaml, then 2^22)",
)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for search statistics")
@click.pass_context
def chromastate(
    ctx: click.Context,
    fixtures_dir: str | None,
    output_format: str,
    amp_cap: int | None,
    verbose: int,
) -> None:
    """chromastate: closed forms and checks for qudit graph states of colorable graphs."""
    ctx.ensure_object(dict)
    configure_logging(verbose)

    resolved = _resolve_fixtures_dir(fixtures_dir)
    config = AppConfig(fixtures_dir=str(resolved) if resolved else "")
    if resolved is not None:
        with command_errors():
            config.limits, config.tolerances = load_app_limits(resolved)
    if amp_cap is not None or AMP_CAP_ENV in os.environ:
        try:
            config.limits.amp_cap = resolve_amp_cap(amp_cap)
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint="--amp-cap") from e
        if config.limits.amp_cap < 1:
            raise click.BadParameter("must be positive", param_hint="--amp-cap")

    ctx.obj["fixtures_dir"] = resolved
    ctx.obj["format"] = output_format
    ctx.obj["config"] = config
    ctx.obj["pipeline"] = Pipeline(config)


# Import subcommands so click can register them
from chromastate.cli import (  # noqa: E402, F401
    bounds,
    closed_form,
    designs,
    fixtures,
    inspect,
    kuniform,
    lc,
    sweep,
    verify,
)
