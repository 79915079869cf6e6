from __future__ import annotations

from pathlib import Path

import click

from chromastate.cli.main import (
    chromastate,
    color_hint_option,
    command_errors,
    emit,
    graph_argument,
)
from chromastate.core.closedform import SpecialForm
from chromastate.core.pipeline import Pipeline, read_graph_input
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_verify


@chromastate.command("verify")
@graph_argument
@color_hint_option
@click.option("--special", is_flag=True, default=False, help="Verify the special-class form")
@click.option(
    "--d-override",
    type=int,
    default=None,
    help="Re-read the edge weights modulo this prime instead of the file's dim",
)
@click.pass_context
def verify_command(
    ctx: click.Context,
    graph_file: Path,
    color_hint: bool,
    special: bool,
    d_override: int | None,
) -> None:
    """Expand the compiled form and compare it with the simulated graph state."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        source = read_graph_input(graph_file, d_override)
        g = source.graph
        c = pipeline.coloring(g, source.color_hint if color_hint else None)
        cf = pipeline.compile(g, c, special=special)
        fidelity = pipeline.verify(cf, g, c)
        base = cf.base if isinstance(cf, SpecialForm) else cf
        report = RunReport(
            command="verify",
            arguments={
                "file": source.source,
                "color_hint": color_hint,
                "special": special,
                "d_override": d_override,
            },
            input_digest=source.digest,
            status="ok" if pipeline.passes(fidelity) else "fail",
            results={
                "d": g.d,
                "path": base.path,
                "term_count": base.term_count,
                "fidelity": round(fidelity, 12),
                "tolerance": pipeline.tolerance,
            },
        )
    emit(ctx, report, render_verify)
