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
from chromastate.core.pipeline import (
    Pipeline,
    describe_coloring,
    describe_form,
    describe_graph,
    read_graph_input,
)
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_closed_form


@chromastate.command("closed-form")
@graph_argument
@color_hint_option
@click.option(
    "--special",
    is_flag=True,
    default=False,
    help="Compile the factored outer x Delta x inner form (special three-colorable class)",
)
@click.pass_context
def closed_form_command(
    ctx: click.Context, graph_file: Path, color_hint: bool, special: bool
) -> None:
    """Compile a graph into its (G, Q) closed form and print the summation."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        source = read_graph_input(graph_file)
        g = source.graph
        c = pipeline.coloring(g, source.color_hint if color_hint else None)
        cf = pipeline.compile(g, c, special=special)
        report = RunReport(
            command="closed-form",
            arguments={"file": source.source, "color_hint": color_hint, "special": special},
            input_digest=source.digest,
            results={
                "graph": describe_graph(g),
                "coloring": describe_coloring(c),
                "form": describe_form(cf),
            },
        )
    emit(ctx, report, render_closed_form)
