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
from chromastate.core.coloring import detect_special_class
from chromastate.core.pipeline import (
    Pipeline,
    describe_coloring,
    describe_graph,
    describe_special,
    read_graph_input,
)
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_inspect


@chromastate.command("inspect")
@graph_argument
@color_hint_option
@click.pass_context
def inspect_command(ctx: click.Context, graph_file: Path, color_hint: bool) -> None:
    """Parse a graph file and report its coloring and special-class structure."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        source = read_graph_input(graph_file)
        g = source.graph
        c = pipeline.coloring(g, source.color_hint if color_hint else None)
        report = RunReport(
            command="inspect",
            arguments={"file": source.source, "color_hint": color_hint},
            input_digest=source.digest,
            results={
                "graph": describe_graph(g),
                "coloring": describe_coloring(c),
                "special": describe_special(detect_special_class(g, c)),
            },
        )
    emit(ctx, report, render_inspect)
