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
from chromastate.core.entanglement import term_count
from chromastate.core.pipeline import Pipeline, describe_coloring, read_graph_input
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_bounds


@chromastate.command("bounds")
@graph_argument
@color_hint_option
@click.pass_context
def bounds_command(ctx: click.Context, graph_file: Path, color_hint: bool) -> None:
    """Schmidt-measure and term-count bounds from rank and color-class sizes."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        source = read_graph_input(graph_file)
        g = source.graph
        c = pipeline.coloring(g, source.color_hint if color_hint else None)
        bounds = pipeline.bounds(g, c)
        terms = term_count(pipeline.compile(g, c), bounds)
        report = RunReport(
            command="bounds",
            arguments={"file": source.source, "color_hint": color_hint},
            input_digest=source.digest,
            results={
                "coloring": describe_coloring(c),
                "bounds": bounds.as_dict(),
                "term_count": terms.count,
                "m": terms.m,
                "meets_lower": terms.meets_lower,
            },
        )
    emit(ctx, report, render_bounds)
