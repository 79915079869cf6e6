from __future__ import annotations

from pathlib import Path
from typing import Any

import click

from chromastate.cli.main import (
    chromastate,
    color_hint_option,
    command_errors,
    emit,
    graph_argument,
)
from chromastate.core.coloring import kuniform_adjacency_check
from chromastate.core.pipeline import Pipeline, read_graph_input
from chromastate.core.simulator import build_graph_state, k_uniformity
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_kuniform


@chromastate.command("kuniform")
@graph_argument
@color_hint_option
@click.option(
    "--state",
    is_flag=True,
    default=False,
    help="Also simulate the graph state and report its exact uniformity k*",
)
@click.pass_context
def kuniform_command(ctx: click.Context, graph_file: Path, color_hint: bool, state: bool) -> None:
    """All-minors conditions on the adjacency blocks behind k-uniform graph states."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        source = read_graph_input(graph_file)
        g = source.graph
        c = pipeline.coloring(g, source.color_hint if color_hint else None)
        check = kuniform_adjacency_check(g, c, max_dim=pipeline.config.limits.kuniform_max_dim)
        results: dict[str, Any] = {
            "a_shape": list(check.a_shape),
            "a_ok": check.a_ok,
            "b1_shape": None if check.b1_shape is None else list(check.b1_shape),
            "b1_ok": check.b1_ok,
        }
        if state:
            psi = build_graph_state(g, pipeline.cap)
            results["k_star"] = k_uniformity(psi, pipeline.tolerance, pipeline.cap)
        report = RunReport(
            command="kuniform",
            arguments={"file": source.source, "color_hint": color_hint, "state": state},
            input_digest=source.digest,
            results=results,
        )
    emit(ctx, report, render_kuniform)
