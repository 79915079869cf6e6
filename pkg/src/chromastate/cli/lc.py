from __future__ import annotations

from pathlib import Path
from typing import Any

import click

from chromastate.cli.main import chromastate, command_errors, emit, graph_argument
from chromastate.core.graph import find_two_colorable_lc, format_graph, local_complement
from chromastate.core.pipeline import Pipeline, read_graph_input
from chromastate.core.simulator import lc_unitary_check
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_lc


@chromastate.command("lc")
@graph_argument
@click.option("--vertex", type=int, default=None, help="Vertex to complement at (0-indexed)")
@click.option("--lambda", "lam", type=int, default=1, show_default=True, help="Weight multiplier")
@click.option(
    "-o",
    "--output",
    "output_file",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write the complemented graph here instead of printing it",
)
@click.option(
    "--to-two-color",
    is_flag=True,
    default=False,
    help="Search for local complementations that leave a two-colorable graph",
)
@click.option("--max-depth", type=int, default=2, show_default=True, help="Search depth")
@click.pass_context
def lc_command(
    ctx: click.Context,
    graph_file: Path,
    vertex: int | None,
    lam: int,
    output_file: Path | None,
    to_two_color: bool,
    max_depth: int,
) -> None:
    """Local complementation, checked against the local-Clifford unitary when d = 2."""
    if vertex is None and not to_two_color:
        raise click.UsageError("give --vertex, --to-two-color, or both")
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        source = read_graph_input(graph_file)
        g = source.graph
        results: dict[str, Any] = {}
        status = "ok"
        if to_two_color:
            steps = find_two_colorable_lc(g, max_depth)
            results["max_depth"] = max_depth
            results["sequence"] = None if steps is None else [list(step) for step in steps]
            if steps is None:
                status = "fail"
        if vertex is not None:
            complemented = local_complement(g, vertex, lam)
            results["vertex"] = vertex
            results["lambda"] = lam % g.d
            fidelity = None
            if g.d == 2:
                fidelity = lc_unitary_check(g, vertex, pipeline.cap)
                if not pipeline.passes(fidelity):
                    status = "fail"
            results["lc_fidelity"] = None if fidelity is None else round(fidelity, 12)
            text = format_graph(
                complemented,
                comments=[f"local complement at vertex {vertex}, lambda {lam % g.d}"],
            )
            if output_file is not None:
                try:
                    output_file.write_text(text, encoding="utf-8")
                except OSError as e:
                    raise click.FileError(str(output_file), hint=e.strerror) from e
                results["output_file"] = str(output_file)
            else:
                results["graph_text"] = text
        report = RunReport(
            command="lc",
            arguments={
                "file": source.source,
                "vertex": vertex,
                "lambda": lam,
                "output": None if output_file is None else str(output_file),
                "to_two_color": to_two_color,
                "max_depth": max_depth,
            },
            input_digest=source.digest,
            status=status,
            results=results,
        )
    emit(ctx, report, render_lc)
