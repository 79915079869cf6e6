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
from chromastate.core.designs import (
    dual_distance,
    format_oa,
    generator_in_vertex_order,
    is_linear_code,
    oa_from_generator,
)
from chromastate.core.pipeline import Pipeline, read_graph_input
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_designs


@chromastate.command("designs")
@graph_argument
@color_hint_option
@click.option("--special", is_flag=True, default=False, help="Use the special-class form")
@click.option(
    "--oa-out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write the orthogonal array in 'OA r n d k' text format",
)
@click.option("--qoa", is_flag=True, default=False, help="Certify k-uniformity of the state")
@click.pass_context
def designs_command(
    ctx: click.Context,
    graph_file: Path,
    color_hint: bool,
    special: bool,
    oa_out: Path | None,
    qoa: bool,
) -> None:
    """Orthogonal array x.G of the closed form, optionally with a QOA certificate."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    limits = pipeline.config.limits
    with command_errors():
        source = read_graph_input(graph_file)
        g = source.graph
        c = pipeline.coloring(g, source.color_hint if color_hint else None)
        cf = pipeline.compile(g, c, special=special)
        oa = pipeline.orthogonal_array(cf)
        results: dict[str, object] = {
            "oa": {
                "header": oa.header(),
                "rows": oa.rows,
                "cols": oa.cols,
                "strength": oa.strength,
                "linear": is_linear_code(oa.table, oa.d),
                "dual_distance": dual_distance(
                    generator_in_vertex_order(cf), cap=limits.enumeration_cap
                ),
            },
        }
        if isinstance(cf, SpecialForm):
            outer = oa_from_generator(
                cf.outer_generator(),
                cap=limits.enumeration_cap,
                max_rows=limits.oa_max_rows,
                max_cols=limits.oa_max_cols,
            )
            results["outer_oa"] = outer.header()
        if oa_out is not None:
            try:
                oa_out.write_text(format_oa(oa), encoding="utf-8")
            except OSError as e:
                raise click.FileError(str(oa_out), hint=e.strerror) from e
            results["oa_file"] = str(oa_out)
        if qoa:
            certificate = pipeline.certify(cf, g)
            results["qoa"] = {
                "summary": certificate.summary,
                "r": certificate.r,
                "n": certificate.n,
                "d": certificate.d,
                "m": certificate.m,
                "k_star": certificate.k_star,
                "residual": certificate.residual,
            }
        report = RunReport(
            command="designs",
            arguments={
                "file": source.source,
                "color_hint": color_hint,
                "special": special,
                "oa_out": None if oa_out is None else str(oa_out),
                "qoa": qoa,
            },
            input_digest=source.digest,
            results=results,
        )
    emit(ctx, report, render_designs)
