from __future__ import annotations

from dataclasses import asdict

import click

from chromastate.cli.main import chromastate, command_errors, emit
from chromastate.core.catalog import connected_catalog, random_weighted_graphs, sweep
from chromastate.core.field import PrimeDimension
from chromastate.core.graph import WeightedGraph
from chromastate.core.pipeline import Pipeline
from chromastate.models.report import RunReport
from chromastate.output.renderer import render_sweep


@chromastate.command("sweep")
@click.option("--max-n", type=int, default=6, show_default=True, help="Largest vertex count")
@click.option("--min-n", type=int, default=2, show_default=True, help="Smallest vertex count")
@click.option("--dim", "d", type=int, default=2, show_default=True, help="Local dimension")
@click.option("--lc", is_flag=True, default=False, help="Also check every LC unitary (d = 2)")
@click.option(
    "--random",
    "random_count",
    type=int,
    default=0,
    help="Sweep this many random weighted graphs instead of the catalog",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for --random")
@click.option(
    "--special/--no-special",
    default=True,
    show_default=True,
    help="Also compile and verify special-class forms where detected",
)
@click.pass_context
def sweep_command(
    ctx: click.Context,
    max_n: int,
    min_n: int,
    d: int,
    lc: bool,
    random_count: int,
    seed: int,
    special: bool,
) -> None:
    """Compile and verify every connected small graph (or a random batch)."""
    pipeline: Pipeline = ctx.obj["pipeline"]
    with command_errors():
        dim = PrimeDimension(d)
        graphs: list[WeightedGraph]
        if random_count:
            graphs = random_weighted_graphs(random_count, dim, (min_n, max_n), seed=seed)
        else:
            try:
                graphs = list(connected_catalog(dim, max_n=max_n, min_n=min_n))
            except ValueError as e:
                raise click.BadParameter(str(e), param_hint="--max-n") from e
        result = sweep(
            graphs, lc=lc, special=special, cap=pipeline.cap, tolerance=pipeline.tolerance
        )
    report = RunReport(
        command="sweep",
        arguments={
            "max_n": max_n,
            "min_n": min_n,
            "dim": d,
            "lc": lc,
            "random": random_count,
            "seed": seed,
            "special": special,
        },
        status="ok" if result.passed else "fail",
        results={
            "count": result.count,
            "min_fidelity": round(result.min_fidelity, 12),
            "min_lc": None if result.min_lc is None else round(result.min_lc, 12),
            "failures": [asdict(e) for e in result.failures()],
        },
    )
    emit(ctx, report, render_sweep)
