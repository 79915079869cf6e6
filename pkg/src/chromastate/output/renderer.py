from __future__ import annotations

import logging
from collections.abc import Iterable
from typing import Any

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table
from rich.text import Text

from chromastate.models.fixture import FixtureDef
from chromastate.models.report import RunReport

# Reports go to stdout; logs and errors to stderr so stdout stays deterministic.
console = Console(soft_wrap=True, highlight=False)
err_console = Console(stderr=True, highlight=False, soft_wrap=True)

_STATUS_STYLES = {"ok": "bold green", "fail": "bold red", "error": "bold red"}


def configure_logging(verbosity: int = 0) -> None:
    """WARNING by default, -v for INFO, -vv for DEBUG; always on stderr."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handler = RichHandler(console=err_console, show_path=False, show_time=verbosity > 1)
    root = logging.getLogger("chromastate")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False


def _line(key: str, value: Any) -> None:
    console.print(f"[bold]{key}[/bold] {escape(_fmt(value))}")


def _fmt(value: Any) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12f}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _header(report: RunReport) -> None:
    source = report.arguments.get("file")
    console.print()
    if source:
        digest = report.input_digest or ""
        console.print(f"[bold]Source:[/bold] {escape(str(source))}  [dim]{digest}[/dim]")


def _status(report: RunReport) -> None:
    style = _STATUS_STYLES.get(report.status, "white")
    console.print(Text(f"status {report.status}", style=style))


def _matrix(rows: list[list[int]]) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in rows) if rows else "(empty)"


def _render_graph(results: dict[str, Any]) -> None:
    graph = results["graph"]
    _line("n", graph["n"])
    _line("d", graph["d"])
    edges = " ".join(f"{u}-{v}:{w}" for u, v, w in graph["edges"])
    _line("edges", edges or "(none)")


def _render_coloring(coloring: dict[str, Any]) -> None:
    _line("chi", coloring["chi"])
    table = Table(show_header=True, header_style="bold dim", box=None, padding=(0, 1))
    table.add_column("Class", style="dim", width=6)
    table.add_column("Label", width=6)
    table.add_column("Size", justify="right", width=5)
    table.add_column("Vertices")
    for index, (members, label) in enumerate(zip(coloring["classes"], coloring["labels"]), 1):
        table.add_row(f"c{index}", label, str(len(members)), " ".join(str(v) for v in members))
    console.print(table)


def _render_special(special: dict[str, Any]) -> None:
    if not special["accepted"]:
        _line("special", f"rejected ({special['condition']}: {special['detail']})")
        return
    _line("special", "accepted")
    _line("  red", special["red"])
    _line("  B_u", special["b_u"])
    for k, comp in enumerate(special["components"], 1):
        _line(f"  B_c,{k}", f"greens {_fmt(comp['greens'])} blues {_fmt(comp['blues'])}")


def render_inspect(report: RunReport) -> None:
    _header(report)
    results = report.results
    _render_graph(results)
    _line("connected", results["graph"]["connected"])
    _render_coloring(results["coloring"])
    _render_special(results["special"])


def _render_form(form: dict[str, Any]) -> None:
    _line("path", form["path"])
    _line("vertex order", form["vertex_order"])
    _line("G", _matrix(form["generator"]))
    _line("Q", _matrix(form["phase_form"]))
    _line("H† on", form["hadamard_targets"])
    _line("terms", f"{form['term_count']} (d^{form['m']})")
    _line("phase", form["phase"] or "0")
    _line("summation", form["summation"])
    special = form.get("special")
    if special:
        _line("Δ", special["delta"] or "(identity)")
        _line("factored", special["factored"])


def render_closed_form(report: RunReport) -> None:
    _header(report)
    results = report.results
    _line("n", results["graph"]["n"])
    _line("d", results["graph"]["d"])
    _render_coloring(results["coloring"])
    _render_form(results["form"])


def render_verify(report: RunReport) -> None:
    _header(report)
    results = report.results
    _line("d", results["d"])
    _line("path", results["path"])
    _line("terms", results["term_count"])
    console.print(f"fidelity {results['fidelity']:.12f}")
    _status(report)


def render_designs(report: RunReport) -> None:
    _header(report)
    results = report.results
    oa = results["oa"]
    console.print(oa["header"])
    _line("linear code", oa["linear"])
    _line("dual distance", oa["dual_distance"])
    if results.get("outer_oa"):
        _line("outer OA", results["outer_oa"])
    if results.get("oa_file"):
        _line("written", results["oa_file"])
    qoa = results.get("qoa")
    if qoa:
        console.print(qoa["summary"])
        if qoa["residual"] is not None:
            _line("residual", f"{qoa['residual']:.3e}")


def render_bounds(report: RunReport) -> None:
    _header(report)
    results = report.results
    bounds = results["bounds"]
    for key in (
        "rank_gamma",
        "lower_rank",
        "lower_color",
        "color_condition",
        "upper",
        "oct_size",
        "term_lower",
        "term_upper",
        "rank_ab",
    ):
        _line(key, bounds[key])
    _line("term_count", results["term_count"])
    _line("meets_lower", results["meets_lower"])
    for key, text in bounds["provenance"].items():
        console.print(f"[dim]{escape(key)}: {escape(text)}[/dim]")
    for key, text in bounds["claims"].items():
        console.print(f"[dim]claimed {escape(key)}: {escape(text)}[/dim]")


def render_lc(report: RunReport) -> None:
    _header(report)
    results = report.results
    if "sequence" in results:
        steps = results["sequence"]
        if steps is None:
            _line("two-colorable", f"not within {results['max_depth']} complementations")
        else:
            path = ", ".join(f"({a}, {lam})" for a, lam in steps) or "already two-colorable"
            _line("two-colorable after", path)
    if "vertex" in results:
        _line("vertex", results["vertex"])
        _line("lambda", results["lambda"])
    if results.get("lc_fidelity") is not None:
        console.print(f"lc fidelity {results['lc_fidelity']:.12f}")
    if results.get("output_file"):
        _line("written", results["output_file"])
    elif results.get("graph_text"):
        console.print(escape(results["graph_text"]), end="")
    _status(report)


def render_kuniform(report: RunReport) -> None:
    _header(report)
    results = report.results
    _line("A shape", results["a_shape"])
    _line("A minors nonsingular", results["a_ok"])
    if results["b1_shape"] is not None:
        _line("B1 shape", results["b1_shape"])
        _line("B1 minors nonsingular", results["b1_ok"])
    if results.get("k_star") is not None:
        _line("k*", results["k_star"])


def render_fixture_list(fixtures: Iterable[FixtureDef]) -> None:
    table = Table(show_header=True, header_style="bold dim", padding=(0, 1))
    table.add_column("ID", style="cyan", width=20)
    table.add_column("Dims", width=10)
    table.add_column("v", justify="right", width=3)
    table.add_column("Name")
    count = 0
    for f in fixtures:
        table.add_row(f.id, ",".join(str(d) for d in f.dims), str(f.version), f.name)
        count += 1
    console.print(table)
    console.print(f"\n[dim]{count} fixtures loaded[/dim]")


def render_fixture(fixture: FixtureDef) -> None:
    console.print(f"[bold cyan]{fixture.id}[/bold cyan]  {escape(fixture.name)}")
    console.print(f"[dim]{escape(fixture.reference)}  fingerprint {fixture.fingerprint()}[/dim]")
    console.print(escape(fixture.description))
    console.print()
    console.print(escape(fixture.graph), end="")
    console.print()
    for d in fixture.dims:
        for key, value in sorted(fixture.expectations(d).items()):
            _line(f"d={d} {key}", value)


def render_fixture_checks(report: RunReport) -> None:
    table = Table(show_header=True, header_style="bold dim", padding=(0, 1))
    table.add_column("Fixture", style="cyan", width=20)
    table.add_column("d", justify="right", width=3)
    table.add_column("Fidelity", justify="right", width=16)
    table.add_column("Result", width=6)
    failures: list[str] = []
    for check in report.results["fixtures"]:
        for dim_check in check["checks"]:
            fidelity = dim_check["fidelity"]
            ok = dim_check["passed"]
            table.add_row(
                check["id"],
                str(dim_check["d"]),
                "-" if fidelity is None else f"{fidelity:.12f}",
                Text("pass" if ok else "FAIL", style="green" if ok else "bold red"),
            )
            prefix = f"{check['id']} d={dim_check['d']}"
            failures.extend(f"{prefix}: {m}" for m in dim_check["mismatches"])
    console.print(table)
    for failure in failures:
        console.print(f"[red]{escape(failure)}[/red]")
    _status(report)


def render_sweep(report: RunReport) -> None:
    results = report.results
    console.print()
    _line("graphs", results["count"])
    _line("min fidelity", results["min_fidelity"])
    if results["min_lc"] is not None:
        _line("min lc fidelity", results["min_lc"])
    for entry in results["failures"]:
        console.print(
            f"[red]failed graph #{entry['index']} (n={entry['n']}, chi={entry['chi']})[/red]"
        )
    _status(report)


def render_error(message: str) -> None:
    err_console.print(f"[bold red]Error:[/bold red] {escape(message)}")
