"""CLI commands for alpha tuning and saved reports"""
import sys

import click
from rich.console import Console
from rich.table import Table

from wave_adr.io.config import load_spec, save_alphas
from wave_adr.io.report import read_report, read_summary
from wave_adr.runtime.pipeline import tune_problem

console = Console()


@click.command()
@click.option("--config", "config", required=True, type=click.Path(), help="Problem config")
@click.option("--out", "out", required=True, type=click.Path(), help="Alphas output path")
def tune(config: str, out: str):
    """Tune the per-level Chebyshev alpha of a problem"""
    try:
        spec = load_spec(config)
        console.print(f"\n[cyan]Tuning {spec.name} ({spec.method}, omega={spec.omega:g})...[/cyan]")
        setup = tune_problem(spec)
        result = setup.tuning
        save_alphas(result.alphas, out, loss=result.loss)
    except Exception as e:
        console.print(f"\n[red]Error: {e}[/red]\n")
        sys.exit(1)

    schedule = setup.cycle.schedule
    table = Table(title="\nTuned Chebyshev Parameters")
    table.add_column("Level", style="cyan", justify="right")
    table.add_column("N", style="white", justify="right")
    table.add_column("lambda_max", style="magenta", justify="right")
    table.add_column("alpha", style="green", justify="right")
    for level, alpha in sorted(result.alphas.items()):
        table.add_row(
            str(level),
            str(setup.hierarchy.level(level).grid.n_interior),
            f"{schedule.lambda_max[level]:.4e}",
            f"{alpha:.4f}",
        )
    console.print(table)

    console.print(f"\n[bold]Tuned loss:[/bold] {result.loss:.4e}")
    for alpha, loss in result.uniform_losses.items():
        console.print(f"  uniform alpha={alpha:g}: {loss:.4e}")
    console.print(f"  evaluations: {result.evaluations}")
    console.print(f"\n[green]Saved to {out}[/green]\n")


@click.command()
@click.argument("csv_path", type=click.Path())
@click.option("--every", default=1, type=int, help="Show every n-th iteration")
def report(csv_path: str, every: int):
    """Show a saved residual history"""
    try:
        history = read_report(csv_path)
        summary = read_summary(csv_path)
    except Exception as e:
        console.print(f"\n[red]Error: {e}[/red]\n")
        sys.exit(1)

    if not history:
        console.print("\n[yellow]Empty residual history[/yellow]\n")
        return

    table = Table(title=f"\nResidual History ({csv_path})")
    table.add_column("Iteration", style="cyan", justify="right")
    table.add_column("Rel. residual", style="white", justify="right")
    last = len(history) - 1
    for i, relres in enumerate(history):
        if i % max(every, 1) == 0 or i == last:
            table.add_row(str(i), f"{relres:.5e}")
    console.print(table)

    if summary:
        status = "[green]yes[/green]" if summary.get("converged") else "[red]no[/red]"
        console.print(f"\n  Method: {summary.get('method')}")
        console.print(f"  Converged: {status}")
        console.print(f"  Iterations: {summary.get('iterations')}")
        for phase, seconds in (summary.get("timings") or {}).items():
            console.print(f"  [dim]{phase}: {seconds:.3f}s[/dim]")
    console.print()
