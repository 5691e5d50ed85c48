"""CLI command for running solves"""
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from wave_adr.io.config import load_alphas, load_spec
from wave_adr.io.report import emit_report
from wave_adr.runtime.pipeline import run_solve

console = Console()

EXIT_CONVERGED = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2


@dataclass
class BatchOutcome:
    config: str
    report: Optional[str] = None
    converged: bool = False
    iterations: int = 0
    relres: float = float("nan")
    error: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_ERROR
        return EXIT_CONVERGED if self.converged else EXIT_NOT_CONVERGED


def worker_count() -> int:
    """WAVE_ADR_THREADS, else the CPU count."""
    raw = os.environ.get("WAVE_ADR_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise click.BadParameter(f"WAVE_ADR_THREADS must be an integer, got '{raw}'")
    return os.cpu_count() or 1


def solve_one(
    config: str, report_path: Optional[str], alphas_path: Optional[str]
) -> BatchOutcome:
    """Load, solve and write the report of one config; errors are captured."""
    outcome = BatchOutcome(config=config)
    try:
        spec = load_spec(config)
        alphas = load_alphas(alphas_path) if alphas_path else None
        result = run_solve(spec, alphas)
        path = Path(report_path) if report_path else Path(f"{spec.name}.csv")
        outcome.report = str(emit_report(result, path))
        outcome.converged = result.converged
        outcome.iterations = result.iterations
        outcome.relres = result.final_relres
    except Exception as e:
        outcome.error = str(e)
    return outcome


def batch_exit_code(outcomes: list[BatchOutcome]) -> int:
    """1 if any config failed, else 2 if any did not converge, else 0."""
    codes = {o.exit_code for o in outcomes}
    if EXIT_ERROR in codes:
        return EXIT_ERROR
    return EXIT_NOT_CONVERGED if EXIT_NOT_CONVERGED in codes else EXIT_CONVERGED


def _print_outcomes(outcomes: list[BatchOutcome]) -> None:
    table = Table(title="\nSolve Results")
    table.add_column("Config", style="cyan")
    table.add_column("Status", style="white")
    table.add_column("Iterations", style="magenta", justify="right")
    table.add_column("Rel. residual", style="green", justify="right")
    table.add_column("Report", style="white")
    for o in outcomes:
        if o.error is not None:
            status = "[red]error[/red]"
        elif o.converged:
            status = "[green]converged[/green]"
        else:
            status = "[yellow]not converged[/yellow]"
        table.add_row(
            o.config,
            status,
            str(o.iterations),
            f"{o.relres:.3e}",
            o.report or "-",
        )
    console.print(table)
    for o in outcomes:
        if o.error is not None:
            console.print(f"[red]Error ({o.config}): {o.error}[/red]")
    console.print()


@click.command()
@click.argument("configs", nargs=-1, type=click.Path())
@click.option("--config", "config", type=click.Path(), help="Problem config (key=value or YAML)")
@click.option("--report", "report_path", type=click.Path(), help="CSV report path")
@click.option("--alphas", "alphas_path", type=click.Path(), help="Tuned alphas file")
@click.option("--batch", is_flag=True, help="Solve the CONFIGS arguments concurrently")
@click.option("--report-dir", type=click.Path(), default=".", help="Report directory for --batch")
def solve(configs, config, report_path, alphas_path, batch, report_dir):
    """Solve a Helmholtz problem with preconditioned FGMRES"""
    if batch == bool(config) or bool(configs) != batch:
        console.print("\n[red]Error: use either --config FILE or --batch FILE...[/red]\n")
        sys.exit(EXIT_ERROR)

    if config:
        console.print(f"\n[cyan]Solving {config}...[/cyan]")
        outcome = solve_one(config, report_path, alphas_path)
        _print_outcomes([outcome])
        sys.exit(outcome.exit_code)

    reports = [str(Path(report_dir) / f"{Path(c).stem}.csv") for c in configs]
    workers = min(worker_count(), len(configs))
    console.print(f"\n[cyan]Solving {len(configs)} configs with {workers} worker(s)...[/cyan]")
    if workers == 1:
        outcomes = [solve_one(c, r, alphas_path) for c, r in zip(configs, reports)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(solve_one, configs, reports, [alphas_path] * len(configs)))
    _print_outcomes(outcomes)
    sys.exit(batch_exit_code(outcomes))
