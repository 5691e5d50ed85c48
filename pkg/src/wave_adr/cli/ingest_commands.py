"""CLI command for slowness ingestion"""
import sys
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from wave_adr.core.schemas.config import IngestConfig
from wave_adr.io.raw import write_raw_grid
from wave_adr.io.slowness import ingest_slowness

console = Console()


@click.command()
@click.argument("source")
@click.option("--n", "n", required=True, type=int, help="Interior nodes per side")
@click.option("--out", "out", required=True, type=click.Path(), help="Raw grid output path")
@click.option("--sigma", type=float, default=None, help="Gaussian sigma in cells (default N/64)")
def ingest(source: str, n: int, out: str, sigma: Optional[float]):
    """Turn an image, raw grid or constant into an N x N slowness grid"""
    try:
        model = ingest_slowness(source, n, IngestConfig(sigma=sigma))
        path = write_raw_grid(out, model.s)
    except Exception as e:
        console.print(f"\n[red]Error: {e}[/red]\n")
        sys.exit(1)

    table = Table(title="\nSlowness Model")
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="white")
    table.add_row("Source", source)
    table.add_row("Grid", f"{n} x {n}")
    table.add_row("Min slowness", f"{model.s.min():.4f}")
    table.add_row("Max slowness", f"{model.s.max():.4f}")
    table.add_row("Written to", str(path))
    console.print(table)
    console.print()
