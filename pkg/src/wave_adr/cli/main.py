"""
Wave-ADR Command Line Interface
"""

import logging
import os

import click
import structlog
from rich.console import Console
from rich.table import Table

from wave_adr import __version__

console = Console()


def configure_logging(verbose: bool) -> None:
    """Structured logs at warning level, debug with --verbose."""
    level = logging.DEBUG if verbose else logging.WARNING
    structlog.configure(wrapper_class=structlog.make_filtering_bound_logger(level))


@click.group()
@click.version_option(version=__version__, prog_name="wave-adr")
@click.option("--verbose", is_flag=True, help="Show debug logs (per cycle and iteration)")
def cli(verbose: bool):
    """
    Wave-ADR - matrix-free multigrid preconditioning for 2D Helmholtz problems
    """
    configure_logging(verbose)


@cli.command()
def version():
    """Show version information"""
    import wave_adr
    console.print(f"\n[cyan]Wave-ADR[/cyan] version [bold]{wave_adr.__version__}[/bold]")
    console.print(f"Author: {wave_adr.__author__}")
    console.print(f"License: {wave_adr.__license__}\n")


@cli.command()
def info():
    """Show system information"""
    import platform
    import sys

    import numpy
    import scipy

    table = Table(title="\nSystem Information")
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="white")

    table.add_row("Python Version", sys.version.split()[0])
    table.add_row("Platform", platform.platform())
    table.add_row("NumPy", numpy.__version__)
    table.add_row("SciPy", scipy.__version__)
    table.add_row("CPUs", str(os.cpu_count()))
    table.add_row("WAVE_ADR_THREADS", os.environ.get("WAVE_ADR_THREADS", "(unset)"))

    console.print(table)
    console.print()


# Import solve command
from wave_adr.cli.solve_commands import solve  # noqa: E402

# Register solve command
cli.add_command(solve)


# Import ingest command
from wave_adr.cli.ingest_commands import ingest  # noqa: E402

# Register ingest command
cli.add_command(ingest)


# Import tune and report commands
from wave_adr.cli.tune_commands import report, tune  # noqa: E402

# Register tune and report commands
cli.add_command(tune)
cli.add_command(report)


if __name__ == "__main__":
    cli()
