"""
Convergence reports: in-memory record plus CSV/summary files.

CSV layout is ``iteration,relres`` with one row per history entry, relres in
``%.5e`` (six significant digits). The sidecar ``<name>.summary.yaml`` echoes
the configuration, per-phase timings and the converged flag.
"""

import csv
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import yaml
from structlog import get_logger

logger = get_logger(__name__)

CSV_HEADER = ("iteration", "relres")


@dataclass
class SolveReport:
    """Relative residual history of one solve (entry 0 is the zero initial guess)."""
    history: list[float] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    tol: float = 1e-6
    method: str = "wave_adr"
    timings: dict[str, float] = field(default_factory=dict)
    spec: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def final_relres(self) -> float:
        return self.history[-1] if self.history else float("nan")

    def summary(self) -> dict[str, Any]:
        data = asdict(self)
        data.pop("history")
        data["final_relres"] = self.final_relres
        return data


def summary_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".summary.yaml")


def emit_report(report: SolveReport, path: Union[str, Path]) -> Path:
    """Write the CSV history and its summary sidecar; returns the CSV path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for i, relres in enumerate(report.history):
            writer.writerow([i, f"{relres:.5e}"])
    with open(summary_path(path), "w") as f:
        yaml.safe_dump(_plain(report.summary()), f, sort_keys=False)
    logger.info("report_written", path=str(path), rows=len(report.history))
    return path


def read_report(path: Union[str, Path]) -> list[float]:
    """Residual history from a CSV written by ``emit_report``."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"'{path}' is not a residual history (header {header})")
        return [float(row[1]) for row in reader if row]


def read_summary(path: Union[str, Path]) -> dict[str, Any]:
    sidecar = summary_path(path)
    if not sidecar.exists():
        return {}
    with open(sidecar) as f:
        return yaml.safe_load(f) or {}


def _plain(value):
    """YAML-safe copy: tuples to lists, numpy scalars to Python numbers."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value
