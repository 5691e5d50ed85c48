import math

import numpy as np
import pytest

from wave_adr.io.report import (
    SolveReport,
    emit_report,
    read_report,
    read_summary,
    summary_path,
)


def test_three_row_history(tmp_path):
    report = SolveReport(
        history=[1.0, 0.0123456789, 4.5e-7],
        converged=True,
        iterations=2,
        method="csl",
        timings={"hierarchy": 0.01, "solve": 0.5},
    )
    path = emit_report(report, tmp_path / "runs" / "csl.csv")
    lines = path.read_text().splitlines()
    assert lines == [
        "iteration,relres",
        "0,1.00000e+00",
        "1,1.23457e-02",
        "2,4.50000e-07",
    ]
    assert read_report(path) == [1.0, 1.23457e-02, 4.5e-7]

    summary = read_summary(path)
    assert summary_path(path).name == "csl.summary.yaml"
    assert summary["converged"] is True
    assert summary["method"] == "csl"
    assert summary["final_relres"] == pytest.approx(4.5e-7)
    assert summary["timings"] == {"hierarchy": 0.01, "solve": 0.5}
    assert "history" not in summary


def test_empty_history(tmp_path):
    report = SolveReport()
    assert math.isnan(report.final_relres)
    path = emit_report(report, tmp_path / "empty.csv")
    assert path.read_text().splitlines() == ["iteration,relres"]
    assert read_report(path) == []


def test_summary_handles_numpy_values(tmp_path):
    details = {"alphas": {2: np.float64(4.6)}, "sizes": (31, 15)}
    report = SolveReport(history=[1.0], details=details)
    path = emit_report(report, tmp_path / "np.csv")
    details = read_summary(path)["details"]
    assert details == {"alphas": {"2": 4.6}, "sizes": [31, 15]}


def test_rejects_foreign_csv(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("step,value\n0,1\n")
    with pytest.raises(ValueError):
        read_report(path)
    assert read_summary(path) == {}
