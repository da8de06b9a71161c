"""Artifact writers and the run manifest.

CSV and JSON artifacts depend only on the resolved settings and seeds. SVG
plots use a fixed hash salt, and their date stamp can be turned off so reruns
produce identical files.
"""

import csv
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from pydantic import Field  # noqa: E402

from santalo.commons.schema.base import BaseSchema  # noqa: E402
from santalo.commons.schema.errors import ErrorPayload  # noqa: E402
from santalo.commons.telemetry.logging import get_logger  # noqa: E402
from santalo.reports import FlowTrace, Report  # noqa: E402

logger = get_logger(__name__)

plt.rcParams["svg.hashsalt"] = "santalo"


class CheckRecord(BaseSchema):
    """One verification entry of the manifest."""

    name: str
    verdict: bool
    seconds: float = 0.0
    artifacts: list[str] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)


class RunManifest(BaseSchema):
    """Written for every run, including failed ones."""

    run_id: str
    command: str
    version: str
    started_at: str
    config: dict[str, Any] = Field(default_factory=dict)
    seeds: list[int] = Field(default_factory=list)
    checks: list[CheckRecord] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)
    artifacts: list[str] = Field(default_factory=list)
    exit_status: int = 0
    error: ErrorPayload | None = None


class ArtifactWriter:
    """Writes files under one output directory and remembers their relative names."""

    def __init__(self, output_dir: Path, svg_timestamp: bool = True) -> None:
        self.output_dir = output_dir
        self.svg_timestamp = svg_timestamp
        self.written: list[str] = []
        output_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, name: str) -> Path:
        path = self.output_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        if name not in self.written:
            self.written.append(name)
        return path

    def write_csv(self, name: str, report: Report) -> str:
        """Rows of ``report`` in their ``CSV_COLUMNS`` order."""
        with self._path(name).open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(report.columns)
            for row in report.rows:
                writer.writerow(row.csv_row())
        return name

    def write_json(self, name: str, model: BaseSchema) -> str:
        self._path(name).write_text(model.to_json(indent=2) + "\n", encoding="utf-8")
        return name

    def write_figure(self, name: str, figure: Figure) -> str:
        metadata = None if self.svg_timestamp else {"Date": None}
        figure.savefig(self._path(name), format="svg", metadata=metadata)
        plt.close(figure)
        return name

    def write_report(self, stem: str, report: Report) -> list[str]:
        """JSON always, CSV when the report has rows."""
        names = [self.write_json(f"{stem}.json", report)]
        if report.rows:
            names.append(self.write_csv(f"{stem}.csv", report))
        return names


def alpha_figure(trace: FlowTrace) -> Figure:
    """α(t) and the normalized product against t."""
    t = [row.t for row in trace.rows]
    figure, (left, right) = plt.subplots(1, 2, figsize=(9, 3.5))
    left.plot(t, [row.alpha for row in trace.rows], marker="o")
    left.set_xlabel("t")
    left.set_ylabel("α(t)")
    left.set_title(f"n = {trace.dimension}")
    right.plot(t, [row.product for row in trace.rows], marker="o", label="(nω_n)² m α")
    right.axhline((2.0 * np.pi) ** trace.dimension, color="k", linestyle="--", label="(2π)^n")
    right.set_xlabel("t")
    right.legend()
    figure.tight_layout()
    return figure


def profile_figure(
    radii: np.ndarray,
    found: np.ndarray,
    reference: np.ndarray,
    labels: Sequence[str] = ("Ψ*", "r²/2"),
) -> Figure:
    figure, axes = plt.subplots(figsize=(5, 3.5))
    axes.plot(radii, found, label=labels[0])
    axes.plot(radii, reference, linestyle="--", label=labels[1])
    axes.set_xlabel("r")
    axes.legend()
    figure.tight_layout()
    return figure


def comparison_figure(report: Report, title: str) -> Figure:
    """Masses of both sides against λ for sublevel rows."""
    rows = [row for row in report.rows if getattr(row, "form", "sublevel") == "sublevel"]
    figure, axes = plt.subplots(figsize=(5, 3.5))
    axes.plot([row.level for row in rows], [row.mass_lhs for row in rows], label="lhs")
    axes.plot([row.level for row in rows], [row.mass_rhs for row in rows], linestyle="--", label="rhs")
    axes.set_xlabel("λ")
    axes.set_ylabel("mass")
    axes.set_title(title)
    axes.legend()
    figure.tight_layout()
    return figure
