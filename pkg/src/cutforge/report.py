"""Rendering of verification reports to delimited files and figures."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence


@dataclass(frozen=True)
class CheckRow:
    """One flattened verification check, common to all suite kinds."""

    suite: str
    name: str
    mode: str
    instances: int
    points: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def rows_from_agreements(reports) -> list[CheckRow]:
    return [
        CheckRow("seg", r.operation, r.mode, r.instance_count, r.point_count, len(r.failures))
        for r in reports
    ]


def rows_from_checks(suite: str, checks) -> list[CheckRow]:
    return [
        CheckRow(suite, c.name, "symbolic", c.instances, c.instances, len(c.failures))
        for c in checks
    ]


def write_csv(rows: Sequence[CheckRow], path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "check", "mode", "instances", "points", "failures", "passed"])
        for r in rows:
            writer.writerow(
                [r.suite, r.name, r.mode, r.instances, r.points, r.failures, r.passed]
            )


def render_figure(rows: Sequence[CheckRow], path: Path, title: str) -> None:
    """Instance counts per check, green for pass and red for fail."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{r.suite}:{r.name}" for r in rows]
    counts = [max(r.instances, 1) for r in rows]
    colors = ["#2a9d2a" if r.passed else "#c23b3b" for r in rows]
    height = max(2.5, 0.28 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    ypos = range(len(rows))
    ax.barh(ypos, counts, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("instances checked")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(rows: Sequence[CheckRow], directory: Path, title: str) -> list[Path]:
    """Write checks.csv and summary.png into the directory; returns the paths."""
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / "checks.csv"
    fig_path = directory / "summary.png"
    write_csv(rows, csv_path)
    render_figure(rows, fig_path, title)
    return [csv_path, fig_path]
