"""Figures written next to ``verify --all`` reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLORS = {"Verified": "#3a7d44", "HypothesisFailed": "#c9a227", "Refuted": "#b23a48"}


def bound_margin(report) -> float | None:
    """How far (in powers of 3) the code size sits above the d = 5 bound.

    Positive means ``3^k`` exceeds ``A_3(n, 5)``, i.e. d = 5 is excluded.
    """
    b = report.optimality
    if b is None or b.code_size is None:
        return None
    return math.log(b.code_size, 3) + math.log(b.denominator, 3) - (b.t + 2 * b.r)


def plot_bound_margins(reports, path: Path) -> Path:
    rows = [(r.label, bound_margin(r), r.verdict.value) for r in reports]
    rows = [row for row in rows if row[1] is not None]
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.22 * len(rows) + 1)))
    y = range(len(rows))
    ax.barh(list(y), [r[1] for r in rows], color=[COLORS.get(r[2], "grey") for r in rows])
    ax.set_yticks(list(y))
    ax.set_yticklabels([r[0] for r in rows], fontsize=7)
    ax.invert_yaxis()
    ax.axvline(0, color="black", lw=0.8)
    ax.set_xlabel("log3(3^k / A_3(n,5) bound)")
    ax.set_title("Exclusion of d = 5 per instance", fontsize=10)
    for label, color in COLORS.items():
        ax.bar(0, 0, color=color, label=label)
    ax.legend(fontsize=7, loc="lower right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
