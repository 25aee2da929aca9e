"""Figure rendering for reports and enumerated shapes.

Figures are written straight to files (Agg backend, no display), so
the CLI can drop them next to its text or JSON output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .lattice import FiniteLattice
from .report import SUITE_NAMES, VerificationReport
from .shapes import SimplexPoint

__all__ = ["render_report_figure", "render_points_figure"]

_STATUS_COLORS = (
    ("pass", "#2a9d4e"),
    ("xfail", "#e4a11b"),
    ("skip", "#9aa0a6"),
    ("fail", "#d62f2f"),
)


def render_report_figure(report: VerificationReport, path: str) -> None:
    """One stacked horizontal bar per suite, split by check status."""
    suites = [s for s in SUITE_NAMES if s in report.config.suites]
    counts = {s: {status: 0 for status, _ in _STATUS_COLORS} for s in suites}
    for check in report.checks:
        counts[check.suite][check.status] += 1

    fig, ax = plt.subplots(figsize=(8, 0.6 * max(len(suites), 1) + 1.6))
    ypos = range(len(suites))
    left = [0] * len(suites)
    for status, color in _STATUS_COLORS:
        widths = [counts[s][status] for s in suites]
        ax.barh(ypos, widths, left=left, color=color, label=status, height=0.6)
        left = [a + b for a, b in zip(left, widths)]
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(suites)
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    summary = report.summary
    ax.set_title(
        f"{summary['total']} checks: {summary['pass']} passed, "
        f"{summary['fail']} failed, {summary['xfail']} expected failures, "
        f"{summary['skip']} skipped  [seed {report.config.seed}]"
    )
    ax.legend(loc="lower right", ncols=len(_STATUS_COLORS), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _chain_rank(lat: FiniteLattice) -> list[int]:
    """Rank of each element in a total order; ValueError if incomparable."""
    ranks = []
    for x in range(lat.size):
        below = 0
        for y in range(lat.size):
            if not (lat.leq(x, y) or lat.leq(y, x)):
                raise ValueError(
                    "point figures need a total order; "
                    f"elements {lat.label(x)} and {lat.label(y)} are incomparable"
                )
            if lat.leq(y, x) and y != x:
                below += 1
        ranks.append(below)
    return ranks


def render_points_figure(
    lat: FiniteLattice, points: list[SimplexPoint], path: str, title: str
) -> None:
    """Each point as a weakly decreasing staircase over its positions.

    Coordinates are drawn at their rank in the order, so the picture
    only makes sense for total orders; other lattices are rejected.
    """
    ranks = _chain_rank(lat)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for idx, pt in enumerate(points):
        ys = [ranks[c] for c in pt.coords]
        xs = range(len(ys))
        ax.step(xs, ys, where="mid", alpha=0.75, linewidth=1.6)
        ax.plot(xs, ys, "o", markersize=3.5, alpha=0.75)
    ax.set_xlabel("position")
    ax.set_ylabel("rank in the order")
    ax.set_xticks(range(len(points[0].coords) if points else 0))
    ax.set_yticks(range(lat.size))
    ax.set_yticklabels([lat.label(i) for i in range(lat.size)])
    ax.set_title(f"{title} ({len(points)} points)")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
