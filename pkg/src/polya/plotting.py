"""Figures for the density report. Uses the non-interactive Agg backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def density_figure(report, xs, ratios, path: str | Path) -> Path:
    """Running N_h / pi(X; m, a) against the truncated Euler product."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.semilogx(xs, ratios, marker=".", lw=1, label=r"$N_h(X)/\pi(X;m,a)$")
    ax.axhline(report.euler_c, color="k", ls="--", lw=1, label=r"$c_h(m,a)$")
    ax.axhspan(report.euler_c - 0.03, report.euler_c + 0.03, color="0.9", zorder=0)
    ax.set_xlabel("X")
    ax.set_ylabel("fraction with $h(p)$ square-free")
    ax.set_title(f"p = {report.a} mod {report.m}, Euler product to {report.cutoff}")
    ax.legend(loc="lower right", frameon=False)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
