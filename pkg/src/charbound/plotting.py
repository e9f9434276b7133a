"""Figure rendering for scan tables; file output only, no interactive use."""

from __future__ import annotations

from typing import Dict, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["plot_theta_scan", "plot_interp_scan"]


def plot_theta_scan(rows: Sequence[Dict], path: str) -> None:
    """Certified complement bound against the reference lines, versus n."""
    ns = [row["n"] for row in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    ax.plot(ns, [row["log2_complement_lower"] for row in rows], "o-", label="certified complement bound")
    ax.plot(ns, [row["line_0_0435"] for row in rows], "--", label="0.0435 n - log2(5/2)")
    ax.plot(ns, [row["line_0_19"] for row in rows], ":", label="0.19 n")
    ax.plot(ns, [row["line_entropy"] for row in rows], "-.", label="(1 - h(1/4)) n")
    ax.plot(ns, [row["symork_cap_log2"] for row in rows], linestyle=(0, (3, 1, 1, 1)), label="rank cap n/2")
    ax.set_xlabel("n")
    ax.set_ylabel("log2 of the bound")
    ax.set_title("Lower bounds on theta of the complement, d = n/2")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_interp_scan(rows: Sequence[Dict], path: str) -> None:
    """Exact interpolation bound against its geometric cap, versus n."""
    ns = [row["n"] for row in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    ax.plot(ns, [row["minus_log2_B"] for row in rows], "o-", label="-log2 B (exact)")
    ax.plot(ns, [row["minus_log2_cap"] for row in rows], "--", label="-log2 geometric cap")
    ax.set_xlabel("n")
    ax.set_ylabel("bits")
    ax.set_title("Interpolation certificate strength")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
