"""Figures for Hilbert-function growth.

matplotlib is imported lazily with the Agg backend so the rest of the
package never pays for it.
"""

from __future__ import annotations

from typing import Sequence


def plot_hilbert(path: str, values: Sequence[int], full: Sequence[int] | None = None, title: str = "") -> str:
    """Write a log-scale plot of ``h(k)`` (and optionally the full algebra's) to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = list(range(len(values)))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ks, [max(v, 0) for v in values], "o-", label="quotient" if full is not None else "h(k)")
    if full is not None:
        ax.plot(ks, list(full)[: len(ks)], "s--", color="0.5", label="D_q(n)")
        ax.legend(frameon=False)
    if any(v > 0 for v in values):
        ax.set_yscale("symlog", linthresh=1)
    ax.set_xlabel("degree k")
    ax.set_ylabel("dimension")
    if title:
        ax.set_title(title)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
