"""Figure rendering for sweep reports; headless-safe."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_length_histogram(
    hist: Mapping[int, int],
    bound: int,
    path: str | Path,
    *,
    title: str | None = None,
) -> str:
    """Bar chart of shortest-reset-length counts with the bound marked.

    Counts usually span orders of magnitude, so the y axis switches to a
    log scale when they do. Returns the written path.
    """
    path = Path(path)
    xs = sorted(hist)
    ys = [hist[x] for x in xs]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    if xs:
        ax.bar(xs, ys, width=0.85, color="#4878cf", label="shortest reset length")
        if max(ys) // max(1, min(ys)) > 50:
            ax.set_yscale("log")
    ax.axvline(bound, color="#d1495b", linestyle="--", label=f"bound {bound}")
    ax.set_xlabel("shortest reset word length")
    ax.set_ylabel("automata")
    ax.set_title(title or "Reset length distribution")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
