"""Figure rendering for cohomology reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_report_figure(rep, path, dpi=150):
    """Bar chart of dimensions by degree, with the two ranks overlaid."""
    degrees = [row.n for row in rep.rows]
    dims = [row.dim for row in rep.rows]
    ranks_in = [row.rank_in for row in rep.rows]
    ranks_out = [row.rank_out for row in rep.rows]

    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(degrees, dims, color="#4878cf", label="dim H^n")
    ax.plot(degrees, ranks_in, "o--", color="#d65f5f", label="rank into degree")
    ax.plot(degrees, ranks_out, "s:", color="#6acc65", label="rank out of degree")
    ax.set_xticks(degrees)
    ax.set_xlabel("n")
    ax.set_title(f"bimodule {rep.bimodule}, source {rep.source}")
    ax.legend(loc="upper right", fontsize=8)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
