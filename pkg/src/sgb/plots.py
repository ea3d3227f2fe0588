"""Figure rendering for sweep reports: eigenvalues and bounds against the
family parameter, written as PNG next to the CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_BOUND_STYLES = [
    ("bound_thm12", "rolling-radius bound", "tab:blue"),
    ("bound_thm13", "closed-form bound", "tab:orange"),
    ("bound_cor14", "curvature-only bound", "tab:green"),
    ("bound_cor15", "sphere bound", "tab:red"),
    ("bound_cw", "k/2 baseline", "tab:gray"),
]


def render_sweep_figure(rows: list[dict], path) -> None:
    """One figure per sweep: analytic and discrete lambda1 plus every bound."""
    params = [r["param"] for r in rows]
    family = rows[0]["family"] if rows else ""

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(
        params,
        [r["lambda1_analytic"] for r in rows],
        color="k",
        lw=1.5,
        label="lambda1 analytic",
    )
    disc = [(p, r["lambda1_discrete"]) for p, r in zip(params, rows)
            if r.get("lambda1_discrete") is not None]
    if disc:
        ax.plot(
            [p for p, _ in disc],
            [x for _, x in disc],
            "o",
            ms=4,
            mfc="none",
            color="k",
            label="lambda1 discrete",
        )
    for key, label, color in _BOUND_STYLES:
        ax.plot(params, [r[key] for r in rows], color=color, lw=1.0, label=label)
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.set_xlabel("family parameter")
    ax.set_ylabel("eigenvalue / lower bound")
    ax.set_title(f"{family} sweep")
    ax.legend(fontsize=8, loc="best")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
