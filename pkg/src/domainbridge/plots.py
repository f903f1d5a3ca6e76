"""Optional figure rendering for training traces, divergence matrices, and metrics.

Everything here is presentation only: the delimited/JSON outputs are the
canonical artifacts and figures are rendered from the same in-memory values.
The Agg backend keeps rendering headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .evaluation import DivergenceMatrix
from .model import TrainReport


def render_loss_curves(report: TrainReport, path: str | Path) -> Path:
    """Per-epoch losses on the left axis, dev macro F1 on the right."""
    path = Path(path)
    epochs = range(len(report.joint_loss))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(epochs, report.joint_loss, label="joint", color="tab:blue")
    ax.plot(epochs, report.sentiment_loss, label="sentiment", color="tab:orange")
    ax.plot(epochs, report.projection_loss, label="projection", color="tab:green")
    ax.axvline(report.best_epoch, color="gray", linestyle=":", label="best epoch")
    ax.set_xlabel("epoch")
    ax.set_ylabel("loss")
    twin = ax.twinx()
    twin.plot(epochs, report.dev_macro_f1, label="dev macro F1", color="tab:red")
    twin.set_ylabel("dev macro F1")
    twin.set_ylim(0.0, 1.05)
    handles, labels = ax.get_legend_handles_labels()
    handles2, labels2 = twin.get_legend_handles_labels()
    ax.legend(handles + handles2, labels + labels2, loc="center right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_divergence_heatmap(matrix: DivergenceMatrix, path: str | Path) -> Path:
    path = Path(path)
    n = len(matrix.domain_names)
    fig, ax = plt.subplots(figsize=(1.2 * n + 2.5, 1.2 * n + 2))
    image = ax.imshow(matrix.values, cmap="viridis")
    ax.set_xticks(range(n), matrix.domain_names, rotation=45, ha="right")
    ax.set_yticks(range(n), matrix.domain_names)
    for i in range(n):
        for j in range(n):
            ax.text(
                j, i, f"{matrix.values[i, j]:.3f}",
                ha="center", va="center", color="white", fontsize=8,
            )
    ax.set_title(f"{matrix.variant} ({matrix.mode})")
    fig.colorbar(image, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_metric_bars(rows: list[dict], path: str | Path) -> Path:
    """Grouped bars from long-format rows (system, source, target, metric, value)."""
    path = Path(path)
    metrics = sorted({r["metric"] for r in rows})
    runs = sorted({(r["system"], r["source"], r["target"]) for r in rows})
    values = {
        (r["system"], r["source"], r["target"], r["metric"]): float(r["value"])
        for r in rows
    }
    fig, ax = plt.subplots(figsize=(max(6.0, 1.8 * len(metrics)), 4.5))
    width = 0.8 / max(len(runs), 1)
    for offset, run in enumerate(runs):
        heights = [values.get((*run, m), 0.0) for m in metrics]
        positions = [i + offset * width for i in range(len(metrics))]
        ax.bar(positions, heights, width=width, label=f"{run[0]} {run[1]}→{run[2]}")
    ax.set_xticks(
        [i + 0.4 - width / 2 for i in range(len(metrics))], metrics,
        rotation=30, ha="right", fontsize=8,
    )
    ax.set_ylabel("value")
    ax.set_ylim(0.0, 1.05)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
