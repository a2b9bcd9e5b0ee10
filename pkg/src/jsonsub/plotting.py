"""PNG figures for a corpus report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .corpus import CorpusReport  # noqa: E402

__all__ = ["plot_report"]


def _bar(ax, counts: dict, title: str, color: str):
    labels = list(counts) or ["(none)"]
    values = [counts[k] for k in counts] or [0]
    ax.bar(range(len(labels)), values, color=color)
    ax.set_xticks(range(len(labels)), labels, rotation=30, ha="right")
    ax.set_ylabel("pairs")
    ax.set_title(title)
    for i, v in enumerate(values):
        ax.annotate(str(v), (i, v), ha="center", va="bottom", fontsize=8)


def plot_report(report: CorpusReport, out_dir) -> list[Path]:
    """Write verdicts.png, failure_tags.png and elapsed.png; return their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    _bar(ax, dict(sorted(report.verdicts.items())), "Verdicts per pair", "#4c72b0")
    fig.tight_layout()
    paths.append(out_dir / "verdicts.png")
    fig.savefig(paths[-1], dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    tags = dict(sorted(report.tags.items(), key=lambda kv: (-kv[1], kv[0])))
    _bar(ax, tags, "Reasons for undecided or failed pairs", "#dd8452")
    fig.tight_layout()
    paths.append(out_dir / "failure_tags.png")
    fig.savefig(paths[-1], dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    ms = sorted(max(r.elapsed_ms, 1e-3) for r in report.records)
    if ms:
        ax.step(ms, [(i + 1) / len(ms) for i in range(len(ms))], where="post")
        ax.set_xscale("log")
    ax.set_xlabel("elapsed per pair (ms)")
    ax.set_ylabel("fraction of pairs")
    ax.set_title("Checking time")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    paths.append(out_dir / "elapsed.png")
    fig.savefig(paths[-1], dpi=120)
    plt.close(fig)
    return paths
