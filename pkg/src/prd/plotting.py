"""Static vector-graphics rendering of curves and summary scatters.

matplotlib is imported lazily so the math-only paths never pay for it, and
all output suppresses embedded timestamps to keep files reproducible.
"""

from __future__ import annotations

from pathlib import Path

from .core import PrdCurve, interpolate_set

__all__ = ["save_curve_plot", "save_fbeta_scatter"]


def _figure():
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "prd"
    import matplotlib.pyplot as plt

    return plt


def _save(fig, out_path: str | Path) -> None:
    # strip embedded timestamps so identical inputs give identical bytes
    out = Path(out_path)
    suffix = out.suffix.lower()
    if suffix == ".svg":
        metadata = {"Date": None}
    elif suffix == ".pdf":
        metadata = {"CreationDate": None}
    else:
        metadata = None
    fig.savefig(out, metadata=metadata)


def save_curve_plot(curve: PrdCurve, out_path: str | Path, title: str = "") -> None:
    """Render the attainable region: recall on x, precision on y, both [0, 1]."""
    plt = _figure()
    polygon = interpolate_set(curve)
    xs = [pt.recall for pt in polygon]
    ys = [pt.precision for pt in polygon]
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    if len(polygon) > 1:
        ax.fill(xs, ys, alpha=0.35, color="#3070b0")
        ax.plot(xs[1:], ys[1:], color="#16436e", linewidth=1.2)
    else:
        ax.plot([0.0], [0.0], marker="o", color="#16436e")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel("recall")
    ax.set_ylabel("precision")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    _save(fig, out_path)
    plt.close(fig)


def save_fbeta_scatter(
    rows: list[tuple[str, float, float]], beta_weight: float, out_path: str | Path
) -> None:
    """Scatter of per-model summaries: x = max F_{1/beta}, y = max F_beta,
    with the x = y diagonal drawn for orientation."""
    plt = _figure()
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    ax.plot([0.0, 1.0], [0.0, 1.0], color="#999999", linewidth=0.8, linestyle="--")
    for name, fb, fb_inv in rows:
        ax.plot([fb_inv], [fb], marker="o", markersize=5)
        ax.annotate(name, (fb_inv, fb), fontsize=7, xytext=(3, 3), textcoords="offset points")
    ax.set_xlim(0.0, 1.05)
    ax.set_ylim(0.0, 1.05)
    b = f"{beta_weight:g}"
    ax.set_xlabel(f"max F(1/{b})")
    ax.set_ylabel(f"max F({b})")
    ax.set_aspect("equal")
    fig.tight_layout()
    _save(fig, out_path)
    plt.close(fig)
