"""Deterministic CSV/JSON writers and optional SVG line plots.

Reruns with the same config and seed must be byte-identical, so everything
here avoids wall-clock state: floats are printed with 17 significant digits
(lossless double round-trip), JSON keys are sorted, and figures are rendered
with a fixed hash salt and no embedded date.
"""

import hashlib
import json
from pathlib import Path

import numpy as np


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def fmt(x) -> str:
    """Lossless text form of one CSV cell."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


def write_csv(path, header: list[str], rows: list[dict], meta: dict | None = None) -> None:
    """Comma-separated table; optional '# key: value' metadata lines up top."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {k}: {v}" for k, v in (meta or {}).items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(row[h]) for h in header))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False,
                      allow_nan=True, default=_jsonable)


def write_json(path, obj: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(obj) + "\n", encoding="utf-8")


def config_hash(config: dict) -> str:
    """sha256 of the canonical JSON form of a resolved configuration."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, default=_jsonable)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def render_lines(path, x, series: dict[str, list], xlabel: str, ylabel: str,
                 title: str, logy: bool = False) -> None:
    """Simple multi-line SVG chart; deterministic output for identical data."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "collarlab"
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, ys in series.items():
        ax.plot(x, ys, marker="o", markersize=3, linewidth=1.2, label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(series) > 1:
        ax.legend(frameon=False, fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
