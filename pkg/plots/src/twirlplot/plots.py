"""Render sweep-result figures from a results.csv file.

The input contract is the sweep CSV schema (columns below); this package
never imports the analysis library.  All figures aggregate per
(ansatz, subgroup order): the mean over subgroups of equal order, with
min-max whiskers where the figure kind draws error bars.  Rendering is a
pure function of the CSV contents; `render` returns the aggregation it drew
so callers can verify that.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("norm_heatmap", "size_lines", "expressibility_scatter", "entanglement_scatter")

REQUIRED_COLUMNS = ("ansatz", "n", "depth", "subgroup_id", "subgroup_order")
_METRIC_COLUMN = {
    "norm_heatmap": "norm_metric",
    "size_lines": "size",
    "expressibility_scatter": "expressibility",
    "entanglement_scatter": "entanglement",
}
_VALUE_LABEL = {
    "norm_heatmap": "mean generator-difference norm",
    "size_lines": "circuit size (instructions)",
    "expressibility_scatter": "expressibility $D_{KL}$ (log)",
    "entanglement_scatter": "entangling capability $Q$",
}


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    kind: str
    out_path: str
    ansatz_filter: tuple[int, ...] = ()
    depth_filter: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind: {self.kind!r}")


@dataclass
class Aggregation:
    """Per-(ansatz, order) means and ranges for one metric column."""

    metric: str
    ansatz_ids: list[int] = field(default_factory=list)
    orders: list[int] = field(default_factory=list)
    mean: dict = field(default_factory=dict)   # (ansatz, order) -> float
    low: dict = field(default_factory=dict)
    high: dict = field(default_factory=dict)

    def matrix(self) -> np.ndarray:
        """Dense (ansatz x order) mean matrix, NaN where absent."""
        out = np.full((len(self.ansatz_ids), len(self.orders)), np.nan)
        for i, a in enumerate(self.ansatz_ids):
            for j, k in enumerate(self.orders):
                if (a, k) in self.mean:
                    out[i, j] = self.mean[(a, k)]
        return out


def load_rows(csv_path: str) -> list[dict]:
    with open(csv_path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"{csv_path}: missing required columns {missing}")
        return list(reader)


def _select(rows: list[dict], spec: PlotSpec) -> list[dict]:
    metric = _METRIC_COLUMN[spec.kind]
    if rows and metric not in rows[0]:
        raise ValueError(f"{spec.csv_path}: missing metric column {metric!r}")
    picked = []
    for row in rows:
        if spec.ansatz_filter and int(row["ansatz"]) not in spec.ansatz_filter:
            continue
        if spec.depth_filter and int(row["depth"]) not in spec.depth_filter:
            continue
        if row.get(metric, "") == "":
            continue  # absent metric (e.g. exact-fallback circuit cells)
        picked.append(row)
    if not picked:
        raise ValueError(f"{spec.csv_path}: no rows with a {metric!r} value match the filters")
    return picked


def aggregate(rows: list[dict], spec: PlotSpec) -> Aggregation:
    metric = _METRIC_COLUMN[spec.kind]
    picked = _select(rows, spec)
    values: dict[tuple[int, int], list[float]] = {}
    for row in picked:
        key = (int(row["ansatz"]), int(row["subgroup_order"]))
        values.setdefault(key, []).append(float(row[metric]))
    agg = Aggregation(metric=metric)
    agg.ansatz_ids = sorted({a for a, _ in values})
    agg.orders = sorted({k for _, k in values})
    for key, vals in values.items():
        agg.mean[key] = sum(vals) / len(vals)
        agg.low[key] = min(vals)
        agg.high[key] = max(vals)
    return agg


def _original_expressibility_order(rows: list[dict], agg: Aggregation) -> list[int]:
    """Ansatz ids sorted least- to most-expressible by the original circuit.

    Larger KL divergence = less expressible, so sort descending by the
    order-1 value; ansatzes without an order-1 value keep id order at the end.
    """
    base: dict[int, float] = {}
    for row in rows:
        if int(row["subgroup_order"]) == 1 and row.get("expressibility", "") != "":
            base[int(row["ansatz"])] = float(row["expressibility"])
    return sorted(
        agg.ansatz_ids,
        key=lambda a: (-base.get(a, -math.inf), a),
    )


def render(spec: PlotSpec) -> Aggregation:
    """Write the figure for `spec` and return the aggregation behind it."""
    rows = load_rows(spec.csv_path)
    agg = aggregate(rows, spec)
    if spec.kind == "norm_heatmap":
        _render_heatmap(agg)
    elif spec.kind == "size_lines":
        _render_size_lines(agg)
    else:
        x_order = (
            _original_expressibility_order(rows, agg)
            if spec.kind == "expressibility_scatter"
            else agg.ansatz_ids
        )
        _render_scatter(agg, x_order, log_scale=spec.kind == "expressibility_scatter")
    plt.tight_layout()
    plt.savefig(spec.out_path, dpi=150)
    plt.close()
    return agg


def _render_heatmap(agg: Aggregation) -> None:
    m = agg.matrix()
    fig, ax = plt.subplots(figsize=(6, 8))
    im = ax.imshow(m, aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(agg.orders)), [str(k) for k in agg.orders])
    ax.set_yticks(range(len(agg.ansatz_ids)), [str(a) for a in agg.ansatz_ids])
    ax.set_xlabel("subgroup order")
    ax.set_ylabel("ansatz id")
    fig.colorbar(im, ax=ax, label=_VALUE_LABEL["norm_heatmap"])


def _render_size_lines(agg: Aggregation) -> None:
    fig, ax = plt.subplots(figsize=(8, 5))
    cmap = plt.colormaps["tab20"]
    for i, a in enumerate(agg.ansatz_ids):
        ks = [k for k in agg.orders if (a, k) in agg.mean]
        if not ks:
            continue
        means = [agg.mean[(a, k)] for k in ks]
        err_lo = [agg.mean[(a, k)] - agg.low[(a, k)] for k in ks]
        err_hi = [agg.high[(a, k)] - agg.mean[(a, k)] for k in ks]
        ax.errorbar(ks, means, yerr=[err_lo, err_hi], marker="o", markersize=3,
                    linewidth=1, capsize=2, color=cmap(i % 20), label=str(a))
    ax.set_xlabel("subgroup order")
    ax.set_ylabel(_VALUE_LABEL["size_lines"])
    ax.legend(title="ansatz", ncols=2, fontsize=7)


def _render_scatter(agg: Aggregation, x_order: list[int], log_scale: bool) -> None:
    fig, ax = plt.subplots(figsize=(9, 5))
    cmap = plt.colormaps["viridis"]
    positions = {a: i for i, a in enumerate(x_order)}
    for j, k in enumerate(agg.orders):
        xs, ys, lo, hi = [], [], [], []
        for a in x_order:
            if (a, k) not in agg.mean:
                continue
            xs.append(positions[a])
            ys.append(agg.mean[(a, k)])
            lo.append(agg.mean[(a, k)] - agg.low[(a, k)])
            hi.append(agg.high[(a, k)] - agg.mean[(a, k)])
        color = "tab:purple" if k == 1 else cmap(j / max(len(agg.orders) - 1, 1))
        marker = "s" if k == 1 else "o"
        label = "original (order 1)" if k == 1 else f"order {k}"
        ax.errorbar(xs, ys, yerr=[lo, hi], linestyle="none", marker=marker,
                    markersize=4, capsize=2, color=color, label=label)
    ax.set_xticks(range(len(x_order)), [str(a) for a in x_order])
    ax.set_xlabel("ansatz id" + (" (least to most expressible original)" if log_scale else ""))
    ax.set_ylabel(_VALUE_LABEL["expressibility_scatter" if log_scale else "entanglement_scatter"])
    if log_scale:
        ax.set_yscale("log")
    ax.legend(fontsize=7, ncols=3)
