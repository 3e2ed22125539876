"""Sweep orchestration: ansatz x subgroup x depth cells to CSV/JSON.

Every cell is computed independently and deterministically: its RNG seed is
a stable hash of (master seed, ansatz id, subgroup id, depth), so results do
not depend on worker count or scheduling order.  Rows are sorted by cell key
before writing, which makes reruns byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

from .catalog import ANSATZ_IDS, AnsatzTemplate, build_ansatz
from .metrics import (
    DEFAULT_BINS,
    DEFAULT_ENT_SAMPLES,
    DEFAULT_PAIRS,
    MetricsRecord,
    entangling_capability,
    expressibility,
    norm_metric,
)
from .permgroup import Subgroup, enumerate_subgroups, read_groups_file, sample_subgroups
from .synth import Circuit, NonCommutingOrbit, metrics_of, peephole, synthesize
from .twirl import twirl_ansatz

ALL_METRICS = ("norm", "circuit", "expressibility", "entanglement")

CSV_COLUMNS = (
    "ansatz", "n", "depth", "subgroup_id", "subgroup_order", "seed", "status",
    "norm_metric", "size", "depth_metric", "two_qubit", "growth_ratio",
    "expressibility", "entanglement", "commuting_fraction",
)

_CSV_FIELD_BY_COLUMN = {
    "two_qubit": "two_qubit_count",
    "expressibility": "expressibility_dkl",
    "entanglement": "entangling_q",
}


@dataclass
class SweepConfig:
    ansatz_ids: tuple[int, ...] = ANSATZ_IDS
    n: int = 4
    depths: tuple[int, ...] = (1,)
    subgroup_source: str = "enumerate"  # enumerate | sample | file
    subgroup_file: str | None = None
    max_per_order: int = 30
    sample_seed: int = 0
    master_seed: int = 0
    n_pairs: int = DEFAULT_PAIRS
    ent_samples: int = DEFAULT_ENT_SAMPLES
    bins: int = DEFAULT_BINS
    metrics: tuple[str, ...] = ALL_METRICS
    out_csv: str = "results.csv"
    out_json: str = "results.json"
    workers: int = 1

    def validate(self) -> None:
        if not self.ansatz_ids:
            raise ValueError("empty ansatz list")
        if not self.depths or any(d < 1 for d in self.depths):
            raise ValueError("depths must be a non-empty list of integers >= 1")
        if any(a not in ANSATZ_IDS for a in self.ansatz_ids):
            raise ValueError("ansatz ids must lie in 1..19")
        if self.subgroup_source not in ("enumerate", "sample", "file"):
            raise ValueError(f"unknown subgroup source: {self.subgroup_source!r}")
        if self.subgroup_source == "file" and not self.subgroup_file:
            raise ValueError("subgroup_source=file requires subgroup_file")
        unknown = set(self.metrics) - set(ALL_METRICS)
        if unknown:
            raise ValueError(f"unknown metrics: {sorted(unknown)}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part and not part.startswith("-"):
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)


def parse_config(path: str) -> SweepConfig:
    """Flat key=value config file; '#' starts a comment."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    cfg = SweepConfig()
    if "ansatzes" in values:
        cfg.ansatz_ids = _parse_int_list(values["ansatzes"])
    if "n" in values:
        cfg.n = int(values["n"])
    if "depths" in values:
        cfg.depths = _parse_int_list(values["depths"])
    if "subgroup_source" in values:
        cfg.subgroup_source = values["subgroup_source"]
    if "subgroup_file" in values:
        cfg.subgroup_file = values["subgroup_file"]
    if "max_per_order" in values:
        cfg.max_per_order = int(values["max_per_order"])
    if "sample_seed" in values:
        cfg.sample_seed = int(values["sample_seed"])
    if "master_seed" in values:
        cfg.master_seed = int(values["master_seed"])
    if "n_pairs" in values:
        cfg.n_pairs = int(values["n_pairs"])
    if "ent_samples" in values:
        cfg.ent_samples = int(values["ent_samples"])
    if "bins" in values:
        cfg.bins = int(values["bins"])
    if "metrics" in values:
        cfg.metrics = tuple(m.strip() for m in values["metrics"].split(",") if m.strip())
    if "out_csv" in values:
        cfg.out_csv = values["out_csv"]
    if "out_json" in values:
        cfg.out_json = values["out_json"]
    if "workers" in values:
        cfg.workers = int(values["workers"])
    cfg.validate()
    return cfg


def subgroups_for(cfg: SweepConfig) -> list[Subgroup]:
    if cfg.subgroup_source == "enumerate":
        return enumerate_subgroups(cfg.n)
    if cfg.subgroup_source == "sample":
        return sample_subgroups(cfg.n, cfg.max_per_order, cfg.sample_seed)
    return read_groups_file(cfg.subgroup_file)


def cell_seed(master_seed: int, ansatz_id: int, subgroup_id: str, depth: int) -> int:
    key = f"{master_seed}|{ansatz_id}|{subgroup_id}|{depth}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big") >> 1


def build_model(template: AnsatzTemplate, sub: Subgroup) -> tuple[Circuit, str]:
    """Synthesize the twirled template; fall back to exact mode when needed."""
    twirled = twirl_ansatz(template, sub)
    try:
        return peephole(synthesize(twirled, "product", n=template.n)), "ok"
    except NonCommutingOrbit:
        return synthesize(twirled, "exact", n=template.n), "exact_fallback"


def baseline_size(ansatz_id: int, n: int, depth: int) -> int:
    """Size of the depth-matched original under the identical lowering."""
    template = build_ansatz(ansatz_id, n, depth)
    circuit, status = build_model(template, Subgroup.trivial(n))
    if status != "ok":
        raise RuntimeError(f"trivial twirl of ansatz {ansatz_id} failed to synthesize")
    return len(circuit.instructions)


def compute_cell(cfg: SweepConfig, ansatz_id: int, depth: int, sub: Subgroup) -> MetricsRecord:
    seed = cell_seed(cfg.master_seed, ansatz_id, sub.id, depth)
    record = MetricsRecord(
        ansatz=ansatz_id, n=cfg.n, depth=depth,
        subgroup_id=sub.id, subgroup_order=sub.order, seed=seed,
    )
    try:
        template = build_ansatz(ansatz_id, cfg.n, depth)
        twirled = twirl_ansatz(template, sub)
        record.commuting_fraction = sum(1 for g in twirled if g.commuting) / len(twirled)
        if "norm" in cfg.metrics:
            record.norm_metric = norm_metric(template, sub)
        model, status = build_model(template, sub)
        record.status = status
        if "circuit" in cfg.metrics and status == "ok":
            m = metrics_of(model, baseline_size=baseline_size(ansatz_id, cfg.n, depth))
            record.size = m.size
            record.depth_metric = m.depth
            record.two_qubit_count = m.two_qubit_count
            record.growth_ratio = m.growth_ratio
        if "expressibility" in cfg.metrics:
            record.expressibility_dkl = expressibility(
                model, n_pairs=cfg.n_pairs, bins=cfg.bins, seed=seed
            )
        if "entanglement" in cfg.metrics:
            record.entangling_q = entangling_capability(
                model, n_samples=cfg.ent_samples, seed=seed
            )
    except Exception as exc:  # a broken cell must not abort the sweep
        record.status = f"error:{type(exc).__name__}"
    return record


def _cell_worker(args) -> MetricsRecord:
    return compute_cell(*args)


def _sort_key(r: MetricsRecord):
    return (r.ansatz, r.n, r.depth, r.subgroup_order, r.subgroup_id, r.seed)


def run_sweep(cfg: SweepConfig, resume: bool = False) -> list[MetricsRecord]:
    cfg.validate()
    subs = subgroups_for(cfg)
    done: dict[tuple, MetricsRecord] = {}
    if resume:
        try:
            for r in read_csv(cfg.out_csv):
                done[(r.ansatz, r.n, r.depth, r.subgroup_id)] = r
        except FileNotFoundError:
            pass
    cells = [
        (cfg, a, d, s)
        for a in cfg.ansatz_ids
        for d in cfg.depths
        for s in subs
        if (a, cfg.n, d, s.id) not in done
    ]
    if cfg.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            fresh = list(pool.map(_cell_worker, cells, chunksize=1))
    else:
        fresh = [compute_cell(*cell) for cell in cells]
    records = sorted(list(done.values()) + fresh, key=_sort_key)
    write_csv(cfg.out_csv, records)
    write_json(cfg.out_json, records)
    return records


# --- serialization ----------------------------------------------------------


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: str, records: list[MetricsRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for r in records:
            row = []
            for col in CSV_COLUMNS:
                row.append(_format_value(getattr(r, _CSV_FIELD_BY_COLUMN.get(col, col))))
            fh.write(",".join(row) + "\n")


def _parse_cell(text: str, kind):
    if text == "":
        return None
    return kind(text)


def read_csv(path: str) -> list[MetricsRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"{path}: unexpected CSV columns")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            vals = line.split(",")
            by_col = dict(zip(CSV_COLUMNS, vals))
            records.append(MetricsRecord(
                ansatz=int(by_col["ansatz"]),
                n=int(by_col["n"]),
                depth=int(by_col["depth"]),
                subgroup_id=by_col["subgroup_id"],
                subgroup_order=int(by_col["subgroup_order"]),
                seed=int(by_col["seed"]),
                status=by_col["status"],
                norm_metric=_parse_cell(by_col["norm_metric"], float),
                size=_parse_cell(by_col["size"], int),
                depth_metric=_parse_cell(by_col["depth_metric"], int),
                two_qubit_count=_parse_cell(by_col["two_qubit"], int),
                growth_ratio=_parse_cell(by_col["growth_ratio"], float),
                expressibility_dkl=_parse_cell(by_col["expressibility"], float),
                entangling_q=_parse_cell(by_col["entanglement"], float),
                commuting_fraction=_parse_cell(by_col["commuting_fraction"], float),
            ))
    return records


def write_json(path: str, records: list[MetricsRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([asdict(r) for r in records], fh, indent=1)
        fh.write("\n")


# --- summary reporting -------------------------------------------------------


@dataclass
class SweepReport:
    per_ansatz: dict = field(default_factory=dict)
    order12_equals_order24_size: bool | None = None
    expressibility_increases_with_order: bool | None = None
    entanglement_drop_ansatzes: list[int] = field(default_factory=list)
    non_monotone_size_ansatzes: list[int] = field(default_factory=list)
    growth_median: float | None = None
    growth_max: float | None = None


def report(records: list[MetricsRecord]) -> SweepReport:
    """Qualitative summary: growth ratios and trend flags across the sweep."""
    if not records:
        raise ValueError("no records to report on")
    rep = SweepReport()
    by_ansatz: dict[int, list[MetricsRecord]] = {}
    for r in records:
        by_ansatz.setdefault(r.ansatz, []).append(r)

    eq_flags, expr_flags, growth_at_max = [], [], []
    for ansatz_id, rows in sorted(by_ansatz.items()):
        orders = sorted({r.subgroup_order for r in rows})
        size_by_order = {
            k: [r.size for r in rows if r.subgroup_order == k] for k in orders
        }
        mean_size = {
            k: (statistics.mean(v) if all(s is not None for s in v) and v else None)
            for k, v in size_by_order.items()
        }
        expr_by_order = {
            k: [r.expressibility_dkl for r in rows
                if r.subgroup_order == k and r.expressibility_dkl is not None]
            for k in orders
        }
        mean_expr = {k: (statistics.mean(v) if v else None) for k, v in expr_by_order.items()}
        ent_orig = next(
            (r.entangling_q for r in rows if r.subgroup_order == 1 and r.entangling_q is not None),
            None,
        )
        ent_full = None
        if orders:
            full = max(orders)
            vals = [r.entangling_q for r in rows
                    if r.subgroup_order == full and r.entangling_q is not None]
            ent_full = statistics.mean(vals) if vals else None

        if 12 in mean_size and 24 in mean_size:
            s12 = {r.size for r in rows if r.subgroup_order == 12}
            s24 = {r.size for r in rows if r.subgroup_order == 24}
            eq_flags.append(s12 == s24)
        present = [k for k in orders if mean_expr.get(k) is not None]
        if len(present) >= 2:
            seq = [mean_expr[k] for k in present]
            expr_flags.append(all(b >= a - 1e-12 for a, b in zip(seq, seq[1:])))
        sizes_seq = [mean_size[k] for k in orders if mean_size.get(k) is not None]
        if any(b < a for a, b in zip(sizes_seq, sizes_seq[1:])):
            rep.non_monotone_size_ansatzes.append(ansatz_id)
        growths = [r.growth_ratio for r in rows
                   if r.subgroup_order == max(orders) and r.growth_ratio is not None]
        if growths:
            growth_at_max.append(max(growths))
        if ent_orig is not None and ent_full is not None and ent_full < ent_orig - 0.02:
            rep.entanglement_drop_ansatzes.append(ansatz_id)
        rep.per_ansatz[ansatz_id] = {
            "mean_size_by_order": mean_size,
            "mean_expressibility_by_order": mean_expr,
            "entangling_original": ent_orig,
            "entangling_full": ent_full,
        }
    rep.order12_equals_order24_size = all(eq_flags) if eq_flags else None
    rep.expressibility_increases_with_order = all(expr_flags) if expr_flags else None
    if growth_at_max:
        rep.growth_median = statistics.median(growth_at_max)
        rep.growth_max = max(growth_at_max)
    return rep


def format_report(rep: SweepReport) -> str:
    lines = ["sweep summary", "============="]
    if rep.order12_equals_order24_size is not None:
        lines.append(f"order-12 circuit size equals order-24: {rep.order12_equals_order24_size}")
    if rep.expressibility_increases_with_order is not None:
        lines.append(
            "KL divergence grows with subgroup order (less expressible): "
            f"{rep.expressibility_increases_with_order}"
        )
    if rep.growth_median is not None:
        lines.append(
            f"circuit-size growth at maximal symmetry: median {rep.growth_median:.2f}x, "
            f"max {rep.growth_max:.2f}x"
        )
    if rep.non_monotone_size_ansatzes:
        lines.append(
            "non-monotone size vs. order for ansatzes: "
            + ", ".join(map(str, rep.non_monotone_size_ansatzes))
        )
    if rep.entanglement_drop_ansatzes:
        lines.append(
            "entangling capability dropped (> 0.02) for ansatzes: "
            + ", ".join(map(str, rep.entanglement_drop_ansatzes))
        )
    for ansatz_id, info in sorted(rep.per_ansatz.items()):
        eo, ef = info["entangling_original"], info["entangling_full"]
        ent = ""
        if eo is not None and ef is not None:
            ent = f"  Q: {eo:.3f} -> {ef:.3f}"
        sizes = {k: v for k, v in info["mean_size_by_order"].items() if v is not None}
        size_text = " ".join(f"{k}:{v:.0f}" for k, v in sizes.items())
        lines.append(f"ansatz {ansatz_id:2d}  size by order: {size_text or 'n/a'}{ent}")
    return "\n".join(lines) + "\n"
