"""Command-line entry point: twirlkit <groups|catalog|twirl|synth|metrics|sweep>."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import pipeline
from .catalog import build_ansatz, format_template
from .metrics import entangling_capability, expressibility, norm_metric
from .pauli import format_op
from .permgroup import (
    Subgroup,
    enumerate_subgroups,
    read_groups_file,
    sample_subgroups,
    write_groups_file,
)
from .synth import metrics_of
from .twirl import twirl_ansatz


def _resolve_subgroup(spec: str, n: int) -> Subgroup:
    """Accepts 'trivial', 'full', a canonical id, or '<groups-file>[:index]'."""
    if spec == "trivial":
        return Subgroup.trivial(n)
    if spec == "full":
        return Subgroup.full(n)
    if ";" in spec or (len(spec) == n and spec.isdigit()):
        from .permgroup import Permutation

        perms = [Permutation.from_one_line(t) for t in spec.split(";")]
        sub = Subgroup(n, frozenset(perms))
        sub.validate()
        return sub
    path, _, index = spec.partition(":")
    subs = read_groups_file(path)
    return subs[int(index) if index else 0]


def _cmd_groups(args) -> int:
    if args.sample:
        subs = sample_subgroups(args.n, args.max_per_order, args.seed)
    else:
        subs = enumerate_subgroups(args.n)
    if args.out:
        write_groups_file(args.out, subs)
        print(f"wrote {len(subs)} subgroups to {args.out}")
    else:
        for s in subs:
            print(f"order={s.order}; elems={'|'.join(p.one_line() for p in s.sorted_elements())}")
    return 0


def _cmd_catalog(args) -> int:
    template = build_ansatz(args.id, args.n, args.depth)
    sys.stdout.write(format_template(template))
    return 0


def _cmd_twirl(args) -> int:
    template = build_ansatz(args.ansatz, args.n, args.depth)
    sub = _resolve_subgroup(args.subgroup, args.n)
    for i, gate in enumerate(twirl_ansatz(template, sub)):
        theta = f"x{gate.symbol}" if gate.symbol is not None else "pi"
        flag = "commuting" if gate.commuting else "non-commuting"
        print(f"[{i}] {gate.source.kind} q={','.join(map(str, gate.source.qubits))} "
              f"theta={theta} ({flag})")
        if args.dump:
            print(f"    {format_op(gate.twirled_generator)}")
    return 0


def _cmd_synth(args) -> int:
    template = build_ansatz(args.ansatz, args.n, args.depth)
    sub = _resolve_subgroup(args.subgroup, args.n)
    model, status = pipeline.build_model(template, sub)
    if args.dump or not args.metrics:
        sys.stdout.write(model.dump())
    if args.metrics:
        if status != "ok":
            print(json.dumps({"status": status, "size": None, "depth": None,
                              "two_qubit_count": None, "growth_ratio": None}))
        else:
            base = pipeline.baseline_size(args.ansatz, args.n, args.depth)
            m = metrics_of(model, baseline_size=base)
            print(json.dumps({"status": status, "size": m.size, "depth": m.depth,
                              "two_qubit_count": m.two_qubit_count,
                              "growth_ratio": m.growth_ratio}))
    return 0


def _cmd_metrics(args) -> int:
    cfg = pipeline.SweepConfig(
        ansatz_ids=(args.ansatz,), n=args.n, depths=(args.depth,),
        master_seed=args.seed, n_pairs=args.samples, ent_samples=args.samples,
        bins=args.bins,
    )
    sub = _resolve_subgroup(args.subgroup, args.n)
    record = pipeline.compute_cell(cfg, args.ansatz, args.depth, sub)
    print(json.dumps(asdict(record), indent=1))
    return 0


def _cmd_sweep(args) -> int:
    cfg = pipeline.parse_config(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    records = pipeline.run_sweep(cfg, resume=args.resume)
    print(f"wrote {len(records)} records to {cfg.out_csv} and {cfg.out_json}")
    if args.report:
        sys.stdout.write(pipeline.format_report(pipeline.report(records)))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="twirlkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("groups", help="enumerate or sample subgroups of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", action="store_true")
    p.add_argument("--max-per-order", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_groups)

    p = sub.add_parser("catalog", help="print a catalog circuit")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--depth", type=int, default=1)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("twirl", help="twirl an ansatz over a subgroup")
    p.add_argument("--ansatz", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--subgroup", required=True,
                   help="'trivial', 'full', canonical id, or groups-file[:index]")
    p.add_argument("--dump", action="store_true")
    p.set_defaults(func=_cmd_twirl)

    p = sub.add_parser("synth", help="synthesize a twirled ansatz")
    p.add_argument("--ansatz", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--dump", action="store_true")
    p.add_argument("--metrics", action="store_true")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("metrics", help="full metrics record for one cell")
    p.add_argument("--ansatz", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--bins", type=int, default=75)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("sweep", help="run a sweep from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
