"""Command-line front end: ``kcenter gen | run | oracle``."""
from __future__ import annotations

import argparse
import sys

from .datagen import GenSpec, generate
from .experiment import (ALGOS, ExperimentSpec, ingest_csv, rows_to_csv, run_algorithm,
                         run_experiment)
from .harness import MODES, PARTITION_RULES
from .oracle import DEFAULT_BUDGET, exact_kcenter


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


def _start(text: str) -> int | str:
    return text if text == "random" else int(text)


def _parse_sweeps(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        name, sep, values = item.partition("=")
        if not sep or name not in ("k", "phi"):
            raise ValueError(f"bad sweep {item!r}; use k=2,5,10 or phi=1,4,6,8")
        out[name] = values
    return out


def _add_dataset_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", metavar="KIND:N:KPRIME:DIM:SIDE:SIGMA",
                     help="synthetic dataset, e.g. gau:100000:25:3:100:0.1")
    src.add_argument("--in", dest="infile", metavar="FILE", help="CSV point file")
    p.add_argument("--gen-seed", type=int, default=0, help="seed of the generator")


def _load(args):
    if args.gen:
        return generate(GenSpec.parse(args.gen, seed=args.gen_seed))
    return ingest_csv(args.infile)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kcenter", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a synthetic point set as CSV")
    g.add_argument("--gen", required=True, metavar="KIND:N:KPRIME:DIM:SIDE:SIGMA")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, metavar="FILE")

    r = sub.add_parser("run", help="run algorithms and emit result rows as CSV")
    _add_dataset_args(r)
    r.add_argument("--algo", default="gon",
                   help=f"comma-separated subset of {','.join(ALGOS)}")
    r.add_argument("--k", type=int, default=None)
    r.add_argument("--m", type=int, default=50)
    r.add_argument("--c", type=int, default=None, help="machine capacity (MRG)")
    r.add_argument("--eps", type=float, default=0.1)
    r.add_argument("--phi", type=float, default=8.0)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--repeats", type=int, default=1)
    r.add_argument("--sweep", action="append", default=[], metavar="NAME=V1,V2,...",
                   help="k=2,5,10,25,50,100 or phi=1,4,6,8 (repeatable)")
    r.add_argument("--mode", choices=MODES, default="sequential")
    r.add_argument("--partition", choices=PARTITION_RULES, default="contiguous")
    r.add_argument("--start", type=_start, default=0, help="start position or 'random'")
    r.add_argument("--out", metavar="FILE", help="result CSV (default: stdout)")
    r.add_argument("--trace", metavar="FILE",
                   help="per-round trace CSV; only for a single run (no sweep, one repeat)")

    o = sub.add_parser("oracle", help="exact k-center by enumeration")
    _add_dataset_args(o)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def _cmd_gen(args) -> int:
    spec = GenSpec.parse(args.gen, seed=args.seed)
    generate(spec).to_csv(args.out, header=spec.describe())
    return 0


def _cmd_run(args) -> int:
    sweeps = _parse_sweeps(args.sweep)
    ks = _int_list(sweeps["k"]) if "k" in sweeps else ([args.k] if args.k else [])
    if not ks:
        raise ValueError("give --k or --sweep k=...")
    phis = _float_list(sweeps["phi"]) if "phi" in sweeps else [args.phi]
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    ps = _load(args)
    spec = ExperimentSpec(dataset=ps, algos=algos, ks=ks, m=args.m, c=args.c, eps=args.eps,
                          phis=phis, repeats=args.repeats, seed=args.seed, mode=args.mode,
                          partition=args.partition, start=args.start, out=args.out)
    if args.trace:
        if len(ks) * len(algos) * len(phis) * args.repeats != 1:
            raise ValueError("--trace needs exactly one run")
        out = run_algorithm(ps, algos[0], ks[0], m=args.m, c=args.c, eps=args.eps,
                            phi=phis[0], seed=args.seed, mode=args.mode,
                            partition=args.partition, start=args.start)
        out.trace.to_csv(args.trace)
    rows = run_experiment(spec, ps)
    if args.out is None:
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _cmd_oracle(args) -> int:
    ps = _load(args)
    res = exact_kcenter(ps, args.k, args.budget)
    print(f"opt_radius={res.opt_radius!r}")
    print("centers=" + ",".join(str(c) for c in res.opt_centers))
    print(f"enumerated={res.enumerated}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"gen": _cmd_gen, "run": _cmd_run, "oracle": _cmd_oracle}
    try:
        return handlers[args.command](args)
    except (ValueError, IndexError, OSError) as exc:
        print(f"kcenter: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
