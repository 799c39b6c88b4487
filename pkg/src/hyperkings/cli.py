"""Command-line front end.

Exit status: 0 on success, 1 when a claim is violated or a lift fails,
2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import HypertournamentError, Partition, load_mht, save_mht, to_mht
from .generators import (
    InstanceSpace,
    SpaceTooLarge,
    counterexample_conj2,
    fixture_prop2,
    random_instance,
    singleton_partition,
)
from .majority import TieBreak, build_majority, majority_paths, to_text
from .paths import LiftFailed, lift_majority_path, q_kings
from .verify import CLAIMS, Campaign, default_jobs, report_json, run_campaign


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _partition(n: int, parts: str | None) -> Partition:
    if parts is None or parts == "singleton":
        return singleton_partition(n)
    sizes = _ints(parts)
    if sum(sizes) != n:
        raise UsageError(f"part sizes {parts} do not add up to n={n}")
    return Partition.from_sizes(sizes)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.kind == "prop2":
        _emit(to_mht(fixture_prop2()[0]), args.out)
        return 0
    if args.n is None or args.k is None:
        raise UsageError("gen needs --n and --k")
    if args.kind == "prop1":
        sizes = _ints(args.parts or "")
        if len(sizes) != 2 or sum(sizes) != args.n:
            raise UsageError("prop1 needs --parts a,b summing to --n")
        _emit(to_mht(counterexample_conj2(args.k, *sizes)), args.out)
        return 0
    partition = _partition(args.n, args.parts)
    if args.kind == "random":
        _emit(to_mht(random_instance(args.n, args.k, partition, args.seed)), args.out)
        return 0
    space = InstanceSpace(args.n, args.k, partition)
    if args.index is not None:
        _emit(to_mht(space[args.index]), args.out)
        return 0
    if not args.out_dir:
        raise UsageError("enumerate needs --index or --out-dir")
    if len(space) > args.cap:
        raise SpaceTooLarge(f"{len(space)} instances exceed the cap {args.cap}")
    os.makedirs(args.out_dir, exist_ok=True)
    width = len(str(len(space) - 1))
    for i, H in enumerate(space):
        save_mht(H, os.path.join(args.out_dir, f"{i:0{width}d}.mht"))
    print(f"wrote {len(space)} instances to {args.out_dir}")
    return 0


def cmd_kings(args) -> int:
    H = load_mht(args.file)
    kings = q_kings(H, args.q)
    print(f"{args.q}-kings: " + " ".join(map(str, sorted(kings))))
    for i, part in enumerate(H.partition.parts()):
        print(f"part {i}: " + " ".join(str(v) for v in part if v in kings))
    return 0


def cmd_majority(args) -> int:
    H = load_mht(args.file)
    M = build_majority(H, TieBreak.parse(args.tie_break))
    _emit(to_text(M), args.out)
    return 0


def cmd_lift(args) -> int:
    H = load_mht(args.file)
    if args.path:
        mpaths = [list(args.path)]
    else:
        M = build_majority(H, TieBreak.parse(args.tie_break))
        paths, lengths = majority_paths(M, 4)
        mpaths = [[int(v) for v in row[:m]] for row, m in zip(paths, lengths)]
    failed = 0
    for mpath in mpaths:
        try:
            witness = lift_majority_path(H, mpath)
        except LiftFailed as exc:
            failed += 1
            print(f"{' '.join(map(str, mpath))} -> FAILED: {exc}")
            continue
        print(f"{' '.join(map(str, mpath))} -> {witness}")
    return 1 if failed else 0


def cmd_verify(args) -> int:
    campaign = Campaign(
        claim=args.claim,
        mode="exhaustive" if args.exhaustive else "sampled",
        n=args.n,
        k=args.k,
        partitions=[_ints(p) for p in args.parts] if args.parts else None,
        tie_breaks=args.tie_break,
        samples=args.samples,
        seed=args.seed,
        budget=args.budget,
        cap=args.cap,
    )
    report = run_campaign(campaign, jobs=args.jobs or default_jobs())
    _emit(report_json(report), args.out)
    print(
        f"{report['claim']}: {report['status']} "
        f"({report['instances_checked']} checked, {len(report['violations'])} violations)",
        file=sys.stderr,
    )
    return 0 if report["status"] == "pass" else 1


def cmd_counterexample(args) -> int:
    sizes = args.sizes
    if len(sizes) != 2:
        raise UsageError("--sizes takes exactly two part sizes")
    _emit(to_mht(counterexample_conj2(args.k, *sizes)), args.out)
    return 0


def cmd_fixture(args) -> int:
    H, M = fixture_prop2()
    _emit(to_mht(H), args.out)
    if args.majority_out:
        with open(args.majority_out, "w") as fh:
            fh.write(to_text(M))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperkings", description="Kings in multipartite hypertournaments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate instances in .mht format")
    p.add_argument("--kind", choices=("random", "enumerate", "prop1", "prop2"), default="random")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--parts", help="part sizes a,b,... (default: all singletons)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int, help="enumerate: write only this instance")
    p.add_argument("--out-dir", help="enumerate: write every instance into this directory")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("kings", help="print the q-kings of an instance")
    p.add_argument("file")
    p.add_argument("--q", type=int, default=4)
    p.set_defaults(func=cmd_kings)

    p = sub.add_parser("majority", help="print a majority tournament")
    p.add_argument("file")
    p.add_argument("--tie-break", default="lower")
    p.add_argument("--out")
    p.set_defaults(func=cmd_majority)

    p = sub.add_parser("lift", help="lift majority paths to paths of the instance")
    p.add_argument("file")
    p.add_argument("--path", type=_ints, help="majority path u,v,...; default: all pairs at distance <= 4")
    p.add_argument("--tie-break", default="lower")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="run a claim-checking campaign")
    p.add_argument("--claim", required=True, choices=CLAIMS)
    p.add_argument("--n", type=_range)
    p.add_argument("--k", type=_range)
    p.add_argument("--parts", action="append", help="part sizes a,b,...; repeatable")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tie-break", action="append", help="lower, higher, random, random:S, explicit:u-w,...; repeatable")
    p.add_argument("--jobs", type=int)
    p.add_argument("--budget", type=float, help="time cap in seconds for sampled campaigns")
    p.add_argument("--cap", type=int, default=10**8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", help="bipartite instance with at most one 4-king per part")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sizes", type=_ints, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("fixture", help="write a named fixture")
    p.add_argument("name", choices=("prop2",))
    p.add_argument("--out")
    p.add_argument("--majority-out")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, HypertournamentError, ValueError, IndexError, OSError) as exc:
        print(f"hyperkings {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
