"""Time the compiled kernels against the plain-Python fallback.

Each mode runs in its own interpreter because the JIT switch is read at
import time. Usage: ``python3 benchmarks/bench_kernels.py [--instances N]``.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import numpy as np
from hyperkings import Partition, build_majority, kernels, random_instance
from hyperkings.majority import majority_paths

count = int(sys.argv[1])
shapes = [(6, 3, (3, 3)), (7, 4, (3, 2, 2)), (7, 3, (1,) * 7)]
cases = []
for i in range(count):
    n, k, sizes = shapes[i % len(shapes)]
    H = random_instance(n, k, Partition.from_sizes(sizes), i)
    lists, counts = H.pair_lists
    paths, lengths = majority_paths(build_majority(H), 4)
    cases.append((lists, counts, paths, lengths))

# one warm-up call so compilation (or cache loading) is not timed
kernels.king_mask(*cases[0][:2], 4)
kernels.lift_all(*cases[0])

timings = {}
t0 = time.perf_counter()
kings = [int(kernels.king_mask(lists, counts, 4).sum()) for lists, counts, _, _ in cases]
timings["king_mask"] = time.perf_counter() - t0
t0 = time.perf_counter()
lifts = [int(kernels.lift_all(*case)) for case in cases]
timings["lift_all"] = time.perf_counter() - t0
print(json.dumps({"timings": timings, "kings": kings, "lifts": lifts}))
"""


def run(instances: int, disable_jit: bool) -> dict:
    env = dict(os.environ)
    env.pop("HYPERKINGS_DISABLE_JIT", None)
    if disable_jit:
        env["HYPERKINGS_DISABLE_JIT"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(instances)], capture_output=True, text=True, env=env, check=True
    )
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--instances", type=int, default=30)
    args = parser.parse_args()

    jit, pure = run(args.instances, False), run(args.instances, True)
    if (jit["kings"], jit["lifts"]) != (pure["kings"], pure["lifts"]):
        sys.exit("results differ between the compiled and fallback kernels")
    print(f"{'kernel':<10} {'numba (s)':>10} {'python (s)':>11} {'speedup':>8}")
    for name in jit["timings"]:
        a, b = jit["timings"][name], pure["timings"][name]
        print(f"{name:<10} {a:>10.4f} {b:>11.4f} {b / a:>7.1f}x")


if __name__ == "__main__":
    main()
