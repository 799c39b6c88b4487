"""The compiled kernels and the plain-Python fallback must agree bit for bit."""

import json
import os
import subprocess
import sys

PROBE = r"""
import json
import numpy as np
from hyperkings import Partition, random_instance, build_majority
from hyperkings.majority import majority_paths
from hyperkings import kernels, _jit
from hyperkings.paths import lift_majority_path, LiftFailed, realize_sequence

out = {"jit": _jit.JIT_ENABLED, "cases": []}
for seed, (n, k, sizes) in enumerate([(5, 3, (3, 2)), (6, 4, (2, 2, 2)), (6, 3, (1,) * 6), (5, 3, (4, 1))]):
    H = random_instance(n, k, Partition.from_sizes(sizes), seed)
    lists, counts = H.pair_lists
    case = {
        "reach": [kernels.reach_matrix(lists, counts, q).astype(int).tolist() for q in (2, 3, 4)],
        "kings": [kernels.king_mask(lists, counts, q).astype(int).tolist() for q in (2, 4)],
        "first_king": int(kernels.first_king(lists, counts, 4)),
    }
    paths, lengths = majority_paths(build_majority(H), 4)
    case["lift_all"] = int(kernels.lift_all(lists, counts, paths, lengths)) if len(paths) else None
    lifts = []
    for row, m in zip(paths, lengths):
        try:
            lifts.append(str(lift_majority_path(H, [int(v) for v in row[:m]])))
        except LiftFailed:
            lifts.append(None)
    case["lifts"] = lifts
    longest = int(np.argmax(lengths))
    seq = [int(v) for v in paths[longest, : lengths[longest]]]
    w = realize_sequence(H, seq)
    case["realize"] = None if w is None else str(w)
    out["cases"].append(case)
print(json.dumps(out))
"""


def probe(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("HYPERKINGS_DISABLE_JIT", None)
    if disable:
        env["HYPERKINGS_DISABLE_JIT"] = "1"
    proc = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env, check=True)
    return json.loads(proc.stdout)


def test_fallback_matches_jit():
    fast, slow = probe(False), probe(True)
    assert fast["jit"] and not slow["jit"]
    assert fast["cases"] == slow["cases"]
