"""Claim-checking campaigns over enumerated or sampled instances.

A claim is a hypothesis plus a conclusion about one instance. A campaign
draws instances, skips (and counts) those outside the hypothesis, and
records every failed conclusion as a :class:`Violation` that carries enough
data to re-run the check on its own. Violations are results, not errors.
"""

from __future__ import annotations

import bisect
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from . import kernels
from .core import Hypertournament, Partition, from_mht, to_mht, transmitters
from .generators import (
    DEFAULT_CAP,
    FIXTURE_TIES,
    InstanceSpace,
    SpaceTooLarge,
    bipartite_shapes,
    counterexample_conj2,
    default_shapes,
    fixture_prop2,
    integer_partitions,
    random_instance,
)
from .majority import (
    TieBreak,
    build_majority,
    digraph_transmitters,
    majority_paths,
)
from .paths import (
    HypothesisViolated,
    LiftFailed,
    SequenceGraph,
    check_lemma1,
    hamilton_path,
    has_king,
    king_mask,
    lift_majority_path,
    lift_majority_path_reference,
    max_matching,
    path_at_most,
    reach_matrix,
)

CLAIMS = (
    "majority-lemma",
    "main-theorem",
    "theorem-t1",
    "lemma-1",
    "lemma-3",
    "two-king",
    "prop1-family",
    "prop2-fixture",
    "hamilton-first-vertex",
)
MAJORITY_CLAIMS = {"majority-lemma", "theorem-t1", "lemma-3", "prop2-fixture"}
DEFAULT_TIE_BREAKS = ("lower", "random", "random", "random")


class OutOfHypothesis(Exception):
    """The instance does not satisfy the claim's hypothesis."""


class UnknownClaim(ValueError):
    pass


@dataclass
class Violation:
    claim: str
    instance: str
    witness: dict
    tie_break: str | None = None
    index: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Lemma1Case:
    graph: SequenceGraph
    p: int


def graph_to_text(case: Lemma1Case) -> str:
    lines = [f"{case.p} {case.graph.n_left}"]
    for i, nbrs in enumerate(case.graph.adjacency):
        lines.extend(f"{i} {r}" for r in nbrs)
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Lemma1Case:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    p, n_left = (int(x) for x in rows[0])
    return Lemma1Case(SequenceGraph.from_edges(n_left, [(int(i), int(r)) for i, r in rows[1:]]), p)


# -- per-instance decisions ---------------------------------------------------


def _require(cond: bool, why: str) -> None:
    if not cond:
        raise OutOfHypothesis(why)


def _kings_by_part(H: Hypertournament, q: int) -> list[list[int]]:
    mask = king_mask(H, q)
    return [[v for v in part if mask[v]] for part in H.partition.parts()]


def _check_majority_lemma(H, tb, enforce):
    if enforce:
        _require(H.n >= 5 and H.n > H.k >= 3, "needs n >= 5 and n > k >= 3")
    M = build_majority(H, tb)
    paths, lengths = majority_paths(M, 4)
    if not len(paths):
        return None
    lists, counts = H.pair_lists
    bad = kernels.lift_all(lists, counts, paths, lengths)
    if bad < 0:
        return None
    mpath = [int(v) for v in paths[bad, : lengths[bad]]]
    try:
        lift_majority_path(H, mpath)
        confirmed_by_kernel = False
    except LiftFailed:
        confirmed_by_kernel = True
    try:
        lift_majority_path_reference(H, mpath)
        confirmed_by_reference = False
    except LiftFailed:
        confirmed_by_reference = True
    return {
        "x": mpath[0],
        "y": mpath[-1],
        "majority_path": mpath,
        "no_path_of_length_at_most_4": confirmed_by_reference,
        "lift_failed": confirmed_by_kernel,
    }


def _check_main_theorem(H, tb, enforce):
    trans = sorted(transmitters(H))
    if enforce:
        _require(len(trans) <= 1, "more than one transmitter")
    if has_king(H, 4):
        return None
    return {"transmitters": trans, "four_kings": []}


def _check_theorem_t1(H, tb, enforce):
    if enforce:
        _require(H.p == 2 and H.n >= 5, "needs a bipartite instance on >= 5 vertices")
        M = build_majority(H, tb)
        _require(not digraph_transmitters(M), "majority tournament has a transmitter")
    per_part = _kings_by_part(H, 4)
    if all(len(kings) >= 2 for kings in per_part):
        return None
    return {"four_kings_by_part": per_part}


def _check_lemma3(H, tb, enforce):
    if enforce:
        _require(H.n >= 5 and H.n > H.k >= 3, "needs n >= 5 and n > k >= 3")
        _require(len(transmitters(H)) <= 1, "more than one transmitter")
        M = build_majority(H, tb)
        _require(bool(digraph_transmitters(M)), "majority tournament has no transmitter")
    if has_king(H, 2):
        return None
    return {"transmitters": sorted(transmitters(H)), "two_kings": []}


def _check_two_king(H, tb, enforce):
    if enforce:
        _require(H.p == H.n, "needs a complete hypertournament (singleton parts)")
    if has_king(H, 2):
        return None
    return {"two_kings": []}


def _check_hamilton(H, tb, enforce):
    if enforce:
        _require((H.n, H.k, H.p) == (4, 3, 4), "scope is n = 4, k = 3, p = 4")
    path = hamilton_path(H)
    if path is None:
        return {"hamilton_path": None}
    first = path.vertices[0]
    if king_mask(H, 3)[first]:
        return None
    return {"hamilton_path": str(path), "first_vertex": first, "is_three_king": False}


def _check_prop1(H, tb, enforce):
    if enforce:
        _require(H.p == 2 and H.k >= 3, "needs a bipartite k-hypertournament with k >= 3")
    trans = sorted(transmitters(H))
    per_part = _kings_by_part(H, 4)
    if not trans and all(len(kings) <= 1 for kings in per_part):
        return None
    return {"transmitters": trans, "four_kings_by_part": per_part}


def _has_majority_path_of_length(M, x, y, length):
    others = [v for v in range(M.n) if v not in (x, y)]
    for inner in itertools.permutations(others, length - 1):
        seq = (x, *inner, y)
        if all(M.adj[u, w] for u, w in zip(seq, seq[1:])):
            return list(seq)
    return None


def _check_prop2(H, tb, enforce):
    if enforce:
        _require((H.n, H.k, H.p) == (4, 3, 2), "scope is bipartite, n = 4, k = 3")
    M = build_majority(H, tb)
    sizes_ok = sorted(H.partition.sizes()) == [2, 2]
    m_trans = sorted(digraph_transmitters(M))
    reach = reach_matrix(H, 4)
    gap = None
    for x, y in itertools.permutations(range(H.n), 2):
        mpath = _has_majority_path_of_length(M, x, y, 3)
        if mpath is not None and not reach[x, y] and path_at_most(H, x, y, 4) is None:
            gap = mpath
            break
    single_king = False
    if gap is not None:
        part = H.partition.labels[gap[0]]
        kings = [v for v in king_mask(H, 4).nonzero()[0] if H.partition.labels[v] == part]
        single_king = len(kings) == 1
    if sizes_ok and not m_trans and gap is not None and single_king:
        return None
    return {
        "part_sizes_2_2": sizes_ok,
        "majority_transmitters": m_trans,
        "majority_path_without_lift": gap,
        "single_four_king_in_part": single_king,
    }


def _check_lemma1(case, tb, enforce):
    try:
        ok = check_lemma1(case.graph, case.p)
    except HypothesisViolated as exc:
        if enforce:
            raise OutOfHypothesis(str(exc)) from None
        ok = len(max_matching(case.graph)) == case.graph.n_left
    return None if ok else {"p": case.p, "saturating_matching": False}


_CHECKERS = {
    "majority-lemma": _check_majority_lemma,
    "main-theorem": _check_main_theorem,
    "theorem-t1": _check_theorem_t1,
    "lemma-1": _check_lemma1,
    "lemma-3": _check_lemma3,
    "two-king": _check_two_king,
    "prop1-family": _check_prop1,
    "prop2-fixture": _check_prop2,
    "hamilton-first-vertex": _check_hamilton,
}


def check_instance(claim: str, instance, tb: TieBreak | None = None, *, enforce_hypothesis: bool = True) -> Violation | None:
    """Decide ``claim`` on one instance.

    Returns None when the conclusion holds and a :class:`Violation` otherwise.
    Raises :class:`OutOfHypothesis` when the instance is outside the claim's
    hypothesis, unless ``enforce_hypothesis`` is False. ``instance`` is a
    :class:`Hypertournament`, or a :class:`Lemma1Case` for ``lemma-1``.
    """
    try:
        checker = _CHECKERS[claim]
    except KeyError:
        raise UnknownClaim(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}") from None
    if claim in MAJORITY_CLAIMS:
        tb = tb or TieBreak()
    else:
        tb = None
    witness = checker(instance, tb, enforce_hypothesis)
    if witness is None:
        return None
    text = graph_to_text(instance) if claim == "lemma-1" else to_mht(instance)
    return Violation(claim, text, witness, None if tb is None else str(tb))


def recheck(violation: dict | Violation) -> Violation | None:
    """Re-run the check recorded in a violation from its serialized instance."""
    v = violation.to_dict() if isinstance(violation, Violation) else violation
    instance = graph_from_text(v["instance"]) if v["claim"] == "lemma-1" else from_mht(v["instance"])
    tb = TieBreak.parse(v["tie_break"]) if v.get("tie_break") else None
    return check_instance(v["claim"], instance, tb)


# -- campaigns ----------------------------------------------------------------


@dataclass
class Campaign:
    """What to check and over which instances.

    ``n`` and ``k`` are inclusive ranges; ``k`` is clipped to ``k < n``.
    ``partitions`` are part-size tuples; None picks the claim's default shapes.
    """

    claim: str
    mode: str = "sampled"
    n: tuple[int, int] | None = None
    k: tuple[int, int] | None = None
    partitions: list[tuple[int, ...]] | None = None
    tie_breaks: list[str] | None = None
    samples: int = 1000
    seed: int = 0
    budget: float | None = None
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise UnknownClaim(f"unknown claim {self.claim!r}; expected one of {', '.join(CLAIMS)}")
        if self.mode not in ("sampled", "exhaustive"):
            raise ValueError(f"mode must be 'sampled' or 'exhaustive', got {self.mode!r}")
        if self.tie_breaks is None:
            if self.claim == "prop2-fixture":
                self.tie_breaks = [str(TieBreak.explicit(FIXTURE_TIES))]
            elif self.claim in MAJORITY_CLAIMS:
                self.tie_breaks = list(DEFAULT_TIE_BREAKS)
            else:
                self.tie_breaks = []
        for spec in self.tie_breaks:
            if spec != "random":
                TieBreak.parse(spec)


_DEFAULT_N = {
    "majority-lemma": (5, 8),
    "main-theorem": (5, 8),
    "theorem-t1": (5, 8),
    "lemma-3": (5, 8),
    "two-king": (4, 7),
    "hamilton-first-vertex": (4, 4),
}
_DEFAULT_K_LO = {"two-king": 2}


def _cells(c: Campaign) -> list[tuple[int, int, tuple[int, ...]]]:
    n_lo, n_hi = c.n or _DEFAULT_N.get(c.claim, (5, 8))
    cells = []
    for n in range(n_lo, n_hi + 1):
        k_lo, k_hi = c.k or (_DEFAULT_K_LO.get(c.claim, 3), n - 1)
        if c.partitions is not None:
            shapes = [tuple(s) for s in c.partitions if sum(s) == n]
        elif c.claim in ("two-king", "hamilton-first-vertex"):
            shapes = [(1,) * n]
        elif c.claim == "theorem-t1":
            # a singleton side is always a transmitter of the majority tournament
            shapes = bipartite_shapes(n, min_size=2)
        elif c.mode == "exhaustive":
            shapes = integer_partitions(n)
        else:
            shapes = default_shapes(n)
        for k in range(max(k_lo, 2), min(k_hi, n - 1) + 1):
            cells.extend((n, k, s) for s in shapes)
    if not cells:
        raise ValueError("the requested ranges contain no (n, k, partition) cell")
    return cells


def _fixed_instances(c: Campaign) -> list[Hypertournament]:
    if c.claim == "prop2-fixture":
        return [fixture_prop2()[0]]
    k_lo, k_hi = c.k or (3, 5)
    out = []
    for k in range(k_lo, k_hi + 1):
        for n in (k + 1, k + 2):
            for a in range(1, n):
                if comb(n - 2, k - 2) >= 2:
                    out.append(counterexample_conj2(k, a, n - a))
    return out


def _lemma1_case(rng: np.random.Generator, p: int) -> Lemma1Case:
    """Random bipartite graph meeting the degree bounds for ``p``."""
    while True:
        n_left = int(rng.integers(1, 7))
        n_right = int(rng.integers(n_left, 3 * n_left + 2))
        cap = np.full(n_right, p)
        cap[rng.integers(n_right)] = 2 * p - 1
        adjacency = []
        for _ in range(n_left):
            avail = np.flatnonzero(cap > 0)
            d = min(int(rng.integers(p, p + 3)), len(avail))
            if d < p:
                break
            chosen = rng.choice(avail, size=d, replace=False)
            cap[chosen] -= 1
            adjacency.append(sorted(int(r) for r in chosen))
        else:
            return Lemma1Case(SequenceGraph(n_left, adjacency), p)


def _tie_breaks_for(c: Campaign, index: int) -> list[TieBreak]:
    out = []
    for j, spec in enumerate(c.tie_breaks):
        if spec == "random":
            seed = int(np.random.SeedSequence([c.seed, index, j]).generate_state(1)[0])
            out.append(TieBreak.seeded(seed))
        else:
            out.append(TieBreak.parse(spec))
    return out or [None]


class _Plan:
    """Maps a global instance index to an instance."""

    def __init__(self, c: Campaign):
        self.c = c
        if c.claim in ("prop1-family", "prop2-fixture"):
            self.fixed = _fixed_instances(c)
            self.total = len(self.fixed)
            self.mode = "exhaustive"
            return
        self.fixed = None
        self.mode = c.mode
        if c.claim == "lemma-1":
            if c.mode == "exhaustive":
                raise ValueError("lemma-1 is checked on sampled graphs only")
            self.total = c.samples
            return
        self.cells = _cells(c)
        if c.mode == "exhaustive":
            self.spaces = [InstanceSpace(n, k, Partition.from_sizes(s)) for n, k, s in self.cells]
            sizes = [len(sp) for sp in self.spaces]
            self.total = sum(sizes)
            if self.total > c.cap:
                raise SpaceTooLarge(f"{self.total} instances exceed the cap {c.cap}")
            self.offsets = list(itertools.accumulate(sizes, initial=0))
        else:
            self.total = c.samples
            self.partitions = [Partition.from_sizes(s) for _, _, s in self.cells]

    def instance(self, i: int):
        c = self.c
        if self.fixed is not None:
            return self.fixed[i]
        if c.claim == "lemma-1":
            return _lemma1_case(np.random.default_rng([c.seed, i]), (1, 2, 3)[i % 3])
        if self.mode == "exhaustive":
            cell = bisect.bisect_right(self.offsets, i) - 1
            return self.spaces[cell][i - self.offsets[cell]]
        cell = i % len(self.cells)
        n, k, _ = self.cells[cell]
        return random_instance(n, k, self.partitions[cell], np.random.default_rng([c.seed, i]))

    def describe(self) -> dict:
        c = self.c
        if c.claim == "lemma-1":
            return {"p": [1, 2, 3]}
        if self.fixed is not None:
            return {"instances": [[H.n, H.k, list(H.partition.sizes())] for H in self.fixed]}
        ns = sorted({n for n, _, _ in self.cells})
        ks = sorted({k for _, k, _ in self.cells})
        shapes = []
        for _, _, s in self.cells:
            if list(s) not in shapes:
                shapes.append(list(s))
        return {"n": [ns[0], ns[-1]], "k": [ks[0], ks[-1]], "partitions": shapes, "cells": len(self.cells)}


def _run_shard(c: Campaign, start: int, stop: int, deadline: float | None) -> dict:
    plan = _Plan(c)
    out = {"generated": 0, "checked": 0, "out_of_hypothesis": 0, "evaluations": 0, "violations": [], "exhausted": False}
    for i in range(start, stop):
        if deadline is not None and time.monotonic() > deadline:
            out["exhausted"] = True
            break
        inst = plan.instance(i)
        out["generated"] += 1
        tbs = _tie_breaks_for(c, i) if c.claim in MAJORITY_CLAIMS else [None]
        in_hyp = False
        for tb in tbs:
            try:
                v = check_instance(c.claim, inst, tb)
            except OutOfHypothesis:
                continue
            in_hyp = True
            out["evaluations"] += 1
            if v is not None:
                v.index = i
                out["violations"].append(v.to_dict())
        if in_hyp:
            out["checked"] += 1
        else:
            out["out_of_hypothesis"] += 1
    return out


def merge(a: dict, b: dict) -> dict:
    """Combine shard results; associative and commutative."""
    return {
        "generated": a["generated"] + b["generated"],
        "checked": a["checked"] + b["checked"],
        "out_of_hypothesis": a["out_of_hypothesis"] + b["out_of_hypothesis"],
        "evaluations": a["evaluations"] + b["evaluations"],
        "violations": sorted(a["violations"] + b["violations"], key=lambda v: (v["index"], v["tie_break"] or "")),
        "exhausted": a["exhausted"] or b["exhausted"],
    }


def run_campaign(c: Campaign, jobs: int = 1) -> dict:
    """Run a campaign and return its report as a JSON-compatible dict.

    Work is split into contiguous index shards; the report does not depend
    on ``jobs`` unless a time budget cuts the run short.
    """
    t0 = time.perf_counter()
    plan = _Plan(c)
    deadline = None if c.budget is None or plan.mode == "exhaustive" else time.monotonic() + c.budget
    jobs = max(1, int(jobs))
    n_shards = 1 if jobs == 1 else min(plan.total, jobs * 4) or 1
    bounds = [plan.total * s // n_shards for s in range(n_shards + 1)]
    shards = list(zip(bounds, bounds[1:]))
    if jobs == 1:
        parts = [_run_shard(c, lo, hi, deadline) for lo, hi in shards]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_shard, *zip(*[(c, lo, hi, deadline) for lo, hi in shards])))
    total = {"generated": 0, "checked": 0, "out_of_hypothesis": 0, "evaluations": 0, "violations": [], "exhausted": False}
    for part in parts:
        total = merge(total, part)
    ranges = plan.describe()
    ranges["tie_breaks"] = list(c.tie_breaks) if c.claim in MAJORITY_CLAIMS else []
    return {
        "claim": c.claim,
        "mode": plan.mode,
        "ranges": ranges,
        "seed": c.seed,
        "instances_generated": total["generated"],
        "instances_checked": total["checked"],
        "out_of_hypothesis": total["out_of_hypothesis"],
        "evaluations": total["evaluations"],
        "violations": total["violations"],
        "status": "pass" if not total["violations"] else "fail",
        "budget_exhausted": total["exhausted"],
        "wall_time": round(time.perf_counter() - t0, 3),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def default_jobs() -> int:
    return os.cpu_count() or 1
