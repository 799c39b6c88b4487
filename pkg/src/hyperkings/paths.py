"""Paths with distinct arcs: matchings, sequence realization, kings and lifting.

Two routes decide reachability. The reference route here builds the
position/arc :class:`SequenceGraph` for one vertex sequence and runs
:func:`max_matching` on it. The compiled route in :mod:`hyperkings.kernels`
walks all sequences at once; :func:`q_kings` and the campaigns use it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .core import Arc, Hypertournament

MAX_Q = 4
HAMILTON_LIMIT = 8


class BadSequence(ValueError):
    pass


class UnsupportedQ(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class LiftFailed(RuntimeError):
    """No path of length <= 4 realizes a majority path; a Majority Lemma counterexample."""

    def __init__(self, mpath, message=None):
        self.mpath = tuple(mpath)
        super().__init__(message or f"no path of length <= 4 from {mpath[0]} to {mpath[-1]}")


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...] = ()

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, H: Hypertournament) -> None:
        """Raise ``ValueError`` unless this is a path of ``H``."""
        vs = self.vertices
        if not vs:
            raise ValueError("empty path")
        if len(self.arcs) != len(vs) - 1:
            raise ValueError("a path with m vertices needs m - 1 arcs")
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in {vs}")
        if len(set(self.arcs)) != len(self.arcs):
            raise ValueError("repeated arc")
        for u, a, w in zip(vs, self.arcs, vs[1:]):
            if H.partition.same_part(u, w):
                raise ValueError(f"{u} and {w} share a partite set")
            if a != H.arc_for(a.vertices) or not a.precedes(u, w):
                raise ValueError(f"arc {a} does not carry {u} before {w}")

    def __str__(self) -> str:
        out = [str(self.vertices[0])]
        for a, v in zip(self.arcs, self.vertices[1:]):
            out.append(f"{a} {v}")
        return " ".join(out)


@dataclass
class SequenceGraph:
    """Bipartite graph between left vertices ``0..n_left-1`` and hashable right vertices."""

    n_left: int
    adjacency: list[list] = field(default_factory=list)

    def __post_init__(self):
        if not self.adjacency:
            self.adjacency = [[] for _ in range(self.n_left)]
        if len(self.adjacency) != self.n_left:
            raise ValueError("one adjacency list per left vertex")

    @classmethod
    def from_edges(cls, n_left: int, edges) -> "SequenceGraph":
        g = cls(n_left)
        for i, r in edges:
            if r not in g.adjacency[i]:
                g.adjacency[i].append(r)
        return g

    @classmethod
    def for_sequence(cls, H: Hypertournament, seq: Sequence[int]) -> "SequenceGraph":
        """Positions ``z_i`` joined to the arcs of A_H(x_i, x_{i+1}); right vertices are slots."""
        lists, counts = H.pair_lists
        adj = [[int(s) for s in lists[u, w, : counts[u, w]]] for u, w in zip(seq, seq[1:])]
        return cls(len(adj), adj)

    def right_vertices(self) -> list:
        return sorted({r for nbrs in self.adjacency for r in nbrs}, key=repr)

    def left_degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def right_degrees(self) -> dict:
        deg: dict = {}
        for nbrs in self.adjacency:
            for r in nbrs:
                deg[r] = deg.get(r, 0) + 1
        return deg


def max_matching(g: SequenceGraph) -> dict[int, object]:
    """Maximum matching by repeated augmenting paths (Kuhn). Maps left vertex -> right vertex."""
    owner: dict = {}

    def try_assign(i, visited):
        for r in g.adjacency[i]:
            if r in visited:
                continue
            visited.add(r)
            if r not in owner or try_assign(owner[r], visited):
                owner[r] = i
                return True
        return False

    for i in range(g.n_left):
        try_assign(i, set())
    return {i: r for r, i in owner.items()}


def check_lemma1(g: SequenceGraph, p: int) -> bool:
    """Whether ``g`` has a matching saturating its left side, given Hall-type degree bounds.

    Requires every left degree >= p >= 1 and every right degree <= p, except
    at most one right vertex of degree <= 2p - 1.
    """
    if p < 1:
        raise HypothesisViolated("p must be at least 1")
    low = [i for i in range(g.n_left) if g.left_degree(i) < p]
    if low:
        raise HypothesisViolated(f"left vertices {low} have degree below {p}")
    over = [d for d in g.right_degrees().values() if d > p]
    if len(over) > 1 or (over and over[0] > 2 * p - 1):
        raise HypothesisViolated(f"right degrees exceed the bound for p={p}")
    return len(max_matching(g)) == g.n_left


def _check_sequence(H: Hypertournament, seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(int(v) for v in seq)
    if not seq:
        raise BadSequence("empty sequence")
    if len(set(seq)) != len(seq):
        raise BadSequence(f"repeated vertex in {seq}")
    if not all(0 <= v < H.n for v in seq):
        raise BadSequence(f"vertex out of range in {seq}")
    for u, w in zip(seq, seq[1:]):
        if H.partition.same_part(u, w):
            raise BadSequence(f"{u} and {w} lie in the same partite set")
    return seq


def realize_sequence(H: Hypertournament, seq: Sequence[int]) -> PathWitness | None:
    """A path through exactly ``seq`` if distinct arcs can be assigned to its steps."""
    seq = _check_sequence(H, seq)
    return _realize(H, seq)


def _realize(H, seq):
    g = SequenceGraph.for_sequence(H, seq)
    if any(not nbrs for nbrs in g.adjacency):
        return None
    m = max_matching(g)
    if len(m) < g.n_left:
        return None
    return PathWitness(seq, tuple(H.arc_at(m[i]) for i in range(g.n_left)))


def _check_q(q: int) -> None:
    if not 1 <= q <= MAX_Q:
        raise UnsupportedQ(f"q must be in 1..{MAX_Q}, got {q}")


def path_at_most(H: Hypertournament, x: int, y: int, qmax: int) -> PathWitness | None:
    """First ``(x, y)``-path of length <= ``qmax``, shortest first, then lexicographic."""
    _check_q(qmax)
    if x == y:
        raise ValueError("path_at_most needs x != y")
    counts = H.precedence_counts
    others = [v for v in range(H.n) if v not in (x, y)]
    for length in range(1, qmax + 1):
        for inner in itertools.permutations(others, length - 1):
            seq = (x, *inner, y)
            if all(counts[u, w] for u, w in zip(seq, seq[1:])):
                witness = _realize(H, seq)
                if witness is not None:
                    return witness
    return None


def king_mask(H: Hypertournament, q: int) -> np.ndarray:
    _check_q(q)

    def build():
        lists, counts = H.pair_lists
        mask = kernels.king_mask(lists, counts, q)
        mask.flags.writeable = False
        return mask

    return H._memo(("kings", q), build)


def q_kings(H: Hypertournament, q: int) -> set[int]:
    """Vertices with a path of length <= ``q`` to every other vertex."""
    return {int(v) for v in np.flatnonzero(king_mask(H, q))}


def has_king(H: Hypertournament, q: int) -> bool:
    _check_q(q)
    if ("kings", q) in H._cache:
        return bool(H._cache[("kings", q)].any())
    lists, counts = H.pair_lists
    return kernels.first_king(lists, counts, q) >= 0


def reach_matrix(H: Hypertournament, q: int) -> np.ndarray:
    """``R[x, y]`` is True when H has an ``(x, y)``-path of length <= ``q``."""
    _check_q(q)

    def build():
        lists, counts = H.pair_lists
        return kernels.reach_matrix(lists, counts, q)

    return H._memo(("reach", q), build)


def _witness_from_kernel(H, seq, match, length) -> PathWitness:
    vs = tuple(int(v) for v in seq[: length + 1])
    return PathWitness(vs, tuple(H.arc_at(int(s)) for s in match[:length]))


def _check_majority_path(H, mpath) -> tuple[int, ...]:
    mpath = _check_sequence(H, mpath)
    if len(mpath) > MAX_Q + 1:
        raise BadSequence(f"majority path longer than {MAX_Q}: {mpath}")
    counts = H.precedence_counts
    budget = H.layout.budget
    for u, w in zip(mpath, mpath[1:]):
        if 2 * counts[u, w] < budget:
            raise BadSequence(f"{u}->{w} is not an edge of any majority tournament")
    return mpath


def lift_majority_path(H: Hypertournament, mpath: Sequence[int]) -> PathWitness:
    """Turn a path of a majority tournament of ``H`` into a path of ``H`` of length <= 4.

    Tries order-preserving subsequences of ``mpath`` with the same ends
    (shortest first), then any path of length <= 4. Raises :class:`LiftFailed`
    when neither exists.
    """
    mpath = _check_majority_path(H, mpath)
    if len(mpath) == 1:
        return PathWitness(mpath)
    lists, counts = H.pair_lists
    out_seq = np.empty(MAX_Q + 1, np.int64)
    out_match = np.empty(MAX_Q, np.int64)
    length = kernels.lift(lists, counts, np.array(mpath, np.int64), len(mpath), out_seq, out_match)
    if length < 0:
        raise LiftFailed(mpath)
    return _witness_from_kernel(H, out_seq, out_match, length)


def lift_majority_path_reference(H: Hypertournament, mpath: Sequence[int]) -> PathWitness:
    """Same strategy as :func:`lift_majority_path` via the matching route only."""
    mpath = _check_majority_path(H, mpath)
    if len(mpath) == 1:
        return PathWitness(mpath)
    inner = range(1, len(mpath) - 1)
    counts = H.precedence_counts
    for keep in range(len(inner) + 1):
        for chosen in itertools.combinations(inner, keep):
            sub = (mpath[0], *(mpath[i] for i in chosen), mpath[-1])
            if all(counts[u, w] for u, w in zip(sub, sub[1:])):
                witness = _realize(H, sub)
                if witness is not None:
                    return witness
    witness = path_at_most(H, mpath[0], mpath[-1], MAX_Q)
    if witness is None:
        raise LiftFailed(mpath)
    return witness


def hamilton_path(H: Hypertournament, limit: int = HAMILTON_LIMIT) -> PathWitness | None:
    """First Hamilton path (distinct arcs) in lexicographic vertex order, by brute force."""
    if H.n > limit:
        raise TooLarge(f"n={H.n} exceeds the brute-force limit {limit}")
    counts = H.precedence_counts
    for perm in itertools.permutations(range(H.n)):
        if all(counts[u, w] for u, w in zip(perm, perm[1:])):
            witness = _realize(H, perm)
            if witness is not None:
                return witness
    return None
