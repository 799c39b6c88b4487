"""Random and exhaustive instance generation, the counterexample family and the 4-vertex fixture."""

from __future__ import annotations

import itertools
from math import comb, factorial
from typing import Iterator

import numpy as np

from .core import Hypertournament, Partition, layout_for, new_hypertournament, _check_shape
from .majority import MajorityTournament, TieBreak, build_majority

DEFAULT_CAP = 10**8


class SpaceTooLarge(ValueError):
    pass


class TooFewSharedArcs(ValueError):
    pass


def singleton_partition(n: int) -> Partition:
    """Every vertex in its own part, so no arc is deleted."""
    if n < 2:
        raise ValueError("need at least two vertices")
    return Partition(tuple(range(n)))


def _as_partition(partition) -> Partition:
    if isinstance(partition, Partition):
        return partition
    return Partition(tuple(partition))


def random_instance(n: int, k: int, partition, seed) -> Hypertournament:
    """Uniform instance: an independent uniform ordering of every cross subset.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts, or a Generator.
    """
    partition = _as_partition(partition)
    _check_shape(n, k, partition)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    layout = layout_for(n, k, partition)
    order = rng.random((layout.num_arcs, k)).argsort(axis=1)
    return Hypertournament(layout, np.take_along_axis(layout.subsets, order, axis=1))


class InstanceSpace:
    """Every labelled instance on a fixed ``(n, k, partition)``, index-addressable.

    Instance ``i`` is ``i`` written in base ``k!``: the digit of slot 0 is the
    most significant, and a digit selects a permutation in lexicographic order.
    """

    def __init__(self, n: int, k: int, partition):
        partition = _as_partition(partition)
        _check_shape(n, k, partition)
        self.n, self.k, self.partition = n, k, partition
        self.layout = layout_for(n, k, partition)
        self._perms = np.array(list(itertools.permutations(range(k))), dtype=np.int64)

    @property
    def num_cross_subsets(self) -> int:
        return self.layout.num_arcs

    def __len__(self) -> int:
        return factorial(self.k) ** self.num_cross_subsets

    def _build(self, digits) -> Hypertournament:
        arr = np.take_along_axis(self.layout.subsets, self._perms[list(digits)], axis=1)
        return Hypertournament(self.layout, arr)

    def __getitem__(self, index: int) -> Hypertournament:
        size = len(self)
        if index < 0:
            index += size
        if not 0 <= index < size:
            raise IndexError(index)
        base = factorial(self.k)
        digits = []
        for _ in range(self.num_cross_subsets):
            index, d = divmod(index, base)
            digits.append(d)
        return self._build(reversed(digits))

    def __iter__(self) -> Iterator[Hypertournament]:
        for digits in itertools.product(range(factorial(self.k)), repeat=self.num_cross_subsets):
            yield self._build(digits)

    def iter_range(self, start: int, stop: int) -> Iterator[Hypertournament]:
        for i in range(start, stop):
            yield self[i]


def enumerate_all(n: int, k: int, partition, cap: int = DEFAULT_CAP) -> Iterator[Hypertournament]:
    """Stream every instance of the space exactly once, in index order."""
    space = InstanceSpace(n, k, partition)
    if len(space) > cap:
        raise SpaceTooLarge(f"{len(space)} instances exceed the cap {cap}")
    return iter(space)


def count_instances(n: int, k: int, partition) -> int:
    """(k!)^c where c counts the cross k-subsets."""
    sizes = _as_partition(partition).sizes()
    c = comb(n, k) - sum(comb(s, k) for s in sizes)
    return factorial(k) ** c


def counterexample_conj2(k: int, size_u: int, size_w: int) -> Hypertournament:
    """Bipartite instance without transmitters whose only possible 4-kings are ``u`` and ``w``.

    ``U = {0..size_u-1}`` with ``u = 0`` and ``W`` the remaining vertices with
    ``w = size_u``. Arcs through both ``u`` and ``w`` start with them, ``w``
    first only on the smallest such subset. Arcs through one of them start
    with it. Everything else is filled in ascending order.
    """
    if k < 3:
        raise ValueError("the family needs k >= 3")
    if size_u < 1 or size_w < 1:
        raise ValueError("both parts must be nonempty")
    n = size_u + size_w
    # also rejects n <= k, where at most one k-subset exists
    if comb(n - 2, k - 2) < 2:
        raise TooFewSharedArcs(f"only {comb(n - 2, k - 2)} arc(s) contain both u and w")
    u, w = 0, size_u
    partition = Partition.from_sizes((size_u, size_w))
    layout = layout_for(n, k, partition)
    arcs = []
    first_shared = True
    for subset in map(tuple, layout.subsets[np.lexsort(layout.subsets.T[::-1])].tolist()):
        rest = [v for v in subset if v not in (u, w)]
        if u in subset and w in subset:
            head = [w, u] if first_shared else [u, w]
            first_shared = False
        elif u in subset:
            head = [u]
        elif w in subset:
            head = [w]
        else:
            head = []
        arcs.append(head + rest)
    return new_hypertournament(n, k, partition, arcs)


FIXTURE_ARCS = ((3, 0, 1), (1, 2, 3), (2, 1, 0), (3, 2, 0))
FIXTURE_LABELS = (0, 1, 0, 1)
FIXTURE_TIES = ((0, 1), (1, 2), (2, 3))


def fixture_prop2() -> tuple[Hypertournament, MajorityTournament]:
    """4-vertex bipartite 3-hypertournament whose majority tournament is a directed 4-cycle.

    Vertices ``x1..x4`` are ``0..3``; ``U = {0, 2}``, ``W = {1, 3}``.
    """
    H = new_hypertournament(4, 3, Partition(FIXTURE_LABELS), FIXTURE_ARCS)
    return H, build_majority(H, TieBreak.explicit(FIXTURE_TIES))


def default_shapes(n: int) -> list[tuple[int, ...]]:
    """Balanced and skewed bipartitions, a balanced tripartition and all singletons."""
    shapes = [
        (n - n // 2, n // 2),
        (n - 1, 1),
        tuple(n // 3 + (1 if i < n % 3 else 0) for i in range(3)),
        (1,) * n,
    ]
    out = []
    for s in shapes:
        if len(s) >= 2 and min(s) >= 1 and s not in out:
            out.append(s)
    return out


def integer_partitions(n: int, min_parts: int = 2) -> list[tuple[int, ...]]:
    """Non-increasing size tuples summing to ``n`` with at least ``min_parts`` parts."""
    def gen(rem, cap):
        if rem == 0:
            yield ()
            return
        for s in range(min(rem, cap), 0, -1):
            for tail in gen(rem - s, s):
                yield (s, *tail)
    return [p for p in gen(n, n) if len(p) >= min_parts]


def bipartite_shapes(n: int, min_size: int = 1) -> list[tuple[int, int]]:
    return [(n - a, a) for a in range(min_size, n // 2 + 1)]

