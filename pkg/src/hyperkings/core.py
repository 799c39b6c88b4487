"""Multipartite k-hypertournaments: data model, precedence queries and ``.mht`` I/O.

Vertices are the integers ``0..n-1``. A partition assigns every vertex a part
label; partite sets are derived from the labels and never stored separately.
Every k-subset of vertices that is not contained in one part carries exactly
one arc, an ordered k-tuple whose positions encode precedence.

Arcs are stored in a dense ``(c, k)`` array indexed by *slot*: the position of
the underlying subset among all cross subsets sorted by colexicographic rank.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np


class HypertournamentError(ValueError):
    """Base class for invalid structures."""


class BadPartition(HypertournamentError):
    pass


class MissingArc(HypertournamentError):
    pass


class DuplicateArc(HypertournamentError):
    pass


class IntraPartArc(HypertournamentError):
    pass


class ArityMismatch(HypertournamentError):
    pass


def subset_rank(vertices: Iterable[int]) -> int:
    """Colexicographic rank of a vertex subset (order of ``vertices`` is ignored)."""
    return sum(comb(v, i + 1) for i, v in enumerate(sorted(vertices)))


@dataclass(frozen=True)
class Partition:
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise BadPartition("partition must label at least one vertex")
        p = max(labels) + 1
        if min(labels) < 0:
            raise BadPartition(f"negative part label in {labels}")
        if p < 2:
            raise BadPartition("a multipartite structure needs at least 2 parts")
        missing = set(range(p)) - set(labels)
        if missing:
            raise BadPartition(f"part labels {sorted(missing)} are unused")

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "Partition":
        """Contiguous parts: the first ``sizes[0]`` vertices form part 0, and so on."""
        if any(s < 1 for s in sizes):
            raise BadPartition(f"part sizes must be positive, got {tuple(sizes)}")
        return cls(tuple(i for i, s in enumerate(sizes) for _ in range(s)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def p(self) -> int:
        return max(self.labels) + 1

    def parts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(v for v, lab in enumerate(self.labels) if lab == i) for i in range(self.p))

    def sizes(self) -> tuple[int, ...]:
        return tuple(self.labels.count(i) for i in range(self.p))

    def same_part(self, u: int, w: int) -> bool:
        return self.labels[u] == self.labels[w]


@dataclass(frozen=True)
class Arc:
    """An ordered k-tuple of distinct vertices; earlier positions precede later ones."""

    vertices: tuple[int, ...]
    subset_key: int

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Arc":
        vs = tuple(int(v) for v in vertices)
        return cls(vs, subset_rank(vs))

    def precedes(self, u: int, w: int) -> bool:
        vs = self.vertices
        return u in vs and w in vs and vs.index(u) < vs.index(w)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.vertices)) + ")"


class Layout:
    """Shape data shared by every hypertournament with the same ``(n, k, partition)``.

    ``subsets[s]`` is the sorted cross subset in slot ``s``; ``pair_slots[u, w]``
    lists (ascending) the slots of the ``C(n-2, k-2)`` subsets containing both
    ``u`` and ``w``, padded with ``-1`` for same-part pairs.
    """

    def __init__(self, n: int, k: int, partition: Partition):
        self.n, self.k, self.partition = n, k, partition
        labels = partition.labels
        cross = [
            c for c in itertools.combinations(range(n), k)
            if len({labels[v] for v in c}) > 1
        ]
        cross.sort(key=subset_rank)
        self.subsets = np.array(cross, dtype=np.int64).reshape(len(cross), k)
        self.ranks = np.array([subset_rank(c) for c in cross], dtype=np.int64)
        self.slot_of_rank = np.full(comb(n, k), -1, dtype=np.int64)
        self.slot_of_rank[self.ranks] = np.arange(len(cross))
        self.budget = comb(n - 2, k - 2)

        pair_slots = np.full((n, n, self.budget), -1, dtype=np.int64)
        fill = np.zeros((n, n), dtype=np.int64)
        for s, c in enumerate(cross):
            for u, w in itertools.permutations(c, 2):
                if labels[u] != labels[w]:
                    pair_slots[u, w, fill[u, w]] = s
                    fill[u, w] += 1
        self.pair_slots = pair_slots
        self.labels = np.array(labels, dtype=np.int64)

    @property
    def num_arcs(self) -> int:
        return len(self.subsets)


@functools.lru_cache(maxsize=512)
def layout_for(n: int, k: int, partition: Partition) -> Layout:
    return Layout(n, k, partition)


def _check_shape(n: int, k: int, partition: Partition) -> None:
    if not (n > k >= 2):
        raise HypertournamentError(f"need n > k >= 2, got n={n}, k={k}")
    if partition.n != n:
        raise BadPartition(f"partition labels {partition.n} vertices, expected {n}")


class Hypertournament:
    """An immutable p-partite k-hypertournament.

    Build validated instances with :func:`new_hypertournament`; generators use
    :meth:`from_array` with arrays that are valid by construction.
    """

    __slots__ = ("n", "k", "partition", "layout", "arc_array", "_cache")

    def __init__(self, layout: Layout, arc_array: np.ndarray):
        self.layout = layout
        self.n, self.k, self.partition = layout.n, layout.k, layout.partition
        arr = np.ascontiguousarray(arc_array, dtype=np.int64)
        arr.flags.writeable = False
        self.arc_array = arr
        self._cache = {}

    @classmethod
    def from_array(cls, n: int, k: int, partition: Partition, arc_array: np.ndarray) -> "Hypertournament":
        return cls(layout_for(n, k, partition), arc_array)

    def __eq__(self, other):
        if not isinstance(other, Hypertournament):
            return NotImplemented
        return (
            (self.n, self.k, self.partition) == (other.n, other.k, other.partition)
            and np.array_equal(self.arc_array, other.arc_array)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.partition, self.arc_array.tobytes()))

    def __repr__(self):
        return f"Hypertournament(n={self.n}, k={self.k}, parts={self.partition.sizes()})"

    @property
    def p(self) -> int:
        return self.partition.p

    def arcs(self) -> list[Arc]:
        """All arcs in subset-rank order."""
        return [Arc(tuple(int(v) for v in row), int(r)) for row, r in zip(self.arc_array, self.layout.ranks)]

    def arc_at(self, slot: int) -> Arc:
        return Arc(tuple(int(v) for v in self.arc_array[slot]), int(self.layout.ranks[slot]))

    def arc_for(self, subset: Iterable[int]) -> Arc:
        slot = self.layout.slot_of_rank[subset_rank(subset)]
        if slot < 0:
            raise KeyError(f"{sorted(subset)} is not a cross subset")
        return self.arc_at(int(slot))

    def _memo(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = fn()
            return value

    @property
    def positions(self) -> np.ndarray:
        """``positions[s, v]`` is the index of ``v`` in arc ``s``, or -1."""
        def build():
            c = self.layout.num_arcs
            pos = np.full((c, self.n), -1, dtype=np.int64)
            pos[np.arange(c)[:, None], self.arc_array] = np.arange(self.k)
            return pos
        return self._memo("positions", build)

    @property
    def pair_lists(self) -> tuple[np.ndarray, np.ndarray]:
        """``(lists, counts)``: ``lists[u, w, :counts[u, w]]`` are the slots of A_H(u, w)."""
        def build():
            slots = self.layout.pair_slots
            n = self.n
            valid = slots >= 0
            safe = np.where(valid, slots, 0)
            pos = self.positions
            pu = pos[safe, np.arange(n)[:, None, None]]
            pw = pos[safe, np.arange(n)[None, :, None]]
            forward = valid & (pu < pw)
            order = np.argsort(~forward, axis=2, kind="stable")
            lists = np.take_along_axis(safe, order, axis=2)
            counts = forward.sum(axis=2).astype(np.int64)
            return np.ascontiguousarray(lists), counts
        return self._memo("pair_lists", build)

    @property
    def precedence_counts(self) -> np.ndarray:
        """``counts[u, w] = |A_H(u, w)|``."""
        return self.pair_lists[1]


def new_hypertournament(n: int, k: int, partition: Partition | Sequence[int], arcs: Iterable) -> Hypertournament:
    """Validate and build a hypertournament from an explicit arc list.

    ``arcs`` holds :class:`Arc` objects or plain vertex sequences in precedence order.
    """
    if not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    _check_shape(n, k, partition)
    layout = layout_for(n, k, partition)
    labels = partition.labels
    out = np.full((layout.num_arcs, k), -1, dtype=np.int64)
    seen = np.zeros(layout.num_arcs, dtype=bool)
    for arc in arcs:
        vs = tuple(arc.vertices) if isinstance(arc, Arc) else tuple(int(v) for v in arc)
        if len(vs) != k or len(set(vs)) != k or not all(0 <= v < n for v in vs):
            raise ArityMismatch(f"arc {vs} is not {k} distinct vertices of [0, {n})")
        if len({labels[v] for v in vs}) == 1:
            raise IntraPartArc(f"arc {vs} lies inside part {labels[vs[0]]}")
        slot = int(layout.slot_of_rank[subset_rank(vs)])
        if seen[slot]:
            raise DuplicateArc(f"subset {sorted(vs)} carries more than one arc")
        seen[slot] = True
        out[slot] = vs
    if not seen.all():
        missing = layout.subsets[np.flatnonzero(~seen)[0]].tolist()
        raise MissingArc(f"cross subset {missing} has no arc ({int((~seen).sum())} missing)")
    return Hypertournament(layout, out)


def arcs_between(H: Hypertournament, u: int, w: int) -> set[Arc]:
    """A_H(u, w): the arcs containing ``u`` and ``w`` in which ``u`` precedes ``w``."""
    if u == w:
        raise ValueError("arcs_between needs two distinct vertices")
    lists, counts = H.pair_lists
    return {H.arc_at(int(s)) for s in lists[u, w, : counts[u, w]]}


def transmitters(H: Hypertournament) -> set[int]:
    """Vertices that no vertex of another part precedes in any arc."""
    counts = H.precedence_counts
    return {int(v) for v in np.flatnonzero(counts.sum(axis=0) == 0)}


def pair_budget(H: Hypertournament) -> int:
    """C(n-2, k-2), the number of arcs through any fixed cross pair."""
    return comb(H.n - 2, H.k - 2)


# -- .mht text format ---------------------------------------------------------


def to_mht(H: Hypertournament) -> str:
    lines = [f"{H.n} {H.k} {H.p}", " ".join(map(str, H.partition.labels))]
    lines.extend(" ".join(map(str, row)) for row in H.arc_array.tolist())
    return "\n".join(lines) + "\n"


def from_mht(text: str) -> Hypertournament:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if len(rows) < 2:
        raise HypertournamentError("an .mht document needs a header and a label line")
    try:
        n, k, p = (int(x) for x in rows[0])
        labels = tuple(int(x) for x in rows[1])
        arcs = [tuple(int(x) for x in row) for row in rows[2:]]
    except ValueError as exc:
        raise HypertournamentError(f"malformed .mht document: {exc}") from None
    if len(labels) != n:
        raise BadPartition(f"header says n={n} but {len(labels)} labels given")
    partition = Partition(labels)
    if partition.p != p:
        raise BadPartition(f"header says p={p} but labels use {partition.p} parts")
    return new_hypertournament(n, k, partition, arcs)


def save_mht(H: Hypertournament, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(to_mht(H))


def load_mht(path: str | os.PathLike) -> Hypertournament:
    with open(path) as fh:
        return from_mht(fh.read())
