"""Majority multipartite tournaments and digraph-side kings/transmitters."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import HypertournamentError, Hypertournament, Partition


class ExplicitTieMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TieBreak:
    """How to orient cross pairs whose precedence counts are equal.

    ``kind`` is one of ``lower``, ``higher``, ``explicit`` or ``random``.
    """

    kind: str = "lower"
    pairs: tuple[tuple[int, int], ...] = ()
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in {"lower", "higher", "explicit", "random"}:
            raise ValueError(f"unknown tie-break policy {self.kind!r}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("a random tie-break needs a seed")

    @classmethod
    def lower_id_wins(cls) -> "TieBreak":
        return cls("lower")

    @classmethod
    def higher_id_wins(cls) -> "TieBreak":
        return cls("higher")

    @classmethod
    def explicit(cls, pairs: Iterable[tuple[int, int]]) -> "TieBreak":
        return cls("explicit", tuple(sorted((int(u), int(w)) for u, w in pairs)))

    @classmethod
    def seeded(cls, seed: int) -> "TieBreak":
        return cls("random", seed=int(seed))

    @classmethod
    def parse(cls, text: str) -> "TieBreak":
        """Parse ``lower``, ``higher``, ``random:SEED`` or ``explicit:u-w,u-w,...``."""
        kind, _, arg = text.strip().partition(":")
        if kind == "random":
            return cls.seeded(int(arg))
        if kind == "explicit":
            pairs = [tuple(int(x) for x in item.split("-")) for item in arg.split(",") if item]
            return cls.explicit(pairs)
        if arg:
            raise ValueError(f"policy {kind!r} takes no argument")
        return cls(kind)

    def __str__(self) -> str:
        if self.kind == "random":
            return f"random:{self.seed}"
        if self.kind == "explicit":
            return "explicit:" + ",".join(f"{u}-{w}" for u, w in self.pairs)
        return self.kind


class MajorityTournament:
    """A multipartite tournament: one directed edge per cross pair."""

    __slots__ = ("n", "partition", "adj", "tied_pairs", "_dist")

    def __init__(self, partition: Partition, adj: np.ndarray, tied_pairs=frozenset()):
        self.partition = partition
        self.n = partition.n
        adj = np.array(adj, dtype=bool)
        labels = np.array(partition.labels)
        cross = labels[:, None] != labels[None, :]
        if adj.shape != (self.n, self.n):
            raise HypertournamentError("adjacency matrix has the wrong shape")
        if (adj & ~cross).any():
            raise HypertournamentError("edge inside a partite set")
        if not np.array_equal(adj | adj.T, cross) or (adj & adj.T).any():
            raise HypertournamentError("every cross pair needs exactly one orientation")
        adj.flags.writeable = False
        self.adj = adj
        self.tied_pairs = frozenset(tied_pairs)
        self._dist = None

    def __eq__(self, other):
        if not isinstance(other, MajorityTournament):
            return NotImplemented
        return (
            self.partition == other.partition
            and np.array_equal(self.adj, other.adj)
            and self.tied_pairs == other.tied_pairs
        )

    __hash__ = None

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(w)) for u, w in zip(*np.nonzero(self.adj))]

    def out_neighbors(self, u: int) -> list[int]:
        return [int(w) for w in np.flatnonzero(self.adj[u])]

    def bfs(self, source: int) -> tuple[list[int], list[int]]:
        """Distances (-1 when unreachable) and BFS parents from ``source``."""
        dist = [-1] * self.n
        parent = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.out_neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        return dist, parent

    def distances(self) -> np.ndarray:
        if self._dist is None:
            self._dist = np.array([self.bfs(x)[0] for x in range(self.n)])
        return self._dist

    def shortest_path(self, x: int, y: int) -> list[int] | None:
        dist, parent = self.bfs(x)
        if dist[y] < 0:
            return None
        path = [y]
        while path[-1] != x:
            path.append(parent[path[-1]])
        return path[::-1]


def build_majority(H: Hypertournament, tb: TieBreak | None = None) -> MajorityTournament:
    """Orient each cross pair toward the majority precedence; ``tb`` settles ties."""
    tb = tb or TieBreak()
    counts = H.precedence_counts
    budget = H.layout.budget
    labels = np.array(H.partition.labels)
    cross = labels[:, None] != labels[None, :]
    adj = cross & (2 * counts > budget)
    tie = cross & (2 * counts == budget)
    ties = sorted((int(u), int(w)) for u, w in zip(*np.nonzero(np.triu(tie))))

    if tb.kind == "lower":
        winners = ties
    elif tb.kind == "higher":
        winners = [(w, u) for u, w in ties]
    elif tb.kind == "random":
        flips = np.random.default_rng(tb.seed).integers(0, 2, size=len(ties))
        winners = [(u, w) if f == 0 else (w, u) for (u, w), f in zip(ties, flips)]
    else:
        given = {tuple(sorted(pr)) for pr in tb.pairs}
        if len(given) != len(tb.pairs) or given != set(ties):
            raise ExplicitTieMismatch(f"explicit pairs {list(tb.pairs)} do not cover the ties {ties} exactly")
        winners = list(tb.pairs)
    for u, w in winners:
        adj[u, w] = True
    return MajorityTournament(H.partition, adj, ties)


def digraph_q_kings(M: MajorityTournament, q: int) -> set[int]:
    """Vertices from which every other vertex is within ``q`` steps."""
    if q < 1:
        raise ValueError("q must be positive")
    dist = M.distances()
    ok = (dist >= 0).all(axis=1) & (dist.max(axis=1) <= q)
    return {int(v) for v in np.flatnonzero(ok)}


def digraph_transmitters(M: MajorityTournament) -> set[int]:
    """Vertices without in-edges."""
    return {int(v) for v in np.flatnonzero(~M.adj.any(axis=0))}


def majority_paths(M: MajorityTournament, qmax: int = 4) -> tuple[np.ndarray, np.ndarray]:
    """BFS shortest paths for all ordered pairs at distance 1..qmax, padded to ``qmax + 1``.

    Returns ``(paths, lengths)`` where ``lengths`` counts vertices.
    """
    rows, lengths = [], []
    for x in range(M.n):
        dist, parent = M.bfs(x)
        for y in range(M.n):
            if 0 < dist[y] <= qmax:
                path = [y]
                while path[-1] != x:
                    path.append(parent[path[-1]])
                path.reverse()
                lengths.append(len(path))
                rows.append(path + [-1] * (qmax + 1 - len(path)))
    paths = np.array(rows, dtype=np.int64).reshape(len(rows), qmax + 1)
    return paths, np.array(lengths, dtype=np.int64)


def to_text(M: MajorityTournament) -> str:
    lines = [f"{M.n} {M.partition.p}", " ".join(map(str, M.partition.labels))]
    lines.extend(f"{u} {w}" for u, w in M.edges)
    lines.append("# ties")
    lines.extend(f"{u} {w}" for u, w in sorted(M.tied_pairs))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> MajorityTournament:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    n, p = (int(x) for x in lines[0].split())
    partition = Partition(tuple(int(x) for x in lines[1].split()))
    if partition.n != n or partition.p != p:
        raise HypertournamentError("header does not match the part labels")
    adj = np.zeros((n, n), dtype=bool)
    ties = []
    in_ties = False
    for line in lines[2:]:
        if line == "# ties":
            in_ties = True
            continue
        u, w = (int(x) for x in line.split())
        if in_ties:
            ties.append((min(u, w), max(u, w)))
        else:
            adj[u, w] = True
    return MajorityTournament(partition, adj, ties)
