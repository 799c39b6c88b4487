"""Hot loops of the path search, compiled with numba when available.

All kernels take the ``(lists, counts)`` pair of a hypertournament (see
:attr:`Hypertournament.pair_lists`): ``lists[u, w, :counts[u, w]]`` are the arc
slots in which ``u`` precedes ``w``. A vertex sequence is *realizable* when its
consecutive pairs can be assigned pairwise distinct arcs, i.e. when the
position/arc candidate graph has a matching saturating every position.
Matchings are grown one position at a time with a single augmenting-path
search, so a DFS over sequences keeps a valid matching for each prefix.
"""

import numpy as np

from ._jit import njit


@njit
def augment(lists, counts, seq, j, match):
    """Try to extend a saturating matching of positions ``0..j-1`` to position ``j``.

    ``match[i]`` is the arc assigned to position ``i`` (the pair
    ``seq[i] -> seq[i+1]``). On success ``match[:j+1]`` is updated in place;
    on failure it is left untouched.
    """
    width = lists.shape[2]
    queue = np.empty(j + 1, np.int64)
    seen = np.empty(width * (j + 1), np.int64)
    via = np.empty(width * (j + 1), np.int64)
    n_seen = 0
    head = 0
    tail = 1
    queue[0] = j
    while head < tail:
        i = queue[head]
        head += 1
        u = seq[i]
        w = seq[i + 1]
        for t in range(counts[u, w]):
            a = lists[u, w, t]
            dup = False
            for r in range(n_seen):
                if seen[r] == a:
                    dup = True
                    break
            if dup:
                continue
            seen[n_seen] = a
            via[n_seen] = i
            n_seen += 1
            owner = -1
            for r in range(j):
                if match[r] == a:
                    owner = r
                    break
            if owner >= 0:
                queue[tail] = owner
                tail += 1
                continue
            # free arc: flip the alternating path back to position j
            cur_a = a
            cur_i = i
            while True:
                old = -1
                if cur_i != j:
                    old = match[cur_i]
                match[cur_i] = cur_a
                if cur_i == j:
                    break
                cur_a = old
                for r in range(n_seen):
                    if seen[r] == old:
                        cur_i = via[r]
                        break
            return True
    return False


@njit
def realize(lists, counts, seq, length, match):
    """Decide whether ``seq[:length]`` is realizable; fills ``match[:length-1]``."""
    for j in range(length - 1):
        if counts[seq[j], seq[j + 1]] == 0:
            return False
        if not augment(lists, counts, seq, j, match):
            return False
    return True


@njit
def reach_from(lists, counts, x, q, reached):
    """Mark in ``reached`` every vertex with a path of length <= ``q`` from ``x``.

    Enumerates the simple vertex sequences from ``x`` depth-first, pruning any
    prefix that is not realizable. Stops as soon as every vertex is reached.
    Returns the number of reached vertices (``x`` itself excluded).
    """
    n = counts.shape[0]
    reached[:] = False
    seq = np.empty(q + 1, np.int64)
    cand = np.zeros(q + 1, np.int64)
    match = np.full((q + 1, q), -1, np.int64)
    on_path = np.zeros(n, np.bool_)
    seq[0] = x
    on_path[x] = True
    found = 0
    depth = 0
    while True:
        if depth == q or cand[depth] >= n:
            if depth == 0:
                break
            on_path[seq[depth]] = False
            depth -= 1
            continue
        v = cand[depth]
        cand[depth] += 1
        if on_path[v] or counts[seq[depth], v] == 0:
            continue
        for r in range(depth):
            match[depth + 1, r] = match[depth, r]
        seq[depth + 1] = v
        if not augment(lists, counts, seq, depth, match[depth + 1]):
            continue
        if not reached[v]:
            reached[v] = True
            found += 1
            if found == n - 1:
                return found
        depth += 1
        on_path[v] = True
        cand[depth] = 0
    return found


@njit
def king_mask(lists, counts, q):
    n = counts.shape[0]
    out = np.zeros(n, np.bool_)
    reached = np.zeros(n, np.bool_)
    for x in range(n):
        out[x] = reach_from(lists, counts, x, q, reached) == n - 1
    return out


@njit
def first_king(lists, counts, q):
    """Smallest q-king, or -1 when there is none."""
    n = counts.shape[0]
    reached = np.zeros(n, np.bool_)
    for x in range(n):
        if reach_from(lists, counts, x, q, reached) == n - 1:
            return x
    return -1


@njit
def reach_matrix(lists, counts, q):
    n = counts.shape[0]
    out = np.zeros((n, n), np.bool_)
    reached = np.zeros(n, np.bool_)
    for x in range(n):
        reach_from(lists, counts, x, q, reached)
        out[x] = reached
    return out


@njit
def first_path(lists, counts, x, y, qmax, out_seq, out_match):
    """First path from ``x`` to ``y`` in (length, lexicographic) order.

    Writes the vertices to ``out_seq`` and their arcs to ``out_match`` and
    returns the length, or -1 when no path of length <= ``qmax`` exists.
    """
    n = counts.shape[0]
    for length in range(1, qmax + 1):
        seq = np.empty(length + 1, np.int64)
        cand = np.zeros(length + 1, np.int64)
        match = np.full((length + 1, length), -1, np.int64)
        on_path = np.zeros(n, np.bool_)
        seq[0] = x
        on_path[x] = True
        depth = 0
        while True:
            if cand[depth] >= n:
                if depth == 0:
                    break
                on_path[seq[depth]] = False
                depth -= 1
                continue
            v = cand[depth]
            cand[depth] += 1
            if on_path[v] or counts[seq[depth], v] == 0:
                continue
            last = depth + 1 == length
            if last != (v == y):
                continue
            for r in range(depth):
                match[depth + 1, r] = match[depth, r]
            seq[depth + 1] = v
            if not augment(lists, counts, seq, depth, match[depth + 1]):
                continue
            if last:
                out_seq[: length + 1] = seq
                out_match[:length] = match[length]
                return length
            depth += 1
            on_path[v] = True
            cand[depth] = 0
    return -1


@njit
def lift(lists, counts, mpath, m, out_seq, out_match):
    """Realize a majority path ``mpath[:m]`` (2 <= m <= 5) as a path of length <= 4.

    Order-preserving subsequences with the same endpoints are tried first,
    fewest interior vertices first; then a full search of paths of length
    <= 4. Returns the witness length, or -1 on failure.
    """
    inner = m - 2
    sub = np.empty(m, np.int64)
    match = np.empty(m, np.int64)
    for keep in range(inner + 1):
        for mask in range(1 << inner):
            bits = 0
            for b in range(inner):
                bits += (mask >> b) & 1
            if bits != keep:
                continue
            size = 0
            sub[size] = mpath[0]
            size += 1
            for b in range(inner):
                if (mask >> b) & 1:
                    sub[size] = mpath[b + 1]
                    size += 1
            sub[size] = mpath[m - 1]
            size += 1
            if realize(lists, counts, sub, size, match):
                out_seq[:size] = sub[:size]
                out_match[: size - 1] = match[: size - 1]
                return size - 1
    return first_path(lists, counts, mpath[0], mpath[m - 1], 4, out_seq, out_match)


@njit
def lift_all(lists, counts, paths, lengths):
    """Index of the first path in ``paths`` that cannot be lifted, or -1."""
    out_seq = np.empty(5, np.int64)
    out_match = np.empty(4, np.int64)
    for i in range(paths.shape[0]):
        if lift(lists, counts, paths[i], lengths[i], out_seq, out_match) < 0:
            return i
    return -1
