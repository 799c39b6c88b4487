import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instances
from hyperkings import (
    Arc,
    BadSequence,
    HypothesisViolated,
    LiftFailed,
    Partition,
    PathWitness,
    SequenceGraph,
    TieBreak,
    TooLarge,
    UnsupportedQ,
    build_majority,
    check_lemma1,
    hamilton_path,
    lift_majority_path,
    max_matching,
    new_hypertournament,
    path_at_most,
    q_kings,
    random_instance,
    realize_sequence,
    singleton_partition,
)
from hyperkings import kernels
from hyperkings.paths import lift_majority_path_reference, reach_matrix
from oracles import brute_has_hamilton, brute_has_path, brute_kings, brute_max_matching_size, brute_realizable

X1, X2, X3, X4 = range(4)
A1, A2, A3, A4 = (Arc.of(a) for a in [(X4, X1, X2), (X2, X3, X4), (X3, X2, X1), (X4, X3, X1)])


def valid_sequences(H, max_len):
    labels = H.partition.labels
    for m in range(1, max_len + 2):
        for seq in itertools.permutations(range(H.n), m):
            if all(labels[u] != labels[w] for u, w in zip(seq, seq[1:])):
                yield seq


# -- matching -----------------------------------------------------------------


def test_matching_single_edge():
    assert max_matching(SequenceGraph(1, [["a"]])) == {0: "a"}


def test_matching_complete_3x3():
    g = SequenceGraph(3, [[0, 1, 2]] * 3)
    m = max_matching(g)
    assert len(m) == 3 and len(set(m.values())) == 3


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(0, 7), max_size=8, unique=True), min_size=8, max_size=8))
def test_matching_agrees_with_assignment_oracle(adjacency):
    g = SequenceGraph(8, [list(a) for a in adjacency])
    m = max_matching(g)
    assert len(m) == brute_max_matching_size(adjacency)
    assert len(set(m.values())) == len(m)
    assert all(r in adjacency[i] for i, r in m.items())


def test_lemma1_with_one_heavy_right_vertex():
    g = SequenceGraph(3, [["a", "b"], ["a", "c"], ["a", "d"]])
    assert check_lemma1(g, 2)


def test_lemma1_trivial():
    assert check_lemma1(SequenceGraph(1, [["a"]]), 1)


@pytest.mark.parametrize(
    "adjacency,p",
    [
        ([["a"], ["a", "b"]], 2),
        ([["a", "b"], ["a", "b"], ["a", "b"]], 2),
        ([["a", "b"]] * 4, 2),
        ([["a"]], 0),
    ],
)
def test_lemma1_hypothesis_violations(adjacency, p):
    with pytest.raises(HypothesisViolated):
        check_lemma1(SequenceGraph(len(adjacency), adjacency), p)


# -- sequences and paths --------------------------------------------------------


def test_prop2_full_sequence_needs_a_repeated_arc(prop2):
    H, _ = prop2
    assert realize_sequence(H, (X1, X2, X3, X4)) is None


def test_prop2_x3_x4_x1(prop2):
    H, _ = prop2
    w = realize_sequence(H, (X3, X4, X1))
    assert w.vertices == (X3, X4, X1)
    assert w.arcs == (A2, A1)
    w.validate(H)


def test_singleton_sequence(prop2):
    w = realize_sequence(prop2[0], (X2,))
    assert w.length == 0 and w.arcs == ()


@pytest.mark.parametrize("seq", [(X1, X2, X1), (X1, X3), ()])
def test_bad_sequences(prop2, seq):
    with pytest.raises(BadSequence):
        realize_sequence(prop2[0], seq)


def test_prop2_no_path_x1_to_x4(prop2):
    assert path_at_most(prop2[0], X1, X4, 4) is None


def test_prop2_x3_reaches_x1_in_two(prop2):
    H, _ = prop2
    w = path_at_most(H, X3, X1, 2)
    assert w.length == 2
    assert w.vertices == (X3, X4, X1)
    w.validate(H)


def test_direct_arc_gives_length_one(prop2):
    w = path_at_most(prop2[0], X4, X1, 1)
    assert w.length == 1 and w.arcs[0] in {A1, A4}


@pytest.mark.parametrize("q", [0, 5])
def test_unsupported_q(prop2, q):
    with pytest.raises(UnsupportedQ):
        path_at_most(prop2[0], X1, X2, q)
    with pytest.raises(UnsupportedQ):
        q_kings(prop2[0], q)


def test_prop2_kings(prop2):
    H, _ = prop2
    # oracle: brute_kings on the four printed arcs
    assert q_kings(H, 1) == set()
    for q in (2, 3, 4):
        assert q_kings(H, q) == {X3, X4}
    assert q_kings(H, 4) & {X1, X3} == {X3}


def test_out_complete_vertex_is_a_one_king():
    arcs = [sorted(c, key=lambda v: (v != 0, v)) for c in itertools.combinations(range(5), 3)]
    H = new_hypertournament(5, 3, singleton_partition(5), arcs)
    assert 0 in q_kings(H, 1)


@pytest.mark.parametrize("seed", range(5))
def test_complete_hypertournament_has_a_two_king(seed):
    H = random_instance(6, 3, singleton_partition(6), seed)
    assert q_kings(H, 2)


@settings(max_examples=40, deadline=None)
@given(instances(n_max=5), st.integers(1, 4))
def test_kernel_kings_match_brute_force(H, q):
    assert q_kings(H, q) == brute_kings(H, q)


@settings(max_examples=25, deadline=None)
@given(instances(n_max=5))
def test_realize_agrees_with_arc_tuple_search(H):
    lists, counts = H.pair_lists
    match = np.empty(4, np.int64)
    for seq in valid_sequences(H, 4):
        expected = brute_realizable(H, seq)
        w = realize_sequence(H, seq)
        assert (w is not None) == expected
        if w is not None:
            w.validate(H)
        assert kernels.realize(lists, counts, np.array(seq, np.int64), len(seq), match) == expected


@settings(max_examples=30, deadline=None)
@given(instances(n_max=6))
def test_path_search_routes_agree(H):
    lists, counts = H.pair_lists
    seq = np.empty(5, np.int64)
    match = np.empty(4, np.int64)
    reach = reach_matrix(H, 4)
    for x, y in itertools.permutations(range(H.n), 2):
        previous = None
        for q in (1, 2, 3, 4):
            w = path_at_most(H, x, y, q)
            length = kernels.first_path(lists, counts, x, y, q, seq, match)
            assert (w is None) == (length < 0)
            if w is not None:
                w.validate(H)
                assert w.length <= q
                assert w.vertices == tuple(int(v) for v in seq[: length + 1])
            if previous is not None:
                assert w is not None
            previous = w
        assert reach[x, y] == (previous is not None)


@settings(max_examples=30, deadline=None)
@given(instances(n_max=6))
def test_kings_are_monotone_in_q(H):
    for q in (1, 2, 3):
        assert q_kings(H, q) <= q_kings(H, q + 1)


def test_brute_path_oracle_on_fixture(prop2):
    H, _ = prop2
    assert not brute_has_path(H, X1, X4, 4)
    assert brute_has_path(H, X3, X1, 2)


# -- lifting majority paths -------------------------------------------------------------


def _majority_paths_of_length(M, length):
    for seq in itertools.permutations(range(M.n), length + 1):
        if all(M.adj[u, w] for u, w in zip(seq, seq[1:])):
            yield seq


def test_case1_full_sequence_realizes():
    H = random_instance(9, 4, Partition.from_sizes((3, 3, 3)), 11)
    M = build_majority(H)
    paths = list(itertools.islice(_majority_paths_of_length(M, 4), 50))
    assert paths
    for mpath in paths:
        assert realize_sequence(H, mpath) is not None
        w = lift_majority_path(H, mpath)
        w.validate(H)
        assert w.vertices[0] == mpath[0] and w.vertices[-1] == mpath[-1] and w.length <= 4


def test_lift_single_edge():
    H = random_instance(6, 3, Partition.from_sizes((3, 3)), 2)
    M = build_majority(H)
    u, w = M.edges[0]
    lifted = lift_majority_path(H, (u, w))
    assert lifted.length == 1 and lifted.vertices == (u, w)


def test_lift_fails_on_prop2(prop2):
    H, _ = prop2
    with pytest.raises(LiftFailed):
        lift_majority_path(H, (X1, X2, X3, X4))
    with pytest.raises(LiftFailed):
        lift_majority_path_reference(H, (X1, X2, X3, X4))


def test_lift_rejects_non_majority_edges(prop2):
    with pytest.raises(BadSequence):
        lift_majority_path(prop2[0], (X1, X4))


@settings(max_examples=40, deadline=None)
@given(instances(n_min=5, n_max=7, k_min=3), st.integers(0, 3))
def test_lift_routes_agree(H, tie_seed):
    M = build_majority(H, TieBreak.seeded(tie_seed))
    for x, y in itertools.permutations(range(H.n), 2):
        mpath = M.shortest_path(x, y)
        if mpath is None or len(mpath) > 5:
            continue
        a = lift_majority_path(H, mpath)
        b = lift_majority_path_reference(H, mpath)
        a.validate(H)
        b.validate(H)
        assert a.vertices == b.vertices


# -- Hamilton paths ----------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(4))
def test_complete_n4_k3_has_hamilton_path(seed):
    H = random_instance(4, 3, singleton_partition(4), seed)
    w = hamilton_path(H)
    assert w is not None and w.length == 3
    w.validate(H)
    assert w.vertices[0] in q_kings(H, 3)


@pytest.mark.parametrize("sizes", [(2, 2), (3, 1), (2, 1, 1), (1, 1, 1, 1)])
def test_hamilton_matches_exhaustive_search(sizes):
    for seed in range(15):
        H = random_instance(4, 3, Partition.from_sizes(sizes), seed)
        assert (hamilton_path(H) is not None) == brute_has_hamilton(H)


def test_hamilton_too_large():
    with pytest.raises(TooLarge):
        hamilton_path(random_instance(9, 3, singleton_partition(9), 0))


# -- witnesses ---------------------------------------------------------------------------


def test_witness_format(prop2):
    w = path_at_most(prop2[0], X3, X1, 2)
    assert str(w) == "2 (1 2 3) 3 (3 0 1) 0"


@pytest.mark.parametrize(
    "witness",
    [
        PathWitness((X3, X4, X1), (A2, A2)),
        PathWitness((X3, X4, X3), (A2, A1)),
        PathWitness((X1, X4), (A1,)),
        PathWitness((X3, X4), ()),
        PathWitness((X1, X3), (A3,)),
        PathWitness((X4, X1), (Arc.of((X4, X1, X3)),)),
    ],
)
def test_witness_validation_rejects(prop2, witness):
    with pytest.raises(ValueError):
        witness.validate(prop2[0])
