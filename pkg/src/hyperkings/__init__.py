"""Kings in multipartite hypertournaments."""

from ._jit import JIT_ENABLED
from .core import (
    Arc,
    ArityMismatch,
    BadPartition,
    DuplicateArc,
    Hypertournament,
    HypertournamentError,
    IntraPartArc,
    MissingArc,
    Partition,
    arcs_between,
    from_mht,
    load_mht,
    new_hypertournament,
    pair_budget,
    save_mht,
    to_mht,
    transmitters,
)
from .generators import (
    InstanceSpace,
    SpaceTooLarge,
    TooFewSharedArcs,
    counterexample_conj2,
    enumerate_all,
    fixture_prop2,
    random_instance,
    singleton_partition,
)
from .majority import (
    ExplicitTieMismatch,
    MajorityTournament,
    TieBreak,
    build_majority,
    digraph_q_kings,
    digraph_transmitters,
)
from .paths import (
    BadSequence,
    HypothesisViolated,
    LiftFailed,
    PathWitness,
    SequenceGraph,
    TooLarge,
    UnsupportedQ,
    check_lemma1,
    hamilton_path,
    lift_majority_path,
    max_matching,
    path_at_most,
    q_kings,
    realize_sequence,
)

__version__ = "0.1.0"
