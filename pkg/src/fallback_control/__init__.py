"""Bucklin and fallback voting under electoral control.

Winner determination for Bucklin and fallback elections, typed versions of
the 22 standard control problems with exhaustive solvers, polynomial-time
algorithms for the two vulnerable destructive voter-control cases, exact
solvers for the covering problems hardness reductions start from, and the
reduction instance generators themselves with empirical verification.
"""

from .control import (
    Action,
    ControlError,
    ControlInstance,
    Direction,
    TieRule,
    Witness,
    evaluate_candidate_partition,
    evaluate_voter_partition,
    goal_met,
    replay_witness,
    survivors,
    winners_of_subset,
    witness_meets_goal,
)
from .covers import (
    Graph,
    InstanceError,
    SetSystem,
    closed_neighborhood,
    graph,
    is_valid_rhs,
    is_valid_x3c,
    set_system,
    solve_dominating_set,
    solve_hitting_set,
    solve_x3c,
)
from .elections import (
    Election,
    ElectionError,
    WinnerMode,
    WinnerReport,
    approval_score,
    bucklin_winners,
    deficit,
    election,
    fallback_winners,
    level_score,
    majority_threshold,
    restrict_candidates,
)
from .polycontrol import StagedResult, StageStep, dcav_fallback, dcdv_fallback
from .reductions import (
    ConstructionMeta,
    DomainError,
    FAMILIES,
    ReductionReport,
    build_instance,
    ds_to_bv_add_candidates,
    ds_to_bv_add_voters,
    ds_to_bv_dcpv_te,
    ds_to_bv_delete_candidates,
    ds_to_bv_delete_voters,
    hs_to_rhs,
    rhs_to_bv_candidate_partition,
    rhs_to_fv_dcpv_tp,
    verify_reduction,
    x3c_to_bv_partition_voters,
)
from .solvers import (
    CapacityError,
    SolveResult,
    solve,
    solve_add_candidates,
    solve_add_voters,
    solve_candidate_partition,
    solve_delete_candidates,
    solve_delete_voters,
    solve_voter_partition,
)

__version__ = "0.1.0"
