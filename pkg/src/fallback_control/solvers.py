"""Exhaustive decision procedures with witnesses for all 22 control problems.

These are the ground-truth oracles of the package: enumeration in a fixed
deterministic order (increasing size, then lexicographic), hard capacity
caps with explicit errors, never sampling.  Found witnesses are replayed
through :mod:`fallback_control.control` before being returned.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

from .control import (
    Action,
    ControlError,
    ControlInstance,
    Direction,
    TieRule,
    Witness,
    goal_met,
    survivors,
    winners_of_subset,
    witness_meets_goal,
)
from .elections import Election, fallback_winners
from .engine import SubsetEvaluator

#: Enumeration spaces above 2**DEFAULT_ENUM_CAP raise CapacityError.
DEFAULT_ENUM_CAP = 24
ENUM_CAP_ENV = "FALLBACK_CONTROL_ENUM_CAP"


class CapacityError(RuntimeError):
    """The enumeration space exceeds the configured cap."""


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise CapacityError(f"bad {ENUM_CAP_ENV} value {raw!r}") from exc


def _subset_count(pool_size: int, max_size: int) -> int:
    total = 0
    for size in range(min(max_size, pool_size) + 1):
        total += math.comb(pool_size, size)
    return total


def _check_cap(count: int, what: str) -> None:
    cap = enumeration_cap()
    if count > 1 << cap:
        raise CapacityError(
            f"{what} needs {count} evaluations; cap is 2^{cap} "
            f"(set {ENUM_CAP_ENV} to raise it)"
        )


@dataclass(frozen=True)
class SolveResult:
    decision: bool
    witness: Witness | None
    nodes_explored: int

    def __post_init__(self) -> None:
        assert self.decision == (self.witness is not None)


def _subsets_size_lex(pool: list[int], max_size: int):
    """All subsets of ``pool`` by increasing size, lexicographic within."""
    pool = sorted(pool)
    for size in range(min(max_size, len(pool)) + 1):
        yield from itertools.combinations(pool, size)


def _finish(inst: ControlInstance, witness: Witness | None, nodes: int) -> SolveResult:
    if witness is not None and not witness_meets_goal(inst, witness):
        raise AssertionError(f"solver produced a non-replaying witness {witness}")
    return SolveResult(witness is not None, witness, nodes)


def solve_add_candidates(inst: ControlInstance) -> SolveResult:
    """Enumerate spoiler subsets D' (|D'| <= k when limited)."""
    if inst.action is not Action.ADD_CANDIDATES:
        raise ControlError(f"expected candidate addition, got {inst.code}")
    pool = sorted(inst.spoilers)
    max_size = len(pool) if inst.budget is None else min(inst.budget, len(pool))
    _check_cap(_subset_count(len(pool), max_size), "spoiler-subset enumeration")
    ev = SubsetEvaluator(inst.election)
    nodes = 0
    for subset in _subsets_size_lex(pool, max_size):
        nodes += 1
        rep = ev.winners(candidates=inst.qualified | frozenset(subset))
        if goal_met(rep, inst.distinguished, inst.direction):
            return _finish(inst, Witness.added_candidates(subset), nodes)
    return SolveResult(False, None, nodes)


def solve_delete_candidates(inst: ControlInstance) -> SolveResult:
    """Enumerate deletion subsets of size <= k.

    The distinguished candidate is never deleted: forbidden outright in the
    destructive direction, futile in the constructive one.
    """
    if inst.action is not Action.DELETE_CANDIDATES:
        raise ControlError(f"expected candidate deletion, got {inst.code}")
    e = inst.election
    pool = [c for c in range(e.candidate_count) if c != inst.distinguished]
    _check_cap(_subset_count(len(pool), inst.budget), "deletion-subset enumeration")
    full = frozenset(range(e.candidate_count))
    ev = SubsetEvaluator(e)
    nodes = 0
    for subset in _subsets_size_lex(pool, inst.budget):
        nodes += 1
        rep = ev.winners(candidates=full - frozenset(subset))
        if goal_met(rep, inst.distinguished, inst.direction):
            return _finish(inst, Witness.deleted_candidates(subset), nodes)
    return SolveResult(False, None, nodes)


def solve_add_voters(inst: ControlInstance) -> SolveResult:
    """Enumerate sublists of the unregistered pool by index set."""
    if inst.action is not Action.ADD_VOTERS:
        raise ControlError(f"expected voter addition, got {inst.code}")
    e = inst.election
    pool = list(range(len(inst.unregistered)))
    max_size = len(pool) if inst.budget is None else min(inst.budget, len(pool))
    _check_cap(_subset_count(len(pool), max_size), "voter-addition enumeration")
    nodes = 0
    for subset in _subsets_size_lex(pool, max_size):
        nodes += 1
        votes = e.votes + tuple(inst.unregistered[i] for i in subset)
        rep = fallback_winners(Election(e.candidate_count, votes))
        if goal_met(rep, inst.distinguished, inst.direction):
            return _finish(inst, Witness.added_voters(subset), nodes)
    return SolveResult(False, None, nodes)


def solve_delete_voters(inst: ControlInstance) -> SolveResult:
    if inst.action is not Action.DELETE_VOTERS:
        raise ControlError(f"expected voter deletion, got {inst.code}")
    e = inst.election
    pool = list(range(len(e.votes)))
    _check_cap(_subset_count(len(pool), inst.budget), "voter-deletion enumeration")
    nodes = 0
    for subset in _subsets_size_lex(pool, inst.budget):
        nodes += 1
        drop = frozenset(subset)
        votes = tuple(v for i, v in enumerate(e.votes) if i not in drop)
        rep = fallback_winners(Election(e.candidate_count, votes))
        if goal_met(rep, inst.distinguished, inst.direction):
            return _finish(inst, Witness.deleted_voters(subset), nodes)
    return SolveResult(False, None, nodes)


def _partition_winner_report(ev: SubsetEvaluator, side1, side2, rule: TieRule, by_voters: bool):
    if by_voters:
        s1 = survivors(ev.winners(voters=side1), rule)
        s2 = survivors(ev.winners(voters=side2), rule)
        return ev.winners(candidates=s1 | s2)
    s1 = survivors(ev.winners(candidates=side1), rule)
    return ev.winners(candidates=s1 | side2)


def solve_candidate_partition(inst: ControlInstance) -> SolveResult:
    """Enumerate bipartitions C = C1 + C2.

    The run-off variant is symmetric in (C1, C2), so candidate 0 is fixed
    in C1 to halve the space; the plain variant treats the halves
    asymmetrically and enumerates both roles.
    """
    if inst.action not in (Action.PARTITION_CANDIDATES, Action.RUNOFF_PARTITION_CANDIDATES):
        raise ControlError(f"expected candidate partition, got {inst.code}")
    e = inst.election
    runoff = inst.action is Action.RUNOFF_PARTITION_CANDIDATES
    m = e.candidate_count
    _check_cap(1 << (m - 1 if runoff else m), "candidate-bipartition enumeration")
    ev = SubsetEvaluator(e)
    full = frozenset(range(m))
    pool = sorted(full - {0}) if runoff else sorted(full)
    nodes = 0
    for chosen in _subsets_size_lex(pool, len(pool)):
        nodes += 1
        c1 = frozenset(chosen) | ({0} if runoff else frozenset())
        c2 = full - c1
        if runoff:
            s1 = survivors(ev.winners(candidates=c1), inst.tie_rule)
            s2 = survivors(ev.winners(candidates=c2), inst.tie_rule)
            rep = ev.winners(candidates=s1 | s2)
        else:
            rep = _partition_winner_report(ev, c1, c2, inst.tie_rule, by_voters=False)
        if goal_met(rep, inst.distinguished, inst.direction):
            return _finish(inst, Witness.candidate_bipartition(c1), nodes)
    return SolveResult(False, None, nodes)


def solve_voter_partition(inst: ControlInstance) -> SolveResult:
    """Enumerate bipartitions V = V1 + V2, fixing voter 0 in V1 by symmetry."""
    if inst.action is not Action.PARTITION_VOTERS:
        raise ControlError(f"expected voter partition, got {inst.code}")
    e = inst.election
    n = len(e.votes)
    _check_cap(1 << max(n - 1, 0), "voter-bipartition enumeration")
    ev = SubsetEvaluator(e)
    all_voters = frozenset(range(n))
    pool = sorted(all_voters - {0})
    nodes = 0
    for chosen in _subsets_size_lex(pool, len(pool)):
        nodes += 1
        v1 = frozenset(chosen) | ({0} if n else frozenset())
        v2 = all_voters - v1
        rep = _partition_winner_report(ev, v1, v2, inst.tie_rule, by_voters=True)
        if goal_met(rep, inst.distinguished, inst.direction):
            return _finish(inst, Witness.voter_bipartition(v1), nodes)
    return SolveResult(False, None, nodes)


_SOLVERS = {
    Action.ADD_CANDIDATES: solve_add_candidates,
    Action.DELETE_CANDIDATES: solve_delete_candidates,
    Action.ADD_VOTERS: solve_add_voters,
    Action.DELETE_VOTERS: solve_delete_voters,
    Action.PARTITION_CANDIDATES: solve_candidate_partition,
    Action.RUNOFF_PARTITION_CANDIDATES: solve_candidate_partition,
    Action.PARTITION_VOTERS: solve_voter_partition,
}


def solve(inst: ControlInstance) -> SolveResult:
    """Dispatch to the brute-force solver for the instance's action."""
    return _SOLVERS[inst.action](inst)
