"""The 22 standard control problems and two-stage election semantics.

A control instance pairs a base election with an action (adding, deleting,
or partitioning candidates or voters), a direction (constructive chairs
want the distinguished candidate to become the unique winner, destructive
chairs want to prevent exactly that), and for partitions a tie-handling
rule.  Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .elections import (
    NO_WINNER_REPORT,
    CandidateId,
    Election,
    ElectionError,
    WinnerReport,
    fallback_winners,
    restrict_candidates,
)


class TieRule(enum.Enum):
    """First-round tie handling in two-stage elections.

    TE ("ties eliminate"): a first-round winner proceeds iff it is the
    unique winner of its subelection.  TP ("ties promote"): all first-round
    winners proceed.
    """

    TE = "te"
    TP = "tp"


class Direction(enum.Enum):
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE = "destructive"


class Action(enum.Enum):
    ADD_CANDIDATES = "add-candidates"
    DELETE_CANDIDATES = "delete-candidates"
    PARTITION_CANDIDATES = "partition-candidates"
    RUNOFF_PARTITION_CANDIDATES = "runoff-partition-candidates"
    ADD_VOTERS = "add-voters"
    DELETE_VOTERS = "delete-voters"
    PARTITION_VOTERS = "partition-voters"


class ControlError(ValueError):
    """Malformed control instance or witness."""


def winners_of_subset(e: Election, candidates) -> WinnerReport:
    """Winners of the election restricted to ``candidates``, in original ids.

    An empty candidate set is the TE collapse: the two-stage election has
    no winner, reported as NO_WINNER rather than an error.
    """
    cands = frozenset(candidates)
    if not cands:
        return NO_WINNER_REPORT
    if cands == frozenset(range(e.candidate_count)):
        return fallback_winners(e)
    sub, mapping = restrict_candidates(e, cands)
    back = {new: old for old, new in mapping.items()}
    rep = fallback_winners(sub)
    return WinnerReport(
        frozenset(back[w] for w in rep.winners), rep.mode, rep.winning_score, rep.level
    )


def survivors(report: WinnerReport, rule: TieRule) -> frozenset[CandidateId]:
    """First-round winners that proceed to the final stage under ``rule``."""
    if rule is TieRule.TP:
        return report.winners
    return report.winners if len(report.winners) == 1 else frozenset()


def evaluate_candidate_partition(
    e: Election, c1, runoff: bool, rule: TieRule
) -> WinnerReport:
    """Outcome of the two-stage election for candidate partition (C1, C-C1).

    Without a run-off the final universe is survivors(C1) united with C2;
    with a run-off both halves hold subelections and only survivors meet.
    All stages use the full voter list.  An empty final universe yields
    NO_WINNER.
    """
    c1 = frozenset(c1)
    full = frozenset(range(e.candidate_count))
    if not c1 <= full:
        raise ControlError("C1 must be a subset of the candidate universe")
    c2 = full - c1
    s1 = survivors(winners_of_subset(e, c1), rule)
    if runoff:
        final = s1 | survivors(winners_of_subset(e, c2), rule)
    else:
        final = s1 | c2
    return winners_of_subset(e, final)


def evaluate_voter_partition(e: Election, v1, rule: TieRule) -> WinnerReport:
    """Outcome of the two-stage election for voter partition (V1, V-V1).

    Both first-round subelections run on the full candidate set; the final
    stage restricts the full voter list to the surviving candidates.
    """
    v1 = frozenset(v1)
    n = len(e.votes)
    if not all(0 <= i < n for i in v1):
        raise ControlError("V1 must be a set of voter indices")
    votes1 = tuple(e.votes[i] for i in sorted(v1))
    votes2 = tuple(e.votes[i] for i in range(n) if i not in v1)
    w1 = survivors(fallback_winners(Election(e.candidate_count, votes1)), rule)
    w2 = survivors(fallback_winners(Election(e.candidate_count, votes2)), rule)
    return winners_of_subset(e, w1 | w2)


def goal_met(report: WinnerReport, c: CandidateId, direction: Direction) -> bool:
    """Constructive: c is the unique winner.  Destructive: it is not.

    A NO_WINNER outcome therefore counts as destructive success.
    """
    unique = report.is_unique_winner(c)
    return unique if direction is Direction.CONSTRUCTIVE else not unique


# ---------------------------------------------------------------------------
# Control instances


@dataclass(frozen=True)
class ControlInstance:
    """One tagged control problem over a concrete election.

    For candidate addition, ``election`` ranges over the whole C + D
    universe, ``qualified`` names C, and the spoiler pool D is the rest;
    votes are restricted to the active subset when evaluated.  For voter
    addition, ``unregistered`` is the pool V' (disjoint from the election's
    vote list by construction: indices are separate).  ``budget`` is None
    for unlimited addition and for partition problems.
    """

    action: Action
    direction: Direction
    election: Election
    distinguished: CandidateId
    budget: int | None = None
    tie_rule: TieRule | None = None
    qualified: frozenset[CandidateId] | None = None
    unregistered: tuple[tuple[CandidateId, ...], ...] | None = None

    def __post_init__(self) -> None:
        e = self.election
        if not 0 <= self.distinguished < e.candidate_count:
            raise ControlError("distinguished candidate out of range")
        partition = self.action in (
            Action.PARTITION_CANDIDATES,
            Action.RUNOFF_PARTITION_CANDIDATES,
            Action.PARTITION_VOTERS,
        )
        if partition and self.tie_rule is None:
            raise ControlError("partition control needs a tie rule")
        if not partition and self.tie_rule is not None:
            raise ControlError(f"{self.action} does not take a tie rule")
        if self.budget is not None and self.budget < 0:
            raise ControlError("budget must be >= 0")
        if self.action is Action.ADD_CANDIDATES:
            if self.qualified is None:
                raise ControlError("candidate addition needs the qualified set")
            if not self.qualified <= frozenset(range(e.candidate_count)):
                raise ControlError("qualified set out of range")
            if self.distinguished not in self.qualified:
                raise ControlError("distinguished candidate must be qualified")
        elif self.qualified is not None:
            raise ControlError("qualified set only applies to candidate addition")
        if self.action is Action.ADD_VOTERS:
            if self.unregistered is None:
                raise ControlError("voter addition needs the unregistered pool")
            for vote in self.unregistered:
                Election(e.candidate_count, (vote,))
        elif self.unregistered is not None:
            raise ControlError("unregistered pool only applies to voter addition")
        if partition and self.budget is not None:
            raise ControlError("partition control takes no budget")

    @property
    def spoilers(self) -> frozenset[CandidateId]:
        if self.action is not Action.ADD_CANDIDATES:
            raise ControlError("only candidate addition has a spoiler pool")
        return frozenset(range(self.election.candidate_count)) - self.qualified

    @property
    def code(self) -> str:
        """The problem's shorthand code, e.g. ``ccac`` or ``dcpv-tp``."""
        d = "cc" if self.direction is Direction.CONSTRUCTIVE else "dc"
        if self.action is Action.ADD_CANDIDATES:
            body = "ac" if self.budget is not None else "auc"
        else:
            body = {
                Action.DELETE_CANDIDATES: "dc",
                Action.PARTITION_CANDIDATES: "pc",
                Action.RUNOFF_PARTITION_CANDIDATES: "rpc",
                Action.ADD_VOTERS: "av",
                Action.DELETE_VOTERS: "dv",
                Action.PARTITION_VOTERS: "pv",
            }[self.action]
        tie = f"-{self.tie_rule.value}" if self.tie_rule is not None else ""
        return f"{d}{body}{tie}"


CONTROL_CODES: dict[str, tuple[Action, Direction, TieRule | None, bool]] = {}
for _dir, _d in ((Direction.CONSTRUCTIVE, "cc"), (Direction.DESTRUCTIVE, "dc")):
    CONTROL_CODES[f"{_d}ac"] = (Action.ADD_CANDIDATES, _dir, None, True)
    CONTROL_CODES[f"{_d}auc"] = (Action.ADD_CANDIDATES, _dir, None, False)
    CONTROL_CODES[f"{_d}dc"] = (Action.DELETE_CANDIDATES, _dir, None, True)
    CONTROL_CODES[f"{_d}av"] = (Action.ADD_VOTERS, _dir, None, True)
    CONTROL_CODES[f"{_d}dv"] = (Action.DELETE_VOTERS, _dir, None, True)
    for _rule in TieRule:
        CONTROL_CODES[f"{_d}pc-{_rule.value}"] = (
            Action.PARTITION_CANDIDATES, _dir, _rule, False)
        CONTROL_CODES[f"{_d}rpc-{_rule.value}"] = (
            Action.RUNOFF_PARTITION_CANDIDATES, _dir, _rule, False)
        CONTROL_CODES[f"{_d}pv-{_rule.value}"] = (
            Action.PARTITION_VOTERS, _dir, _rule, False)
assert len(CONTROL_CODES) == 22


# ---------------------------------------------------------------------------
# Witnesses


@dataclass(frozen=True)
class Witness:
    """The concrete control action certifying a yes-answer.

    ``selection`` holds added/deleted candidate ids, added/deleted voter
    indices (into the pool for additions, into the vote list for
    deletions), or the first half of a bipartition (C1 candidate ids or V1
    voter indices).
    """

    kind: str  # one of the Action values
    selection: frozenset[int]

    @staticmethod
    def added_candidates(ids) -> "Witness":
        return Witness(Action.ADD_CANDIDATES.value, frozenset(ids))

    @staticmethod
    def deleted_candidates(ids) -> "Witness":
        return Witness(Action.DELETE_CANDIDATES.value, frozenset(ids))

    @staticmethod
    def added_voters(indices) -> "Witness":
        return Witness(Action.ADD_VOTERS.value, frozenset(indices))

    @staticmethod
    def deleted_voters(indices) -> "Witness":
        return Witness(Action.DELETE_VOTERS.value, frozenset(indices))

    @staticmethod
    def candidate_bipartition(c1) -> "Witness":
        return Witness("candidate-bipartition", frozenset(c1))

    @staticmethod
    def voter_bipartition(v1) -> "Witness":
        return Witness("voter-bipartition", frozenset(v1))


def replay_witness(inst: ControlInstance, witness: Witness) -> WinnerReport:
    """Apply a witness to the instance and evaluate the resulting election."""
    e = inst.election
    sel = witness.selection
    if inst.action is Action.ADD_CANDIDATES:
        if not sel <= inst.spoilers:
            raise ControlError("witness adds non-spoiler candidates")
        if inst.budget is not None and len(sel) > inst.budget:
            raise ControlError("witness exceeds the budget")
        return winners_of_subset(e, inst.qualified | sel)
    if inst.action is Action.DELETE_CANDIDATES:
        if inst.budget is not None and len(sel) > inst.budget:
            raise ControlError("witness exceeds the budget")
        if inst.direction is Direction.DESTRUCTIVE and inst.distinguished in sel:
            raise ControlError("destructive deletion may not delete the distinguished candidate")
        return winners_of_subset(e, frozenset(range(e.candidate_count)) - sel)
    if inst.action is Action.ADD_VOTERS:
        if not all(0 <= i < len(inst.unregistered) for i in sel):
            raise ControlError("witness indexes outside the unregistered pool")
        if inst.budget is not None and len(sel) > inst.budget:
            raise ControlError("witness exceeds the budget")
        votes = e.votes + tuple(inst.unregistered[i] for i in sorted(sel))
        return fallback_winners(Election(e.candidate_count, votes))
    if inst.action is Action.DELETE_VOTERS:
        if not all(0 <= i < len(e.votes) for i in sel):
            raise ControlError("witness indexes outside the vote list")
        if inst.budget is not None and len(sel) > inst.budget:
            raise ControlError("witness exceeds the budget")
        votes = tuple(v for i, v in enumerate(e.votes) if i not in sel)
        return fallback_winners(Election(e.candidate_count, votes))
    if inst.action is Action.PARTITION_CANDIDATES:
        return evaluate_candidate_partition(e, sel, False, inst.tie_rule)
    if inst.action is Action.RUNOFF_PARTITION_CANDIDATES:
        return evaluate_candidate_partition(e, sel, True, inst.tie_rule)
    if inst.action is Action.PARTITION_VOTERS:
        return evaluate_voter_partition(e, sel, inst.tie_rule)
    raise ControlError(f"unknown action {inst.action}")


def witness_meets_goal(inst: ControlInstance, witness: Witness) -> bool:
    return goal_met(replay_witness(inst, witness), inst.distinguished, inst.direction)
