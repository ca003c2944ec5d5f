"""Polynomial-time destructive voter control for fallback elections.

Fallback (and hence Bucklin) voting is vulnerable to destructive control
by adding voters and by deleting voters.  ``dcav_fallback`` implements the
staged certification algorithm for the adding-voters case: at most one
majority stage per level plus a final approval stage, each stage checking
arithmetic conditions on one rival candidate at a time, halting at the
first success.  ``dcdv_fallback`` is the mirror image for deletions.  Both
return the decision, a replayable witness, and a trace of the checks.

Decisions are required to agree with the exhaustive solvers on every
instance; the test suite enforces this over an exhaustive envelope of
small elections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .control import Witness
from .elections import Election, fallback_winners, majority_threshold

APPROVAL_STAGE = 0  # stage index used for approval-stage trace entries


@dataclass(frozen=True)
class StageStep:
    """One recorded check: majority stage ``stage`` (or APPROVAL_STAGE),
    rival candidate ``rival``, condition label, and whether it held."""

    stage: int
    rival: int
    condition: str
    held: bool


@dataclass(frozen=True)
class StagedResult:
    decision: bool
    witness: Witness | None
    nodes_explored: int
    trace: tuple[StageStep, ...]


def _positions(candidate_count: int, votes) -> list[list[int]]:
    """pos[v][c] = 1-based rank of c in vote v, or candidate_count+1."""
    unranked = candidate_count + 1
    out = []
    for vote in votes:
        row = [unranked] * candidate_count
        for rank, c in enumerate(vote, start=1):
            row[c] = rank
        out.append(row)
    return out


def _base_level_scores(candidate_count: int, votes) -> list[list[int]]:
    """scores[i][c] = level-i score of c over ``votes`` (scores[0] = 0)."""
    scores = [[0] * candidate_count]
    prev = scores[0]
    for level in range(1, candidate_count + 1):
        row = prev[:]
        for vote in votes:
            if len(vote) >= level:
                row[vote[level - 1]] += 1
        scores.append(row)
        prev = row
    return scores


def dcav_fallback(
    candidate_count: int, registered, unregistered, c: int, budget: int
) -> StagedResult:
    """Destructive control by adding voters, decided in polynomial time.

    Decides whether adding at most ``budget`` voters from ``unregistered``
    to ``registered`` can prevent ``c`` from being the unique fallback
    winner, and if so returns a successful sublist (as pool indices).

    The algorithm proceeds in majority stages 1..k (k = longest approval
    list anywhere) and a final approval stage.  Majority stage i tries,
    for each rival d, the largest budget-respecting list of pool voters
    that approve d by level i while disapproving c by level i; if that
    would let c clinch an earlier level, a repair list of voters approving
    both c and d by level i (c as late as possible, ties broken toward
    lower pool index) is added.  The approval stage tops up with voters
    disapproving both candidates to push c below the approval majority.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    registered = tuple(tuple(v) for v in registered)
    unregistered = tuple(tuple(v) for v in unregistered)
    base = Election(candidate_count, registered)
    if not 0 <= c < candidate_count:
        raise ValueError(f"candidate {c} out of range")
    trace: list[StageStep] = []
    nodes = 1
    if not fallback_winners(base).is_unique_winner(c):
        return StagedResult(True, Witness.added_voters(()), nodes, tuple(trace))

    n = len(registered)
    pool_pos = _positions(candidate_count, unregistered)
    scores_v = _base_level_scores(candidate_count, registered)
    max_approvals = max(
        [len(v) for v in registered + unregistered] or [0]
    )

    def pool_score(indices, cand, level):
        return sum(1 for i in indices if pool_pos[i][cand] <= level)

    def step(stage, d, cond, held):
        trace.append(StageStep(stage, d, cond, held))
        return held

    for i in range(1, max_approvals + 1):
        for d in range(candidate_count):
            if d == c:
                continue
            nodes += 1
            if i == 1:
                v_d = [j for j, p in enumerate(pool_pos) if p[d] == 1][:budget]
                total = n + len(v_d)
                score1_d = scores_v[1][d] + len(v_d)
                score1_c = scores_v[1][c] + pool_score(v_d, c, 1)
                if not step(1, d, "3.1", score1_d >= score1_c):
                    continue
                if score1_d >= majority_threshold(total):
                    return StagedResult(
                        True, Witness.added_voters(v_d), nodes, tuple(trace)
                    )
                continue
            v_d = [
                j
                for j, p in enumerate(pool_pos)
                if p[d] <= i and p[c] > i
            ][:budget]
            total = n + len(v_d)
            maj = majority_threshold(total)
            si_d = scores_v[i][d] + len(v_d)
            si_c = scores_v[i][c]  # v_d voters disapprove c by level i
            if not step(i, d, "3.2", si_d >= si_c):
                continue
            if si_d < maj:
                continue
            cond33 = scores_v[i - 1][c] >= maj
            step(i, d, "3.3", cond33)
            if not cond33:
                return StagedResult(
                    True, Witness.added_voters(v_d), nodes, tuple(trace)
                )
            # c has already clinched an earlier level; dilute with voters
            # approving both c and d by level i, c as late as possible.
            taken = set(v_d)
            repair_pool = sorted(
                (
                    j
                    for j, p in enumerate(pool_pos)
                    if j not in taken and p[c] <= i and p[d] <= i
                ),
                key=lambda j: (-pool_pos[j][c], j),
            )
            v_cd = repair_pool[: budget - len(v_d)]
            total2 = total + len(v_cd)
            maj2 = majority_threshold(total2)
            sim1_c = scores_v[i - 1][c] + pool_score(v_cd, c, i - 1)
            cond34 = sim1_c >= maj2
            step(i, d, "3.4", cond34)
            if cond34:
                continue
            deficit_d = maj - si_d
            if len(v_cd) >= deficit_d:
                return StagedResult(
                    True, Witness.added_voters(v_d + v_cd), nodes, tuple(trace)
                )
            continue

    # Approval stage.
    app = scores_v[candidate_count]
    cond35 = app[c] < (n + budget) // 2 + 1
    trace.append(StageStep(APPROVAL_STAGE, c, "3.5", cond35))
    if not cond35:
        return StagedResult(False, None, nodes, tuple(trace))
    unranked = candidate_count + 1
    for d in range(candidate_count):
        if d == c:
            continue
        nodes += 1
        need = app[c] - app[d]
        pool = [
            j
            for j, p in enumerate(pool_pos)
            if p[d] < unranked and p[c] == unranked
        ]
        if need > budget or len(pool) < need:
            continue
        v_d = pool[: max(need, 0)]
        total = n + len(v_d)
        cond36 = app[c] < majority_threshold(total)
        step(APPROVAL_STAGE, d, "3.6", cond36)
        if cond36:
            return StagedResult(True, Witness.added_voters(v_d), nodes, tuple(trace))
        taken = set(v_d)
        both_out = [
            j
            for j, p in enumerate(pool_pos)
            if j not in taken and p[c] == unranked and p[d] == unranked
        ]
        topup = 2 * app[c] - total
        cond37 = budget - len(v_d) >= topup and len(both_out) >= topup
        step(APPROVAL_STAGE, d, "3.7", cond37)
        if cond37:
            return StagedResult(
                True,
                Witness.added_voters(v_d + both_out[:topup]),
                nodes,
                tuple(trace),
            )
    return StagedResult(False, None, nodes, tuple(trace))


def dcdv_fallback(candidate_count: int, votes, c: int, budget: int) -> StagedResult:
    """Destructive control by deleting voters, decided in polynomial time.

    Mirror image of :func:`dcav_fallback`: instead of adding voters that
    help a rival d while avoiding c, delete voters that help c while
    avoiding d.  Majority stage i over rival d classifies voters into
    three deletable classes: helping c but not d by level i (deleted
    earliest-c first, which weakens c's earlier levels fastest), helping
    both (a repair class for when c would still clinch an earlier level),
    and helping neither (pure majority-threshold dilution).  Class sizes
    are searched exhaustively, which stays polynomial since each class is
    taken greedily in a fixed order.  An approval stage mirrors the same
    classes on whole approval sets.  Every emitted deletion set is
    verified by evaluation before being returned.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    votes = tuple(tuple(v) for v in votes)
    if not 0 <= c < candidate_count:
        raise ValueError(f"candidate {c} out of range")
    base = Election(candidate_count, votes)
    trace: list[StageStep] = []
    nodes = 1
    if not fallback_winners(base).is_unique_winner(c):
        return StagedResult(True, Witness.deleted_voters(()), nodes, tuple(trace))

    n = len(votes)
    budget = min(budget, n)
    if candidate_count >= 2 and budget >= n:
        return StagedResult(
            True, Witness.deleted_voters(range(n)), nodes, tuple(trace)
        )

    pos = _positions(candidate_count, votes)
    scores = _base_level_scores(candidate_count, votes)
    max_approvals = max((len(v) for v in votes), default=0)
    unranked = candidate_count + 1

    def verified(deleted) -> StagedResult | None:
        witness = Witness.deleted_voters(deleted)
        keep = [v for j, v in enumerate(votes) if j not in set(deleted)]
        rep = fallback_winners(Election(candidate_count, tuple(keep)))
        if rep.is_unique_winner(c):
            return None
        return StagedResult(True, witness, nodes, tuple(trace))

    def search(d, only_c, both, neither, s_c, s_d, s_c_early, early_in_only_c, early_in_both):
        """Try deletion counts (j, r, s) from the three classes.

        ``s_c``/``s_d`` are c's and d's current scores at the stage level,
        ``s_c_early`` c's score one level earlier (0 at stage 1 and in the
        approval stage, where clinching earlier is impossible by
        construction).  ``early_in_only_c``/``early_in_both`` say how many
        of the first t deletions in each class reduce that earlier score.
        """
        for j in range(min(budget, len(only_c)) + 1):
            for r in range(min(budget - j, len(both)) + 1):
                for s in range(min(budget - j - r, len(neither)) + 1):
                    remaining = n - j - r - s
                    maj = majority_threshold(remaining)
                    new_d = s_d - r
                    new_c = s_c - j - r
                    new_c_early = s_c_early - early_in_only_c[j] - early_in_both[r]
                    if new_d >= maj and new_d >= new_c and new_c_early < maj:
                        chosen = only_c[:j] + both[:r] + neither[:s]
                        hit = verified(chosen)
                        if hit is not None:
                            return hit
        return None

    def early_prefix(cls, level):
        """early[t] = how many of the first t voters rank c by ``level``."""
        out = [0]
        for j in cls:
            out.append(out[-1] + (1 if pos[j][c] <= level else 0))
        return out

    for i in range(1, max_approvals + 1):
        for d in range(candidate_count):
            if d == c:
                continue
            nodes += 1
            only_c = sorted(
                (j for j in range(n) if pos[j][c] <= i and pos[j][d] > i),
                key=lambda j: (pos[j][c], j),
            )
            both = sorted(
                (j for j in range(n) if pos[j][c] <= i and pos[j][d] <= i),
                key=lambda j: (pos[j][c], j),
            )
            neither = [j for j in range(n) if pos[j][c] > i and pos[j][d] > i]
            hit = search(
                d,
                only_c,
                both,
                neither,
                scores[i][c],
                scores[i][d],
                scores[i - 1][c],
                early_prefix(only_c, i - 1),
                early_prefix(both, i - 1),
            )
            if hit is not None:
                trace.append(StageStep(i, d, "stage-hit", True))
                return hit

    app = scores[candidate_count]
    for d in range(candidate_count):
        if d == c:
            continue
        nodes += 1
        only_c = [j for j in range(n) if pos[j][c] < unranked and pos[j][d] == unranked]
        both = [j for j in range(n) if pos[j][c] < unranked and pos[j][d] < unranked]
        neither = [j for j in range(n) if pos[j][c] == unranked and pos[j][d] == unranked]
        zero = [0] * (n + 1)
        hit = search(d, only_c, both, neither, app[c], app[d], 0, zero, zero)
        if hit is not None:
            trace.append(StageStep(APPROVAL_STAGE, d, "approval-hit", True))
            return hit
    return StagedResult(False, None, nodes, tuple(trace))
