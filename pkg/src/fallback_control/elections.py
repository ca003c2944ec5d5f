"""Vote and election representation, level scoring, Bucklin/fallback winners.

A fallback vote is an ordered tuple of distinct approved candidate ids,
most-preferred first; candidates absent from the tuple are disapproved.
A Bucklin vote is the special case that ranks every candidate.  All values
in this module are immutable and every operation is a pure function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

CandidateId = int

#: Sentinel rank for candidates a vote disapproves of (larger than any level).
UNRANKED = 1 << 30


class ElectionError(ValueError):
    """Invalid vote, candidate id, or level."""


def majority_threshold(voter_count: int) -> int:
    """Strict majority threshold: floor(voter_count / 2) + 1."""
    if voter_count < 0:
        raise ElectionError("voter count must be >= 0")
    return voter_count // 2 + 1


@dataclass(frozen=True)
class Election:
    """A candidate universe 0..candidate_count-1 plus an ordered vote list.

    Votes are a list, not a set: duplicates are distinct voters and voter
    indices are meaningful (voter partitions are index-based).
    """

    candidate_count: int
    votes: tuple[tuple[CandidateId, ...], ...]

    def __post_init__(self) -> None:
        if self.candidate_count < 1:
            raise ElectionError("an election needs at least one candidate")
        for vote in self.votes:
            if len(set(vote)) != len(vote):
                raise ElectionError(f"duplicate candidate in vote {vote}")
            for c in vote:
                if not 0 <= c < self.candidate_count:
                    raise ElectionError(f"candidate {c} out of range in vote {vote}")

    @property
    def voter_count(self) -> int:
        return len(self.votes)

    @property
    def is_bucklin(self) -> bool:
        """True iff every vote ranks the full candidate universe."""
        return all(len(v) == self.candidate_count for v in self.votes)

    def majority(self) -> int:
        return majority_threshold(len(self.votes))


def election(candidate_count: int, votes=()) -> Election:
    """Convenience constructor accepting any iterable of iterables."""
    return Election(candidate_count, tuple(tuple(v) for v in votes))


class WinnerMode(enum.Enum):
    MAJORITY_LEVEL = "majority-level"
    APPROVAL_FALLBACK = "approval-fallback"
    NO_WINNER = "no-winner"


@dataclass(frozen=True)
class WinnerReport:
    """Outcome of winner determination.

    ``level`` is set only in MAJORITY_LEVEL mode.  ``winning_score`` is the
    (shared) score of the winners: a level score in MAJORITY_LEVEL mode, an
    approval score in APPROVAL_FALLBACK mode, 0 when there is no winner.
    Ties are never broken internally; unique-winner questions are asked by
    callers as ``len(winners) == 1 and c in winners``.
    """

    winners: frozenset[CandidateId]
    mode: WinnerMode
    winning_score: int
    level: int | None = None

    def is_unique_winner(self, c: CandidateId) -> bool:
        return len(self.winners) == 1 and c in self.winners


NO_WINNER_REPORT = WinnerReport(frozenset(), WinnerMode.NO_WINNER, 0)


def _check_candidate(e: Election, c: CandidateId) -> None:
    if not 0 <= c < e.candidate_count:
        raise ElectionError(f"candidate {c} out of range")


def level_score(e: Election, c: CandidateId, level: int) -> int:
    """Number of votes ranking ``c`` among their top ``level`` positions.

    Truncated votes contribute through their approved prefix only, so the
    score is monotonically nondecreasing in ``level`` and reaches the
    approval score at ``level == candidate_count``.
    """
    _check_candidate(e, c)
    if not 1 <= level <= e.candidate_count:
        raise ElectionError(f"level {level} out of range 1..{e.candidate_count}")
    return sum(1 for v in e.votes if c in v[:level])


def approval_score(e: Election, c: CandidateId) -> int:
    """Number of votes approving of ``c`` at any position."""
    _check_candidate(e, c)
    return sum(1 for v in e.votes if c in v)


def deficit(e: Election, c: CandidateId, level: int) -> int:
    """majority_threshold(|V|) - level_score(e, c, level); may be <= 0."""
    return e.majority() - level_score(e, c, level)


def all_level_scores(e: Election, level: int) -> list[int]:
    """Level scores of every candidate at ``level``, indexed by candidate id."""
    if not 1 <= level <= e.candidate_count:
        raise ElectionError(f"level {level} out of range 1..{e.candidate_count}")
    scores = [0] * e.candidate_count
    for v in e.votes:
        for c in v[:level]:
            scores[c] += 1
    return scores


def fallback_winners(e: Election) -> WinnerReport:
    """Fallback voting winners.

    Finds the smallest level at which some candidate reaches the strict
    majority threshold; the winners are the candidates with the largest
    score at that level.  If no level yields a majority (possible only with
    truncated votes), every candidate with a largest approval score wins.
    An empty vote list yields APPROVAL_FALLBACK with all candidates tied
    at score 0.
    """
    maj = e.majority()
    scores = [0] * e.candidate_count
    n_votes = len(e.votes)
    for level in range(1, e.candidate_count + 1):
        p = level - 1
        for v in e.votes:
            if len(v) > p:
                scores[v[p]] += 1
        best = max(scores)
        if n_votes and best >= maj:
            winners = frozenset(c for c, s in enumerate(scores) if s == best)
            return WinnerReport(winners, WinnerMode.MAJORITY_LEVEL, best, level)
    best = max(scores)
    winners = frozenset(c for c, s in enumerate(scores) if s == best)
    return WinnerReport(winners, WinnerMode.APPROVAL_FALLBACK, best)


def bucklin_winners(e: Election) -> WinnerReport:
    """Bucklin winners: fallback winners with the full-ranking precondition.

    Raises if any vote is a proper approval prefix rather than a ranking of
    the whole candidate set.
    """
    for i, v in enumerate(e.votes):
        if len(v) != e.candidate_count:
            raise ElectionError(
                f"vote {i} ranks {len(v)} of {e.candidate_count} candidates; "
                "Bucklin votes must rank all of them"
            )
    return fallback_winners(e)


def restrict_candidates(e: Election, keep) -> tuple[Election, dict[CandidateId, CandidateId]]:
    """Restrict the election to a candidate subset.

    The kept candidates are reindexed densely in increasing id order and
    each vote's approved list is filtered, preserving relative order.
    Returns the restricted election together with the old-id -> new-id map.
    """
    keep = frozenset(keep)
    if not keep:
        raise ElectionError("cannot restrict to an empty candidate set")
    for c in keep:
        _check_candidate(e, c)
    mapping = {old: new for new, old in enumerate(sorted(keep))}
    votes = tuple(tuple(mapping[c] for c in v if c in keep) for v in e.votes)
    return Election(len(keep), votes), mapping
