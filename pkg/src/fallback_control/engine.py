"""Vectorized winner determination for bulk enumeration.

The exact solvers need winners of thousands of subelections (one per
bipartition).  This module mirrors :mod:`fallback_control.elections` on a
position-matrix representation: ``P[v, c]`` is candidate ``c``'s 1-based
rank in vote ``v``, or UNRANKED if the vote disapproves of ``c``.  The
equivalence of both implementations is pinned down in tests.
"""

from __future__ import annotations

import numpy as np

from .elections import UNRANKED, Election, WinnerMode, WinnerReport, majority_threshold


def position_matrix(e: Election) -> np.ndarray:
    """(votes x candidates) rank matrix with UNRANKED for disapprovals."""
    p = np.full((len(e.votes), e.candidate_count), UNRANKED, dtype=np.int32)
    for i, vote in enumerate(e.votes):
        for rank, c in enumerate(vote, start=1):
            p[i, c] = rank
    return p


def winners_from_positions(p: np.ndarray, level_cap: int) -> WinnerReport:
    """Winner report for the election encoded by ``p``.

    ``level_cap`` is the size of the candidate universe the ranks refer to
    (ranks above it cannot occur; approvals are exactly the entries
    <= level_cap).
    """
    n_votes = p.shape[0]
    if n_votes == 0:
        return WinnerReport(
            frozenset(range(p.shape[1])), WinnerMode.APPROVAL_FALLBACK, 0
        )
    maj = majority_threshold(n_votes)
    if n_votes >= maj:
        # kth-smallest rank per candidate = its earliest majority level.
        kth = np.partition(p, maj - 1, axis=0)[maj - 1]
        best_level = int(kth.min())
        if best_level <= level_cap:
            scores = (p <= best_level).sum(axis=0)
            top = int(scores.max())
            winners = frozenset(np.flatnonzero(scores == top).tolist())
            return WinnerReport(winners, WinnerMode.MAJORITY_LEVEL, top, best_level)
    scores = (p <= level_cap).sum(axis=0)
    top = int(scores.max())
    winners = frozenset(np.flatnonzero(scores == top).tolist())
    return WinnerReport(winners, WinnerMode.APPROVAL_FALLBACK, top)


def restrict_positions(p: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Re-rank ``p`` over the candidate columns in ``keep`` (sorted ids).

    Approved entries keep their relative order; disapprovals stay UNRANKED.
    The returned matrix has one column per kept candidate, in ``keep``
    order.
    """
    sub = p[:, keep]
    order = np.argsort(sub, axis=1, kind="stable")
    ranks = np.empty_like(sub)
    np.put_along_axis(
        ranks, order, np.arange(1, sub.shape[1] + 1, dtype=sub.dtype)[None, :], axis=1
    )
    return np.where(sub < UNRANKED, ranks, UNRANKED)


class SubsetEvaluator:
    """Cached position matrix with winner queries on sub-universes.

    Winners are reported in the original candidate ids of the wrapped
    election.
    """

    def __init__(self, e: Election):
        self.election = e
        self.positions = position_matrix(e)

    def winners(self, candidates=None, voters=None) -> WinnerReport:
        p = self.positions
        if voters is not None:
            rows = np.fromiter(sorted(voters), dtype=np.intp, count=len(voters))
            p = p[rows] if len(rows) else p[:0]
        if candidates is None:
            return winners_from_positions(p, self.election.candidate_count)
        cand_list = sorted(candidates)
        if not cand_list:
            from .elections import NO_WINNER_REPORT

            return NO_WINNER_REPORT
        keep = np.asarray(cand_list, dtype=np.intp)
        rep = winners_from_positions(restrict_positions(p, keep), len(cand_list))
        return WinnerReport(
            frozenset(cand_list[w] for w in rep.winners),
            rep.mode,
            rep.winning_score,
            rep.level,
        )
