"""Instance transformers mapping covering problems to control problems.

Each transformer turns a DOMINATING SET, RESTRICTED HITTING SET, or EXACT
COVER BY THREE-SETS instance into a control instance over a Bucklin or
fallback election whose answer matches the source problem's answer, and
returns alongside it a :class:`ConstructionMeta` naming every candidate
group and voter group, so tests can check the constructions' score tables
symbolically instead of re-deriving offsets.

Candidate ids are allocated group by group; blocks of candidates that a
vote ranks contiguously ("tail blocks") are ordered by id, which plays the
role of the fixed tacit ordering of the candidate universe.  Named
"challenger" candidates are allocated after the padding so that they sit
late inside any tail block that contains them.

``verify_reduction`` pairs a source-problem oracle verdict with a
brute-force control verdict for an instance and also replays the
construction's forward witness map (source witness -> control witness).
"""

from __future__ import annotations

from dataclasses import dataclass

from .control import Action, ControlInstance, Direction, TieRule, Witness, witness_meets_goal
from .covers import (
    Graph,
    SetSystem,
    closed_neighborhood,
    is_valid_rhs,
    is_valid_x3c,
    solve_dominating_set,
    solve_hitting_set,
    solve_x3c,
)
from .elections import Election
from .solvers import SolveResult, solve


class DomainError(ValueError):
    """Source instance outside the construction's validity domain."""


@dataclass(frozen=True)
class VoterGroup:
    name: str
    start: int
    count: int

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(self.start, self.start + self.count))


@dataclass(frozen=True)
class ConstructionMeta:
    """Named candidate groups (id tuples) and voter groups of a construction."""

    family: str
    params: tuple[tuple[str, int], ...]
    candidate_groups: dict[str, tuple[int, ...]]
    voter_groups: tuple[VoterGroup, ...]

    def group(self, name: str) -> tuple[int, ...]:
        return self.candidate_groups[name]

    def single(self, name: str) -> int:
        (c,) = self.candidate_groups[name]
        return c

    def voter_group(self, name: str) -> VoterGroup:
        for g in self.voter_groups:
            if g.name == name:
                return g
        raise KeyError(name)

    def param(self, name: str) -> int:
        return dict(self.params)[name]


class _Builder:
    """Allocates candidate ids group by group and assembles votes."""

    def __init__(self) -> None:
        self.groups: dict[str, tuple[int, ...]] = {}
        self._next = 0
        self.votes: list[tuple[int, ...]] = []
        self.voter_groups: list[VoterGroup] = []

    def group(self, name: str, count: int) -> tuple[int, ...]:
        ids = tuple(range(self._next, self._next + count))
        self._next += count
        self.groups[name] = ids
        return ids

    def subgroups(
        self, name: str, sizes: list[int], total: int | None = None
    ) -> list[tuple[int, ...]]:
        """A group carved into pairwise disjoint subsets of the given sizes.

        ``total`` may exceed the sum of the sizes; the uncarved remainder
        stays in the group (ranked in tail blocks, never in a subset).
        """
        if total is None:
            total = sum(sizes)
        assert total >= sum(sizes)
        ids = self.group(name, total)
        subs, at = [], 0
        for i, size in enumerate(sizes):
            sub = ids[at : at + size]
            self.groups[f"{name}[{i}]"] = sub
            subs.append(sub)
            at += size
        return subs

    def single(self, name: str) -> int:
        (c,) = self.group(name, 1)
        return c

    @property
    def candidate_count(self) -> int:
        return self._next

    @staticmethod
    def vote(*parts) -> tuple[int, ...]:
        """Concatenate explicit ids and blocks; blocks are sorted by id."""
        out: list[int] = []
        for part in parts:
            if isinstance(part, int):
                out.append(part)
            else:
                out.extend(sorted(part))
        return tuple(out)

    def add_votes(self, group_name: str, votes: list[tuple[int, ...]]) -> None:
        self.voter_groups.append(VoterGroup(group_name, len(self.votes), len(votes)))
        self.votes.extend(votes)

    def meta(self, family: str, **params) -> ConstructionMeta:
        return ConstructionMeta(
            family,
            tuple(sorted(params.items())),
            dict(self.groups),
            tuple(self.voter_groups),
        )

    def election(self) -> Election:
        return Election(self.candidate_count, tuple(self.votes))


def _neighborhoods(g: Graph) -> list[frozenset[int]]:
    return [closed_neighborhood(g, v) for v in range(g.vertex_count)]


# ---------------------------------------------------------------------------
# Deleting candidates


def ds_to_bv_delete_candidates(
    g: Graph, k: int, direction: Direction
) -> tuple[ControlInstance, ConstructionMeta]:
    """Dominating set -> control by deleting candidates (Bucklin).

    Constructive: the distinguished challenger w ties with a club of k+1
    co-winners at level n+k+1; deleting a dominating set pushes w one
    position left in every vertex vote, so it clinches level n+k alone.
    Destructive: the incumbent c clinches level n alone; deleting a
    dominating set lets w tie c there.
    """
    n = g.vertex_count
    if direction is Direction.CONSTRUCTIVE:
        if not (n >= 2 and 1 <= k < n):
            raise DomainError(f"need n >= 2 and 1 <= k < n, got n={n}, k={k}")
    else:
        if not (n >= 2 and 1 <= k <= n):
            raise DomainError(f"need n >= 2 and 1 <= k <= n, got n={n}, k={k}")
    hoods = _neighborhoods(g)
    b = _Builder()

    if direction is Direction.CONSTRUCTIVE:
        # Block order matters twice over: the vertex candidates must sit
        # late inside shared tail blocks (or they pick up early points the
        # table forbids), and deleting up to k candidates can drag a vertex
        # vote's tail k positions into the deciding levels.  A buffer Q_i
        # of k point-free candidates right behind w keeps every dragged
        # tail harmless, which makes deleting any dominating set of size
        # at most k a working control action, not just a minimum one.
        y_subs = b.subgroups("Y", [n] * (k + 1))
        x_subs = b.subgroups("X", [n + k - len(hoods[i]) for i in range(n)])
        D = b.group("D", k + 1)
        B = b.group("B", n)
        w = b.single("w")
        q_subs = b.subgroups("Q", [k] * n)
        X, Y, Q = b.groups["X"], b.groups["Y"], b.groups["Q"]
        b.add_votes(
            "vertex",
            [
                b.vote(
                    [B[v] for v in hoods[i]],
                    x_subs[i],
                    w,
                    q_subs[i],
                    set(B) - {B[v] for v in hoods[i]}
                    | (set(X) - set(x_subs[i]))
                    | set(Y)
                    | (set(Q) - set(q_subs[i])),
                    D,
                )
                for i in range(n)
            ],
        )
        b.add_votes(
            "co-winner",
            [
                b.vote(
                    y_subs[j],
                    [d for d in D if d != D[j]],
                    D[j],
                    set(B) | set(X) | (set(Y) - set(y_subs[j])) | {w} | set(Q),
                )
                for j in range(k + 1)
            ],
        )
        b.add_votes(
            "club-first",
            [b.vote(D, set(X) | set(Y) | {w} | set(Q), B)] * (n - k - 1),
        )
        b.add_votes(
            "club-then-challenger", [b.vote(D, w, set(B) | set(X) | set(Y) | set(Q))]
        )
        inst = ControlInstance(
            Action.DELETE_CANDIDATES,
            Direction.CONSTRUCTIVE,
            b.election(),
            distinguished=w,
            budget=k,
        )
        return inst, b.meta("ds-ccdc", n=n, k=k)

    m_subs = b.subgroups("M", [k, k, k])
    x_subs = b.subgroups("X", [n - len(hoods[i]) for i in range(n)])
    Y = b.group("Y", n - 1)
    Z = b.group("Z", n - 2)
    B = b.group("B", n)
    c = b.single("c")
    w = b.single("w")
    X = b.groups["X"]
    m1, m2, m3 = m_subs
    b.add_votes(
        "vertex",
        [
            b.vote(
                [B[v] for v in hoods[i]],
                x_subs[i],
                w,
                m1,
                set(B) - {B[v] for v in hoods[i]}
                | set(m2)
                | set(m3)
                | (set(X) - set(x_subs[i]))
                | set(Y)
                | set(Z),
                c,
            )
            for i in range(n)
        ],
    )
    b.add_votes(
        "incumbent",
        [b.vote(Y, c, m2, set(B) | set(m1) | set(m3) | set(X) | set(Z) | {w})] * n,
    )
    b.add_votes(
        "challenger",
        [b.vote(Z, w, c, m3, set(B) | set(m1) | set(m2) | set(X) | set(Y))],
    )
    inst = ControlInstance(
        Action.DELETE_CANDIDATES,
        Direction.DESTRUCTIVE,
        b.election(),
        distinguished=c,
        budget=k,
    )
    return inst, b.meta("ds-dcdc", n=n, k=k)


# ---------------------------------------------------------------------------
# Adding candidates


def ds_to_bv_add_candidates(
    g: Graph, k: int, direction: Direction, limited: bool
) -> tuple[ControlInstance, ConstructionMeta]:
    """Dominating set -> control by adding candidates (Bucklin).

    The qualified election pits the incumbent c (clinching level n with a
    big score) against the challenger w (exactly the majority at level n).
    Spoilers from the vertex pool push c one position right in a vertex
    vote exactly when they cover that vertex, so a dominating set - and
    nothing less - erases c's level-n surplus.

    Two departures from the plain layout keep the answer equal to the
    source answer in every direction and variant.  In the destructive
    variants the vertex votes are doubled and the incumbent-vote count is
    raised to 2n+1, so c loses surplus in steps of two and can never end
    up exactly tied with w (a tie would hand the destructive chair a win
    with a merely near-dominating pool).  In the unlimited variants the
    one challenger-first vote ranks the whole spoiler pool right before w,
    which prices additions: adding more than k spoilers delays w's
    majority level, so oversized additions only succeed when they
    over-cover every vertex, which implies a k-sized dominating set.
    """
    n = g.vertex_count
    if n < 3:
        raise DomainError(f"need n > 2 vertices, got {n}")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}")
    hoods = _neighborhoods(g)
    b = _Builder()
    # Padding before the spoiler pool B, for the same tail-block reason as
    # in the deletion construction.
    X = b.group("X", n - 1)
    Y = b.group("Y", n - 2)
    destructive = direction is Direction.DESTRUCTIVE
    encoded_guard = not limited and k < n
    Z = b.group("Z", n - 1 - k if encoded_guard else n - 1)
    # The budget-encoding guard opens decision levels above n when more
    # than k spoilers are added; a buffer of score-free candidates sits
    # right behind w in the incumbent votes so that no real candidate
    # harvests points on those levels.
    P = b.group("P", n - k) if encoded_guard else ()
    B = b.group("B", n)
    c = b.single("c")
    w = b.single("w")

    per_vertex = 2 if destructive else 1
    incumbent_votes = (2 * n + 1) if destructive else (n + 1) if encoded_guard else n
    b.add_votes(
        "vertex",
        [
            b.vote(
                [B[v] for v in hoods[i]],
                X,
                c,
                set(B) - {B[v] for v in hoods[i]} | set(Y) | set(Z) | {w},
                P,
            )
            for i in range(n)
            for _ in range(per_vertex)
        ],
    )
    b.add_votes(
        "incumbent",
        [b.vote(Y, c, w, P, set(B) | set(X) | set(Z))] * incumbent_votes,
    )
    if encoded_guard:
        guard = b.vote(Z, B, w, c, set(X) | set(Y), P)
    else:
        guard = b.vote(Z, w, c, set(B) | set(X) | set(Y))
    b.add_votes("challenger", [guard])

    inst = ControlInstance(
        Action.ADD_CANDIDATES,
        direction,
        b.election(),
        distinguished=c if destructive else w,
        budget=k if limited else None,
        qualified=frozenset(set(X) | set(Y) | set(Z) | set(P) | {c, w}),
    )
    code = ("dc" if destructive else "cc") + ("ac" if limited else "auc")
    return inst, b.meta(f"ds-{code}", n=n, k=k)


# ---------------------------------------------------------------------------
# Adding voters


def ds_to_bv_add_voters(g: Graph, k: int) -> tuple[ControlInstance, ConstructionMeta]:
    """Dominating set -> constructive control by adding voters (Bucklin).

    k-1 registered voters make the incumbent c a level-1 winner.  One
    unregistered voter per vertex ranks the challenger w at position n+1,
    preceded by the vertices it does NOT cover.  Any successful addition
    must use exactly k voters (fewer leave c's level-1 majority intact),
    and those voters leave no vertex candidate ranked early everywhere,
    i.e. they cover every vertex.

    At k=1 the per-voter padding candidates reach the one-vote majority
    threshold themselves, so the construction's answer detaches from the
    source answer; such inputs are outside the domain (decide them by
    testing the n singleton vertex sets directly).
    """
    n = g.vertex_count
    if n < 2:
        raise DomainError(f"need n >= 2 vertices, got {n}")
    if not 2 <= k <= n:
        raise DomainError(f"need 2 <= k <= n, got k={k}")
    hoods = _neighborhoods(g)
    b = _Builder()
    B = b.group("B", n)
    x_subs = b.subgroups("X", [len(hoods[i]) for i in range(n)])
    Y = b.group("Y", n)
    c = b.single("c")
    w = b.single("w")
    X = b.groups["X"]
    b.add_votes("registered", [b.vote(c, Y, B, w, X)] * (k - 1))
    unregistered = tuple(
        b.vote(
            set(B) - {B[v] for v in hoods[i]},
            x_subs[i],
            w,
            c,
            {B[v] for v in hoods[i]} | (set(X) - set(x_subs[i])) | set(Y),
        )
        for i in range(n)
    )
    inst = ControlInstance(
        Action.ADD_VOTERS,
        Direction.CONSTRUCTIVE,
        b.election(),
        distinguished=w,
        budget=k,
        unregistered=unregistered,
    )
    return inst, b.meta("ds-ccav", n=n, k=k)


# ---------------------------------------------------------------------------
# Deleting voters


def ds_to_bv_delete_voters(g: Graph, k: int) -> tuple[ControlInstance, ConstructionMeta]:
    """Dominating set -> constructive control by deleting voters (Bucklin)."""
    n = g.vertex_count
    if n < 2:
        raise DomainError(f"need n >= 2 vertices, got {n}")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}")
    hoods = _neighborhoods(g)
    b = _Builder()
    B = b.group("B", n)
    x_subs = b.subgroups("X", [n - len(hoods[i]) for i in range(n)])
    y_subs = b.subgroups("Y", [len(hoods[i]) for i in range(n)])
    z_subs = b.subgroups("Z", [n + 1] * (k - 1))
    c = b.single("c")
    w = b.single("w")
    X, Y, Z = b.groups["X"], b.groups["Y"], b.groups["Z"]
    b.add_votes(
        "covered",
        [
            b.vote(
                [B[v] for v in hoods[i]],
                c,
                x_subs[i],
                set(B) - {B[v] for v in hoods[i]}
                | (set(X) - set(x_subs[i]))
                | set(Y)
                | set(Z),
                w,
            )
            for i in range(n)
        ],
    )
    b.add_votes(
        "uncovered",
        [
            b.vote(
                set(B) - {B[v] for v in hoods[i]},
                y_subs[i],
                w,
                {B[v] for v in hoods[i]}
                | set(X)
                | (set(Y) - set(y_subs[i]))
                | set(Z)
                | {c},
            )
            for i in range(n)
        ],
    )
    b.add_votes(
        "incumbent",
        [
            b.vote(c, z_subs[j], set(B) | set(X) | set(Y) | (set(Z) - set(z_subs[j])), w)
            for j in range(k - 1)
        ],
    )
    inst = ControlInstance(
        Action.DELETE_VOTERS,
        Direction.CONSTRUCTIVE,
        b.election(),
        distinguished=w,
        budget=k,
    )
    return inst, b.meta("ds-ccdv", n=n, k=k)


# ---------------------------------------------------------------------------
# Candidate partition (all eight variants from one construction)


def rhs_to_bv_candidate_partition(
    system: SetSystem, k: int, runoff: bool, tie: TieRule, direction: Direction
) -> tuple[ControlInstance, ConstructionMeta]:
    """Restricted hitting set -> control by (run-off) partition of candidates.

    One election serves all eight problem variants: with or without
    run-off, either tie rule, constructive for the challenger w or
    destructive against the incumbent c.  A hitting set B' of size k makes
    w the unique winner of the subelection on B' + {c, d, w}, after which
    w wins the final stage at level 1.
    """
    m = system.base_size
    n = len(system.subsets)
    if not is_valid_rhs(system, k):
        raise DomainError(f"need n > m > k > 1, got n={n}, m={m}, k={k}")
    b = _Builder()
    B = b.group("B", m)
    c = b.single("c")
    d = b.single("d")
    w = b.single("w")
    sets = [sorted(B[x] for x in s) for s in system.subsets]
    b.add_votes("incumbent-first", [b.vote(c, d, B, w)] * (2 * m + 1))
    b.add_votes(
        "incumbent-challenger",
        [b.vote(c, w, d, B)] * (2 * n + 2 * k * (n - 1) + 3),
    )
    b.add_votes("challenger-first", [b.vote(w, c, d, B)] * (2 * n * (k + 1) + 5))
    for i in range(n):
        b.add_votes(
            f"set[{i}]",
            [b.vote(d, sets[i], c, w, set(B) - set(sets[i]))] * (2 * (k + 1)),
        )
    for j in range(m):
        b.add_votes(
            f"element[{j}]",
            [b.vote(d, B[j], w, c, set(B) - {B[j]})] * 2,
        )
    b.add_votes("decoy-challenger", [b.vote(d, w, c, B)] * (2 * (k + 1)))

    action = Action.RUNOFF_PARTITION_CANDIDATES if runoff else Action.PARTITION_CANDIDATES
    inst = ControlInstance(
        action,
        direction,
        b.election(),
        distinguished=c if direction is Direction.DESTRUCTIVE else w,
        tie_rule=tie,
    )
    code = inst.code
    return inst, b.meta(f"rhs-{code}", n=n, m=m, k=k)


# ---------------------------------------------------------------------------
# Voter partition, constructive (exact cover)


def x3c_to_bv_partition_voters(
    system: SetSystem, tie: TieRule
) -> tuple[ControlInstance, ConstructionMeta]:
    """Exact cover by three-sets -> constructive control by voter partition."""
    if not is_valid_x3c(system):
        raise DomainError("need a base of 3m elements (m > 1) and 3-element sets")
    m3 = system.base_size
    m = m3 // 3
    n = len(system.subsets)
    if n < 1:
        raise DomainError("need at least one set")
    occurrences = [
        sum(1 for s in system.subsets if j in s) for j in range(m3)
    ]
    # element j joins the early block of challenger-vote i while
    # i <= n - occurrences(j), so it collects exactly n early points in
    # total from the cover and challenger votes
    b = _Builder()
    B = b.group("B", m3)
    early_blocks = [
        sorted(B[j] for j in range(m3) if (i + 1) <= n - occurrences[j])
        for i in range(n)
    ]
    d_subs = b.subgroups(
        "D", [m3 - len(early_blocks[i]) for i in range(n)], total=3 * n * m
    )
    e_subs = b.subgroups("E", [m3 - 1] * (m + 1))
    f_subs = b.subgroups("F", [m3 + 1] * (m - 1))
    g_subs = b.subgroups("G", [m3 - 3] * n)
    c = b.single("c")
    w = b.single("w")
    x = b.single("x")
    E, F, G = b.groups["E"], b.groups["F"], b.groups["G"]
    sets = [sorted(B[y] for y in s) for s in system.subsets]
    b.add_votes(
        "cover",
        [
            b.vote(
                c,
                sets[i],
                g_subs[i],
                set(G) - set(g_subs[i]),
                F,
                D,
                E,
                set(B) - set(sets[i]),
                w,
                x,
            )
            for i in range(n)
        ],
    )
    b.add_votes(
        "challenger",
        [
            b.vote(
                early_blocks[i],
                d_subs[i],
                w,
                G,
                E,
                set(D) - set(d_subs[i]),
                F,
                set(B) - set(early_blocks[i]),
                c,
                x,
            )
            for i in range(n)
        ],
    )
    b.add_votes(
        "decoy",
        [
            b.vote(x, c, e_subs[p], F, set(E) - set(e_subs[p]), G, D, B, w)
            for p in range(m + 1)
        ],
    )
    b.add_votes(
        "filler",
        [
            b.vote(f_subs[l], c, set(F) - set(f_subs[l]), G, D, E, B, w, x)
            for l in range(m - 1)
        ],
    )
    inst = ControlInstance(
        Action.PARTITION_VOTERS,
        Direction.CONSTRUCTIVE,
        b.election(),
        distinguished=w,
        tie_rule=tie,
    )
    return inst, b.meta(f"x3c-ccpv-{tie.value}", n=n, m=m, k=0)


# ---------------------------------------------------------------------------
# Voter partition, destructive, ties-eliminate (dominating set)


def ds_to_bv_dcpv_te(g: Graph, k: int) -> tuple[ControlInstance, ConstructionMeta]:
    """Dominating set -> destructive control by voter partition under TE."""
    n = g.vertex_count
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"need n >= 1 and 1 <= k <= n, got n={n}, k={k}")
    hoods = _neighborhoods(g)
    b = _Builder()
    B = b.group("B", n)
    d_subs = b.subgroups("D", [n + 4] * (k - 1))
    e_subs = b.subgroups("E", [2] * (k + n))
    f_subs = b.subgroups("F", [3] * n)
    g_carved = b.subgroups("G", [len(hoods[i]) for i in range(n)], total=n * n)
    c = b.single("c")
    u = b.single("u")
    v = b.single("v")
    w = b.single("w")
    x = b.single("x")
    y = b.single("y")
    D, E, F, G = b.groups["D"], b.groups["E"], b.groups["F"], b.groups["G"]
    b.add_votes(
        "vertex",
        [
            b.vote(
                f_subs[i],
                set(B) - {B[t] for t in hoods[i]},
                g_carved[i],
                y,
                w,
                {B[t] for t in hoods[i]}
                | set(D)
                | set(E)
                | (set(F) - set(f_subs[i]))
                | (set(G) - set(g_carved[i])),
                u,
                v,
                c,
                x,
            )
            for i in range(n)
        ],
    )
    b.add_votes(
        "linchpin",
        [b.vote(x, w, c, B, u, v, set(D) | set(E) | set(F) | set(G), y)],
    )
    b.add_votes(
        "decoy",
        [
            b.vote(
                x,
                d_subs[j],
                set(B) | (set(D) - set(d_subs[j])) | set(E) | set(F) | set(G),
                u,
                v,
                y,
                w,
                c,
            )
            for j in range(k - 1)
        ],
    )
    b.add_votes(
        "incumbent",
        [
            b.vote(
                c,
                e_subs[l],
                x,
                y,
                set(B) | set(D) | (set(E) - set(e_subs[l])) | set(F) | set(G),
                u,
                v,
                w,
            )
            for l in range(k + n)
        ],
    )
    inst = ControlInstance(
        Action.PARTITION_VOTERS,
        Direction.DESTRUCTIVE,
        b.election(),
        distinguished=c,
        tie_rule=TieRule.TE,
    )
    return inst, b.meta("ds-dcpv-te", n=n, k=k)


# ---------------------------------------------------------------------------
# Voter partition, destructive, ties-promote (fallback; truncated votes)


def rhs_to_fv_dcpv_tp(system: SetSystem, k: int) -> tuple[ControlInstance, ConstructionMeta]:
    """Restricted hitting set -> destructive voter partition under TP.

    The one genuinely fallback construction: votes approve only short
    prefixes.  The incumbent c is the unique level-2 winner; splitting off
    the element votes of a k-element hitting set yields a small subelection
    whose approval stage promotes c, w, and the hitting set, after which w
    ties c in the final stage.
    """
    m = system.base_size
    n = len(system.subsets)
    if not is_valid_rhs(system, k):
        raise DomainError(f"need n > m > k > 1, got n={n}, m={m}, k={k}")
    b = _Builder()
    B = b.group("B", m)
    D = b.group("D", 2 * (m + 1))
    E = b.group("E", 2 * (m - 1))
    c = b.single("c")
    w = b.single("w")
    sets = [sorted(B[x] for x in s) for s in system.subsets]
    for i in range(n):
        b.add_votes(f"set[{i}]", [b.vote(w, sets[i], c)] * (k + 1))
    b.add_votes("element-sandwich", [b.vote(c, B[j], w) for j in range(m)])
    for j in range(m):
        b.add_votes(f"element-solo[{j}]", [b.vote(B[j])] * (k - 1))
    b.add_votes(
        "decoy-pair", [b.vote(D[2 * p], D[2 * p + 1], w) for p in range(m + 1)]
    )
    b.add_votes("stray", [b.vote(E[r]) for r in range(2 * (m - 1))])
    b.add_votes("incumbent-only", [b.vote(c)] * (n * (k + 1) + m - k + 1))
    b.add_votes("incumbent-challenger", [b.vote(c, w)] * (m * k + k - 1))
    b.add_votes("challenger-incumbent", [b.vote(w, c)])
    inst = ControlInstance(
        Action.PARTITION_VOTERS,
        Direction.DESTRUCTIVE,
        b.election(),
        distinguished=c,
        tie_rule=TieRule.TP,
    )
    return inst, b.meta("rhs-fv-dcpv-tp", n=n, m=m, k=k)


# ---------------------------------------------------------------------------
# Hitting set -> restricted hitting set


@dataclass(frozen=True)
class RhsOutcome:
    """Either a restricted instance or a directly decided answer."""

    instance: tuple[SetSystem, int] | None
    decided: bool | None

    def __post_init__(self) -> None:
        assert (self.instance is None) != (self.decided is None)


def hs_to_rhs(system: SetSystem, k: int) -> RhsOutcome:
    """General hitting set -> restricted hitting set (n > m > k > 1).

    Budgets k=1 and k=m are decided directly (k=m is trivially yes; k=1 is
    a linear scan over singletons).  Otherwise, if the instance already
    has more sets than elements it is returned unchanged; if not, a fresh
    element is added together with enough singleton sets of it to force
    n > m, and the budget grows by one.  The answer is preserved.
    """
    m = system.base_size
    n = len(system.subsets)
    if not 1 <= k <= m:
        raise DomainError(f"need 1 <= k <= m, got k={k}, m={m}")
    if k == m:
        return RhsOutcome(None, True)
    if k == 1:
        decided = any(
            all(x in s for s in system.subsets) for x in range(m)
        )
        return RhsOutcome(None, decided)
    if n > m:
        return RhsOutcome((system, k), None)
    fresh = m
    subsets = system.subsets + tuple([frozenset({fresh})] * (m - n + 2))
    return RhsOutcome((SetSystem(m + 1, subsets), k + 1), None)


# ---------------------------------------------------------------------------
# Verification: oracle verdict vs. brute-force verdict plus witness transport


@dataclass(frozen=True)
class ReductionReport:
    family: str
    params: tuple[tuple[str, int], ...]
    source_yes: bool
    control_yes: bool | None
    agree: bool | None
    forward_witness_ok: bool | None
    partial: bool
    nodes_explored: int


def _pad_to(chosen: frozenset[int], size: int, universe_size: int) -> list[int]:
    out = sorted(chosen)
    for extra in range(universe_size):
        if len(out) >= size:
            break
        if extra not in chosen:
            out.append(extra)
    return sorted(out[:size])


def _forward_witness(
    family: str, inst: ControlInstance, meta: ConstructionMeta, source_witness
) -> Witness:
    """Map a source yes-witness to a control witness per the construction."""
    B = meta.group("B")
    if family in ("ds-ccdc", "ds-dcdc"):
        return Witness.deleted_candidates(B[v] for v in source_witness)
    if family in ("ds-ccac", "ds-dcac"):
        return Witness.added_candidates(B[v] for v in source_witness)
    if family in ("ds-ccauc", "ds-dcauc"):
        k, n = meta.param("k"), meta.param("n")
        padded = _pad_to(frozenset(source_witness), k, n)
        return Witness.added_candidates(B[v] for v in padded)
    if family == "ds-ccav":
        k, n = meta.param("k"), meta.param("n")
        padded = _pad_to(frozenset(source_witness), k, n)
        return Witness.added_voters(padded)  # pool index i = vertex i
    if family == "ds-ccdv":
        k, n = meta.param("k"), meta.param("n")
        covered = meta.voter_group("covered")
        incumbent = meta.voter_group("incumbent")
        chosen = [covered.start + v for v in sorted(source_witness)]
        chosen += list(incumbent.indices[: k - len(chosen)])
        return Witness.deleted_voters(chosen)
    if family == "ds-dcpv-te":
        k, n = meta.param("k"), meta.param("n")
        padded = _pad_to(frozenset(source_witness), k, n)
        vertex = meta.voter_group("vertex")
        v1 = [vertex.start + v for v in padded]
        v1 += list(meta.voter_group("linchpin").indices)
        v1 += list(meta.voter_group("decoy").indices)
        return Witness.voter_bipartition(v1)
    if family.startswith("rhs-cc") or family.startswith("rhs-dc"):
        k, m = meta.param("k"), meta.param("m")
        padded = _pad_to(frozenset(source_witness), k, m)
        c1 = {B[x] for x in padded} | {meta.single("c"), meta.single("d"), meta.single("w")}
        return Witness.candidate_bipartition(c1)
    if family.startswith("x3c-ccpv"):
        v1 = []
        cover = meta.voter_group("cover")
        for i in sorted(source_witness):
            v1.append(cover.start + i)
        v1 += list(meta.voter_group("decoy").indices)
        return Witness.voter_bipartition(v1)
    if family == "rhs-fv-dcpv-tp":
        k, m = meta.param("k"), meta.param("m")
        padded = _pad_to(frozenset(source_witness), k, m)
        v1 = []
        sandwich = meta.voter_group("element-sandwich")
        for j in padded:
            v1.append(sandwich.start + j)
            v1 += list(meta.voter_group(f"element-solo[{j}]").indices)
        return Witness.voter_bipartition(v1)
    raise DomainError(f"no forward witness map for family {family!r}")


#: family id -> (builder(source, k) -> (instance, meta), source oracle, partial flag)
def _build_family_table():
    table: dict[str, tuple] = {}
    table["ds-ccdc"] = (
        lambda g, k: ds_to_bv_delete_candidates(g, k, Direction.CONSTRUCTIVE),
        lambda g, k: solve_dominating_set(g, k),
        False,
    )
    table["ds-dcdc"] = (
        lambda g, k: ds_to_bv_delete_candidates(g, k, Direction.DESTRUCTIVE),
        lambda g, k: solve_dominating_set(g, k),
        False,
    )
    for code, direction, limited in (
        ("ds-ccac", Direction.CONSTRUCTIVE, True),
        ("ds-dcac", Direction.DESTRUCTIVE, True),
        ("ds-ccauc", Direction.CONSTRUCTIVE, False),
        ("ds-dcauc", Direction.DESTRUCTIVE, False),
    ):
        table[code] = (
            lambda g, k, d=direction, lim=limited: ds_to_bv_add_candidates(g, k, d, lim),
            lambda g, k: solve_dominating_set(g, k),
            False,
        )
    table["ds-ccav"] = (ds_to_bv_add_voters, lambda g, k: solve_dominating_set(g, k), False)
    table["ds-ccdv"] = (ds_to_bv_delete_voters, lambda g, k: solve_dominating_set(g, k), False)
    table["ds-dcpv-te"] = (ds_to_bv_dcpv_te, lambda g, k: solve_dominating_set(g, k), False)
    for runoff in (False, True):
        for tie in TieRule:
            for direction, d in (
                (Direction.CONSTRUCTIVE, "cc"),
                (Direction.DESTRUCTIVE, "dc"),
            ):
                code = f"rhs-{d}{'rpc' if runoff else 'pc'}-{tie.value}"
                table[code] = (
                    lambda s, k, r=runoff, t=tie, dd=direction: rhs_to_bv_candidate_partition(
                        s, k, r, t, dd
                    ),
                    lambda s, k: solve_hitting_set(s, k),
                    False,
                )
    for tie in TieRule:
        table[f"x3c-ccpv-{tie.value}"] = (
            lambda s, k, t=tie: x3c_to_bv_partition_voters(s, t),
            lambda s, k: solve_x3c(s),
            False,
        )
    table["rhs-fv-dcpv-tp"] = (
        rhs_to_fv_dcpv_tp,
        lambda s, k: solve_hitting_set(s, k),
        True,
    )
    return table


FAMILIES = _build_family_table()


def build_instance(family: str, source, k: int | None = None):
    if family not in FAMILIES:
        raise DomainError(f"unknown reduction family {family!r}")
    builder, _, _ = FAMILIES[family]
    return builder(source, k)


def verify_reduction(family: str, source, k: int | None = None) -> ReductionReport:
    """Check one instance: source oracle verdict vs. brute-force verdict.

    For the one family whose elections are too large to brute-force
    (``rhs-fv-dcpv-tp``), only the forward direction is replayed and the
    report is flagged partial.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown reduction family {family!r}")
    builder, oracle, partial = FAMILIES[family]
    inst, meta = builder(source, k)
    source_witness = oracle(source, k)
    source_yes = source_witness is not None
    forward_ok = None
    if source_yes:
        witness = _forward_witness(meta.family, inst, meta, source_witness)
        forward_ok = witness_meets_goal(inst, witness)
    if partial:
        return ReductionReport(
            meta.family, meta.params, source_yes, None, None, forward_ok, True, 0
        )
    result: SolveResult = solve(inst)
    agree = result.decision == source_yes
    return ReductionReport(
        meta.family,
        meta.params,
        source_yes,
        result.decision,
        agree,
        forward_ok,
        False,
        result.nodes_explored,
    )
