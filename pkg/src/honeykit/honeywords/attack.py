"""Trawling guessing attack, left-or-right oracle, and random baseline.

The attacker ranks every user's sweetwords by model probability and
always fires at the globally most probable untried candidate. Only
failed attempts consume budgets: a per-user limit T_u blocks one user,
a total limit T_f terminates the whole attack. Ties are broken by
lexicographic candidate order, then user id, making runs deterministic.
"""

from __future__ import annotations

import heapq
import random
import statistics
from dataclasses import dataclass
from typing import Protocol, Sequence

from .sweetwords import SweetwordSet


class ScoringModel(Protocol):
    def log_prob(self, password: str) -> float: ...


@dataclass(frozen=True)
class AttackConfig:
    per_user_limit: int
    total_fail_limit: int
    training_size: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.per_user_limit < 0:
            raise ValueError(f"per_user_limit must be >= 0, got {self.per_user_limit}")
        if self.total_fail_limit < 0:
            raise ValueError(f"total_fail_limit must be >= 0, got {self.total_fail_limit}")


@dataclass(frozen=True)
class UserOutcome:
    user_id: str
    attempts_made: int
    hit: bool
    rank_of_real: int


@dataclass(frozen=True)
class AttackResult:
    hits: int
    failed_attempts_used: int
    per_user: tuple[UserOutcome, ...]


@dataclass(frozen=True)
class RankedSet:
    """One user's candidates in descending-probability attack order."""

    user_id: str
    ordered: tuple[str, ...]
    scores: tuple[float, ...]
    rank_of_real: int  # 1-based position of the real password


def rank_candidates(sets: Sequence[SweetwordSet], model: ScoringModel) -> list[RankedSet]:
    """Sort every user's candidates by (probability desc, candidate asc).

    Separated from the budget walk so parameter sweeps can rank once and
    replay many budget combinations cheaply. The real password's rank is
    its 1-based position; duplicates resolve to the first occurrence.
    """
    cache: dict[str, float] = {}
    ranked = []
    for s in sets:
        for candidate in s.candidates:
            if candidate not in cache:
                cache[candidate] = model.log_prob(candidate)
        ordered = tuple(sorted(s.candidates, key=lambda c: (-cache[c], c)))
        ranked.append(
            RankedSet(
                user_id=s.user_id,
                ordered=ordered,
                scores=tuple(cache[c] for c in ordered),
                rank_of_real=ordered.index(s.real) + 1,
            )
        )
    return ranked


def run_schedule(ranked: Sequence[RankedSet], config: AttackConfig) -> AttackResult:
    """Walk the greedy global schedule under the configured budgets.

    A heap holding each live user's current best untried candidate
    realizes the global argmax; heap keys order by probability
    descending, then candidate, then user id. A hit retires the user at
    no budget cost; a miss consumes both budgets and advances the user's
    cursor unless T_u blocks them.
    """
    per_user = config.per_user_limit
    total_limit = config.total_fail_limit
    fails = [0] * len(ranked)
    attempts = [0] * len(ranked)
    hit = [False] * len(ranked)

    heap: list[tuple[float, str, str, int, int]] = []
    for index, user in enumerate(ranked):
        if per_user > 0 and user.ordered:
            heap.append((-user.scores[0], user.ordered[0], user.user_id, index, 0))
    heapq.heapify(heap)

    hits = 0
    total_fails = 0
    while heap and total_fails < total_limit:
        _, candidate, _, index, position = heapq.heappop(heap)
        user = ranked[index]
        attempts[index] += 1
        if position + 1 == user.rank_of_real:
            hit[index] = True
            hits += 1
            continue
        fails[index] += 1
        total_fails += 1
        if fails[index] < per_user and position + 1 < len(user.ordered):
            nxt = position + 1
            heapq.heappush(heap, (-user.scores[nxt], user.ordered[nxt], user.user_id, index, nxt))

    outcomes = tuple(
        UserOutcome(
            user_id=user.user_id,
            attempts_made=attempts[index],
            hit=hit[index],
            rank_of_real=user.rank_of_real,
        )
        for index, user in enumerate(ranked)
    )
    return AttackResult(hits=hits, failed_attempts_used=total_fails, per_user=outcomes)


def simulate_attack(
    sets: Sequence[SweetwordSet],
    model: ScoringModel,
    config: AttackConfig,
) -> AttackResult:
    """Rank all candidates with the model, then run the budget walk."""
    return run_schedule(rank_candidates(sets, model), config)


# ---------------------------------------------------------------------------
# Left-or-right oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    trials: int
    successes: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0


def left_right_oracle(
    pairs: Sequence[tuple[str, str]],
    model: ScoringModel,
    seed: int = 0,
) -> OracleResult:
    """Distinguishing game: per (real, decoy) pair pick the candidate the
    model scores higher; exact ties fall to a seeded coin flip."""
    rng = random.Random(seed)
    successes = 0
    for real, decoy in pairs:
        real_score = model.log_prob(real)
        decoy_score = model.log_prob(decoy)
        if real_score > decoy_score:
            successes += 1
        elif real_score == decoy_score and rng.random() < 0.5:
            successes += 1
    return OracleResult(trials=len(pairs), successes=successes)


# ---------------------------------------------------------------------------
# Random baseline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BaselineResult:
    mean_hits: float
    std: float
    trials: int


def _baseline_trial(
    rng: random.Random,
    pool: list[int],
    users: int,
    k: int,
    per_user: int,
    total_limit: int,
) -> int:
    """One trial: walk a uniform random global order of user attempt
    tokens, drawing each hit lazily without replacement within the user.

    The pool holds k tokens per user; a lazy partial Fisher-Yates
    shuffles only as far as the walk gets, and the conditional draw
    rng.randrange(k - attempts_so_far) == 0 is the chance that the next
    untried candidate is the real one.
    """
    n = len(pool)
    attempts = [0] * users
    fails = [0] * users
    retired = [False] * users  # solved or blocked
    hits = 0
    total_fails = 0
    i = 0
    while i < n and total_fails < total_limit:
        j = rng.randrange(i, n)
        pool[i], pool[j] = pool[j], pool[i]
        user = pool[i]
        i += 1
        if retired[user]:
            continue
        if fails[user] >= per_user:
            retired[user] = True
            continue
        tried = attempts[user]
        attempts[user] = tried + 1
        if rng.randrange(k - tried) == 0:
            retired[user] = True
            hits += 1
        else:
            fails[user] += 1
            total_fails += 1
            if fails[user] >= per_user:
                retired[user] = True
    return hits


def random_baseline(
    users: int,
    k: int,
    config: AttackConfig,
    trials: int,
    seed: int,
) -> BaselineResult:
    """Monte Carlo of a uniformly guessing attacker under the same budgets
    and the same greedy scheduling with random priorities."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    pool = list(range(users)) * k
    results = [
        _baseline_trial(rng, pool, users, k, config.per_user_limit, config.total_fail_limit)
        for _ in range(trials)
    ]
    return BaselineResult(
        mean_hits=statistics.fmean(results),
        std=statistics.pstdev(results),
        trials=trials,
    )
