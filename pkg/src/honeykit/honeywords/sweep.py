"""Parameter sweep over attacker budgets and training-corpus sizes.

Evaluates the full grid: per-user limits × total limits × training
sizes, emitting plot-ready rows. Candidates are ranked once per
trained model and the cheap budget walk is replayed per cell.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .attack import AttackConfig, rank_candidates, run_schedule
from .model import train_model
from .sweetwords import SweetwordSet

TABLE_TOTAL_LIMITS = (50, 100, 250, 500)
TABLE_PER_USER_LIMITS = (1, 3, 5, 10)
TABLE_TRAINING_SIZES = (10_000, 100_000, 1_000_000)

SWEEP_COLUMNS = ("training_size", "per_user_limit", "total_fail_limit", "hits", "failed_attempts_used")


@dataclass(frozen=True)
class SweepRow:
    training_size: int
    per_user_limit: int
    total_fail_limit: int
    hits: int
    failed_attempts_used: int


def parameter_sweep(
    sets: Sequence[SweetwordSet],
    corpora: Mapping[int, Sequence[str]],
    per_user_limits: Sequence[int] = TABLE_PER_USER_LIMITS,
    total_fail_limits: Sequence[int] = TABLE_TOTAL_LIMITS,
    order: int = 4,
    smoothing: float = 1.0,
) -> list[SweepRow]:
    """Full cross-product over training sizes and both budget axes.

    ``corpora`` maps each training size to its password corpus. Rows come
    back sorted by (training_size, per_user_limit, total_fail_limit).
    """
    rows = []
    for size in sorted(corpora):
        model = train_model(corpora[size], order=order, smoothing=smoothing)
        ranked = rank_candidates(sets, model)
        for per_user in per_user_limits:
            for total in total_fail_limits:
                config = AttackConfig(
                    per_user_limit=per_user,
                    total_fail_limit=total,
                    training_size=size,
                )
                result = run_schedule(ranked, config)
                rows.append(
                    SweepRow(
                        training_size=size,
                        per_user_limit=per_user,
                        total_fail_limit=total,
                        hits=result.hits,
                        failed_attempts_used=result.failed_attempts_used,
                    )
                )
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(
                [row.training_size, row.per_user_limit, row.total_fail_limit, row.hits, row.failed_attempts_used]
            )
