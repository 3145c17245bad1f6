"""Report generation over stored runs: top-k prompt tables and
per-block marginal influence on format and human score levels."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import NoScoredRuns
from .prompts import CATEGORIES
from .store import RunRecord

# Human scores are binned to three levels for influence plots:
# [0, 1] -> 0, (1, 3] -> 1, (3, 5] -> 2.
HUMAN_BIN_EDGES = (1.0, 3.0)

FORMAT_LEVELS = (0, 1, 2)
HUMAN_LEVELS = (0, 1, 2)


def human_score_level(value: float) -> int:
    if value <= HUMAN_BIN_EDGES[0]:
        return 0
    if value <= HUMAN_BIN_EDGES[1]:
        return 1
    return 2


def _partial_total(record: RunRecord) -> float:
    """Ranking key: sum of whatever score components exist (missing = 0)."""
    return (
        (record.variance_score or 0.0)
        + (record.format_score or 0)
        + (record.human_score or 0.0)
    )


def _is_scored(record: RunRecord) -> bool:
    return any(
        value is not None
        for value in (record.variance_score, record.format_score, record.human_score)
    )


def top_runs(records: Iterable[RunRecord], k: int) -> list[RunRecord]:
    """The k best-scoring runs, ties broken by triple then run id."""
    scored = [r for r in records if _is_scored(r)]
    if not scored:
        raise NoScoredRuns("no run carries any score component")
    scored.sort(key=lambda r: (-_partial_total(r), r.triple, r.token_type, r.provider, r.run_id))
    return scored[:k]


def _format_component(value: float | int | None) -> str:
    if value is None:
        return "-"
    if isinstance(value, int):
        return str(value)
    return f"{value:.2f}"


def render_top_table(records: Iterable[RunRecord], k: int) -> str:
    """Plain-text top-k table, deterministic for a given store state."""
    rows = top_runs(records, k)
    header = (
        f"{'rank':>4}  {'triple':<9} {'type':<4} {'provider':<12} "
        f"{'variance':>8} {'format':>6} {'human':>5} {'total':>6}  run_id"
    )
    lines = [header, "-" * len(header)]
    for position, record in enumerate(rows, start=1):
        triple = "[" + ",".join(str(i) for i in record.triple) + "]"
        lines.append(
            f"{position:>4}  {triple:<9} {record.token_type:<4} {record.provider:<12} "
            f"{_format_component(record.variance_score):>8} "
            f"{_format_component(record.format_score):>6} "
            f"{_format_component(record.human_score):>5} "
            f"{_partial_total(record):>6.2f}  {record.run_id}"
        )
    return "\n".join(lines) + "\n"


def write_top_csv(records: Iterable[RunRecord], k: int, path: str | Path) -> None:
    rows = top_runs(records, k)
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["rank", "triple", "token_type", "provider", "variance_score", "format_score", "human_score", "total", "run_id"]
        )
        for position, record in enumerate(rows, start=1):
            writer.writerow(
                [
                    position,
                    "-".join(str(i) for i in record.triple),
                    record.token_type,
                    record.provider,
                    record.variance_score,
                    record.format_score,
                    record.human_score,
                    f"{_partial_total(record):.4f}",
                    record.run_id,
                ]
            )


@dataclass(frozen=True)
class InfluenceRow:
    category: str  # generator | input | output
    block_id: int
    family: str  # format | human
    level: int
    fraction: float
    runs: int  # runs of this block id carrying the family's score


def block_influence(records: Iterable[RunRecord]) -> list[InfluenceRow]:
    """Marginal score-level distribution per building-block id.

    For each block category and id, the fraction of scored runs using
    that block that landed at each format level (0/1/2) and each binned
    human level. Fractions per (category, id, family) sum to 1.
    """
    records = list(records)
    rows: list[InfluenceRow] = []
    families = (
        ("format", FORMAT_LEVELS, lambda r: r.format_score, lambda v: int(v)),
        ("human", HUMAN_LEVELS, lambda r: r.human_score, lambda v: human_score_level(v)),
    )
    any_scored = False
    for family, levels, getter, to_level in families:
        scored = [r for r in records if getter(r) is not None]
        if scored:
            any_scored = True
        for position, category in enumerate(CATEGORIES):
            by_block: dict[int, list[int]] = {}
            for record in scored:
                block_id = record.triple[position]
                by_block.setdefault(block_id, []).append(to_level(getter(record)))
            for block_id in sorted(by_block):
                observed = by_block[block_id]
                total = len(observed)
                for level in levels:
                    count = sum(1 for v in observed if v == level)
                    rows.append(
                        InfluenceRow(
                            category=category,
                            block_id=block_id,
                            family=family,
                            level=level,
                            fraction=count / total,
                            runs=total,
                        )
                    )
    if not any_scored:
        raise NoScoredRuns("no run carries a format or human score")
    return rows


def render_influence_csv(rows: Sequence[InfluenceRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["category", "block_id", "family", "level", "fraction", "runs"])
    for row in rows:
        writer.writerow(
            [row.category, row.block_id, row.family, row.level, f"{row.fraction:.6f}", row.runs]
        )
    return buffer.getvalue()


def write_influence_csv(rows: Sequence[InfluenceRow], path: str | Path) -> None:
    Path(path).write_text(render_influence_csv(rows), encoding="utf-8")
