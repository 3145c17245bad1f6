"""Scoring of generated robots.txt files.

Three components:

* variance score in [0, 3] measuring statistical proximity of the six
  features to corpus means,
* format score in {0, 1, 2} for structural cleanliness of the raw
  response,
* human score in [0, 5] recorded from a reviewer.

The composite score is their sum, maximum 10.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import MissingComponent, OutOfRange, ZeroStd
from .features import FEATURE_FIELDS, FeatureVector
from .parser import scan_lines
from .stats import CorpusStats

HUMAN_SCORE_MIN = 0.0
HUMAN_SCORE_MAX = 5.0
VARIANCE_SCORE_MAX = 3.0
FORMAT_SCORE_MAX = 2


@dataclass(frozen=True)
class RobotsScore:
    variance_score: float
    format_score: int
    human_score: float

    @property
    def total(self) -> float:
        return self.variance_score + self.format_score + self.human_score


def variance_score(vector: FeatureVector, stats: CorpusStats) -> float:
    """Sum of per-feature scores 0.5·(1 − |x − mean|/std), clamped at 0.

    Each feature contributes at most 0.5 (exact match with the corpus
    mean) and at least 0 (one standard deviation or more away), so the
    total lies in [0, 3].
    """
    total = 0.0
    for name in FEATURE_FIELDS:
        stat = stats.features[name]
        if stat.std == 0:
            raise ZeroStd(f"feature {name} has zero standard deviation")
        value = getattr(vector, name)
        score = 0.5 * (1.0 - abs(value - stat.mean) / stat.std)
        total += max(0.0, score)
    return total


def format_score(response_text: str) -> int:
    """Structural cleanliness of a raw response.

    2: at least one robots.txt directive and nothing else but blanks and
    comments. 1: directives mixed with other text (explanations, chatter).
    0: no recognisable directive at all.
    """
    classified, _ = scan_lines(response_text)
    directives = sum(1 for kind, _, _ in classified if kind == "directive")
    unknown = sum(1 for kind, _, _ in classified if kind == "unknown")
    if directives == 0:
        return 0
    return 2 if unknown == 0 else 1


def validate_human_score(value: float) -> float:
    if not HUMAN_SCORE_MIN <= value <= HUMAN_SCORE_MAX:
        raise OutOfRange(
            f"human score must be in [{HUMAN_SCORE_MIN:g}, {HUMAN_SCORE_MAX:g}], got {value!r}"
        )
    return float(value)


def combine_scores(
    variance: float | None,
    format: int | None,
    human: float | None,
) -> RobotsScore:
    """Assemble the composite score; all three components must be present."""
    missing = [
        name
        for name, value in (("variance", variance), ("format", format), ("human", human))
        if value is None
    ]
    if missing:
        raise MissingComponent(f"missing score components: {', '.join(missing)}")
    return RobotsScore(
        variance_score=float(variance),
        format_score=int(format),
        human_score=validate_human_score(human),
    )
