"""Per-feature corpus statistics for robots.txt feature vectors.

Ships the reference statistics derived from the 846 valid robots.txt
files of a popular-website crawl, and can recompute statistics from any
locally crawled corpus.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from ..errors import InsufficientSamples
from .features import FEATURE_FIELDS, FeatureVector


@dataclass(frozen=True)
class FeatureStat:
    mean: float
    std: float


@dataclass(frozen=True)
class CorpusStats:
    """Mean and population standard deviation per feature."""

    features: dict[str, FeatureStat]
    sample_count: int

    def __post_init__(self):
        missing = [name for name in FEATURE_FIELDS if name not in self.features]
        if missing:
            raise ValueError(f"stats missing features: {missing}")


DEFAULT_CORPUS_STATS = CorpusStats(
    features={
        "allow_entries": FeatureStat(mean=10.27, std=35.13),
        "allow_wordlist_hits": FeatureStat(mean=13.96, std=46.40),
        "allow_segments": FeatureStat(mean=21.02, std=71.86),
        "disallow_entries": FeatureStat(mean=76.35, std=228.98),
        "disallow_wordlist_hits": FeatureStat(mean=83.76, std=272.85),
        "disallow_segments": FeatureStat(mean=143.40, std=484.55),
    },
    sample_count=846,
)


def compute_stats(vectors: Iterable[FeatureVector]) -> CorpusStats:
    """Arithmetic mean and population std per feature over ≥2 vectors."""
    vectors = list(vectors)
    if len(vectors) < 2:
        raise InsufficientSamples(f"need at least 2 feature vectors, got {len(vectors)}")
    features = {}
    for name in FEATURE_FIELDS:
        values = [getattr(v, name) for v in vectors]
        features[name] = FeatureStat(
            mean=statistics.fmean(values),
            std=statistics.pstdev(values),
        )
    return CorpusStats(features=features, sample_count=len(vectors))


def save_stats(stats: CorpusStats, path: str | Path) -> None:
    payload = {
        "features": {name: {"mean": s.mean, "std": s.std} for name, s in stats.features.items()},
        "sample_count": stats.sample_count,
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_stats(path: str | Path) -> CorpusStats:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    features = {
        name: FeatureStat(mean=float(entry["mean"]), std=float(entry["std"]))
        for name, entry in payload["features"].items()
    }
    return CorpusStats(features=features, sample_count=int(payload["sample_count"]))
