"""Feature extraction from parsed robots.txt files.

Six integer features feed the statistical credibility score: per rule
kind (allow, disallow) the number of entries, the number of path
occurrences matching a wordlist of common web paths, and the total
number of path segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .parser import RobotsFile

FEATURE_FIELDS = (
    "allow_entries",
    "allow_wordlist_hits",
    "allow_segments",
    "disallow_entries",
    "disallow_wordlist_hits",
    "disallow_segments",
)


@dataclass(frozen=True)
class FeatureVector:
    allow_entries: int
    allow_wordlist_hits: int
    allow_segments: int
    disallow_entries: int
    disallow_wordlist_hits: int
    disallow_segments: int

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, name) for name in FEATURE_FIELDS)

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in FEATURE_FIELDS}


class Wordlist:
    """Case-insensitive set of common path segments."""

    def __init__(self, tokens: Iterable[str]):
        self.tokens = frozenset(t.strip().lower() for t in tokens if t.strip())

    def __contains__(self, token: str) -> bool:
        return token in self.tokens

    def __len__(self) -> int:
        return len(self.tokens)

    @classmethod
    def from_file(cls, path: str | Path) -> "Wordlist":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls(line for line in lines if not line.lstrip().startswith("#"))


def load_default_wordlist() -> Wordlist:
    """Wordlist of common web paths bundled with the package."""
    text = resources.files("honeykit.robots").joinpath("data/common_paths.txt").read_text(encoding="utf-8")
    return Wordlist(line for line in text.splitlines() if not line.lstrip().startswith("#"))


def normalize_segment(segment: str) -> str:
    """Lowercase a path segment and strip wildcard characters for matching."""
    return segment.replace("*", "").replace("$", "").lower()


def extract_features(robots: RobotsFile, wordlist: Wordlist) -> FeatureVector:
    """Count entries, wordlist hits, and path segments per rule kind.

    Every non-empty ``/``-separated path component counts as a segment;
    a segment whose normalised form appears in the wordlist counts as a
    hit, so one path can contribute several hits.
    """
    counts = {kind: [0, 0, 0] for kind in ("allow", "disallow")}
    for group in robots.groups:
        for rule in group.rules:
            entry = counts[rule.kind]
            entry[0] += 1
            for segment in rule.path.split("/"):
                if not segment:
                    continue
                entry[2] += 1
                normalized = normalize_segment(segment)
                if normalized and normalized in wordlist:
                    entry[1] += 1
    allow = counts["allow"]
    disallow = counts["disallow"]
    return FeatureVector(
        allow_entries=allow[0],
        allow_wordlist_hits=allow[1],
        allow_segments=allow[2],
        disallow_entries=disallow[0],
        disallow_wordlist_hits=disallow[1],
        disallow_segments=disallow[2],
    )
