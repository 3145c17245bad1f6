"""Run persistence and configuration.

Runs live in an append-only JSON Lines file: updates append a new
version of the record and loading keeps the last version per run_id.
That makes the store grep-able, crash-tolerant, and trivially
resumable.
"""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import UnknownRun
from .gateway import ProviderConfig, ResponseClass
from .prompts import BlockTriple
from .robots.scoring import RobotsScore, combine_scores, validate_human_score
from .tokens import ValidationResult


@dataclass(frozen=True)
class RunRecord:
    """One generation attempt, from prompt to scores."""

    run_id: str
    timestamp: float
    triple: tuple[int, int, int]
    token_type: str
    provider: str
    repeat: int
    prompt_text: str
    response_text: str
    finish_reason: str
    response_class: ResponseClass | None = None
    validation: ValidationResult | None = None
    variance_score: float | None = None
    format_score: int | None = None
    human_score: float | None = None
    honeyword_link: str | None = None

    @property
    def sweep_key(self) -> tuple[tuple[int, int, int], str, str, int]:
        return (self.triple, self.token_type, self.provider, self.repeat)

    @property
    def scores(self) -> RobotsScore | None:
        """Composite score, or None while any component is missing."""
        if None in (self.variance_score, self.format_score, self.human_score):
            return None
        return combine_scores(self.variance_score, self.format_score, self.human_score)

    def to_json_dict(self) -> dict:
        payload = {
            "run_id": self.run_id,
            "timestamp": self.timestamp,
            "triple": list(self.triple),
            "token_type": self.token_type,
            "provider": self.provider,
            "repeat": self.repeat,
            "prompt_text": self.prompt_text,
            "response_text": self.response_text,
            "finish_reason": self.finish_reason,
            "response_class": self.response_class.to_json_dict() if self.response_class else None,
            "validation": self.validation.to_json_dict() if self.validation else None,
            "variance_score": self.variance_score,
            "format_score": self.format_score,
            "human_score": self.human_score,
            "honeyword_link": self.honeyword_link,
        }
        return payload

    @classmethod
    def from_json_dict(cls, payload: dict) -> "RunRecord":
        return cls(
            run_id=payload["run_id"],
            timestamp=float(payload["timestamp"]),
            triple=tuple(payload["triple"]),
            token_type=payload["token_type"],
            provider=payload["provider"],
            repeat=int(payload.get("repeat", 0)),
            prompt_text=payload["prompt_text"],
            response_text=payload["response_text"],
            finish_reason=payload["finish_reason"],
            response_class=(
                ResponseClass.from_json_dict(payload["response_class"])
                if payload.get("response_class")
                else None
            ),
            validation=(
                ValidationResult.from_json_dict(payload["validation"])
                if payload.get("validation")
                else None
            ),
            variance_score=payload.get("variance_score"),
            format_score=payload.get("format_score"),
            human_score=payload.get("human_score"),
            honeyword_link=payload.get("honeyword_link"),
        )


def new_run_id() -> str:
    return uuid.uuid4().hex[:12]


class RunStore:
    """Append-only JSON Lines store; last version per run_id wins."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, record: RunRecord) -> RunRecord:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(record.to_json_dict(), sort_keys=True) + "\n")
        return record

    def load(self) -> dict[str, RunRecord]:
        records: dict[str, RunRecord] = {}
        if not self.path.exists():
            return records
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                record = RunRecord.from_json_dict(json.loads(line))
                records[record.run_id] = record
        return records

    def get(self, run_id: str) -> RunRecord:
        records = self.load()
        if run_id not in records:
            raise UnknownRun(f"run {run_id!r} not found in {self.path}")
        return records[run_id]

    def sweep_keys(self) -> set[tuple[tuple[int, int, int], str, str, int]]:
        return {record.sweep_key for record in self.load().values()}

    def record_human_score(self, run_id: str, value: float) -> RunRecord:
        value = validate_human_score(value)
        updated = replace(self.get(run_id), human_score=value, timestamp=time.time())
        return self.append(updated)

    def update(self, record: RunRecord) -> RunRecord:
        return self.append(replace(record, timestamp=time.time()))

    def total_score(self, run_id: str) -> RobotsScore:
        """Composite score of a run; raises MissingComponent if incomplete."""
        record = self.get(run_id)
        return combine_scores(record.variance_score, record.format_score, record.human_score)


@dataclass
class Config:
    """Global configuration: providers, well-known paths, defaults."""

    providers: list[ProviderConfig] = field(default_factory=list)
    paths: dict[str, str] = field(default_factory=dict)
    defaults: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path) -> "Config":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        providers = [ProviderConfig.from_json_dict(p) for p in payload.get("providers", [])]
        return cls(
            providers=providers,
            paths={k: str(v) for k, v in payload.get("paths", {}).items()},
            defaults=payload.get("defaults", {}),
        )

    def provider(self, name: str) -> ProviderConfig | None:
        for provider in self.providers:
            if provider.name == name:
                return provider
        return None
