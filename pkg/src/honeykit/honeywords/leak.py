"""Leak-file ingestion and the synthetic substitute for real leak data.

Real breach data is never bundled. The loader accepts any
delimiter-separated file through a schema map; the synthetic generator
produces PII-flavoured records where a configurable fraction of
passwords embed name or birth-date fragments, mimicking how real users
build passwords.
"""

from __future__ import annotations

import csv
import logging
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from ..errors import InsufficientCompleteRecords, MissingColumn, UnreadableFile

log = logging.getLogger(__name__)

FIELD_NAMES = ("username", "password", "first_name", "last_name", "email", "date_of_birth")

# Identity map for files that already use our field names as headers.
DEFAULT_SCHEMA_MAP = {name: name for name in FIELD_NAMES}


@dataclass(frozen=True)
class LeakRecord:
    username: str
    password: str
    first_name: str
    last_name: str
    email: str
    date_of_birth: str

    @property
    def is_complete(self) -> bool:
        return all(getattr(self, name) for name in FIELD_NAMES)


def load_leak(
    path: str | Path,
    schema_map: Mapping[str, str],
    delimiter: str | None = None,
) -> list[LeakRecord]:
    """Read a delimiter-separated leak file with a header row.

    ``schema_map`` maps file column names to the six record fields; only
    those columns are retained. Rows missing a mapped cell are counted
    and skipped. The delimiter is sniffed when not given.
    """
    fields_covered = set(schema_map.values())
    missing_fields = [name for name in FIELD_NAMES if name not in fields_covered]
    if missing_fields:
        raise MissingColumn(f"schema map does not cover fields: {', '.join(missing_fields)}")

    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableFile(f"cannot read {path}: {exc}") from exc

    if delimiter is None:
        sample = text[:4096]
        try:
            delimiter = csv.Sniffer().sniff(sample, delimiters=",;\t|").delimiter
        except csv.Error:
            delimiter = ","

    reader = csv.DictReader(text.splitlines(), delimiter=delimiter)
    header = reader.fieldnames or []
    missing_columns = [column for column in schema_map if column not in header]
    if missing_columns:
        raise MissingColumn(f"header lacks mapped columns: {', '.join(missing_columns)}")

    records = []
    skipped = 0
    for row in reader:
        values = {}
        malformed = False
        for column, field_name in schema_map.items():
            cell = row.get(column)
            if cell is None:
                malformed = True
                break
            values[field_name] = cell.strip()
        if malformed:
            skipped += 1
            continue
        records.append(LeakRecord(**values))
    if skipped:
        log.warning("skipped %d malformed rows in %s", skipped, path)
    return records


def sample_complete(records: Sequence[LeakRecord], n: int, seed: int) -> list[LeakRecord]:
    """Uniform sample without replacement among complete records."""
    complete = [r for r in records if r.is_complete]
    if len(complete) < n:
        raise InsufficientCompleteRecords(
            f"need {n} complete records, only {len(complete)} available"
        )
    return random.Random(seed).sample(complete, n)


# ---------------------------------------------------------------------------
# Synthetic leak generation
# ---------------------------------------------------------------------------

FIRST_NAMES = (
    "james", "mary", "john", "patricia", "robert", "jennifer", "michael",
    "linda", "william", "elizabeth", "david", "barbara", "richard", "susan",
    "joseph", "jessica", "thomas", "sarah", "charles", "karen", "daniel",
    "nancy", "matthew", "lisa", "anthony", "betty", "mark", "sandra",
    "donald", "ashley", "steven", "kim", "paul", "donna", "andrew", "carol",
)
LAST_NAMES = (
    "smith", "johnson", "williams", "brown", "jones", "garcia", "miller",
    "davis", "rodriguez", "martinez", "hernandez", "lopez", "gonzalez",
    "wilson", "anderson", "thomas", "taylor", "moore", "jackson", "martin",
    "lee", "perez", "thompson", "white", "harris", "sanchez", "clark",
    "ramirez", "lewis", "robinson", "walker", "young", "allen", "king",
)
COMMON_WORDS = (
    "dragon", "monkey", "shadow", "master", "killer", "soccer", "summer",
    "flower", "purple", "silver", "golden", "tiger", "angel", "chocolate",
    "princess", "football", "baseball", "superman", "batman", "cookie",
    "sunshine", "rainbow", "butterfly", "diamond", "freedom", "winter",
    "thunder", "iloveyou", "welcome", "ginger", "pepper", "banana",
)
_SYMBOLS = "!$#*?."
_MAIL_DOMAINS = ("example.com", "mail.test", "webmail.example")


def _synth_record(rng: random.Random, pii_fraction: float) -> LeakRecord:
    first = rng.choice(FIRST_NAMES)
    last = rng.choice(LAST_NAMES)
    year = rng.randint(1955, 2005)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    username = rng.choice(
        (
            f"{first}{last}",
            f"{first}.{last}",
            f"{first}{year % 100:02d}",
            f"{first[0]}{last}",
            f"{last}{rng.randint(1, 99)}",
        )
    )
    email = f"{username}@{rng.choice(_MAIL_DOMAINS)}"
    date_of_birth = f"{year:04d}-{month:02d}-{day:02d}"
    if rng.random() < pii_fraction:
        password = rng.choice(
            (
                f"{first}{year}",
                f"{first.capitalize()}{year}",
                f"{first}{day:02d}{month:02d}",
                f"{last}{year}",
                f"{first}{last}",
                f"{first[0]}{last}{year % 100:02d}",
                f"{first}{year % 100:02d}",
            )
        )
        if rng.random() < 0.3:
            password += rng.choice(_SYMBOLS)
    else:
        word = rng.choice(COMMON_WORDS)
        password = rng.choice(
            (
                f"{word}{rng.randint(1, 999)}",
                f"{word}{rng.randint(1950, 2010)}",
                f"{word.capitalize()}{rng.randint(1, 99)}{rng.choice(_SYMBOLS)}",
                word + word[::-1][:3],
            )
        )
    return LeakRecord(
        username=username,
        password=password,
        first_name=first,
        last_name=last,
        email=email,
        date_of_birth=date_of_birth,
    )


def synth_leak(n: int, seed: int, pii_fraction: float = 0.6) -> list[LeakRecord]:
    """Deterministic synthetic leak of n complete records.

    ``pii_fraction`` of the passwords embed fragments of the record's
    own name or birth fields; the rest are common-word passwords.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = random.Random(seed)
    return [_synth_record(rng, pii_fraction) for _ in range(n)]


def synth_passwords(n: int, seed: int, pii_fraction: float = 0.6) -> list[str]:
    """Just the passwords of a synthetic leak (training-corpus shortcut)."""
    return [record.password for record in synth_leak(n, seed, pii_fraction)]


def write_leak_csv(records: Sequence[LeakRecord], path: str | Path, delimiter: str = ",") -> None:
    """Write records with the canonical header, loadable via DEFAULT_SCHEMA_MAP."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, delimiter=delimiter)
        writer.writerow(FIELD_NAMES)
        for record in records:
            writer.writerow([getattr(record, name) for name in FIELD_NAMES])
