"""The seven honeytoken types: special instructions, structural output
validators, and the four-axis qualitative rating schema.

Validators are structural, not semantic. They check shape — counts,
columns, timestamp prefixes — and never plausibility, which stays a
human judgment (the credibility rating axis).
"""

from __future__ import annotations

import itertools
import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidRating, UnknownTokenType
from .robots.parser import scan_lines
from .robots.scoring import format_score

TOKEN_TYPE_IDS = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class TokenTypeSpec:
    id: str
    name: str
    category: str
    special_instruction: str
    generator_noun: str


_SPECS = (
    TokenTypeSpec(
        id="A",
        name="Robots.txt",
        category="Network/Service (Website)",
        special_instruction=(
            "Based on the given information, return a robots.txt file. "
            "Some paths of the robots.txt should be interesting for a potential attacker."
        ),
        generator_noun="robots.txt",
    ),
    TokenTypeSpec(
        id="B",
        name="Honeywords",
        category="Network/Credentials",
        special_instruction=(
            "Based on this information, return 20 different username and password pairs."
        ),
        generator_noun="honeyword",
    ),
    TokenTypeSpec(
        id="C",
        name="Ports/Services",
        category="Network Service/Ports",
        special_instruction=(
            "Return a random list of ports and services, including their version for a "
            "random IP. The services should match the given occupation of the user. "
            "The result should look like a Nmap scan."
        ),
        generator_noun="ports and services list",
    ),
    TokenTypeSpec(
        id="D",
        name="Invoice File",
        category="Host/File",
        special_instruction=(
            "Based on the field of work of that company, return an invoice list "
            "containing 5 items with Quantity, Name, and Price."
        ),
        generator_noun="invoice file",
    ),
    TokenTypeSpec(
        id="E",
        name="Config",
        category="Host/File",
        special_instruction=(
            "Based on the given information, return a config file for that service."
        ),
        generator_noun="config file",
    ),
    TokenTypeSpec(
        id="F",
        name="Log File",
        category="Host/File",
        special_instruction=(
            "Based on the given information, return a log file for that service."
        ),
        generator_noun="log file",
    ),
    TokenTypeSpec(
        id="G",
        name="Database",
        category="Network/Service",
        special_instruction=(
            "Return a database filled with user information: full name, email address, "
            "password, phone number, birthday, company ID (random 6-digit number)."
        ),
        generator_noun="database",
    ),
)


def builtin_token_specs() -> dict[str, TokenTypeSpec]:
    """The seven built-in token type specs keyed by id A..G."""
    return {spec.id: spec for spec in _SPECS}


def get_spec(token_type: str) -> TokenTypeSpec:
    specs = builtin_token_specs()
    if token_type not in specs:
        raise UnknownTokenType(f"unknown token type {token_type!r}, expected one of {', '.join(TOKEN_TYPE_IDS)}")
    return specs[token_type]


# ---------------------------------------------------------------------------
# Structural validation of LLM responses
# ---------------------------------------------------------------------------

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"


@dataclass(frozen=True)
class Finding:
    code: str
    message: str
    location: int | None = None
    severity: str = SEVERITY_ERROR


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    findings: tuple[Finding, ...]
    parsed_summary: dict[str, int]

    @property
    def content_count(self) -> int:
        """Number of parsable content units found, regardless of validity."""
        return self.parsed_summary.get("content_count", 0)

    def to_json_dict(self) -> dict:
        return {
            "valid": self.valid,
            "findings": [
                {"code": f.code, "message": f.message, "location": f.location, "severity": f.severity}
                for f in self.findings
            ],
            "parsed_summary": dict(self.parsed_summary),
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ValidationResult":
        findings = tuple(
            Finding(
                code=f["code"],
                message=f["message"],
                location=f.get("location"),
                severity=f.get("severity", SEVERITY_ERROR),
            )
            for f in payload.get("findings", ())
        )
        return cls(
            valid=bool(payload["valid"]),
            findings=findings,
            parsed_summary={k: int(v) for k, v in payload.get("parsed_summary", {}).items()},
        )


def _result(findings: list[Finding], summary: dict[str, int]) -> ValidationResult:
    valid = not any(f.severity == SEVERITY_ERROR for f in findings)
    return ValidationResult(valid=valid, findings=tuple(findings), parsed_summary=summary)


def _validate_robots_txt(text: str) -> ValidationResult:
    score = format_score(text)
    classified, _ = scan_lines(text)
    directives = sum(1 for kind, _, _ in classified if kind == "directive")
    findings = []
    if score == 0:
        findings.append(Finding("NotRobotsTxt", "no robots.txt directives found"))
    elif score == 1:
        findings.append(
            Finding("ExtraProse", "directives mixed with non-directive text", severity=SEVERITY_WARNING)
        )
    return _result(findings, {"directive_count": directives, "format_score": score, "content_count": directives})


# Honeyword pair extraction. Separator priority puts comma last because
# commas show up inside generated values far more often than the others.
PAIR_SEPARATORS = (":", "|", "\t", " - ", ",")
EXPECTED_PAIRS = 20

_LIST_PREFIX = re.compile(r"^(\d+[.)]\s*|[-*+]\s+)")
_TABLE_FILLER = re.compile(r"^[-: ]+$")
_HEADER_USERS = frozenset({"username", "user", "login", "user name", "usernames"})
_HEADER_PASSWORDS = frozenset({"password", "pass", "pw", "passwords"})


def _is_pair_header(user: str, password: str) -> bool:
    return user.strip().lower() in _HEADER_USERS and password.strip().lower() in _HEADER_PASSWORDS


def extract_pairs(text: str) -> list[tuple[str, str]]:
    """Pull username/password pairs out of free-form LLM output.

    Accepts plain separator lines, numbered or bulleted lists, and
    markdown tables; header and separator rows are skipped.
    """
    pairs = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("|") and line.endswith("|") and line.count("|") >= 3:
            cells = [c.strip() for c in line.strip("|").split("|")]
            cells = [c for c in cells if c]
            if len(cells) != 2:
                continue
            if all(_TABLE_FILLER.fullmatch(c) for c in cells):
                continue
            if _is_pair_header(*cells):
                continue
            pairs.append((cells[0], cells[1]))
            continue
        line = _LIST_PREFIX.sub("", line)
        for sep in PAIR_SEPARATORS:
            if sep in line:
                user, _, password = line.partition(sep)
                user, password = user.strip(), password.strip()
                if user and password and not _is_pair_header(user, password):
                    pairs.append((user, password))
                break
    return pairs


def pair_category(pair_count: int, expected: int = EXPECTED_PAIRS) -> str:
    """Bucket a pair count into none / fewer / exactly / more."""
    if pair_count == 0:
        return "none"
    if pair_count < expected:
        return "fewer"
    if pair_count == expected:
        return "exactly"
    return "more"


def _validate_honeywords(text: str, expected: int = EXPECTED_PAIRS) -> ValidationResult:
    pairs = extract_pairs(text)
    count = len(pairs)
    findings = []
    if count == 0:
        findings.append(Finding("NoPairs", "no username/password pairs found"))
    elif count < expected:
        findings.append(Finding("TooFewPairs", f"expected {expected} pairs, found {count}"))
    elif count > expected:
        findings.append(Finding("TooManyPairs", f"expected {expected} pairs, found {count}"))
    return _result(findings, {"pair_count": count, "content_count": count})


_SCAN_LINE = re.compile(r"^\s*\d{1,5}/(tcp|udp)\s+[\w|-]+\s+\S+", re.IGNORECASE)


def _validate_port_scan(text: str) -> ValidationResult:
    count = sum(1 for line in text.splitlines() if _SCAN_LINE.match(line))
    findings = []
    if count == 0:
        findings.append(Finding("NoScanLines", "no port/state/service lines found"))
    return _result(findings, {"scan_lines": count, "content_count": count})


EXPECTED_INVOICE_ITEMS = 5

_QTY = re.compile(r"^\d+$")
_MONEY = re.compile(r"^[$€£]?\d{1,3}(,\d{3})*(\.\d+)?$|^[$€£]?\d+(\.\d+)?$")
_PLAIN_ITEM = re.compile(
    r"^\s*(\d+)\s*(?:x|×)?\s*[.,)|-]?\s+(.*?)\s*[-–:,]?\s+([$€£]?\d[\d,]*(?:\.\d+)?)\s*$"
)
_INVOICE_HEADER_WORDS = frozenset(
    {"quantity", "qty", "name", "item", "description", "price", "amount", "cost", "total"}
)


def _cells_of(line: str) -> list[str] | None:
    if line.startswith("|") and line.endswith("|") and line.count("|") >= 3:
        cells = [c.strip() for c in line.strip("|").split("|")]
        return [c for c in cells if c != ""]
    return None


def _invoice_item_from_cells(cells: list[str]) -> bool:
    lowered = [c.lower() for c in cells]
    if sum(1 for c in lowered if c in _INVOICE_HEADER_WORDS) >= 2:
        return False
    if all(_TABLE_FILLER.fullmatch(c) for c in cells):
        return False
    has_qty = any(_QTY.fullmatch(c) for c in cells)
    has_price = any(_MONEY.fullmatch(c.replace(" ", "")) and not _QTY.fullmatch(c) for c in cells)
    has_name = any(re.search(r"[A-Za-z]", c) and c.lower() not in _INVOICE_HEADER_WORDS for c in cells)
    return has_qty and has_price and has_name


def _validate_invoice(text: str, expected: int = EXPECTED_INVOICE_ITEMS) -> ValidationResult:
    count = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        cells = _cells_of(line)
        if cells is not None:
            if _invoice_item_from_cells(cells):
                count += 1
            continue
        match = _PLAIN_ITEM.match(line)
        if match and re.search(r"[A-Za-z]", match.group(2)):
            count += 1
    findings = []
    if count != expected:
        findings.append(Finding("WrongItemCount", f"expected {expected} invoice items, found {count}"))
    return _result(findings, {"item_count": count, "content_count": count})


_CONFIG_KV = re.compile(r"^\s*[A-Za-z_][\w.-]*\s*[=:]\s*\S")
_CONFIG_SECTION = re.compile(r"^\s*\[[^\]]+\]\s*$")
_CONFIG_STMT = re.compile(r"^\s*[A-Za-z_][\w./-]*\s+[^=:;\s][^;]*;\s*$")
MIN_CONFIG_DIRECTIVES = 3


def _validate_config(text: str, minimum: int = MIN_CONFIG_DIRECTIVES) -> ValidationResult:
    directives = 0
    sections = 0
    for line in text.splitlines():
        if _CONFIG_SECTION.match(line):
            sections += 1
        elif _CONFIG_KV.match(line) or _CONFIG_STMT.match(line):
            directives += 1
    findings = []
    if directives < minimum:
        findings.append(Finding("TooFewDirectives", f"expected ≥{minimum} config directives, found {directives}"))
    return _result(
        findings,
        {"directive_count": directives, "section_count": sections, "content_count": directives + sections},
    )


_MONTHS = "Jan|Feb|Mar|Apr|May|Jun|Jul|Aug|Sep|Oct|Nov|Dec"
_TIMESTAMP_PATTERNS = (
    re.compile(r"\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2}"),
    re.compile(r"\d{4}/\d{2}/\d{2} \d{2}:\d{2}:\d{2}"),
    re.compile(rf"(?:{_MONTHS})\s+\d{{1,2}}\s+\d{{2}}:\d{{2}}:\d{{2}}"),
    re.compile(rf"\d{{2}}/(?:{_MONTHS})/\d{{4}}:\d{{2}}:\d{{2}}:\d{{2}}"),
)
MIN_LOG_LINES = 3


def _has_timestamp_prefix(line: str) -> bool:
    head = line[:64]
    return any(p.search(head) for p in _TIMESTAMP_PATTERNS)


def _validate_log(text: str, minimum: int = MIN_LOG_LINES) -> ValidationResult:
    count = sum(1 for line in text.splitlines() if line.strip() and _has_timestamp_prefix(line))
    findings = []
    if count < minimum:
        findings.append(Finding("TooFewLogLines", f"expected ≥{minimum} timestamped log lines, found {count}"))
    return _result(findings, {"log_lines": count, "content_count": count})


DATABASE_COLUMNS = ("full_name", "email", "password", "phone", "birthday", "company_id")

_COLUMN_CONCEPTS = {
    "full_name": {"full name", "fullname", "name"},
    "email": {"email", "email address", "e mail", "e mail address", "mail"},
    "password": {"password", "pass"},
    "phone": {"phone", "phone number", "telephone", "phone no", "mobile"},
    "birthday": {"birthday", "birth date", "date of birth", "dob", "birthdate"},
    "company_id": {"company id", "companyid", "company", "company number"},
}
_COMPANY_ID = re.compile(r"^\d{6}$")


def _normalize_header_cell(cell: str) -> str:
    return " ".join(re.sub(r"[^a-z0-9]+", " ", cell.lower()).split())


def _table_rows(text: str) -> list[list[str]]:
    """Extract table rows as cell lists from pipe tables or CSV-ish blocks."""
    pipe_rows = []
    csv_rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        cells = _cells_of(line)
        if cells is not None:
            if not all(_TABLE_FILLER.fullmatch(c) for c in cells):
                pipe_rows.append(cells)
            continue
        for delim in (",", ";"):
            if line.count(delim) >= 3:
                csv_rows.append([c.strip() for c in line.split(delim)])
                break
    return pipe_rows if pipe_rows else csv_rows


def _validate_database(text: str) -> ValidationResult:
    rows = _table_rows(text)
    findings: list[Finding] = []
    if not rows:
        findings.append(Finding("NoTable", "no tabular data found"))
        return _result(findings, {"row_count": 0, "column_count": 0, "content_count": 0})
    header = rows[0]
    concept_index: dict[str, int] = {}
    for idx, cell in enumerate(header):
        normalized = _normalize_header_cell(cell)
        for concept, aliases in _COLUMN_CONCEPTS.items():
            if concept not in concept_index and normalized in aliases:
                concept_index[concept] = idx
    for concept in DATABASE_COLUMNS:
        if concept not in concept_index:
            findings.append(Finding("MissingColumn", f"required column missing: {concept}"))
    data = rows[1:]
    if not data:
        findings.append(Finding("NoRows", "table has a header but no data rows"))
    elif "company_id" in concept_index:
        col = concept_index["company_id"]
        bad = sum(1 for row in data if col >= len(row) or not _COMPANY_ID.fullmatch(row[col].strip()))
        if bad:
            findings.append(Finding("BadCompanyId", f"{bad} rows lack a 6-digit company ID"))
    return _result(
        findings,
        {"row_count": len(data), "column_count": len(header), "content_count": len(data)},
    )


def validate(token_type: str, response_text: str) -> ValidationResult:
    """Run the structural validator for one token type over response text."""
    get_spec(token_type)
    if token_type == "A":
        return _validate_robots_txt(response_text)
    if token_type == "B":
        return _validate_honeywords(response_text)
    if token_type == "C":
        return _validate_port_scan(response_text)
    if token_type == "D":
        return _validate_invoice(response_text)
    if token_type == "E":
        return _validate_config(response_text)
    if token_type == "F":
        return _validate_log(response_text)
    return _validate_database(response_text)


# ---------------------------------------------------------------------------
# Qualitative ratings
# ---------------------------------------------------------------------------

RATING_AXES = ("syntax", "credibility", "variability", "stability")
RATING_VALUES = ("good", "neutral", "bad", "not_executable")
SYMBOL_BY_VALUE = {"good": "+", "neutral": "o", "bad": "-", "not_executable": "x"}
VALUE_BY_SYMBOL = {symbol: value for value, symbol in SYMBOL_BY_VALUE.items()}

# Most severe first; used to break ties when aggregating to one symbol.
_SEVERITY_ORDER = ("not_executable", "bad", "neutral", "good")


@dataclass(frozen=True)
class QualitativeRating:
    """Manual four-axis grade of one generation run."""

    syntax: str
    credibility: str
    variability: str
    stability: str
    rater: str = ""
    run_ids: tuple[str, ...] = ()

    def __post_init__(self):
        for axis in RATING_AXES:
            value = getattr(self, axis)
            if value not in RATING_VALUES:
                raise InvalidRating(f"{axis} must be one of {RATING_VALUES}, got {value!r}")
        others = (self.credibility, self.variability, self.stability)
        if "not_executable" in others and self.syntax != "not_executable":
            raise InvalidRating(
                "not_executable on any axis implies not_executable syntax "
                "(a response that could not be produced cannot be syntax-rated)"
            )

    @classmethod
    def from_symbols(cls, syntax: str, credibility: str, variability: str, stability: str, **kwargs) -> "QualitativeRating":
        try:
            values = [VALUE_BY_SYMBOL[s] for s in (syntax, credibility, variability, stability)]
        except KeyError as exc:
            raise InvalidRating(f"unknown rating symbol {exc.args[0]!r}") from None
        return cls(*values, **kwargs)

    def symbols(self) -> tuple[str, str, str, str]:
        return tuple(SYMBOL_BY_VALUE[getattr(self, axis)] for axis in RATING_AXES)


class RatingStore:
    """Append-only JSON Lines store of qualitative ratings."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def record(self, llm_name: str, token_type: str, rating: QualitativeRating) -> dict:
        get_spec(token_type)
        entry = {
            "llm": llm_name,
            "token_type": token_type,
            "rater": rating.rater,
            "run_ids": list(rating.run_ids),
            "timestamp": time.time(),
        }
        for axis in RATING_AXES:
            entry[axis] = getattr(rating, axis)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(entry, sort_keys=True) + "\n")
        return entry

    def load(self) -> list[dict]:
        if not self.path.exists():
            return []
        entries = []
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                entries.append(json.loads(line))
        return entries


def aggregate_symbol(values: Sequence[str]) -> str:
    """Modal rating value as a symbol; ties go to the more severe value."""
    counts = {value: 0 for value in RATING_VALUES}
    for value in values:
        counts[value] += 1
    best = max(_SEVERITY_ORDER, key=lambda v: (counts[v], -_SEVERITY_ORDER.index(v)))
    return SYMBOL_BY_VALUE[best]


def rating_matrix(entries: Iterable[dict]) -> dict[tuple[str, str], dict[str, str]]:
    """Aggregate per-run ratings to one symbol per (llm, axis, token type)."""
    grouped: dict[tuple[str, str, str], list[str]] = {}
    for entry in entries:
        for axis in RATING_AXES:
            key = (entry["llm"], axis, entry["token_type"])
            grouped.setdefault(key, []).append(entry[axis])
    matrix: dict[tuple[str, str], dict[str, str]] = {}
    for (llm, axis, token_type), values in grouped.items():
        matrix.setdefault((llm, axis), {})[token_type] = aggregate_symbol(values)
    return matrix


def render_rating_matrix(entries: Iterable[dict]) -> str:
    """Plain-text matrix: one row per (LLM, axis), one column per type A–G."""
    matrix = rating_matrix(entries)
    llms = sorted({llm for llm, _ in matrix})
    lines = []
    header = f"{'LLM':<12} {'Axis':<12} " + "  ".join(TOKEN_TYPE_IDS)
    lines.append(header)
    lines.append("-" * len(header))
    for llm in llms:
        for axis in RATING_AXES:
            cells = matrix.get((llm, axis), {})
            row = "  ".join(cells.get(t, ".") for t in TOKEN_TYPE_IDS)
            lines.append(f"{llm:<12} {axis:<12} {row}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Variability helper (advisory, supports the manual variability axis)
# ---------------------------------------------------------------------------


def _edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def variability_statistic(responses: Sequence[str]) -> float:
    """Mean pairwise normalized edit distance over repeated responses.

    0 means every response is identical; values near 1 mean responses
    share almost nothing. Advisory only: it supports, not replaces, the
    human variability rating.
    """
    if len(responses) < 2:
        return 0.0
    total = 0.0
    count = 0
    for a, b in itertools.combinations(responses, 2):
        longest = max(len(a), len(b))
        total += _edit_distance(a, b) / longest if longest else 0.0
        count += 1
    return total / count
