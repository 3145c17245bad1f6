"""Uniform chat-completion interface over interchangeable providers.

``complete`` never raises on transport-level trouble: every failure is
encoded in the returned ``finish_reason``/``detail`` pair so sweeps can
keep going. A directory-backed fixture store provides deterministic
record/replay, which is also how the test suite and the offline demo
avoid the network entirely.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from .tokens import validate

FINISH_COMPLETE = "complete"
FINISH_TRUNCATED = "truncated"
FINISH_FILTERED = "filtered"
FINISH_ERROR = "error"

CLASS_OK = "ok"
CLASS_REFUSAL = "refusal"
CLASS_EMPTY = "empty"
CLASS_MALFORMED = "malformed"

DEFAULT_REFUSAL_LEXICON = (
    "i cannot",
    "i can't",
    "unable to",
    "against our policy",
    "as an ai",
    "i'm sorry",
)


@dataclass(frozen=True)
class ProviderConfig:
    name: str
    endpoint: str = ""
    model_id: str = ""
    auth_secret_ref: str = ""
    temperature: float | None = None
    max_tokens: int | None = None
    timeout: float = 30.0
    replay: bool = False

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ProviderConfig":
        return cls(
            name=payload["name"],
            endpoint=payload.get("endpoint", ""),
            model_id=payload.get("model_id", ""),
            auth_secret_ref=payload.get("auth_secret_ref", ""),
            temperature=payload.get("temperature"),
            max_tokens=payload.get("max_tokens"),
            timeout=float(payload.get("timeout", 30.0)),
            replay=bool(payload.get("replay", False)),
        )


@dataclass(frozen=True)
class ChatResponse:
    text: str
    finish_reason: str
    latency: float
    provider: str
    detail: str = ""


@dataclass(frozen=True)
class ResponseClass:
    kind: str
    evidence: str = ""

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "evidence": self.evidence}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ResponseClass":
        return cls(kind=payload["kind"], evidence=payload.get("evidence", ""))


class FixtureStore:
    """Directory of JSON fixtures keyed by a hash of (provider, prompt)."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    @staticmethod
    def key(provider_name: str, prompt_text: str) -> str:
        digest = hashlib.sha256()
        digest.update(provider_name.encode("utf-8"))
        digest.update(b"\x00")
        digest.update(prompt_text.encode("utf-8"))
        return digest.hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def record(self, provider_name: str, prompt_text: str, response: ChatResponse) -> Path:
        key = self.key(provider_name, prompt_text)
        payload = {
            "key": key,
            "provider": provider_name,
            "prompt_text": prompt_text,
            "response_text": response.text,
            "finish_reason": response.finish_reason,
        }
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def store_text(self, provider_name: str, prompt_text: str, response_text: str) -> Path:
        """Record a plain complete response body (used by fixture seeding)."""
        response = ChatResponse(
            text=response_text, finish_reason=FINISH_COMPLETE, latency=0.0, provider=provider_name
        )
        return self.record(provider_name, prompt_text, response)

    def lookup(self, provider_name: str, prompt_text: str) -> dict | None:
        path = self._path(self.key(provider_name, prompt_text))
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))


def _error_response(provider: str, detail: str, started: float) -> ChatResponse:
    return ChatResponse(
        text="",
        finish_reason=FINISH_ERROR,
        latency=time.monotonic() - started,
        provider=provider,
        detail=detail,
    )


def _extract_text(payload: dict) -> str | None:
    choices = payload.get("choices")
    if isinstance(choices, list) and choices:
        choice = choices[0]
        message = choice.get("message")
        if isinstance(message, dict) and isinstance(message.get("content"), str):
            return message["content"]
        if isinstance(choice.get("text"), str):
            return choice["text"]
    if isinstance(payload.get("text"), str):
        return payload["text"]
    return None


def _map_finish_reason(payload: dict) -> str:
    choices = payload.get("choices")
    native = choices[0].get("finish_reason") if isinstance(choices, list) and choices else None
    return {
        "stop": FINISH_COMPLETE,
        "length": FINISH_TRUNCATED,
        "content_filter": FINISH_FILTERED,
    }.get(native, FINISH_COMPLETE)


def complete(
    prompt_text: str,
    provider: ProviderConfig,
    fixtures: FixtureStore | None = None,
    replay: bool | None = None,
    record: bool = False,
    session: requests.Session | None = None,
) -> ChatResponse:
    """Submit one single-turn prompt; failures come back as finish_reason
    "error" with a machine-readable detail code, never as an exception."""
    started = time.monotonic()
    if replay is None:
        replay = provider.replay

    if replay:
        if fixtures is None:
            return _error_response(provider.name, "fixture_missing: no fixture store configured", started)
        fixture = fixtures.lookup(provider.name, prompt_text)
        if fixture is None:
            return _error_response(provider.name, "fixture_missing", started)
        finish = fixture.get("finish_reason", FINISH_COMPLETE)
        text = fixture.get("response_text", "") if finish in (FINISH_COMPLETE, FINISH_TRUNCATED) else ""
        return ChatResponse(
            text=text,
            finish_reason=finish,
            latency=time.monotonic() - started,
            provider=provider.name,
        )

    headers = {"Content-Type": "application/json"}
    if provider.auth_secret_ref:
        secret = os.environ.get(provider.auth_secret_ref)
        if not secret:
            return _error_response(
                provider.name, f"auth_missing: environment variable {provider.auth_secret_ref} unset", started
            )
        headers["Authorization"] = f"Bearer {secret}"

    body: dict = {
        "model": provider.model_id,
        "messages": [{"role": "user", "content": prompt_text}],
    }
    if provider.temperature is not None:
        body["temperature"] = provider.temperature
    if provider.max_tokens is not None:
        body["max_tokens"] = provider.max_tokens

    http = session or requests
    try:
        raw = http.post(provider.endpoint, json=body, headers=headers, timeout=provider.timeout)
    except requests.exceptions.Timeout:
        return _error_response(provider.name, "timeout", started)
    except requests.exceptions.RequestException as exc:
        return _error_response(provider.name, f"transport_error: {exc.__class__.__name__}", started)
    if raw.status_code != 200:
        return _error_response(provider.name, f"transport_error: http_{raw.status_code}", started)
    try:
        payload = raw.json()
    except ValueError:
        return _error_response(provider.name, "transport_error: invalid_json", started)

    text = _extract_text(payload)
    if text is None:
        return _error_response(provider.name, "transport_error: no_text_in_response", started)
    finish = _map_finish_reason(payload)
    if finish == FINISH_FILTERED:
        text = ""
    response = ChatResponse(
        text=text,
        finish_reason=finish,
        latency=time.monotonic() - started,
        provider=provider.name,
    )
    if record and fixtures is not None and finish in (FINISH_COMPLETE, FINISH_TRUNCATED):
        fixtures.record(provider.name, prompt_text, response)
    return response


def load_refusal_lexicon(path: str | Path) -> tuple[str, ...]:
    """One lowercase phrase per line; blank lines and # comments ignored."""
    phrases = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            phrases.append(line.lower())
    return tuple(phrases)


def classify_response(
    text: str,
    token_type: str,
    lexicon: tuple[str, ...] = DEFAULT_REFUSAL_LEXICON,
) -> ResponseClass:
    """Classify a response as empty, refusal, malformed, or ok.

    Order matters: a whitespace-only body is empty before anything else;
    a refusal phrase wins over shape checks; only then does the token
    type's validator decide between malformed (zero parsable content)
    and ok.
    """
    if not text.strip():
        return ResponseClass(kind=CLASS_EMPTY)
    lowered = text.lower()
    for phrase in lexicon:
        if phrase in lowered:
            return ResponseClass(kind=CLASS_REFUSAL, evidence=phrase)
    result = validate(token_type, text)
    if result.content_count == 0:
        reason = result.findings[0].code if result.findings else "NoContent"
        return ResponseClass(kind=CLASS_MALFORMED, evidence=reason)
    return ResponseClass(kind=CLASS_OK)
