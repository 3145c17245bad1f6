"""Additive-smoothed character Markov model over passwords.

The model learns transition counts of order-n character contexts with
start and end markers. Smoothing over an unknown-character class keeps
log_prob finite for any input string, including characters never seen
in training.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable

from ..errors import EmptyTraining

START = "\x00"
END = "\x01"
UNK = "\x02"
_MARKERS = (START, END, UNK)


class PasswordModel:
    """Order-n character model; P(c|ctx) = (count + α) / (total + α·V).

    V counts the training alphabet plus the end and unknown classes, so
    every conditional distribution sums to one over its support.
    """

    def __init__(self, order: int = 4, smoothing: float = 1.0):
        if order < 2:
            raise ValueError(f"order must be >= 2, got {order}")
        if smoothing < 0:
            raise ValueError(f"smoothing must be >= 0, got {smoothing}")
        self.order = order
        self.smoothing = smoothing
        self.counts: dict[str, dict[str, int]] = {}
        self.totals: dict[str, int] = {}
        self.alphabet: set[str] = set()

    @property
    def vocab_size(self) -> int:
        return len(self.alphabet) + 2

    def _train_one(self, password: str) -> None:
        cleaned = "".join(UNK if c in _MARKERS else c for c in password)
        self.alphabet.update(c for c in cleaned if c != UNK)
        sequence = START * (self.order - 1) + cleaned + END
        for i in range(self.order - 1, len(sequence)):
            context = sequence[i - self.order + 1 : i]
            row = self.counts.setdefault(context, {})
            row[sequence[i]] = row.get(sequence[i], 0) + 1
            self.totals[context] = self.totals.get(context, 0) + 1

    def log_prob(self, password: str) -> float:
        """Sum of smoothed log transition probabilities, end marker included."""
        cleaned = "".join(c if c in self.alphabet else UNK for c in password)
        sequence = START * (self.order - 1) + cleaned + END
        vocab = self.vocab_size
        total = 0.0
        for i in range(self.order - 1, len(sequence)):
            context = sequence[i - self.order + 1 : i]
            numerator = self.counts.get(context, {}).get(sequence[i], 0) + self.smoothing
            denominator = self.totals.get(context, 0) + self.smoothing * vocab
            if numerator == 0 or denominator == 0:
                return float("-inf")
            total += math.log(numerator / denominator)
        return total

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "smoothing": self.smoothing,
            "alphabet": "".join(sorted(self.alphabet)),
            "counts": self.counts,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "PasswordModel":
        model = cls(order=int(payload["order"]), smoothing=float(payload["smoothing"]))
        model.alphabet = set(payload["alphabet"])
        model.counts = {
            context: {symbol: int(count) for symbol, count in row.items()}
            for context, row in payload["counts"].items()
        }
        model.totals = {context: sum(row.values()) for context, row in model.counts.items()}
        return model


def train_model(passwords: Iterable[str], order: int = 4, smoothing: float = 1.0) -> PasswordModel:
    """Train a PasswordModel on a non-empty password corpus."""
    model = PasswordModel(order=order, smoothing=smoothing)
    trained = 0
    for password in passwords:
        model._train_one(password)
        trained += 1
    if trained == 0:
        raise EmptyTraining("training corpus is empty")
    return model


def log_prob(model: PasswordModel, password: str) -> float:
    return model.log_prob(password)


def save_model(model: PasswordModel, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(model.to_json_dict(), sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def load_model(path: str | Path) -> PasswordModel:
    return PasswordModel.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))
