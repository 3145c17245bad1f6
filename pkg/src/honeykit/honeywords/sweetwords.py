"""Sweetword set construction and (de)serialization.

A sweetword set hides one real password among k−1 decoys. Construction
follows the evaluation recipe: from 20 generated decoys one is
discarded uniformly at random and the real password is inserted at a
uniformly chosen index, keeping the set size at k.
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from ..errors import TooFewDecoys

DEFAULT_K = 20


@dataclass(frozen=True)
class SweetwordSet:
    user_id: str
    candidates: tuple[str, ...]
    real_index: int

    def __post_init__(self):
        if not 0 <= self.real_index < len(self.candidates):
            raise ValueError(
                f"real_index {self.real_index} out of range for {len(self.candidates)} candidates"
            )

    @property
    def real(self) -> str:
        return self.candidates[self.real_index]

    @property
    def k(self) -> int:
        return len(self.candidates)


def build_sweetword_sets(
    generated: Mapping[str, Sequence[str]],
    reals: Mapping[str, str],
    seed: int,
    k: int = DEFAULT_K,
) -> list[SweetwordSet]:
    """Build one sweetword set per user in ``reals``.

    Each user needs at least k generated decoys (a shorter list is a
    failed generation). One decoy is discarded uniformly, the real
    password is inserted at a uniform index. Deterministic under seed;
    users are processed in sorted user_id order.
    """
    rng = random.Random(seed)
    sets = []
    for user_id in sorted(reals):
        decoys = list(generated.get(user_id, ()))
        if len(decoys) < k:
            raise TooFewDecoys(
                f"user {user_id}: got {len(decoys)} decoys, need {k} (failed response)"
            )
        decoys = decoys[:k]
        del decoys[rng.randrange(k)]
        real_index = rng.randrange(k)
        candidates = decoys[:real_index] + [reals[user_id]] + decoys[real_index:]
        sets.append(SweetwordSet(user_id=user_id, candidates=tuple(candidates), real_index=real_index))
    return sets


def save_sweetword_sets(
    sets: Sequence[SweetwordSet],
    path: str | Path,
    answers_path: str | Path | None = None,
) -> None:
    """Write sets as a JSON array.

    With ``answers_path`` the main file is written blind (no real_index)
    and the answer key {user_id: real_index} goes to the second file.
    """
    blind = answers_path is not None
    payload = []
    for s in sets:
        entry: dict = {"user_id": s.user_id, "candidates": list(s.candidates)}
        if not blind:
            entry["real_index"] = s.real_index
        payload.append(entry)
    Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    if blind:
        answers = {s.user_id: s.real_index for s in sets}
        Path(answers_path).write_text(json.dumps(answers, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_sweetword_sets(
    path: str | Path,
    answers_path: str | Path | None = None,
) -> list[SweetwordSet]:
    """Load sets, merging a separate answer key for blind files."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    answers: dict[str, int] = {}
    if answers_path is not None:
        answers = json.loads(Path(answers_path).read_text(encoding="utf-8"))
    sets = []
    for entry in payload:
        user_id = entry["user_id"]
        if "real_index" in entry:
            real_index = int(entry["real_index"])
        elif user_id in answers:
            real_index = int(answers[user_id])
        else:
            raise ValueError(
                f"user {user_id}: real_index absent and no answer key entry (blind file needs --answers)"
            )
        sets.append(
            SweetwordSet(
                user_id=user_id,
                candidates=tuple(str(c) for c in entry["candidates"]),
                real_index=real_index,
            )
        )
    return sets


_UNIFORM_ALPHABET = string.ascii_letters + string.digits + "!$#*?."
_IMITATION_CONSONANTS = "bcdfghjklmnpqrstvwz"
_IMITATION_VOWELS = "aeiou"


def decoy_strings(n: int, seed: int, style: str = "uniform") -> list[str]:
    """Deterministic decoy passwords for experiments.

    "uniform": random strings over letters, digits, and symbols.
    "wordlike": pronounceable syllable runs plus digits, imitating
    human-chosen passwords without copying any corpus word.
    """
    rng = random.Random(seed)
    decoys = []
    if style == "uniform":
        for _ in range(n):
            length = rng.randint(6, 12)
            decoys.append("".join(rng.choice(_UNIFORM_ALPHABET) for _ in range(length)))
    elif style == "wordlike":
        for _ in range(n):
            syllables = rng.randint(2, 4)
            word = "".join(
                rng.choice(_IMITATION_CONSONANTS) + rng.choice(_IMITATION_VOWELS)
                for _ in range(syllables)
            )
            decoys.append(word + str(rng.randint(1, 9999)))
    else:
        raise ValueError(f"unknown decoy style {style!r}")
    return decoys
