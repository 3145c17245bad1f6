from __future__ import annotations

import csv
import random

import pytest

from honeykit.errors import TooFewDecoys
from honeykit.honeywords.sweep import (
    SWEEP_COLUMNS,
    SweepRow,
    parameter_sweep,
    write_sweep_csv,
)
from honeykit.honeywords.sweetwords import (
    SweetwordSet,
    build_sweetword_sets,
    decoy_strings,
    load_sweetword_sets,
    save_sweetword_sets,
)
from honeykit.honeywords.leak import synth_leak


# --- sweetword sets -------------------------------------------------------------


def test_build_sets_keeps_k_and_embeds_real():
    generated = {"u1": [f"d{i}" for i in range(20)], "u2": [f"e{i}" for i in range(25)]}
    reals = {"u1": "real-one", "u2": "real-two"}
    sets = build_sweetword_sets(generated, reals, seed=3)
    assert [s.user_id for s in sets] == ["u1", "u2"]
    for s, real in zip(sets, ("real-one", "real-two")):
        assert s.k == 20
        assert s.real == real
        assert s.candidates.count(real) == 1
        assert s.candidates[s.real_index] == real


def test_build_sets_deterministic():
    generated = {"u": [f"d{i}" for i in range(20)]}
    reals = {"u": "real"}
    assert build_sweetword_sets(generated, reals, seed=5) == build_sweetword_sets(
        generated, reals, seed=5
    )
    shifted = build_sweetword_sets(generated, reals, seed=6)
    assert shifted != build_sweetword_sets(generated, reals, seed=5)


def test_build_sets_requires_twenty_decoys():
    with pytest.raises(TooFewDecoys):
        build_sweetword_sets({"u": ["only", "three", "decoys"]}, {"u": "real"}, seed=0)


def test_real_index_spread_is_roughly_uniform():
    generated = {f"u{i:03d}": [f"d{i}-{j}" for j in range(20)] for i in range(400)}
    reals = {u: f"real-{u}" for u in generated}
    sets = build_sweetword_sets(generated, reals, seed=11)
    positions = [s.real_index for s in sets]
    assert min(positions) == 0
    assert max(positions) == 19
    # no position should hog more than 3x its fair share
    for p in range(20):
        assert positions.count(p) < 3 * len(sets) / 20


def test_save_load_round_trip(tmp_path):
    sets = build_sweetword_sets(
        {"u": [f"d{i}" for i in range(20)]}, {"u": "real"}, seed=1
    )
    path = tmp_path / "sets.json"
    save_sweetword_sets(sets, path)
    assert load_sweetword_sets(path) == sets


def test_blind_save_requires_answer_key(tmp_path):
    sets = build_sweetword_sets(
        {"u": [f"d{i}" for i in range(20)]}, {"u": "real"}, seed=1
    )
    blind = tmp_path / "blind.json"
    answers = tmp_path / "answers.json"
    save_sweetword_sets(sets, blind, answers_path=answers)
    assert "real_index" not in blind.read_text(encoding="utf-8")
    assert load_sweetword_sets(blind, answers) == sets
    with pytest.raises(ValueError):
        load_sweetword_sets(blind)


def test_decoy_styles():
    uniform = decoy_strings(50, seed=2, style="uniform")
    wordlike = decoy_strings(50, seed=2, style="wordlike")
    assert len(uniform) == len(wordlike) == 50
    assert all(6 <= len(d) <= 12 for d in uniform)
    assert all(d[-1].isdigit() for d in wordlike)
    assert decoy_strings(50, seed=2) == uniform
    with pytest.raises(ValueError):
        decoy_strings(5, seed=0, style="nope")


# --- parameter sweep -------------------------------------------------------------


def toy_sets(users: int = 30, seed: int = 40) -> list[SweetwordSet]:
    rng = random.Random(seed)
    victims = synth_leak(users, seed=seed)
    sets = []
    pool = decoy_strings(users * 25, seed=seed + 1, style="wordlike")
    for i, record in enumerate(victims):
        decoys = pool[i * 25 : i * 25 + 20]
        index = rng.randrange(20)
        candidates = decoys[:index] + [record.password] + decoys[index : 19]
        sets.append(SweetwordSet(record.username, tuple(candidates), index))
    return sets


def test_sweep_produces_full_grid():
    sets = toy_sets()
    corpus = {500: [r.password for r in synth_leak(500, seed=90)]}
    rows = parameter_sweep(sets, corpus, per_user_limits=(1, 3), total_fail_limits=(10, 50))
    assert len(rows) == 4
    keys = {(r.training_size, r.per_user_limit, r.total_fail_limit) for r in rows}
    assert keys == {(500, 1, 10), (500, 1, 50), (500, 3, 10), (500, 3, 50)}
    for row in rows:
        assert 0 <= row.hits <= len(sets)
        assert row.failed_attempts_used <= row.total_fail_limit


def test_sweep_monotone_in_budgets():
    sets = toy_sets(users=60, seed=41)
    corpus = {800: [r.password for r in synth_leak(800, seed=91)]}
    rows = parameter_sweep(
        sets, corpus, per_user_limits=(1, 3, 5, 10), total_fail_limits=(25, 50, 100, 200)
    )
    hits = {(r.per_user_limit, r.total_fail_limit): r.hits for r in rows}
    for tu in (1, 3, 5, 10):
        for lo, hi in [(25, 50), (50, 100), (100, 200)]:
            assert hits[(tu, lo)] <= hits[(tu, hi)]
    for tf in (25, 50, 100, 200):
        for lo, hi in [(1, 3), (3, 5), (5, 10)]:
            assert hits[(lo, tf)] <= hits[(hi, tf)]


def test_sweep_csv_round_trip(tmp_path):
    rows = [
        SweepRow(1000, 3, 100, hits=12, failed_attempts_used=88),
        SweepRow(1000, 10, 100, hits=20, failed_attempts_used=100),
    ]
    path = tmp_path / "sweep.csv"
    write_sweep_csv(rows, path)
    with path.open() as handle:
        parsed = list(csv.DictReader(handle))
    assert list(parsed[0]) == list(SWEEP_COLUMNS)
    assert parsed[0]["hits"] == "12"
    assert parsed[1]["per_user_limit"] == "10"
