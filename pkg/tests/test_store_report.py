from __future__ import annotations

import json

import pytest

from honeykit.errors import (
    MissingComponent,
    NoScoredRuns,
    OutOfRange,
    UnknownRun,
)
from honeykit.gateway import ProviderConfig, ResponseClass
from honeykit.report import (
    block_influence,
    human_score_level,
    render_influence_csv,
    render_top_table,
    top_runs,
    write_top_csv,
)
from honeykit.store import Config, RunRecord, RunStore
from honeykit.tokens import validate


def make_record(
    run_id: str,
    triple=(1, 4, 1),
    variance=None,
    fmt=None,
    human=None,
    provider="demo",
    response_text="User-agent: *\nDisallow: /a\n",
) -> RunRecord:
    return RunRecord(
        run_id=run_id,
        timestamp=1_700_000_000.0,
        triple=tuple(triple),
        token_type="A",
        provider=provider,
        repeat=0,
        prompt_text="prompt",
        response_text=response_text,
        finish_reason="complete",
        response_class=ResponseClass(kind="ok"),
        validation=validate("A", response_text),
        variance_score=variance,
        format_score=fmt,
        human_score=human,
    )


# --- run store --------------------------------------------------------------


def test_round_trip_with_nested_parts(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    record = make_record("r1", variance=2.5, fmt=2, human=4.0)
    store.append(record)
    assert store.get("r1") == record


def test_append_only_last_version_wins(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(make_record("r1"))
    store.append(make_record("r2"))
    store.record_human_score("r1", 3.5)
    assert store.get("r1").human_score == 3.5
    assert len(store.load()) == 2
    # history is preserved on disk
    lines = (tmp_path / "runs.jsonl").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3


def test_unknown_run_rejected(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    with pytest.raises(UnknownRun):
        store.get("ghost")
    with pytest.raises(UnknownRun):
        store.record_human_score("ghost", 1.0)


def test_human_score_validated_on_write(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(make_record("r1"))
    with pytest.raises(OutOfRange):
        store.record_human_score("r1", 5.5)
    with pytest.raises(OutOfRange):
        store.record_human_score("r1", -1)


def test_total_score_requires_all_components(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(make_record("r1", variance=2.0, fmt=2))
    with pytest.raises(MissingComponent) as info:
        store.total_score("r1")
    assert "human" in str(info.value)
    store.record_human_score("r1", 4.0)
    assert store.total_score("r1").total == pytest.approx(8.0)


def test_sweep_keys(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(make_record("r1", triple=(0, 0, 0)))
    store.append(make_record("r2", triple=(1, 2, 3)))
    keys = store.sweep_keys()
    assert ((0, 0, 0), "A", "demo", 0) in keys
    assert ((1, 2, 3), "A", "demo", 0) in keys


def test_no_credential_material_in_persisted_records(tmp_path, monkeypatch):
    secret = "super-secret-value-8872"
    monkeypatch.setenv("HK_TEST_SECRET", secret)
    provider = ProviderConfig(
        name="live", endpoint="https://x.test", auth_secret_ref="HK_TEST_SECRET"
    )
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(make_record("r1", provider=provider.name))
    raw = (tmp_path / "runs.jsonl").read_text(encoding="utf-8")
    assert secret not in raw
    assert "HK_TEST_SECRET" not in raw  # even the ref stays out of run records


def test_run_record_json_stability(tmp_path):
    record = make_record("r1", variance=1.25, fmt=1, human=2.0)
    payload = record.to_json_dict()
    assert RunRecord.from_json_dict(json.loads(json.dumps(payload))) == record


# --- config -----------------------------------------------------------------


def test_config_load_and_provider(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps(
            {
                "providers": [
                    {"name": "main", "endpoint": "https://api.test/v1", "model_id": "m"}
                ],
                "paths": {"runs": "store/runs.jsonl"},
                "defaults": {"repeat": 3},
            }
        ),
        encoding="utf-8",
    )
    config = Config.load(path)
    provider = config.provider("main")
    assert provider is not None
    assert provider.endpoint == "https://api.test/v1"
    assert config.provider("ghost") is None
    assert config.paths["runs"] == "store/runs.jsonl"
    assert config.defaults["repeat"] == 3


# --- report: top runs ---------------------------------------------------------


def test_top_runs_orders_by_total_then_ties(tmp_path):
    records = [
        make_record("low", variance=1.0, fmt=1, human=1.0),
        make_record("high", variance=2.71, fmt=2, human=4.0),
        make_record("mid", variance=2.0, fmt=2, human=2.0),
    ]
    ranked = top_runs(records, 2)
    assert [r.run_id for r in ranked] == ["high", "mid"]


def test_top_runs_partial_scores_count_missing_as_zero():
    records = [
        make_record("unrated", variance=2.9, fmt=2),  # total 4.9 without human
        make_record("rated", variance=1.0, fmt=1, human=1.0),  # 3.0
    ]
    ranked = top_runs(records, 5)
    assert [r.run_id for r in ranked] == ["unrated", "rated"]


def test_top_runs_requires_some_scores():
    with pytest.raises(NoScoredRuns):
        top_runs([make_record("bare")], 3)


def test_render_top_table_shape():
    records = [make_record("r1", variance=2.5, fmt=2, human=3.0)]
    text = render_top_table(records, 5)
    lines = text.splitlines()
    assert lines[0].split() == [
        "rank", "triple", "type", "provider", "variance", "format", "human", "total", "run_id",
    ]
    assert "[1,4,1]" in lines[2]
    assert "7.50" in lines[2]
    unrated = render_top_table([make_record("r2", variance=2.5, fmt=2)], 5)
    assert " - " in unrated.splitlines()[2]  # missing human renders as a dash


def test_write_top_csv(tmp_path):
    records = [make_record("r1", variance=2.5, fmt=2, human=3.0)]
    path = tmp_path / "top.csv"
    write_top_csv(records, 5, path)
    content = path.read_text(encoding="utf-8")
    assert content.splitlines()[0] == (
        "rank,triple,token_type,provider,variance_score,format_score,human_score,total,run_id"
    )
    assert "7.5000" in content
    assert "1-4-1" in content  # triple is dash-joined in the CSV


# --- report: block influence ----------------------------------------------------


def test_human_score_level_bins():
    assert human_score_level(0.0) == 0
    assert human_score_level(1.0) == 0
    assert human_score_level(1.01) == 1
    assert human_score_level(3.0) == 1
    assert human_score_level(3.01) == 2
    assert human_score_level(5.0) == 2


def test_block_influence_fractions_sum_to_one():
    records = [
        make_record("a", triple=(0, 0, 0), fmt=2),
        make_record("b", triple=(0, 1, 0), fmt=1),
        make_record("c", triple=(0, 2, 1), fmt=2),
        make_record("d", triple=(1, 0, 1), fmt=0, human=4.0),
    ]
    rows = block_influence(records)
    sums: dict[tuple, float] = {}
    for row in rows:
        key = (row.category, row.block_id, row.family)
        sums[key] = sums.get(key, 0.0) + row.fraction
    for key, total in sums.items():
        assert total == pytest.approx(1.0), key

    generator_zero_fmt = {
        row.level: row.fraction
        for row in rows
        if row.category == "generator" and row.block_id == 0 and row.family == "format"
    }
    assert generator_zero_fmt[2] == pytest.approx(2 / 3)
    assert generator_zero_fmt[1] == pytest.approx(1 / 3)
    assert generator_zero_fmt[0] == 0.0


def test_block_influence_requires_scores():
    with pytest.raises(NoScoredRuns):
        block_influence([make_record("bare")])


def test_block_influence_human_binning():
    records = [
        make_record("a", triple=(0, 0, 0), human=0.5),
        make_record("b", triple=(0, 0, 0), human=2.0),
        make_record("c", triple=(0, 0, 0), human=5.0),
    ]
    rows = [r for r in block_influence(records) if r.family == "human" and r.category == "generator"]
    by_level = {row.level: row.fraction for row in rows}
    assert by_level == {0: pytest.approx(1 / 3), 1: pytest.approx(1 / 3), 2: pytest.approx(1 / 3)}


def test_influence_csv_renders_all_rows():
    records = [
        make_record("a", triple=(0, 0, 0), fmt=2),
        make_record("b", triple=(1, 1, 1), fmt=1),
    ]
    text = render_influence_csv(block_influence(records))
    lines = text.splitlines()
    assert lines[0] == "category,block_id,family,level,fraction,runs"
    # 2 generator ids + 2 input ids + 2 output ids, 3 format levels each
    assert len(lines) == 1 + 18
