from __future__ import annotations

import json
import random

import pytest

from honeykit.errors import (
    InsufficientSamples,
    MissingComponent,
    OutOfRange,
    ZeroStd,
)
from honeykit.robots.features import (
    FEATURE_FIELDS,
    FeatureVector,
    Wordlist,
    extract_features,
    load_default_wordlist,
    normalize_segment,
)
from honeykit.robots.parser import parse_robots
from honeykit.robots.scoring import (
    RobotsScore,
    combine_scores,
    format_score,
    validate_human_score,
    variance_score,
)
from honeykit.robots.stats import (
    DEFAULT_CORPUS_STATS,
    CorpusStats,
    FeatureStat,
    compute_stats,
    load_stats,
    save_stats,
)

WORDS = Wordlist(["admin", "backup", "login", "secret"])

# Hand-derived from the built-in corpus statistics: the score of the
# all-zeros vector, sum over features of 0.5 * (1 - mean/std).
ALL_ZEROS_VARIANCE = 2.0889601001188756


def uniform_stats(mean: float = 10.0, std: float = 4.0) -> CorpusStats:
    return CorpusStats(
        features={name: FeatureStat(mean=mean, std=std) for name in FEATURE_FIELDS},
        sample_count=10,
    )


def vector(**overrides) -> FeatureVector:
    values = {name: 10 for name in FEATURE_FIELDS}
    values.update(overrides)
    return FeatureVector(**values)


# --- extraction ---------------------------------------------------------------


def test_extract_counts_per_kind():
    robots = parse_robots(
        "User-agent: *\n"
        "Disallow: /admin/panel\n"
        "Disallow: /backup\n"
        "Allow: /public/img\n"
    )
    features = extract_features(robots, WORDS)
    assert features.allow_entries == 1
    assert features.allow_segments == 2
    assert features.allow_wordlist_hits == 0
    assert features.disallow_entries == 2
    assert features.disallow_segments == 3
    assert features.disallow_wordlist_hits == 2


def test_extract_empty_path_entry_counts_no_segments():
    features = extract_features(parse_robots("User-agent: *\nDisallow:\n"), WORDS)
    assert features.disallow_entries == 1
    assert features.disallow_segments == 0


def test_extract_normalizes_wildcards_and_case():
    features = extract_features(parse_robots("User-agent: *\nDisallow: /Admin*/\n"), WORDS)
    assert features.disallow_wordlist_hits == 1


def test_extract_one_path_many_hits():
    features = extract_features(parse_robots("Disallow: /admin/backup/login\n"), WORDS)
    assert features.disallow_wordlist_hits == 3
    assert features.disallow_segments == 3


def test_normalize_segment():
    assert normalize_segment("Admin*") == "admin"
    assert normalize_segment("backup$") == "backup"
    assert normalize_segment("**") == ""


def test_wordlist_from_file_skips_comments(tmp_path):
    path = tmp_path / "words.txt"
    path.write_text("# header\nadmin\nBackup\n\n", encoding="utf-8")
    words = Wordlist.from_file(path)
    assert "admin" in words
    assert "backup" in words
    assert len(words) == 2


def test_default_wordlist_bundled():
    words = load_default_wordlist()
    assert len(words) > 100
    for token in ("admin", "login", "backup", "wp-admin", "config"):
        assert token in words


def test_feature_vector_accessors():
    v = FeatureVector(1, 2, 3, 4, 5, 6)
    assert v.as_tuple() == (1, 2, 3, 4, 5, 6)
    assert list(v.as_dict()) == list(FEATURE_FIELDS)


# --- variance score -----------------------------------------------------------


def test_variance_at_means_is_three():
    assert variance_score(vector(), uniform_stats()) == pytest.approx(3.0)


def test_variance_all_zeros_frozen_value():
    zeros = FeatureVector(0, 0, 0, 0, 0, 0)
    assert variance_score(zeros, DEFAULT_CORPUS_STATS) == pytest.approx(
        ALL_ZEROS_VARIANCE, abs=1e-12
    )


def test_variance_single_feature_displaced_one_std():
    # 5 features at the mean (0.5 each) + 1 feature at mean+std (0.0)
    score = variance_score(vector(allow_entries=14), uniform_stats())
    assert score == pytest.approx(2.5)


def test_variance_half_std_displacement():
    score = variance_score(vector(allow_entries=12), uniform_stats())
    assert score == pytest.approx(2.5 + 0.25)


def test_variance_clamps_far_outliers_at_zero():
    score = variance_score(vector(allow_entries=10_000), uniform_stats())
    assert score == pytest.approx(2.5)
    all_far = FeatureVector(*(10_000 for _ in FEATURE_FIELDS))
    assert variance_score(all_far, uniform_stats()) == 0.0


def test_variance_zero_std_rejected():
    stats = CorpusStats(
        features={name: FeatureStat(mean=1.0, std=0.0) for name in FEATURE_FIELDS},
        sample_count=2,
    )
    with pytest.raises(ZeroStd):
        variance_score(vector(), stats)


def test_variance_monotone_in_per_feature_distance():
    rng = random.Random(7)
    stats = uniform_stats()
    for _ in range(300):
        base = {name: rng.randint(0, 25) for name in FEATURE_FIELDS}
        name = rng.choice(FEATURE_FIELDS)
        near = dict(base)
        far = dict(base)
        mean = 10
        offset = rng.randint(0, 8)
        extra = rng.randint(1, 8)
        sign = rng.choice((-1, 1))
        near[name] = mean + sign * offset
        far[name] = mean + sign * (offset + extra)
        near_score = variance_score(FeatureVector(**near), stats)
        far_score = variance_score(FeatureVector(**far), stats)
        assert far_score <= near_score + 1e-12


# --- format score ---------------------------------------------------------------


def test_format_score_levels():
    assert format_score("User-agent: *\nDisallow: /a\n") == 2
    assert format_score("sure, here:\nUser-agent: *\nDisallow: /a\n") == 1
    assert format_score("no directives at all") == 0
    assert format_score("") == 0


def test_format_score_comments_do_not_degrade():
    assert format_score("# polite header\nUser-agent: *\nDisallow: /a\n") == 2


# --- human score / combination --------------------------------------------------


def test_validate_human_score_bounds():
    assert validate_human_score(0) == 0.0
    assert validate_human_score(5) == 5.0
    for bad in (-0.1, 5.1, 99):
        with pytest.raises(OutOfRange):
            validate_human_score(bad)


def test_combine_scores_total():
    score = combine_scores(2.5, 2, 4.0)
    assert isinstance(score, RobotsScore)
    assert score.total == pytest.approx(8.5)


def test_combine_scores_names_missing_parts():
    with pytest.raises(MissingComponent) as info:
        combine_scores(None, 2, None)
    message = str(info.value)
    assert "variance" in message
    assert "human" in message


def test_max_total_is_ten():
    assert combine_scores(3.0, 2, 5.0).total == pytest.approx(10.0)


# --- corpus stats ---------------------------------------------------------------


def test_compute_stats_exact_mean_std():
    vectors = [FeatureVector(0, 0, 0, 0, 0, 0), FeatureVector(2, 4, 6, 8, 10, 12)]
    stats = compute_stats(vectors)
    assert stats.sample_count == 2
    assert stats.features["allow_entries"] == FeatureStat(mean=1.0, std=1.0)
    assert stats.features["disallow_segments"].mean == 6.0
    assert stats.features["disallow_segments"].std == 6.0


def test_compute_stats_needs_two_samples():
    with pytest.raises(InsufficientSamples):
        compute_stats([FeatureVector(1, 1, 1, 1, 1, 1)])


def test_stats_save_load_round_trip(tmp_path):
    path = tmp_path / "stats.json"
    save_stats(DEFAULT_CORPUS_STATS, path)
    loaded = load_stats(path)
    assert loaded == DEFAULT_CORPUS_STATS
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["sample_count"] == 846


def test_default_stats_bundled_values():
    features = DEFAULT_CORPUS_STATS.features
    assert features["disallow_entries"].mean == pytest.approx(76.35)
    assert features["disallow_entries"].std == pytest.approx(228.98)
    assert features["allow_entries"].mean == pytest.approx(10.27)
    assert DEFAULT_CORPUS_STATS.sample_count == 846


def test_corpus_stats_requires_all_features():
    with pytest.raises(ValueError):
        CorpusStats(features={"allow_entries": FeatureStat(1.0, 1.0)}, sample_count=3)
