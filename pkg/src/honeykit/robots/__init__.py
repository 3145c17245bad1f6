"""Structural handling of robots.txt honeytokens: parsing, feature
extraction, corpus statistics, scoring, and reference-corpus crawling."""

from .parser import Group, RobotsFile, Rule, parse_robots, serialize_robots
from .features import FEATURE_FIELDS, FeatureVector, Wordlist, extract_features, load_default_wordlist
from .stats import DEFAULT_CORPUS_STATS, CorpusStats, FeatureStat, compute_stats, load_stats, save_stats
from .scoring import (
    HUMAN_SCORE_MAX,
    HUMAN_SCORE_MIN,
    RobotsScore,
    combine_scores,
    format_score,
    validate_human_score,
    variance_score,
)
from .crawl import CrawlReport, SiteResult, crawl_corpus, read_corpus, read_sites_file

__all__ = [
    "Group",
    "RobotsFile",
    "Rule",
    "parse_robots",
    "serialize_robots",
    "FEATURE_FIELDS",
    "FeatureVector",
    "Wordlist",
    "extract_features",
    "load_default_wordlist",
    "DEFAULT_CORPUS_STATS",
    "CorpusStats",
    "FeatureStat",
    "compute_stats",
    "load_stats",
    "save_stats",
    "HUMAN_SCORE_MAX",
    "HUMAN_SCORE_MIN",
    "RobotsScore",
    "combine_scores",
    "format_score",
    "validate_human_score",
    "variance_score",
    "CrawlReport",
    "SiteResult",
    "crawl_corpus",
    "read_corpus",
    "read_sites_file",
]
