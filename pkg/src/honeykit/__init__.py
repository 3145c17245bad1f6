"""honeykit: prompt-driven honeytoken generation and evaluation.

The package has three layers:

* prompt assembly and token-type specs (`prompts`, `tokens`),
* provider access with record/replay fixtures (`gateway`, `store`),
* quantitative evaluation — statistical scoring for robots.txt honeytokens
  (`robots`) and a simulated guessing attacker for honeywords (`honeywords`).
"""

from __future__ import annotations

from .errors import HoneykitError, ProviderError
from .gateway import (
    ChatResponse,
    FixtureStore,
    ProviderConfig,
    ResponseClass,
    classify_response,
    complete,
)
from .honeywords.attack import (
    AttackConfig,
    AttackResult,
    left_right_oracle,
    random_baseline,
    rank_candidates,
    simulate_attack,
)
from .honeywords.leak import LeakRecord, load_leak, sample_complete, synth_leak
from .honeywords.model import PasswordModel, load_model, log_prob, save_model, train_model
from .honeywords.sweep import parameter_sweep, write_sweep_csv
from .honeywords.sweetwords import (
    SweetwordSet,
    build_sweetword_sets,
    decoy_strings,
    load_sweetword_sets,
    save_sweetword_sets,
)
from .prompts import (
    AssembledPrompt,
    BlockSet,
    BlockTriple,
    assemble,
    builtin_blocks,
    enumerate_triples,
)
from .report import block_influence, render_top_table, top_runs
from .robots.features import FeatureVector, Wordlist, extract_features, load_default_wordlist
from .robots.parser import RobotsFile, parse_robots, serialize_robots
from .robots.scoring import RobotsScore, combine_scores, format_score, variance_score
from .robots.stats import DEFAULT_CORPUS_STATS, CorpusStats, compute_stats
from .store import Config, RunRecord, RunStore
from .tokens import (
    QualitativeRating,
    RatingStore,
    TokenTypeSpec,
    ValidationResult,
    builtin_token_specs,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AssembledPrompt",
    "AttackConfig",
    "AttackResult",
    "BlockSet",
    "BlockTriple",
    "ChatResponse",
    "Config",
    "CorpusStats",
    "DEFAULT_CORPUS_STATS",
    "FeatureVector",
    "FixtureStore",
    "HoneykitError",
    "LeakRecord",
    "PasswordModel",
    "ProviderConfig",
    "ProviderError",
    "QualitativeRating",
    "RatingStore",
    "ResponseClass",
    "RobotsFile",
    "RobotsScore",
    "RunRecord",
    "RunStore",
    "SweetwordSet",
    "TokenTypeSpec",
    "ValidationResult",
    "Wordlist",
    "assemble",
    "block_influence",
    "build_sweetword_sets",
    "builtin_blocks",
    "builtin_token_specs",
    "classify_response",
    "combine_scores",
    "complete",
    "compute_stats",
    "decoy_strings",
    "enumerate_triples",
    "extract_features",
    "format_score",
    "left_right_oracle",
    "load_default_wordlist",
    "load_leak",
    "load_model",
    "load_sweetword_sets",
    "log_prob",
    "parameter_sweep",
    "parse_robots",
    "random_baseline",
    "rank_candidates",
    "render_top_table",
    "sample_complete",
    "save_model",
    "save_sweetword_sets",
    "serialize_robots",
    "simulate_attack",
    "synth_leak",
    "top_runs",
    "train_model",
    "validate",
    "variance_score",
    "write_sweep_csv",
]
