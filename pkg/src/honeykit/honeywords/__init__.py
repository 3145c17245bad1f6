"""Honeyword construction and evaluation: leak ingestion, sweetword
sets, an n-gram attacker model, trawling attack simulation, the
left-or-right oracle, random baselines, and parameter sweeps."""

from .leak import (
    FIELD_NAMES,
    DEFAULT_SCHEMA_MAP,
    LeakRecord,
    load_leak,
    sample_complete,
    synth_leak,
    synth_passwords,
    write_leak_csv,
)
from .model import PasswordModel, load_model, log_prob, save_model, train_model
from .sweetwords import (
    SweetwordSet,
    build_sweetword_sets,
    decoy_strings,
    load_sweetword_sets,
    save_sweetword_sets,
)
from .attack import (
    AttackConfig,
    AttackResult,
    BaselineResult,
    OracleResult,
    UserOutcome,
    left_right_oracle,
    random_baseline,
    rank_candidates,
    run_schedule,
    simulate_attack,
)
from .sweep import (
    TABLE_PER_USER_LIMITS,
    TABLE_TOTAL_LIMITS,
    TABLE_TRAINING_SIZES,
    SweepRow,
    parameter_sweep,
    write_sweep_csv,
)

__all__ = [
    "FIELD_NAMES",
    "DEFAULT_SCHEMA_MAP",
    "LeakRecord",
    "load_leak",
    "sample_complete",
    "synth_leak",
    "synth_passwords",
    "write_leak_csv",
    "PasswordModel",
    "load_model",
    "log_prob",
    "save_model",
    "train_model",
    "SweetwordSet",
    "build_sweetword_sets",
    "decoy_strings",
    "load_sweetword_sets",
    "save_sweetword_sets",
    "AttackConfig",
    "AttackResult",
    "BaselineResult",
    "OracleResult",
    "UserOutcome",
    "left_right_oracle",
    "random_baseline",
    "rank_candidates",
    "run_schedule",
    "simulate_attack",
    "TABLE_PER_USER_LIMITS",
    "TABLE_TOTAL_LIMITS",
    "TABLE_TRAINING_SIZES",
    "SweepRow",
    "parameter_sweep",
    "write_sweep_csv",
]
