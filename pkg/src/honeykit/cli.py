"""Command-line surface.

Exit codes: 0 success, 2 usage error, 3 data error, 4 provider error.
Failures print a single machine-parsable line to stderr:
``error: <ErrorType>: <message>``.
"""

from __future__ import annotations

import functools
import json
import sys
import time
from pathlib import Path

import click

from . import demo as demo_mod
from .errors import FixtureMissing, HoneykitError, InsufficientSamples, NotRobotsTxt
from .gateway import (
    FINISH_COMPLETE,
    FINISH_TRUNCATED,
    FixtureStore,
    ProviderConfig,
    classify_response,
    complete,
)
from .honeywords.attack import AttackConfig, left_right_oracle, random_baseline, simulate_attack
from .honeywords.leak import DEFAULT_SCHEMA_MAP, load_leak, synth_leak, write_leak_csv
from .honeywords.model import train_model
from .honeywords.sweep import (
    TABLE_PER_USER_LIMITS,
    TABLE_TOTAL_LIMITS,
    parameter_sweep,
    write_sweep_csv,
)
from .honeywords.sweetwords import load_sweetword_sets
from .prompts import BlockSet, BlockTriple, assemble, enumerate_triples
from .report import block_influence, render_influence_csv, render_top_table, write_top_csv
from .robots.crawl import crawl_corpus, read_corpus, read_sites_file
from .robots.features import Wordlist, extract_features, load_default_wordlist
from .robots.parser import parse_robots
from .robots.scoring import format_score, variance_score
from .robots.stats import DEFAULT_CORPUS_STATS, compute_stats, load_stats, save_stats
from .store import Config, RunRecord, RunStore
from .tokens import (
    QualitativeRating,
    RatingStore,
    VALUE_BY_SYMBOL,
    builtin_token_specs,
    render_rating_matrix,
    validate,
)

TOKEN_CHOICES = click.Choice(list(builtin_token_specs()))


def _fail(error: Exception) -> None:
    code = getattr(error, "exit_code", 3)
    click.echo(f"error: {type(error).__name__}: {error}", err=True)
    sys.exit(code)


def handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HoneykitError as exc:
            _fail(exc)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            _fail(exc)

    return wrapper


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    envvar="HONEYKIT_CONFIG",
    default=None,
    help="Global config JSON (providers, paths, defaults).",
)
@click.pass_context
def main(ctx, config_path):
    """Assemble honeytoken prompts, run them, and evaluate the results."""
    ctx.obj = Config.load(config_path) if config_path else Config()


def _config(ctx) -> Config:
    return ctx.obj if isinstance(ctx.obj, Config) else Config()


def _configured_path(ctx, explicit: str | None, key: str, fallback: str | None = None) -> str | None:
    if explicit:
        return explicit
    return _config(ctx).paths.get(key, fallback)


def _resolve_provider(ctx, name: str, replay: bool) -> ProviderConfig:
    provider = _config(ctx).provider(name)
    if provider is None:
        provider = ProviderConfig(name=name, replay=replay)
    elif replay and not provider.replay:
        provider = ProviderConfig(
            name=provider.name,
            endpoint=provider.endpoint,
            model_id=provider.model_id,
            auth_secret_ref=provider.auth_secret_ref,
            temperature=provider.temperature,
            max_tokens=provider.max_tokens,
            timeout=provider.timeout,
            replay=True,
        )
    return provider


def _resolve_payload(value: str) -> str:
    path = Path(value)
    if path.is_file():
        return path.read_text(encoding="utf-8").rstrip("\n")
    return value


def _load_wordlist(path: str | None) -> Wordlist:
    return Wordlist.from_file(path) if path else load_default_wordlist()


def _load_stats(path: str | None):
    return load_stats(path) if path else DEFAULT_CORPUS_STATS


def _load_blocks(path: str | None) -> BlockSet | None:
    return BlockSet.from_json_file(path) if path else None


def _runs_path(path: str) -> Path:
    runs = Path(path)
    if runs.is_dir():
        return runs / "runs.jsonl"
    return runs


def _score_robots_response(text: str, stats, wordlist) -> tuple[int, float | None]:
    fmt = format_score(text)
    if fmt == 0:
        return fmt, None
    try:
        parsed = parse_robots(text, max_unknown_fraction=1.0)
    except NotRobotsTxt:
        return fmt, None
    return fmt, variance_score(extract_features(parsed, wordlist), stats)


def _execute_run(
    triple: BlockTriple,
    token_type: str,
    payload: str,
    provider: ProviderConfig,
    repeat: int,
    fixtures: FixtureStore | None,
    replay: bool,
    record_fixture: bool,
    stats,
    wordlist,
    blocks: BlockSet | None,
) -> RunRecord | None:
    """Assemble, complete, classify, validate, score. Returns None when a
    replay fixture is missing (nothing happened that is worth storing)."""
    prompt = assemble(triple, token_type, payload, blocks=blocks)
    response = complete(
        prompt.text, provider, fixtures=fixtures, replay=replay or None, record=record_fixture
    )
    if response.finish_reason == "error" and response.detail.startswith("fixture_missing"):
        return None

    response_class = classify_response(response.text, token_type)
    validation = validate(token_type, response.text)
    fmt = var = None
    if token_type == "A" and response.finish_reason in (FINISH_COMPLETE, FINISH_TRUNCATED):
        fmt, var = _score_robots_response(response.text, stats, wordlist)

    run_id = (
        f"{token_type}-g{triple.generator_id}i{triple.input_id}o{triple.output_id}"
        f"-{provider.name}-r{repeat}"
    )
    return RunRecord(
        run_id=run_id,
        timestamp=time.time(),
        triple=triple.as_tuple(),
        token_type=token_type,
        provider=provider.name,
        repeat=repeat,
        prompt_text=prompt.text,
        response_text=response.text,
        finish_reason=response.finish_reason,
        response_class=response_class,
        validation=validation,
        variance_score=var,
        format_score=fmt,
    )


def _parse_triple(value: str) -> BlockTriple:
    parts = value.replace("[", "").replace("]", "").split(",")
    if len(parts) != 3:
        raise click.UsageError(f"--blocks expects g,i,o — got {value!r}")
    try:
        g, i, o = (int(p) for p in parts)
    except ValueError as exc:
        raise click.UsageError(f"--blocks expects integers: {exc}") from None
    return BlockTriple(g, i, o)


# ---------------------------------------------------------------------------
# robots.txt corpus commands
# ---------------------------------------------------------------------------


@main.command()
@click.option("--sites", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--timeout", default=10.0, show_default=True)
@click.option("--parallel", default=8, show_default=True)
@handle_errors
def crawl(sites, out_dir, timeout, parallel):
    """Fetch robots.txt files for every listed site."""
    report = crawl_corpus(read_sites_file(sites), out_dir, timeout=timeout, parallelism=parallel)
    click.echo(f"fetched {report.fetched} failed {report.failed}")


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--wordlist", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_file", required=True, type=click.Path(dir_okay=False))
@handle_errors
def stats(corpus, wordlist, out_file):
    """Compute per-feature corpus statistics from crawled files."""
    words = _load_wordlist(wordlist)
    vectors = []
    skipped = 0
    for name, text in read_corpus(corpus).items():
        try:
            vectors.append(extract_features(parse_robots(text), words))
        except NotRobotsTxt:
            skipped += 1
            click.echo(f"warning: skipping unparseable {name}", err=True)
    if len(vectors) < 2:
        raise InsufficientSamples(f"only {len(vectors)} parseable corpus files")
    result = compute_stats(vectors)
    save_stats(result, out_file)
    click.echo(f"aggregated {result.sample_count} files ({skipped} skipped) -> {out_file}")


# ---------------------------------------------------------------------------
# generation commands
# ---------------------------------------------------------------------------


@main.command()
@click.option("--type", "token_type", required=True, type=TOKEN_CHOICES)
@click.option("--blocks", "blocks_value", required=True, help="Block triple g,i,o (e.g. 1,4,1).")
@click.option("--input", "input_value", required=True, help="Payload string or path to a payload file.")
@click.option("--provider", required=True)
@click.option("--replay", is_flag=True, help="Serve the response from the fixture store.")
@click.option("--record", is_flag=True, help="Record a live response into the fixture store.")
@click.option("--fixtures", default=None, type=click.Path(file_okay=False))
@click.option("--runs", default=None, type=click.Path())
@click.option("--stats", "stats_file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--wordlist", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--block-file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handle_errors
def gen(ctx, token_type, blocks_value, input_value, provider, replay, record, fixtures, runs, stats_file, wordlist, block_file):
    """Assemble one prompt, submit it, classify, validate, and persist."""
    triple = _parse_triple(blocks_value)
    provider_config = _resolve_provider(ctx, provider, replay)
    fixtures_dir = _configured_path(ctx, fixtures, "fixtures", "fixtures")
    store = RunStore(_runs_path(_configured_path(ctx, runs, "runs", "runs.jsonl")))
    blocks = _load_blocks(block_file)

    existing = store.sweep_keys()
    repeat = 0
    while (triple.as_tuple(), token_type, provider_config.name, repeat) in existing:
        repeat += 1

    run = _execute_run(
        triple,
        token_type,
        _resolve_payload(input_value),
        provider_config,
        repeat,
        FixtureStore(fixtures_dir),
        replay or provider_config.replay,
        record,
        _load_stats(_configured_path(ctx, stats_file, "stats")),
        _load_wordlist(_configured_path(ctx, wordlist, "wordlist")),
        blocks,
    )
    if run is None:
        raise FixtureMissing(f"no fixture for {triple} / {provider_config.name}")
    store.append(run)
    click.echo(run.run_id)


@main.command()
@click.option("--type", "token_type", required=True, type=TOKEN_CHOICES)
@click.option("--provider", required=True)
@click.option("--repeat", default=1, show_default=True, help="Runs per triple.")
@click.option("--input", "input_value", default=demo_mod.DEMO_PAYLOAD, show_default=True)
@click.option("--replay", is_flag=True)
@click.option("--record", is_flag=True)
@click.option("--fixtures", default=None, type=click.Path(file_okay=False))
@click.option("--runs", default=None, type=click.Path())
@click.option("--stats", "stats_file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--wordlist", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--block-file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handle_errors
def sweep(ctx, token_type, provider, repeat, input_value, replay, record, fixtures, runs, stats_file, wordlist, block_file):
    """Run all 210 block triples; resumable, skips persisted runs."""
    provider_config = _resolve_provider(ctx, provider, replay)
    fixtures_dir = _configured_path(ctx, fixtures, "fixtures", "fixtures")
    store = RunStore(_runs_path(_configured_path(ctx, runs, "runs", "runs.jsonl")))
    blocks = _load_blocks(block_file)
    payload = _resolve_payload(input_value)
    stats_obj = _load_stats(_configured_path(ctx, stats_file, "stats"))
    words = _load_wordlist(_configured_path(ctx, wordlist, "wordlist"))
    fixture_store = FixtureStore(fixtures_dir)

    existing = store.sweep_keys()
    persisted = skipped = missing = 0
    for triple in enumerate_triples(blocks):
        for index in range(repeat):
            key = (triple.as_tuple(), token_type, provider_config.name, index)
            if key in existing:
                skipped += 1
                continue
            run = _execute_run(
                triple,
                token_type,
                payload,
                provider_config,
                index,
                fixture_store,
                replay or provider_config.replay,
                record,
                stats_obj,
                words,
                blocks,
            )
            if run is None:
                missing += 1
                continue
            store.append(run)
            persisted += 1
    if missing:
        click.echo(f"warning: {missing} fixtures missing", err=True)
    click.echo(f"persisted {persisted} skipped {skipped} missing {missing}")


@main.command("seed-fixtures")
@click.option("--fixtures", required=True, type=click.Path(file_okay=False))
@click.option("--provider", default=demo_mod.DEMO_PROVIDER, show_default=True)
@click.option("--type", "token_type", default="A", show_default=True, type=TOKEN_CHOICES)
@click.option("--input", "input_value", default=demo_mod.DEMO_PAYLOAD, show_default=True)
@click.option("--seed", default=0, show_default=True)
@handle_errors
def seed_fixtures_cmd(fixtures, provider, token_type, input_value, seed):
    """Fill a fixture store with deterministic offline demo responses."""
    count = demo_mod.seed_fixtures(
        FixtureStore(fixtures),
        provider_name=provider,
        token_type=token_type,
        input_payload=input_value,
        seed=seed,
    )
    click.echo(f"seeded {count} fixtures")


# ---------------------------------------------------------------------------
# scoring and rating commands
# ---------------------------------------------------------------------------


@main.command("score-robots")
@click.option("--run", "run_id", required=True)
@click.option("--runs", default=None, type=click.Path())
@click.option("--stats", "stats_file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--wordlist", default=None, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handle_errors
def score_robots(ctx, run_id, runs, stats_file, wordlist):
    """Recompute format and variance scores for a stored run."""
    store = RunStore(_runs_path(_configured_path(ctx, runs, "runs", "runs.jsonl")))
    record = store.get(run_id)
    fmt, var = _score_robots_response(
        record.response_text,
        _load_stats(_configured_path(ctx, stats_file, "stats")),
        _load_wordlist(_configured_path(ctx, wordlist, "wordlist")),
    )
    from dataclasses import replace

    store.update(replace(record, format_score=fmt, variance_score=var))
    var_text = "n/a" if var is None else f"{var:.4f}"
    click.echo(f"format {fmt} variance {var_text}")


@main.command("rate-human")
@click.option("--run", "run_id", required=True)
@click.option("--value", required=True, type=float)
@click.option("--runs", default=None, type=click.Path())
@click.pass_context
@handle_errors
def rate_human(ctx, run_id, value, runs):
    """Record the reviewer's 0-5 score for a run."""
    store = RunStore(_runs_path(_configured_path(ctx, runs, "runs", "runs.jsonl")))
    record = store.record_human_score(run_id, value)
    if record.scores is not None:
        click.echo(f"human {value:g} total {record.scores.total:.4f}")
    else:
        click.echo(f"human {value:g} (variance/format still missing)")


_RATING_CHOICES = click.Choice(sorted(VALUE_BY_SYMBOL) + sorted(set(VALUE_BY_SYMBOL.values())))


def _rating_value(raw: str) -> str:
    return VALUE_BY_SYMBOL.get(raw, raw)


@main.command("rate-qual")
@click.option("--llm", required=True)
@click.option("--type", "token_type", required=True, type=TOKEN_CHOICES)
@click.option("--syntax", required=True, type=_RATING_CHOICES)
@click.option("--credibility", required=True, type=_RATING_CHOICES)
@click.option("--variability", required=True, type=_RATING_CHOICES)
@click.option("--stability", required=True, type=_RATING_CHOICES)
@click.option("--rater", default="")
@click.option("--run-id", "run_ids", multiple=True)
@click.option("--ratings", default="ratings.jsonl", show_default=True, type=click.Path())
@handle_errors
def rate_qual(llm, token_type, syntax, credibility, variability, stability, rater, run_ids, ratings):
    """Record a four-axis qualitative rating (+ o - x or full words)."""
    rating = QualitativeRating(
        syntax=_rating_value(syntax),
        credibility=_rating_value(credibility),
        variability=_rating_value(variability),
        stability=_rating_value(stability),
        rater=rater,
        run_ids=tuple(run_ids),
    )
    RatingStore(ratings).record(llm, token_type, rating)
    click.echo(f"recorded {llm}/{token_type} {' '.join(rating.symbols())}")


# ---------------------------------------------------------------------------
# honeyword commands
# ---------------------------------------------------------------------------


def _training_passwords(path: str) -> list[str]:
    """Passwords from a leak CSV or a plain one-per-line text file."""
    if path.endswith(".csv"):
        return [r.password for r in load_leak(path, DEFAULT_SCHEMA_MAP)]
    return [line for line in Path(path).read_text(encoding="utf-8").splitlines() if line]


@main.command("synth-leak")
@click.option("--n", required=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "out_file", required=True, type=click.Path(dir_okay=False))
@click.option("--pii-fraction", default=0.6, show_default=True, type=float)
@handle_errors
def synth_leak_cmd(n, seed, out_file, pii_fraction):
    """Write a deterministic synthetic leak CSV."""
    write_leak_csv(synth_leak(n, seed, pii_fraction), out_file)
    click.echo(f"wrote {n} records to {out_file}")


@main.command("eval-honeywords")
@click.option("--sweetsets", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--answers", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--training", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--per-user", required=True, type=int)
@click.option("--total", required=True, type=int)
@click.option("--order", default=4, show_default=True, type=int)
@click.option("--smoothing", default=1.0, show_default=True, type=float)
@handle_errors
def eval_honeywords(sweetsets, answers, training, per_user, total, order, smoothing):
    """Simulate the trawling attack over stored sweetword sets."""
    sets = load_sweetword_sets(sweetsets, answers)
    model = train_model(_training_passwords(training), order=order, smoothing=smoothing)
    config = AttackConfig(per_user_limit=per_user, total_fail_limit=total)
    result = simulate_attack(sets, model, config)
    click.echo(f"{'user_id':<20} {'attempts':>8} {'hit':>4} {'rank':>5}")
    for outcome in result.per_user:
        click.echo(
            f"{outcome.user_id:<20} {outcome.attempts_made:>8} "
            f"{'yes' if outcome.hit else 'no':>4} {outcome.rank_of_real:>5}"
        )
    click.echo(f"hits {result.hits}/{len(sets)} failed_attempts {result.failed_attempts_used}")


@main.command()
@click.option("--pairs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--training", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--order", default=4, show_default=True, type=int)
@click.option("--smoothing", default=1.0, show_default=True, type=float)
@handle_errors
def oracle(pairs, training, seed, order, smoothing):
    """Left-or-right oracle over JSON pairs [{"real", "decoy"}, ...]."""
    entries = json.loads(Path(pairs).read_text(encoding="utf-8"))
    pair_list = [(e["real"], e["decoy"]) for e in entries]
    model = train_model(_training_passwords(training), order=order, smoothing=smoothing)
    result = left_right_oracle(pair_list, model, seed=seed)
    click.echo(f"trials {result.trials} successes {result.successes} rate {result.rate:.4f}")


@main.command()
@click.option("--users", required=True, type=int)
@click.option("--k", required=True, type=int)
@click.option("--per-user", required=True, type=int)
@click.option("--total", required=True, type=int)
@click.option("--trials", required=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@handle_errors
def baseline(users, k, per_user, total, trials, seed):
    """Random-guessing baseline under the same budgets."""
    config = AttackConfig(per_user_limit=per_user, total_fail_limit=total)
    result = random_baseline(users, k, config, trials, seed)
    click.echo(f"mean_hits {result.mean_hits:.4f} std {result.std:.4f} trials {result.trials}")


@main.command("attack-sweep")
@click.option("--sweetsets", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--answers", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--training", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--sizes", default="1000,10000", show_default=True, help="Training prefix sizes.")
@click.option("--per-user-limits", default=",".join(map(str, TABLE_PER_USER_LIMITS)), show_default=True)
@click.option("--total-limits", default=",".join(map(str, TABLE_TOTAL_LIMITS)), show_default=True)
@click.option("--order", default=4, show_default=True, type=int)
@click.option("--smoothing", default=1.0, show_default=True, type=float)
@click.option("--out", "out_file", required=True, type=click.Path(dir_okay=False))
@handle_errors
def attack_sweep(sweetsets, answers, training, sizes, per_user_limits, total_limits, order, smoothing, out_file):
    """Sweep budgets × training sizes; write plot-ready CSV."""
    sets = load_sweetword_sets(sweetsets, answers)
    passwords = _training_passwords(training)
    corpora = {}
    for raw in sizes.split(","):
        size = int(raw)
        if size > len(passwords):
            raise ValueError(f"training file has {len(passwords)} passwords, cannot take prefix of {size}")
        corpora[size] = passwords[:size]
    rows = parameter_sweep(
        sets,
        corpora,
        per_user_limits=[int(v) for v in per_user_limits.split(",")],
        total_fail_limits=[int(v) for v in total_limits.split(",")],
        order=order,
        smoothing=smoothing,
    )
    write_sweep_csv(rows, out_file)
    click.echo(f"wrote {len(rows)} rows to {out_file}")


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------


@main.command()
@click.option("--runs", default=None, type=click.Path())
@click.option("--top", "top_k", default=20, show_default=True, type=int)
@click.option("--block-influence", "influence", is_flag=True)
@click.option("--ratings", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_file", default=None, type=click.Path(dir_okay=False))
@click.pass_context
@handle_errors
def report(ctx, runs, top_k, influence, ratings, out_file):
    """Aggregate stored runs into tables (top-k, block influence)."""
    store = RunStore(_runs_path(_configured_path(ctx, runs, "runs", "runs.jsonl")))
    records = list(store.load().values())
    if influence:
        rows = block_influence(records)
        text = render_influence_csv(rows)
        if out_file:
            Path(out_file).write_text(text, encoding="utf-8")
        click.echo(text, nl=False)
    else:
        click.echo(render_top_table(records, top_k), nl=False)
        if out_file:
            write_top_csv(records, top_k, out_file)
    if ratings:
        click.echo(render_rating_matrix(RatingStore(ratings).load()))


if __name__ == "__main__":
    main()
