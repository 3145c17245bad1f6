"""Deterministic offline demo responses.

Synthesizes plausible robots.txt responses for every prompt triple and
stores them as replay fixtures, so the full generate/classify/score
pipeline can run end to end with zero network access. Responses are a
pure function of (seed, triple): some come back clean, some wrapped in
chat prose, a few as junk, echoing the spread seen with real chat
models — in particular the terse "Quick answer." output block degrades
format more often.
"""

from __future__ import annotations

import random
from typing import Iterable

from .gateway import FixtureStore
from .prompts import BlockSet, BlockTriple, assemble, enumerate_triples

DEMO_PROVIDER = "demo"
DEMO_PAYLOAD = "animal food web shop"

_PATH_VOCAB = (
    "admin", "login", "backup", "private", "account", "cart", "checkout",
    "api", "internal", "secret", "config", "wp-admin", "staging", "tmp",
    "uploads", "invoices", "users", "orders", "payments", "archive",
    "feed", "search", "products", "category", "media", "static", "old",
    "dev", "database", "logs",
)
_AGENTS = ("*", "Googlebot", "Bingbot", "AhrefsBot")
_PROSE_OPENERS = (
    "Sure! Here is a robots.txt file for your shop:",
    "Here is the robots.txt you asked for:",
    "Certainly, the following robots.txt should work well:",
)
_PROSE_CLOSERS = (
    "Let me know if you need more paths.",
    "Hope this helps!",
)
_JUNK_BODIES = (
    "A robots.txt file tells crawlers which paths they may visit. "
    "It usually lists the areas of a site that should stay hidden.",
    "robots exclusion files are plain text documents placed at the web root. "
    "They describe crawl rules for well-behaved bots.",
)


def _random_path(rng: random.Random) -> str:
    depth = rng.choice((1, 1, 1, 2, 2, 3))
    segments = [rng.choice(_PATH_VOCAB) for _ in range(depth)]
    path = "/" + "/".join(segments)
    if rng.random() < 0.25:
        path += "/"
    if rng.random() < 0.1:
        path += "*"
    return path


def _robots_body(rng: random.Random) -> str:
    lines = []
    groups = rng.choice((1, 1, 1, 2))
    for _ in range(groups):
        lines.append(f"User-agent: {rng.choice(_AGENTS)}")
        for _ in range(rng.randint(3, 14)):
            kind = "Disallow" if rng.random() < 0.78 else "Allow"
            lines.append(f"{kind}: {_random_path(rng)}")
        if rng.random() < 0.2:
            lines.append(f"Crawl-delay: {rng.choice((1, 2, 5, 10))}")
        lines.append("")
    if rng.random() < 0.3:
        lines.append("Sitemap: https://shop.example/sitemap.xml")
    return "\n".join(lines).strip() + "\n"


def demo_robots_response(triple: BlockTriple | tuple[int, int, int], seed: int = 0) -> str:
    """Deterministic pseudo-LLM robots.txt response for one triple."""
    if isinstance(triple, BlockTriple):
        triple = triple.as_tuple()
    generator_id, input_id, output_id = triple
    rng = random.Random(f"{seed}:{generator_id}:{input_id}:{output_id}")
    roll = rng.random()
    # The terse output block (id 2, "Quick answer.") invites chatter.
    prose_chance = 0.55 if output_id == 2 else 0.18
    junk_chance = 0.05
    if roll < junk_chance:
        return rng.choice(_JUNK_BODIES)
    body = _robots_body(rng)
    if roll < junk_chance + prose_chance:
        parts = [rng.choice(_PROSE_OPENERS), "", body.rstrip()]
        if rng.random() < 0.5:
            parts += ["", rng.choice(_PROSE_CLOSERS)]
        return "\n".join(parts)
    return body


def seed_fixtures(
    fixtures: FixtureStore,
    provider_name: str = DEMO_PROVIDER,
    token_type: str = "A",
    input_payload: str = DEMO_PAYLOAD,
    seed: int = 0,
    blocks: BlockSet | None = None,
    triples: Iterable[BlockTriple] | None = None,
) -> int:
    """Record one demo fixture per triple; returns the fixture count.

    Only robots.txt (type A) demo responses are synthesized; other types
    need real recorded fixtures.
    """
    if token_type != "A":
        raise ValueError("demo fixtures are only available for token type A (robots.txt)")
    count = 0
    for triple in triples if triples is not None else enumerate_triples(blocks):
        prompt = assemble(triple, token_type, input_payload, blocks=blocks)
        response = demo_robots_response(triple, seed=seed)
        fixtures.store_text(provider_name, prompt.text, response)
        count += 1
    return count
