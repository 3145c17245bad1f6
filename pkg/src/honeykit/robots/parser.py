"""Tolerant structural parser for robots.txt files.

The parser recognises the five directives that matter for feature
extraction (User-agent, Allow, Disallow, Sitemap, Crawl-delay), groups
rules under the preceding User-agent lines, and tolerates a configurable
fraction of unknown lines so that slightly noisy LLM output still parses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotRobotsTxt

KNOWN_DIRECTIVES = ("user-agent", "allow", "disallow", "sitemap", "crawl-delay")


@dataclass
class Rule:
    """A single Allow or Disallow line; ``kind`` is "allow" or "disallow"."""

    kind: str
    path: str


@dataclass
class Group:
    """Rules that apply to one set of user agents.

    A group with an empty ``user_agents`` list models rules that appeared
    before any User-agent line.
    """

    user_agents: list[str] = field(default_factory=list)
    rules: list[Rule] = field(default_factory=list)
    crawl_delays: list[float] = field(default_factory=list)


@dataclass
class RobotsFile:
    """Parsed robots.txt: ordered groups plus file-level sitemap URLs.

    ``comment_lines`` counts lines that carried a ``#`` comment and
    ``unknown_lines`` counts non-blank lines the parser did not recognise.
    """

    groups: list[Group] = field(default_factory=list)
    sitemaps: list[str] = field(default_factory=list)
    comment_lines: int = 0
    unknown_lines: int = 0


def classify_line(line: str) -> tuple[str, str, str]:
    """Classify one comment-stripped line.

    Returns ``(kind, name, value)`` where kind is "blank", "directive" or
    "unknown". Directive names are lowercased; values keep their case.
    """
    stripped = line.strip()
    if not stripped:
        return ("blank", "", "")
    if ":" not in stripped:
        return ("unknown", "", stripped)
    name, _, value = stripped.partition(":")
    name = name.strip().lower()
    value = value.strip()
    if name not in KNOWN_DIRECTIVES:
        return ("unknown", "", stripped)
    if name == "crawl-delay":
        try:
            float(value)
        except ValueError:
            return ("unknown", "", stripped)
    return ("directive", name, value)


def scan_lines(text: str) -> tuple[list[tuple[str, str, str]], int]:
    """Comment-strip and classify every line; returns (classified, comment_lines)."""
    classified = []
    comments = 0
    for raw in text.splitlines():
        if "#" in raw:
            comments += 1
            raw = raw[: raw.index("#")]
        classified.append(classify_line(raw))
    return classified, comments


def parse_robots(text: str, max_unknown_fraction: float = 0.5) -> RobotsFile:
    """Parse robots.txt text into a RobotsFile.

    Raises NotRobotsTxt when no recognised directive is present or when
    more than ``max_unknown_fraction`` of the non-blank lines are unknown.
    """
    classified, comments = scan_lines(text)
    robots = RobotsFile(comment_lines=comments)
    current: Group | None = None
    recognized = 0

    for kind, name, value in classified:
        if kind == "blank":
            continue
        if kind == "unknown":
            robots.unknown_lines += 1
            continue
        recognized += 1
        if name == "sitemap":
            robots.sitemaps.append(value)
            continue
        if name == "user-agent":
            # Adjacent User-agent lines share one group; a User-agent after
            # rules or delays starts a fresh group.
            if current is None or current.rules or current.crawl_delays:
                current = Group()
                robots.groups.append(current)
            current.user_agents.append(value)
            continue
        if current is None:
            current = Group()
            robots.groups.append(current)
        if name == "crawl-delay":
            current.crawl_delays.append(float(value))
        else:
            current.rules.append(Rule(kind=name, path=value))

    if recognized == 0:
        raise NotRobotsTxt("no recognised robots.txt directives found")
    total = recognized + robots.unknown_lines
    if robots.unknown_lines / total > max_unknown_fraction:
        raise NotRobotsTxt(
            f"{robots.unknown_lines} of {total} content lines unrecognised"
        )
    return robots


def serialize_robots(robots: RobotsFile) -> str:
    """Render a RobotsFile back to text.

    Serialisation drops comments and unknown lines, so
    parse(serialize(parse(s))) is a fixed point of parse-then-serialize.
    """
    blocks = []
    for group in robots.groups:
        lines = [f"User-agent: {agent}" for agent in group.user_agents]
        for rule in group.rules:
            lines.append(f"{rule.kind.capitalize()}: {rule.path}".rstrip())
        for delay in group.crawl_delays:
            lines.append(f"Crawl-delay: {delay:g}")
        if lines:
            blocks.append("\n".join(lines))
    for url in robots.sitemaps:
        blocks.append(f"Sitemap: {url}")
    return "\n\n".join(blocks) + ("\n" if blocks else "")
