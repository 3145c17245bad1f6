from __future__ import annotations

import socket

import pytest
import requests


GOOD_ROBOTS = """User-agent: *
Disallow: /admin/
Disallow: /backup/old
Allow: /public
Crawl-delay: 2

User-agent: BadBot
Disallow: /

Sitemap: https://example.com/sitemap.xml
"""


def make_pairs_text(count: int, separator: str = ": ") -> str:
    """A plausible type-B response with `count` username/password lines."""
    return "\n".join(f"user{i:02d}{separator}Pass{i:02d}!x" for i in range(count))


@pytest.fixture
def no_network(monkeypatch):
    """Make any socket connection or requests call blow up loudly."""

    def _refuse(*args, **kwargs):
        raise AssertionError("network access attempted during offline test")

    monkeypatch.setattr(socket.socket, "connect", _refuse)
    monkeypatch.setattr(requests, "post", _refuse, raising=False)
    monkeypatch.setattr(requests.Session, "post", _refuse)
    monkeypatch.setattr(requests.Session, "request", _refuse)
