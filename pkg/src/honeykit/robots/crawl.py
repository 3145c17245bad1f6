"""Polite crawler that collects robots.txt files from a site list.

Each site is fetched once with a timeout, a bounded redirect chain, and
an identifying user agent. Bodies that do not parse as robots.txt are
discarded; failures are classified so the crawl report can explain why a
site contributed nothing.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import requests

from ..errors import NotRobotsTxt
from .parser import parse_robots

DEFAULT_USER_AGENT = "honeykit-crawler/0.1 (+robots.txt research)"
DEFAULT_TIMEOUT = 10.0
DEFAULT_MAX_REDIRECTS = 3
DEFAULT_PARALLELISM = 8

STATUS_OK = "ok"
STATUS_UNREACHABLE = "unreachable"
STATUS_TLS_FAILURE = "tls_failure"
STATUS_NON_200 = "non_200"
STATUS_UNPARSEABLE = "unparseable"


@dataclass
class SiteResult:
    site: str
    status: str
    detail: str = ""
    path: str | None = None


@dataclass
class CrawlReport:
    fetched: int = 0
    failed: int = 0
    sites: list[SiteResult] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "fetched": self.fetched,
            "failed": self.failed,
            "sites": [
                {"site": s.site, "status": s.status, "detail": s.detail, "path": s.path}
                for s in self.sites
            ],
        }


def read_sites_file(path: str | Path) -> list[str]:
    """One site per line; blank lines and # comments ignored."""
    sites = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            sites.append(line)
    return sites


def _robots_url(site: str) -> str:
    base = site if "://" in site else f"https://{site}"
    return base.rstrip("/") + "/robots.txt"


def _file_name(site: str) -> str:
    cleaned = site.split("://", 1)[-1].rstrip("/")
    for ch in "/:?&=":
        cleaned = cleaned.replace(ch, "_")
    return f"{cleaned}.robots.txt"


def _fetch_one(site: str, out_dir: Path, timeout: float, max_redirects: int, user_agent: str) -> SiteResult:
    url = _robots_url(site)
    session = requests.Session()
    session.max_redirects = max_redirects
    try:
        response = session.get(
            url,
            timeout=timeout,
            headers={"User-Agent": user_agent},
            allow_redirects=True,
        )
    except requests.exceptions.SSLError as exc:
        return SiteResult(site=site, status=STATUS_TLS_FAILURE, detail=str(exc))
    except requests.exceptions.RequestException as exc:
        return SiteResult(site=site, status=STATUS_UNREACHABLE, detail=str(exc))
    finally:
        session.close()
    if response.status_code != 200:
        return SiteResult(site=site, status=STATUS_NON_200, detail=str(response.status_code))
    body = response.text
    try:
        parse_robots(body)
    except NotRobotsTxt as exc:
        return SiteResult(site=site, status=STATUS_UNPARSEABLE, detail=str(exc))
    path = out_dir / _file_name(site)
    path.write_text(body, encoding="utf-8")
    return SiteResult(site=site, status=STATUS_OK, path=str(path))


def crawl_corpus(
    sites: Iterable[str],
    out_dir: str | Path,
    timeout: float = DEFAULT_TIMEOUT,
    max_redirects: int = DEFAULT_MAX_REDIRECTS,
    parallelism: int = DEFAULT_PARALLELISM,
    user_agent: str = DEFAULT_USER_AGENT,
) -> CrawlReport:
    """Fetch robots.txt for every site, store parseable bodies in out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sites = list(sites)
    report = CrawlReport()
    if sites:
        with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
            results = list(
                pool.map(
                    lambda s: _fetch_one(s, out_dir, timeout, max_redirects, user_agent),
                    sites,
                )
            )
        report.sites = results
        report.fetched = sum(1 for r in results if r.status == STATUS_OK)
        report.failed = len(results) - report.fetched
    report_path = out_dir / "crawl_report.json"
    report_path.write_text(json.dumps(report.to_json_dict(), indent=2) + "\n", encoding="utf-8")
    return report


def read_corpus(corpus_dir: str | Path) -> dict[str, str]:
    """Load every stored *.robots.txt body from a crawl output directory."""
    corpus = {}
    for path in sorted(Path(corpus_dir).glob("*.robots.txt")):
        corpus[path.name] = path.read_text(encoding="utf-8")
    return corpus
