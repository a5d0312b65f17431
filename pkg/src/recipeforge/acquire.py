"""Focused crawler: BFS over a bounded-depth link tree, PDFs to disk.

The frontier is a FIFO queue with a visited set, which covers the same
URLs a depth-bounded link tree would and terminates on any finite graph.
HTTP transport and citation resolution are injectable so the whole module
tests offline.
"""

from __future__ import annotations

import hashlib
import html.parser
import logging
import re
import time
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol
from urllib.parse import urldefrag, urljoin, urlparse

logger = logging.getLogger(__name__)

PDF_MAGIC = b"%PDF-"

DOI_RE = re.compile(r"\b10\.\d{4,9}/\S+\b")


@dataclass(frozen=True)
class CrawlConfig:
    seeds: list[str]
    max_depth: int
    output_dir: Path
    politeness_delay_ms: int = 0
    max_docs: int = 10_000
    allowed_hosts: frozenset[str] | None = None

    def __post_init__(self) -> None:
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.politeness_delay_ms < 0:
            raise ValueError("politeness_delay_ms must be >= 0")
        if self.max_docs < 1:
            raise ValueError("max_docs must be positive")
        for seed in self.seeds:
            parsed = urlparse(seed)
            if not parsed.scheme or not parsed.netloc:
                raise ValueError(f"seed is not an absolute URL: {seed!r}")


@dataclass(frozen=True)
class FrontierNode:
    url: str
    depth: int
    parent: str | None = None
    kind: str = "page"  # "page" | "pdf"


@dataclass
class FetchResult:
    url: str
    status: int
    headers: dict[str, str]
    body: bytes

    def content_type(self) -> str:
        for key, value in self.headers.items():
            if key.lower() == "content-type":
                return value.lower()
        return ""


class Fetcher(Protocol):
    def fetch(self, url: str) -> FetchResult: ...


class RequestsFetcher:
    """Default transport over the requests library."""

    def __init__(self, timeout: float = 20.0, user_agent: str = "recipeforge-crawler/0.1") -> None:
        self.timeout = timeout
        self.headers = {"User-Agent": user_agent}

    def fetch(self, url: str) -> FetchResult:
        import requests

        resp = requests.get(url, timeout=self.timeout, headers=self.headers)
        return FetchResult(
            url=url, status=resp.status_code, headers=dict(resp.headers), body=resp.content
        )


@dataclass
class CrawlReport:
    pages_visited: int = 0
    pdfs_downloaded: int = 0
    errors: int = 0
    fetch_log: list[tuple[str, float]] = field(default_factory=list)  # (url, monotonic time)
    stored: dict[str, Path] = field(default_factory=dict)  # url -> file


def is_pdf(headers: dict[str, str], body_prefix: bytes) -> bool:
    """PDF iff the content-type says so or the body opens with the magic."""
    content_type = ""
    for key, value in headers.items():
        if key.lower() == "content-type":
            content_type = value.lower()
    if "application/pdf" in content_type:
        return True
    return body_prefix[:5] == PDF_MAGIC


def looks_like_pdf_url(url: str) -> bool:
    return urlparse(url).path.lower().endswith(".pdf")


class _LinkExtractor(html.parser.HTMLParser):
    def __init__(self) -> None:
        super().__init__()
        self.links: list[str] = []

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag == "a":
            for name, value in attrs:
                if name == "href" and value:
                    self.links.append(value)


def extract_links(base_url: str, html_text: str) -> list[str]:
    parser = _LinkExtractor()
    parser.feed(html_text)
    out = []
    seen = set()
    for href in parser.links:
        absolute = urldefrag(urljoin(base_url, href)).url
        if urlparse(absolute).scheme in ("http", "https") and absolute not in seen:
            seen.add(absolute)
            out.append(absolute)
    return out


class _PolitenessGate:
    """Serializes fetches per host with a minimum gap between them."""

    def __init__(self, delay_ms: int, clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep) -> None:
        self.delay = delay_ms / 1000.0
        self.clock = clock
        self.sleep = sleep
        self.last: dict[str, float] = {}

    def wait(self, host: str) -> float:
        """Block until the host may be hit again; returns the fetch stamp.

        The stamp recorded here is the reference for the next wait, so
        consecutive same-host stamps are separated by at least the delay.
        """
        if self.delay > 0:
            previous = self.last.get(host)
            if previous is not None:
                while True:
                    remaining = self.delay - (self.clock() - previous)
                    if remaining <= 0:
                        break
                    self.sleep(remaining)
        stamp = self.clock()
        self.last[host] = stamp
        return stamp


def crawl(config: CrawlConfig, fetcher: Fetcher | None = None) -> CrawlReport:
    """BFS from the seeds; store every in-depth PDF exactly once.

    Files are named by content hash, which also deduplicates mirrored
    copies.  Unreachable URLs are logged and skipped; an unwritable output
    directory is fatal.
    """
    fetcher = fetcher or RequestsFetcher()
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    probe = out_dir / ".write-probe"
    try:
        probe.write_bytes(b"")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output directory not writable: {out_dir}") from exc

    report = CrawlReport()
    gate = _PolitenessGate(config.politeness_delay_ms)
    visited: set[str] = set()
    queue: deque[FrontierNode] = deque(
        FrontierNode(url=urldefrag(s).url, depth=0) for s in config.seeds
    )

    while queue and report.pdfs_downloaded < config.max_docs:
        node = queue.popleft()
        if node.url in visited:
            continue
        host = urlparse(node.url).netloc
        if config.allowed_hosts is not None and host not in config.allowed_hosts:
            continue
        visited.add(node.url)

        stamp = gate.wait(host)
        report.fetch_log.append((node.url, stamp))
        try:
            result = fetcher.fetch(node.url)
        except Exception as exc:
            logger.warning("fetch failed for %s: %s", node.url, exc)
            report.errors += 1
            continue
        if result.status >= 400:
            logger.warning("HTTP %d for %s", result.status, node.url)
            report.errors += 1
            continue

        if is_pdf(result.headers, result.body[:8]):
            digest = hashlib.sha256(result.body).hexdigest()[:24]
            target = out_dir / f"{digest}.pdf"
            if not target.exists():
                target.write_bytes(result.body)
                report.pdfs_downloaded += 1
            report.stored[node.url] = target
            continue

        report.pages_visited += 1
        if node.depth >= config.max_depth:
            continue
        if "html" not in result.content_type() and b"<" not in result.body[:256]:
            continue
        try:
            text = result.body.decode("utf-8", errors="replace")
        except Exception:
            continue
        for link in extract_links(node.url, text):
            if link not in visited:
                queue.append(
                    FrontierNode(
                        url=link,
                        depth=node.depth + 1,
                        parent=node.url,
                        kind="pdf" if looks_like_pdf_url(link) else "page",
                    )
                )
    return report


def load_seed_file(path: str | Path) -> list[str]:
    """Newline-delimited seed URLs; blank lines and #-comments skipped."""
    seeds = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            seeds.append(line)
    return seeds


# ----------------------------------------------------------------------
# Backward-citation reseeding


@dataclass(frozen=True)
class CitationSeed:
    source_doc: str
    raw_citation: str
    resolved_url: str | None = None
    doi: str | None = None

    def __post_init__(self) -> None:
        if not (self.doi or self.resolved_url or self.raw_citation):
            raise ValueError("citation seed needs a doi, url, or raw text")


class CitationResolver(Protocol):
    def resolve(self, doi: str | None, title: str | None) -> str | None: ...


def split_references(references_text: str) -> list[str]:
    """Split a references section into entries.

    Entries are delimited by bracketed indices "[n]" when present, else by
    numbered-line patterns "n." at line starts.
    """
    text = references_text.strip()
    if not text:
        return []
    bracketed = re.split(r"(?:(?<=\s)|^)\[\d+\]\s*", text)
    entries = [e.strip() for e in bracketed if e.strip()]
    if len(entries) > 1 or re.match(r"^\[\d+\]", text):
        return entries
    numbered = re.split(r"(?m)^\s*\d+\.\s+", text)
    entries = [e.strip().replace("\n", " ") for e in numbered if e.strip()]
    return entries


def extract_doi(entry: str) -> str | None:
    match = DOI_RE.search(entry)
    if match is None:
        return None
    return match.group(0).rstrip(".,;")


def _guess_title(entry: str) -> str | None:
    # Take the longest sentence-ish chunk; crude but only used as a resolver hint.
    chunks = [c.strip() for c in re.split(r"[.][\s]", entry) if len(c.strip()) > 12]
    return max(chunks, key=len) if chunks else None


def reseed_from_citations(doc, resolver: CitationResolver | None = None) -> list[CitationSeed]:
    """One seed per parsed reference entry of a sectioned document.

    The resolver is only consulted for entries with an extractable DOI or
    title guess; failures leave the seed unresolved rather than dropping it.
    """
    references = doc.section_text("references")
    seeds: list[CitationSeed] = []
    for entry in split_references(references):
        doi = extract_doi(entry)
        resolved = None
        if resolver is not None:
            title = None if doi else _guess_title(entry)
            if doi or title:
                try:
                    resolved = resolver.resolve(doi, title)
                except Exception as exc:
                    logger.warning("citation resolution failed: %s", exc)
        seeds.append(
            CitationSeed(
                source_doc=doc.doc_id,
                raw_citation=entry,
                resolved_url=resolved,
                doi=doi,
            )
        )
    return seeds
