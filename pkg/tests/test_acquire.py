import http.server
import threading

import pytest

from recipeforge import acquire
from recipeforge.acquire import (
    CitationSeed,
    CrawlConfig,
    FetchResult,
    crawl,
    extract_doi,
    extract_links,
    is_pdf,
    load_seed_file,
    reseed_from_citations,
    split_references,
)
from recipeforge.payload import Section, SectionedDocument

MINIMAL_PDF = (
    b"%PDF-1.4\n1 0 obj<</Type /Catalog /Pages 2 0 R>>endobj\n"
    b"2 0 obj<</Type /Pages /Kids [3 0 R] /Count 1>>endobj\n"
    b"3 0 obj<</Type /Page /Parent 2 0 R /MediaBox [0 0 612 792]>>endobj\n"
    b"trailer<</Root 1 0 R>>\n%%EOF\n"
)


def pdf_bytes(marker: bytes) -> bytes:
    return MINIMAL_PDF + b"%" + marker + b"\n"


class FakeFetcher:
    """In-memory site: url -> (content-type, body)."""

    def __init__(self, site):
        self.site = site
        self.calls = []

    def fetch(self, url):
        self.calls.append(url)
        if url not in self.site:
            return FetchResult(url=url, status=404, headers={}, body=b"")
        ctype, body = self.site[url]
        return FetchResult(url=url, status=200, headers={"Content-Type": ctype}, body=body)


def html(*links):
    body = "".join(f'<p><a href="{l}">go</a></p>' for l in links)
    return ("text/html", f"<html><body>{body}</body></html>".encode())


def fixture_site(base="http://site.test"):
    # Hand-enumerated graph: PDFs at depth 1 and 2; c.html and paper4 sit at
    # depth 3 behind b.html; b links back to the root (cycle).
    return {
        f"{base}/": html("a.html", "b.html", "paper1.pdf"),
        f"{base}/a.html": html("paper2.pdf", f"{base}/"),
        f"{base}/b.html": html(f"{base}/", "c.html", "paper3.pdf"),
        f"{base}/c.html": html("paper4.pdf"),
        f"{base}/paper1.pdf": ("application/pdf", pdf_bytes(b"one")),
        f"{base}/paper2.pdf": ("application/octet-stream", pdf_bytes(b"two")),
        f"{base}/paper3.pdf": ("application/pdf", pdf_bytes(b"three")),
        f"{base}/paper4.pdf": ("application/pdf", pdf_bytes(b"four")),
    }


class TestIsPdf:
    def test_magic_marker(self):
        assert is_pdf({}, b"%PDF-1.4 rest")

    def test_html_is_not(self):
        assert not is_pdf({"Content-Type": "text/html"}, b"<html>")

    def test_octet_stream_with_magic(self):
        assert is_pdf({"Content-Type": "application/octet-stream"}, MINIMAL_PDF[:8])

    def test_content_type_alone_suffices(self):
        assert is_pdf({"content-type": "application/pdf"}, b"")

    def test_empty_body_no_type(self):
        assert not is_pdf({}, b"")


class TestCrawl:
    def test_depth_zero_examines_only_seed(self, tmp_path):
        fetcher = FakeFetcher(fixture_site())
        config = CrawlConfig(seeds=["http://site.test/"], max_depth=0, output_dir=tmp_path)
        report = crawl(config, fetcher)
        assert fetcher.calls == ["http://site.test/"]
        assert report.pdfs_downloaded == 0
        assert report.pages_visited == 1

    def test_depth_two_downloads_exactly_three_pdfs(self, tmp_path):
        fetcher = FakeFetcher(fixture_site())
        config = CrawlConfig(seeds=["http://site.test/"], max_depth=2, output_dir=tmp_path)
        report = crawl(config, fetcher)
        assert report.pdfs_downloaded == 3
        files = sorted(tmp_path.glob("*.pdf"))
        assert len(files) == 3
        markers = {f.read_bytes().splitlines()[-1] for f in files}
        assert markers == {b"%one", b"%two", b"%three"}

    def test_no_url_fetched_twice_despite_cycle(self, tmp_path):
        fetcher = FakeFetcher(fixture_site())
        config = CrawlConfig(seeds=["http://site.test/"], max_depth=3, output_dir=tmp_path)
        crawl(config, fetcher)
        assert len(fetcher.calls) == len(set(fetcher.calls))

    def test_terminates_within_node_budget(self, tmp_path):
        site = fixture_site()
        fetcher = FakeFetcher(site)
        config = CrawlConfig(seeds=["http://site.test/"], max_depth=10, output_dir=tmp_path)
        crawl(config, fetcher)
        assert len(fetcher.calls) <= len(site)

    def test_stored_files_start_with_magic(self, tmp_path):
        fetcher = FakeFetcher(fixture_site())
        config = CrawlConfig(seeds=["http://site.test/"], max_depth=2, output_dir=tmp_path)
        crawl(config, fetcher)
        for f in tmp_path.glob("*.pdf"):
            assert f.read_bytes()[:5] == b"%PDF-"

    def test_mirrored_pdf_stored_once(self, tmp_path):
        base = "http://site.test"
        site = {
            f"{base}/": html("one.pdf", "two.pdf"),
            f"{base}/one.pdf": ("application/pdf", pdf_bytes(b"same")),
            f"{base}/two.pdf": ("application/pdf", pdf_bytes(b"same")),
        }
        config = CrawlConfig(seeds=[f"{base}/"], max_depth=1, output_dir=tmp_path)
        report = crawl(config, FakeFetcher(site))
        assert report.pdfs_downloaded == 1
        assert len(list(tmp_path.glob("*.pdf"))) == 1

    def test_unreachable_seed_logged_not_fatal(self, tmp_path):
        site = fixture_site()
        config = CrawlConfig(
            seeds=["http://down.test/", "http://site.test/"], max_depth=0, output_dir=tmp_path
        )
        report = crawl(config, FakeFetcher(site))
        assert report.errors == 1
        assert report.pages_visited == 1

    def test_max_docs_caps_downloads(self, tmp_path):
        config = CrawlConfig(
            seeds=["http://site.test/"], max_depth=2, output_dir=tmp_path, max_docs=2
        )
        report = crawl(config, FakeFetcher(fixture_site()))
        assert report.pdfs_downloaded == 2

    def test_invalid_config_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            CrawlConfig(seeds=[], max_depth=1, output_dir=tmp_path)
        with pytest.raises(ValueError):
            CrawlConfig(seeds=["not-a-url"], max_depth=1, output_dir=tmp_path)
        with pytest.raises(ValueError):
            CrawlConfig(seeds=["http://x.test/"], max_depth=-1, output_dir=tmp_path)

    def test_seed_file(self, tmp_path):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("# comment\nhttp://a.test/\n\nhttp://b.test/\n")
        assert load_seed_file(seeds) == ["http://a.test/", "http://b.test/"]


class TestLinkExtraction:
    def test_relative_and_absolute(self):
        links = extract_links(
            "http://x.test/dir/page.html",
            '<a href="other.html">1</a> <a href="/root.html">2</a> '
            '<a href="http://y.test/far.html#frag">3</a> <a href="mailto:a@b.c">4</a>',
        )
        assert links == [
            "http://x.test/dir/other.html",
            "http://x.test/root.html",
            "http://y.test/far.html",
        ]


def serve_directory(tree: dict[str, bytes]):
    """Bring up a local HTTP server over an in-memory tree; returns (base_url, shutdown)."""

    class Handler(http.server.BaseHTTPRequestHandler):
        def do_GET(self):
            body = tree.get(self.path)
            if body is None:
                self.send_error(404)
                return
            self.send_response(200)
            ctype = "application/pdf" if self.path.endswith(".pdf") else "text/html"
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, *args):
            pass

    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    return base, server.shutdown


class TestAgainstLocalHttpServer:
    def test_depth_two_crawl_with_politeness(self, tmp_path):
        tree = {
            "/": html("a.html", "b.html", "paper1.pdf")[1],
            "/a.html": html("paper2.pdf")[1],
            "/b.html": html("/", "c.html", "paper3.pdf")[1],
            "/c.html": html("paper4.pdf")[1],
            "/paper1.pdf": pdf_bytes(b"one"),
            "/paper2.pdf": pdf_bytes(b"two"),
            "/paper3.pdf": pdf_bytes(b"three"),
            "/paper4.pdf": pdf_bytes(b"four"),
        }
        base, shutdown = serve_directory(tree)
        try:
            config = CrawlConfig(
                seeds=[f"{base}/"], max_depth=2, output_dir=tmp_path, politeness_delay_ms=25
            )
            report = crawl(config, acquire.RequestsFetcher(timeout=5))
            assert report.pdfs_downloaded == 3
            urls = [u for u, _ in report.fetch_log]
            assert len(urls) == len(set(urls))
            stamps = [t for _, t in report.fetch_log]
            gaps = [b - a for a, b in zip(stamps, stamps[1:])]
            assert all(gap >= 0.025 - 1e-9 for gap in gaps)
        finally:
            shutdown()


class TestCitations:
    REFS = (
        "[1] A. Ruiz, Seed-mediated growth of silver wires, J. Nano 12, 34 (2018), "
        "doi:10.1021/jn.2018.034. "
        "[2] P. Imai, Polyol synthesis revisited, Mater. Lett. 7, 101 (2017), "
        "doi:10.1016/ml.2017.101. "
        "[3] Unresolvable technical report, internal memo."
    )

    def doc(self, refs_text):
        return SectionedDocument(
            doc_id="d1",
            title="T",
            sections=[Section(label="references", heading="References", paragraphs=[refs_text])],
        )

    def test_split_bracketed(self):
        entries = split_references(self.REFS)
        assert len(entries) == 3
        assert entries[0].startswith("A. Ruiz")

    def test_split_numbered_lines(self):
        text = "1. First entry here.\n2. Second entry there.\n"
        assert len(split_references(text)) == 2

    def test_doi_extraction(self):
        assert extract_doi("see doi:10.1021/jn.2018.034.") == "10.1021/jn.2018.034"
        assert extract_doi("no identifier") is None

    def test_two_dois_resolved(self):
        class Resolver:
            def resolve(self, doi, title):
                return f"https://doi.test/{doi}" if doi else None

        seeds = reseed_from_citations(self.doc(self.REFS), Resolver())
        assert len(seeds) == 3
        assert seeds[0].resolved_url == "https://doi.test/10.1021/jn.2018.034"
        assert seeds[1].doi == "10.1016/ml.2017.101"
        assert seeds[2].resolved_url is None
        assert seeds[2].raw_citation.startswith("Unresolvable")

    def test_empty_references(self):
        assert reseed_from_citations(self.doc(""), None) == []

    def test_resolver_failure_keeps_seed(self):
        class Broken:
            def resolve(self, doi, title):
                raise ConnectionError("offline")

        seeds = reseed_from_citations(self.doc(self.REFS), Broken())
        assert len(seeds) == 3
        assert all(s.resolved_url is None for s in seeds)

    def test_seed_requires_some_identity(self):
        with pytest.raises(ValueError):
            CitationSeed(source_doc="d", raw_citation="", resolved_url=None, doi=None)
