from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from recipeforge.payload import PageGeometry, TextSpan


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One visible pass/fail line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__.endswith("test_acceptance"):
        label = (item.function.__doc__ or item.name).strip().splitlines()[0]
        verdict = "PASS" if report.passed else "FAIL"
        print(f"[ACCEPTANCE] {verdict}: {label}", file=sys.stderr)

FIXTURES = Path(__file__).parent / "fixtures"
LAYOUT_DIR = FIXTURES / "layout"


def make_span(
    text: str,
    x0: float,
    y0: float,
    x1: float | None = None,
    y1: float | None = None,
    page: int = 1,
    font: str = "Times-Roman",
    size: float = 10.0,
) -> TextSpan:
    if x1 is None:
        x1 = x0 + 0.5 * size * max(len(text), 1)
    if y1 is None:
        y1 = y0 + size
    return TextSpan(text=text, page=page, bbox=(x0, y0, x1, y1), font_name=font, font_size=size)


def page(number: int = 1, width: float = 612.0, height: float = 792.0) -> PageGeometry:
    return PageGeometry(number=number, width=width, height=height)


def layout_fixture_names() -> list[str]:
    return sorted(p.name.replace(".spans.json", "") for p in LAYOUT_DIR.glob("*.spans.json"))


@pytest.fixture
def layout_dir() -> Path:
    return LAYOUT_DIR


def load_meta(name: str) -> dict:
    return json.loads((LAYOUT_DIR / f"{name}.meta.json").read_text(encoding="utf-8"))
