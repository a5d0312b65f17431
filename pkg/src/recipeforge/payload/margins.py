"""Margin text removal: band rule plus repeated header/footer detection."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .spans import PageGeometry, TextSpan


@dataclass(frozen=True)
class MarginPolicy:
    top_frac: float = 0.05
    bottom_frac: float = 0.05
    repeat_min: int = 3       # pages a span must repeat on to count as a header/footer
    position_tol: float = 2.0  # page units of positional slack for "same place"


def filter_margins_detailed(
    spans: list[TextSpan],
    pages: list[PageGeometry],
    policy: MarginPolicy = MarginPolicy(),
) -> tuple[list[TextSpan], list[TextSpan]]:
    """Split spans into (kept, removed).

    Removed: spans whose vertical center sits in the top or bottom band of
    their page, and spans whose exact text recurs at near-identical position
    on at least ``repeat_min`` distinct pages (running headers, footers,
    journal names, page numbers like "Page 3" are usually caught by the
    band rule; repeated logos higher up by the repeat rule).
    """
    geometry = {p.number: p for p in pages}

    def position_key(span: TextSpan) -> tuple:
        tol = policy.position_tol
        return (span.text, round(span.bbox[0] / tol), round(span.bbox[1] / tol))

    pages_per_key: dict[tuple, set[int]] = defaultdict(set)
    for span in spans:
        pages_per_key[position_key(span)].add(span.page)
    repeated = {key for key, pgs in pages_per_key.items() if len(pgs) >= policy.repeat_min}

    kept: list[TextSpan] = []
    removed: list[TextSpan] = []
    for span in spans:
        geom = geometry.get(span.page)
        if geom is None:
            raise KeyError(f"no page geometry for page {span.page}")
        in_top = span.y_center < policy.top_frac * geom.height
        in_bottom = span.y_center > (1 - policy.bottom_frac) * geom.height
        if in_top or in_bottom or position_key(span) in repeated:
            removed.append(span)
        else:
            kept.append(span)
    return kept, removed


def filter_margins(
    spans: list[TextSpan],
    pages: list[PageGeometry],
    policy: MarginPolicy = MarginPolicy(),
) -> list[TextSpan]:
    kept, _ = filter_margins_detailed(spans, pages, policy)
    return kept
