"""Grouping lines into paragraphs with the spacing/alignment heuristic."""

from __future__ import annotations

import statistics
from bisect import bisect_right
from dataclasses import dataclass

from .columns import FULL_WIDTH_FRAC, cluster_columns, content_extent, is_full_width
from .spans import Line, Paragraph


@dataclass(frozen=True)
class ParagraphPolicy:
    gap_factor: float = 1.8     # of the median line height, top-to-top
    align_tol: float = 4.0      # page units for left-edge agreement
    first_indent: float = 24.0  # max first-line indent that still joins
    full_width_frac: float = FULL_WIDTH_FRAC


def group_paragraphs_heuristic(
    lines: list[Line],
    policy: ParagraphPolicy = ParagraphPolicy(),
) -> list[Paragraph]:
    """Join consecutive same-column lines into paragraphs.

    Two lines stay together iff their top-to-top distance is at most
    gap_factor x the page's median line height and their left edges agree
    within align_tol; a paragraph's first line may be indented by up to
    first_indent.

    On a multi-column page, full-width lines (titles, abstracts, spanning
    headings) form one stream of their own and act as horizontal band
    separators: a centered front-matter line can never stitch two columns
    together, and columns never merge across a section break.  A page with
    no real column structure is one stream in plain top-to-bottom order,
    so the short last line of a justified paragraph stays attached.
    """
    paragraphs: list[Paragraph] = []
    pages = sorted({l.page for l in lines})
    for page in pages:
        page_lines = [l for l in lines if l.page == page]
        if not page_lines:
            continue
        median_height = statistics.median(l.height for l in page_lines)
        for stream in _page_streams(page_lines, policy):
            paragraphs.extend(_group_stream(stream, median_height, policy))
    return paragraphs


def _page_streams(page_lines: list[Line], policy: ParagraphPolicy) -> list[list[Line]]:
    extent = content_extent(page_lines)
    full = sorted(
        (l for l in page_lines if is_full_width(l, extent, policy.full_width_frac)),
        key=lambda l: (l.y0, l.x0),
    )
    narrow = [l for l in page_lines if not is_full_width(l, extent, policy.full_width_frac)]

    cuts = [(l.bbox[1] + l.bbox[3]) / 2 for l in full]
    bands: dict[int, list[Line]] = {}
    for line in narrow:
        band = bisect_right(cuts, (line.bbox[1] + line.bbox[3]) / 2)
        bands.setdefault(band, []).append(line)
    band_columns = {band: cluster_columns(members) for band, members in bands.items()}

    multi_column = any(
        sum(1 for col in columns if len(col) >= 2) >= 2 for columns in band_columns.values()
    )
    if not multi_column:
        return [sorted(page_lines, key=lambda l: (l.y0, l.x0))]

    streams: list[list[Line]] = []
    if full:
        streams.append(full)
    for band in sorted(band_columns):
        streams.extend(band_columns[band])
    return streams


def _group_stream(lines: list[Line], median_height: float, policy: ParagraphPolicy) -> list[Paragraph]:
    out: list[Paragraph] = []
    current: list[Line] = []
    body_x0 = 0.0

    def flush() -> None:
        if current:
            out.append(Paragraph.from_lines(current))

    for line in lines:
        if not current:
            current = [line]
            body_x0 = line.x0
            continue
        prev = current[-1]
        gap_ok = (line.y0 - prev.y0) <= policy.gap_factor * median_height
        dx = line.x0 - body_x0
        if gap_ok and abs(dx) <= policy.align_tol:
            current.append(line)
        elif gap_ok and -policy.first_indent <= dx < 0 and len(current) == 1:
            # The opening line was indented; this one sets the body edge.
            current.append(line)
            body_x0 = line.x0
        else:
            flush()
            current = [line]
            body_x0 = line.x0
    flush()
    return out
