"""Reading order via recursive XY-cuts, gutters first.

A vertical gutter that no block crosses splits the set into columns read
left to right; any full-width block (title, abstract, spanning heading)
blocks such a cut, so bands around it are carved first along the widest
horizontal gap and the block reads before the columns below it.  Blocks
that cannot be separated fall back to top-to-bottom, left-to-right order.
"""

from __future__ import annotations

from .spans import Paragraph

_EPS = 1e-9


def _best_gap(blocks: list[Paragraph], lo: int, hi: int) -> tuple[float, float] | None:
    """Widest coordinate gap that no block crosses: (gap size, cut position)."""
    ordered = sorted(blocks, key=lambda b: (b.bbox[lo], b.bbox))
    best: tuple[float, float] | None = None
    reach = ordered[0].bbox[hi]
    for block in ordered[1:]:
        gap = block.bbox[lo] - reach
        if gap >= -_EPS:
            cut = (reach + block.bbox[lo]) / 2
            if best is None or gap > best[0]:
                best = (gap, cut)
        reach = max(reach, block.bbox[hi])
    return best


def xy_cut(blocks: list[Paragraph]) -> list[Paragraph]:
    if len(blocks) <= 1:
        return list(blocks)
    v = _best_gap(blocks, 0, 2)  # vertical cut across x: column gutter
    if v is not None:
        cut = v[1]
        first = [b for b in blocks if (b.bbox[0] + b.bbox[2]) / 2 < cut]
        second = [b for b in blocks if (b.bbox[0] + b.bbox[2]) / 2 >= cut]
        if first and second:
            return xy_cut(first) + xy_cut(second)
    h = _best_gap(blocks, 1, 3)  # horizontal cut across y: band boundary
    if h is not None:
        cut = h[1]
        first = [b for b in blocks if (b.bbox[1] + b.bbox[3]) / 2 < cut]
        second = [b for b in blocks if (b.bbox[1] + b.bbox[3]) / 2 >= cut]
        if first and second:
            return xy_cut(first) + xy_cut(second)
    return sorted(blocks, key=lambda b: (b.bbox[1], b.bbox[0]))


def order_reading(paragraphs: list[Paragraph]) -> list[Paragraph]:
    """Assign contiguous reading indices across the document, page by page."""
    ordered: list[Paragraph] = []
    for page in sorted({p.page for p in paragraphs}):
        ordered.extend(xy_cut([p for p in paragraphs if p.page == page]))
    return [p.with_reading_index(i) for i, p in enumerate(ordered)]
