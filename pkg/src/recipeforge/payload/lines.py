"""Merging spans into lines by vertical overlap."""

from __future__ import annotations

from .spans import Line, TextSpan

OVERLAP_FRAC = 0.5   # of the smaller span height
H_GAP_FACTOR = 1.5   # of the smaller font size: max horizontal gap within a line


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def spans_share_line(a: TextSpan, b: TextSpan) -> bool:
    """Same page, vertical overlap of at least half the smaller height, and
    horizontally adjacent.

    The adjacency bound (gap of at most 1.5x the smaller font size) keeps
    side-by-side columns apart: vertical overlap alone would weld every
    two-column row into one line.
    """
    if a.page != b.page:
        return False
    overlap = min(a.bbox[3], b.bbox[3]) - max(a.bbox[1], b.bbox[1])
    smaller = min(a.height, b.height)
    if overlap < OVERLAP_FRAC * smaller:
        return False
    gap = max(a.bbox[0], b.bbox[0]) - min(a.bbox[2], b.bbox[2])
    return gap <= H_GAP_FACTOR * min(a.font_size, b.font_size)


def merge_lines(spans: list[TextSpan]) -> list[Line]:
    """Group spans into lines; the relation is closed transitively, so the
    result does not depend on input order."""
    # Canonical order first so output is stable under input permutation.
    ordered = sorted(spans, key=lambda s: (s.page, s.bbox[1], s.bbox[0], s.text))
    uf = _UnionFind(len(ordered))
    by_page: dict[int, list[int]] = {}
    for i, span in enumerate(ordered):
        by_page.setdefault(span.page, []).append(i)
    for indices in by_page.values():
        for ai in range(len(indices)):
            for bi in range(ai + 1, len(indices)):
                i, j = indices[ai], indices[bi]
                if spans_share_line(ordered[i], ordered[j]):
                    uf.union(i, j)
    groups: dict[int, list[TextSpan]] = {}
    for i, span in enumerate(ordered):
        groups.setdefault(uf.find(i), []).append(span)
    lines = [Line.from_spans(members) for members in groups.values()]
    lines.sort(key=lambda l: (l.page, l.bbox[1], l.bbox[0]))
    return lines
