"""Column structure helpers shared by paragraph grouping and reading order."""

from __future__ import annotations

from typing import Sequence, TypeVar

T = TypeVar("T")

FULL_WIDTH_FRAC = 0.7   # of the page content width
X_OVERLAP_FRAC = 0.5    # of the smaller width, for same-column tests


def _bbox(item) -> tuple[float, float, float, float]:
    return item.bbox


def content_extent(items: Sequence[T]) -> tuple[float, float]:
    return (min(_bbox(i)[0] for i in items), max(_bbox(i)[2] for i in items))


def is_full_width(item, extent: tuple[float, float], frac: float = FULL_WIDTH_FRAC) -> bool:
    total = extent[1] - extent[0]
    if total <= 0:
        return True
    return (_bbox(item)[2] - _bbox(item)[0]) >= frac * total


def x_overlap_frac(a, b) -> float:
    """Horizontal overlap as a fraction of the narrower item."""
    ax0, _, ax1, _ = _bbox(a)
    bx0, _, bx1, _ = _bbox(b)
    overlap = min(ax1, bx1) - max(ax0, bx0)
    smaller = min(ax1 - ax0, bx1 - bx0)
    if smaller <= 0:
        return 0.0
    return overlap / smaller


def cluster_columns(items: Sequence[T]) -> list[list[T]]:
    """Partition items into columns by transitive x-interval overlap.

    Items whose x-extents overlap by at least half the narrower width land
    in one column.  Columns come back sorted left to right; items within a
    column sorted top to bottom.
    """
    n = len(items)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if x_overlap_frac(items[i], items[j]) >= X_OVERLAP_FRAC:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups: dict[int, list[T]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(items[i])
    columns = list(groups.values())
    for col in columns:
        col.sort(key=lambda it: (_bbox(it)[1], _bbox(it)[0]))
    columns.sort(key=lambda col: min(_bbox(it)[0] for it in col))
    return columns
