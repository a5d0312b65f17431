"""Density clustering of span features: the alternative grouping path.

Classic DBSCAN over a weighted distance:

    d^2 = w_x * dx^2 + w_y * dy^2 + w_size * dsize^2 + (w_font * [font differs])^2

Neighborhoods are closed balls (d <= eps) and include the point itself, so
a point is core when at least ``min_pts`` points, itself counted, lie
within eps.  The grouping tends to over-split rather than over-merge; the
heuristic path stays the default and this one is opt-in.
"""

from __future__ import annotations

import math
import statistics
from collections import deque
from dataclasses import dataclass

from .spans import Paragraph, TextSpan
from .lines import merge_lines

NOISE = -1


@dataclass(frozen=True)
class SpanFeature:
    x_center: float
    y_center: float
    font_size: float
    font_code: int


@dataclass(frozen=True)
class FeatureWeights:
    w_x: float = 1.0
    w_y: float = 1.0
    w_size: float = 4.0
    w_font: float | None = None  # None: use eps, putting a font change on the boundary


def span_features(spans: list[TextSpan]) -> list[SpanFeature]:
    """Deterministic span -> feature mapping; font codes by sorted font name."""
    fonts = sorted({s.font_name for s in spans})
    code = {name: i for i, name in enumerate(fonts)}
    return [
        SpanFeature(
            x_center=s.x_center,
            y_center=s.y_center,
            font_size=s.font_size,
            font_code=code[s.font_name],
        )
        for s in spans
    ]


def distance(a: SpanFeature, b: SpanFeature, weights: FeatureWeights, font_penalty: float) -> float:
    d2 = (
        weights.w_x * (a.x_center - b.x_center) ** 2
        + weights.w_y * (a.y_center - b.y_center) ** 2
        + weights.w_size * (a.font_size - b.font_size) ** 2
    )
    if a.font_code != b.font_code:
        d2 += font_penalty**2
    return math.sqrt(d2)


def default_eps(features: list[SpanFeature], weights: FeatureWeights = FeatureWeights()) -> float:
    """0.75 x the median nearest-neighbor distance (font penalty excluded
    from the estimate so it can be defined relative to the result)."""
    if len(features) < 2:
        return 1.0
    nearest = []
    for i, a in enumerate(features):
        best = min(
            distance(a, b, weights, font_penalty=0.0) for j, b in enumerate(features) if j != i
        )
        nearest.append(best)
    eps = 0.75 * statistics.median(nearest)
    return eps if eps > 0 else 1.0


def group_spans_dbscan(
    features: list[SpanFeature],
    eps: float,
    min_pts: int,
    weights: FeatureWeights = FeatureWeights(),
) -> list[int]:
    """Cluster ids per feature, NOISE (-1) for unclustered points.

    Expansion runs in index order with a FIFO frontier: border points join
    the first cluster that reaches them, which makes labels deterministic.
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    font_penalty = weights.w_font if weights.w_font is not None else eps

    n = len(features)
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if distance(features[i], features[j], weights, font_penalty) <= eps:
                neighbors[i].append(j)
                if i != j:
                    neighbors[j].append(i)
    core = [len(neighbors[i]) >= min_pts for i in range(n)]

    labels = [NOISE] * n
    cluster = 0
    for i in range(n):
        if labels[i] != NOISE or not core[i]:
            continue
        labels[i] = cluster
        frontier = deque(neighbors[i])
        while frontier:
            j = frontier.popleft()
            if labels[j] != NOISE:
                continue
            labels[j] = cluster
            if core[j]:
                frontier.extend(k for k in neighbors[j] if labels[k] == NOISE)
        cluster += 1
    return labels


def group_paragraphs_dbscan(
    spans: list[TextSpan],
    eps: float | None = None,
    min_pts: int = 3,
    weights: FeatureWeights = FeatureWeights(),
) -> list[Paragraph]:
    """Opt-in grouping path: cluster spans per page, one paragraph per
    cluster; noise spans become singleton paragraphs so no text is lost."""
    paragraphs: list[Paragraph] = []
    for page in sorted({s.page for s in spans}):
        page_spans = [s for s in spans if s.page == page]
        feats = span_features(page_spans)
        page_eps = eps if eps is not None else default_eps(feats, weights)
        labels = group_spans_dbscan(feats, page_eps, min_pts, weights)
        by_cluster: dict[int, list[TextSpan]] = {}
        noise: list[TextSpan] = []
        for span, label in zip(page_spans, labels):
            if label == NOISE:
                noise.append(span)
            else:
                by_cluster.setdefault(label, []).append(span)
        for label in sorted(by_cluster):
            paragraphs.append(Paragraph.from_lines(merge_lines(by_cluster[label])))
        for span in noise:
            paragraphs.append(Paragraph.from_lines(merge_lines([span])))
    return paragraphs
