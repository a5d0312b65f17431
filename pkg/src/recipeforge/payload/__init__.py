"""Payload extraction: spans -> lines -> paragraphs -> labeled sections."""

from __future__ import annotations

from dataclasses import dataclass

from .cluster import (
    NOISE,
    FeatureWeights,
    SpanFeature,
    default_eps,
    group_paragraphs_dbscan,
    group_spans_dbscan,
    span_features,
)
from .columns import cluster_columns
from .groundtruth import (
    GroundTruthRegion,
    LayoutScore,
    PredictedRegion,
    iou,
    load_truth_file,
    match_regions,
    reading_order_tau,
    regions_from_labelimg_xml,
    save_truth_file,
    score_against_ground_truth,
)
from .lines import merge_lines, spans_share_line
from .margins import MarginPolicy, filter_margins, filter_margins_detailed
from .order import order_reading
from .paragraphs import ParagraphPolicy, group_paragraphs_heuristic
from .pdfio import PdfParseError, extract_pdf_spans, ingest_spans, looks_like_pdf
from .sections import (
    HeadingLexicon,
    Section,
    SectionedDocument,
    classify_sections,
    classify_sections_detailed,
)
from .spans import BBox, Line, PageGeometry, Paragraph, SpanDocument, TextSpan


@dataclass
class PayloadResult:
    """Everything the payload stage produced for one document."""

    document: SectionedDocument
    paragraphs: list[Paragraph]                      # reading order
    heading_flags: list[tuple[Paragraph, bool]]
    removed_spans: list[TextSpan]
    source: SpanDocument


def extract_document(
    source,
    doc_id: str | None = None,
    grouping: str = "heuristic",
    eps: float | None = None,
    min_pts: int = 3,
    margin_policy: MarginPolicy = MarginPolicy(),
    paragraph_policy: ParagraphPolicy = ParagraphPolicy(),
    lexicon: HeadingLexicon | None = None,
) -> PayloadResult:
    """Run the full payload stage on a PDF or span-record source."""
    if grouping not in ("heuristic", "dbscan"):
        raise ValueError(f"unknown grouping {grouping!r}")
    span_doc = ingest_spans(source, doc_id=doc_id)
    kept, removed = filter_margins_detailed(span_doc.spans, span_doc.pages, margin_policy)
    if grouping == "dbscan":
        paragraphs = group_paragraphs_dbscan(kept, eps=eps, min_pts=min_pts)
    else:
        paragraphs = group_paragraphs_heuristic(merge_lines(kept), paragraph_policy)
    ordered = order_reading(paragraphs)
    document, flags = classify_sections_detailed(ordered, span_doc.doc_id, lexicon)
    return PayloadResult(
        document=document,
        paragraphs=ordered,
        heading_flags=flags,
        removed_spans=removed,
        source=span_doc,
    )


def predicted_regions(result: PayloadResult) -> list[PredictedRegion]:
    """Layout predictions in reading order, for ground-truth scoring.

    Heading paragraphs map to ``heading``, body paragraphs to ``paragraph``,
    and margin-filtered spans to ``header``.
    """
    regions = [
        PredictedRegion(page=p.page, bbox=p.bbox, label="heading" if flag else "paragraph")
        for p, flag in result.heading_flags
    ]
    regions.extend(
        PredictedRegion(page=s.page, bbox=s.bbox, label="header") for s in result.removed_spans
    )
    return regions


__all__ = [
    "BBox",
    "FeatureWeights",
    "GroundTruthRegion",
    "HeadingLexicon",
    "LayoutScore",
    "Line",
    "MarginPolicy",
    "NOISE",
    "PageGeometry",
    "Paragraph",
    "ParagraphPolicy",
    "PayloadResult",
    "PdfParseError",
    "PredictedRegion",
    "Section",
    "SectionedDocument",
    "SpanDocument",
    "SpanFeature",
    "TextSpan",
    "classify_sections",
    "classify_sections_detailed",
    "cluster_columns",
    "default_eps",
    "extract_document",
    "extract_pdf_spans",
    "filter_margins",
    "filter_margins_detailed",
    "group_paragraphs_dbscan",
    "group_paragraphs_heuristic",
    "group_spans_dbscan",
    "ingest_spans",
    "iou",
    "load_truth_file",
    "looks_like_pdf",
    "match_regions",
    "merge_lines",
    "order_reading",
    "predicted_regions",
    "reading_order_tau",
    "regions_from_labelimg_xml",
    "save_truth_file",
    "score_against_ground_truth",
    "span_features",
    "spans_share_line",
]
