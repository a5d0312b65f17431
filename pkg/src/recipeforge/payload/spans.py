"""Positioned text spans: the atoms of layout analysis.

Coordinates are top-left origin with y growing downward, in page units
(PDF points for real documents).  The span-record file decouples the rest
of the pipeline from any PDF library: one JSON document per file with the
shape

    {"doc_id": ..., "pages": [{"number": 1, "width": W, "height": H,
      "spans": [{"text": ..., "bbox": [x0, y0, x1, y1],
                 "font": ..., "size": ...}]}]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

BBox = tuple[float, float, float, float]


@dataclass(frozen=True)
class TextSpan:
    text: str
    page: int
    bbox: BBox
    font_name: str
    font_size: float

    def __post_init__(self) -> None:
        x0, y0, x1, y1 = self.bbox
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"degenerate bbox {self.bbox}")
        if not self.text.strip():
            raise ValueError("span text empty after trim")
        if self.font_size <= 0:
            raise ValueError("font_size must be positive")
        if self.page < 1:
            raise ValueError("page numbers are 1-based")

    @property
    def x_center(self) -> float:
        return (self.bbox[0] + self.bbox[2]) / 2

    @property
    def y_center(self) -> float:
        return (self.bbox[1] + self.bbox[3]) / 2

    @property
    def height(self) -> float:
        return self.bbox[3] - self.bbox[1]

    @property
    def width(self) -> float:
        return self.bbox[2] - self.bbox[0]


@dataclass(frozen=True)
class PageGeometry:
    number: int
    width: float
    height: float


def union_bbox(boxes: list[BBox]) -> BBox:
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )


@dataclass
class Line:
    """Spans sharing a baseline: same page, mutual vertical overlap."""

    spans: list[TextSpan]
    page: int
    bbox: BBox

    @classmethod
    def from_spans(cls, spans: list[TextSpan]) -> "Line":
        if not spans:
            raise ValueError("empty line")
        pages = {s.page for s in spans}
        if len(pages) != 1:
            raise ValueError("line spans multiple pages")
        ordered = sorted(spans, key=lambda s: (s.bbox[0], s.bbox[1], s.text))
        return cls(spans=ordered, page=pages.pop(), bbox=union_bbox([s.bbox for s in ordered]))

    def text(self) -> str:
        return " ".join(s.text.strip() for s in self.spans)

    @property
    def x0(self) -> float:
        return self.bbox[0]

    @property
    def y0(self) -> float:
        return self.bbox[1]

    @property
    def height(self) -> float:
        return self.bbox[3] - self.bbox[1]

    @property
    def width(self) -> float:
        return self.bbox[2] - self.bbox[0]


@dataclass
class Paragraph:
    """Ordered lines with an enclosing bbox and a reading position."""

    lines: list[Line]
    page: int
    bbox: BBox
    reading_index: int = -1

    @classmethod
    def from_lines(cls, lines: list[Line]) -> "Paragraph":
        if not lines:
            raise ValueError("empty paragraph")
        pages = {l.page for l in lines}
        if len(pages) != 1:
            raise ValueError("paragraph lines span multiple pages")
        return cls(lines=list(lines), page=pages.pop(), bbox=union_bbox([l.bbox for l in lines]))

    def text(self) -> str:
        return " ".join(line.text() for line in self.lines)

    def spans(self) -> list[TextSpan]:
        return [s for line in self.lines for s in line.spans]

    def dominant_font_size(self) -> float:
        """Character-weighted mode of span sizes; ties go to the larger size."""
        weights: dict[float, int] = {}
        for s in self.spans():
            weights[s.font_size] = weights.get(s.font_size, 0) + len(s.text)
        return max(weights.items(), key=lambda kv: (kv[1], kv[0]))[0]

    def is_bold(self) -> bool:
        """True when at least half the characters use a bold-marked font."""
        bold = total = 0
        for s in self.spans():
            total += len(s.text)
            name = s.font_name.lower()
            if "bold" in name or "black" in name or "heavy" in name:
                bold += len(s.text)
        return total > 0 and bold * 2 >= total

    def with_reading_index(self, index: int) -> "Paragraph":
        return Paragraph(lines=self.lines, page=self.page, bbox=self.bbox, reading_index=index)

    @property
    def width(self) -> float:
        return self.bbox[2] - self.bbox[0]


@dataclass
class SpanDocument:
    """All spans of one document plus per-page geometry."""

    doc_id: str
    pages: list[PageGeometry]
    spans: list[TextSpan]

    def page_geometry(self, number: int) -> PageGeometry:
        for p in self.pages:
            if p.number == number:
                return p
        raise KeyError(f"no geometry for page {number}")

    def spans_on_page(self, number: int) -> list[TextSpan]:
        return [s for s in self.spans if s.page == number]

    def to_dict(self) -> dict:
        pages = []
        for geom in self.pages:
            pages.append(
                {
                    "number": geom.number,
                    "width": geom.width,
                    "height": geom.height,
                    "spans": [
                        {
                            "text": s.text,
                            "bbox": list(s.bbox),
                            "font": s.font_name,
                            "size": s.font_size,
                        }
                        for s in self.spans_on_page(geom.number)
                    ],
                }
            )
        return {"doc_id": self.doc_id, "pages": pages}

    @classmethod
    def from_dict(cls, payload: dict) -> "SpanDocument":
        pages = []
        spans = []
        for page in payload["pages"]:
            number = int(page["number"])
            pages.append(PageGeometry(number=number, width=float(page["width"]), height=float(page["height"])))
            for rec in page.get("spans", []):
                if not str(rec["text"]).strip():
                    continue
                spans.append(
                    TextSpan(
                        text=rec["text"],
                        page=number,
                        bbox=tuple(float(v) for v in rec["bbox"]),
                        font_name=rec["font"],
                        font_size=float(rec["size"]),
                    )
                )
        return cls(doc_id=payload["doc_id"], pages=pages, spans=spans)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "SpanDocument":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
