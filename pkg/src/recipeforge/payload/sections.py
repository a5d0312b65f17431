"""Section classification: headings by font prominence, labels by lexicon.

The heading-pattern table is an editable data file so new journals'
heading conventions can be accommodated without code changes.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..textnorm import repair_text
from .spans import Paragraph

SECTION_LABELS = (
    "title",
    "authors",
    "abstract",
    "introduction",
    "related_work",
    "experimental",
    "results",
    "discussion",
    "conclusion",
    "acknowledgments",
    "references",
    "other",
)

HEADING_MAX_TOKENS = 12
HEADING_MAX_LINES = 2
ABSTRACT_MIN_TOKENS = 40

_NUMBERING_RE = re.compile(r"^\s*(?:\d+(?:\.\d+)*\.?|[IVXLC]+\.|[A-Z]\.)\s+")
_FIGURE_RE = re.compile(r"^(?:figure|fig\.?|table)\s+\d+", re.I)
_AFFILIATION_RE = re.compile(
    r"@|university|department|institute|laborator|college|school of|center for|centre for",
    re.I,
)


@dataclass(frozen=True)
class HeadingLexicon:
    patterns: tuple[tuple[re.Pattern, str], ...]

    @classmethod
    def from_dict(cls, payload: dict) -> "HeadingLexicon":
        compiled = []
        for rec in payload["patterns"]:
            label = rec["label"]
            if label not in SECTION_LABELS:
                raise ValueError(f"unknown section label {label!r}")
            compiled.append((re.compile(rec["pattern"], re.I), label))
        return cls(patterns=tuple(compiled))

    @classmethod
    def load(cls, path: str | Path) -> "HeadingLexicon":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    @classmethod
    def default(cls) -> "HeadingLexicon":
        text = resources.files("recipeforge.data").joinpath("heading_lexicon.json").read_text("utf-8")
        return cls.from_dict(json.loads(text))

    def label_for(self, heading_text: str) -> str:
        stripped = _NUMBERING_RE.sub("", heading_text).strip()
        for pattern, label in self.patterns:
            if pattern.search(stripped):
                return label
        return "other"


@dataclass
class Section:
    label: str
    heading: str
    paragraphs: list[str]


@dataclass
class FigureRef:
    page: int
    caption: str

    def to_dict(self) -> dict:
        return {"page": self.page, "caption": self.caption}


@dataclass
class SectionedDocument:
    doc_id: str
    title: str | None
    sections: list[Section]
    figures: list[FigureRef] = field(default_factory=list)

    def section_text(self, label: str) -> str:
        chunks = []
        for section in self.sections:
            if section.label == label:
                chunks.extend(section.paragraphs)
        return "\n".join(chunks)

    def labels(self) -> list[str]:
        return [s.label for s in self.sections]

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "title": self.title,
            "sections": [
                {"label": s.label, "heading": s.heading, "paragraphs": list(s.paragraphs)}
                for s in self.sections
            ],
            "figures": [f.to_dict() for f in self.figures],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "SectionedDocument":
        return cls(
            doc_id=payload["doc_id"],
            title=payload.get("title"),
            sections=[
                Section(label=s["label"], heading=s["heading"], paragraphs=list(s["paragraphs"]))
                for s in payload["sections"]
            ],
            figures=[FigureRef(page=f["page"], caption=f["caption"]) for f in payload.get("figures", [])],
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "SectionedDocument":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def body_font_size(paragraphs: list[Paragraph]) -> float:
    """Character-weighted modal span size over the document."""
    weights: Counter[float] = Counter()
    for p in paragraphs:
        for s in p.spans():
            weights[s.font_size] += len(s.text)
    if not weights:
        return 10.0
    return max(weights.items(), key=lambda kv: (kv[1], -kv[0]))[0]


def is_heading(paragraph: Paragraph, body_size: float) -> bool:
    """Prominent font (larger than body, or bold), short, and few lines."""
    if len(paragraph.lines) > HEADING_MAX_LINES:
        return False
    text = paragraph.text()
    if len(text.split()) > HEADING_MAX_TOKENS:
        return False
    return paragraph.dominant_font_size() > body_size + 0.1 or paragraph.is_bold()


def _looks_like_authors(text: str) -> bool:
    if _AFFILIATION_RE.search(text):
        return True
    commas = text.count(",")
    superscripts = sum(text.count(ch) for ch in "*†‡§¶")
    return len(text.split()) <= 60 and (commas >= 2 or superscripts >= 1)


def _find_title(ordered: list[Paragraph], flags: list[bool], body_size: float,
                lexicon: HeadingLexicon) -> int | None:
    """Index of the title paragraph, if one stands out.

    The title is the largest-font paragraph on page 1, strictly bigger than
    the body face and not something the heading lexicon already claims
    ("Introduction" in display type is a heading, not a title).
    """
    candidates = [
        i
        for i, p in enumerate(ordered)
        if p.page == 1 and p.dominant_font_size() > body_size + 0.1
    ]
    if not candidates:
        return None
    best = max(candidates, key=lambda i: (ordered[i].dominant_font_size(), -i))
    text = repair_text(ordered[best].text()).strip()
    # A short lexicon-named block in display type ("Introduction") is a
    # heading, not a title; long titles legitimately contain words like
    # "synthesis", so length decides.
    if flags[best] and len(text.split()) <= 4 and lexicon.label_for(text) != "other":
        return None
    return best


def classify_sections_detailed(
    paragraphs: list[Paragraph],
    doc_id: str,
    lexicon: HeadingLexicon | None = None,
) -> tuple[SectionedDocument, list[tuple[Paragraph, bool]]]:
    """Classify ordered paragraphs; also return per-paragraph heading flags.

    The title is exempted from heading detection, so front matter (title,
    authors, abstract) is everything before the first true section heading.
    Author-like paragraphs show affiliations, comma lists, or dagger marks;
    an abstract either announces itself with an "Abstract" token or is the
    long pre-introduction paragraph.
    """
    lexicon = lexicon or HeadingLexicon.default()
    ordered = sorted(paragraphs, key=lambda p: p.reading_index)
    body_size = body_font_size(ordered)
    raw_flags = [is_heading(p, body_size) for p in ordered]

    title_at = _find_title(ordered, raw_flags, body_size, lexicon)
    if title_at is not None:
        raw_flags[title_at] = False
    # Reported flags mark display-prominent blocks (the title included, the
    # way markup annotators see it); section assembly uses raw_flags where
    # the title is exempt.
    flags = [
        (p, flag or i == title_at) for i, (p, flag) in enumerate(zip(ordered, raw_flags))
    ]

    if not any(raw_flags):
        if title_at is None:
            texts = [repair_text(p.text()) for p in ordered]
            doc = SectionedDocument(
                doc_id=doc_id,
                title=None,
                sections=[Section(label="other", heading="", paragraphs=texts)] if texts else [],
                figures=_collect_figures(ordered),
            )
            return doc, flags
        first_heading_at = len(ordered)
    else:
        first_heading_at = next(
            (i for i, flag in enumerate(raw_flags) if flag and (title_at is None or i > title_at)),
            len(ordered),
        )

    sections: list[Section] = []
    title: str | None = None
    for i, p in enumerate(ordered[:first_heading_at]):
        text = repair_text(p.text()).strip()
        if i == title_at:
            title = text
            sections.append(Section(label="title", heading="", paragraphs=[text]))
        elif re.match(r"^abstract\b", text, re.I):
            stripped = re.sub(r"^abstract\s*[-:.—]*\s*", "", text, flags=re.I)
            sections.append(Section(label="abstract", heading="", paragraphs=[stripped or text]))
        elif _looks_like_authors(text):
            sections.append(Section(label="authors", heading="", paragraphs=[text]))
        elif len(text.split()) > ABSTRACT_MIN_TOKENS:
            sections.append(Section(label="abstract", heading="", paragraphs=[text]))
        else:
            sections.append(Section(label="other", heading="", paragraphs=[text]))

    current: Section | None = None
    for p, flag in flags[first_heading_at:]:
        text = repair_text(p.text()).strip()
        if flag:
            label = lexicon.label_for(text)
            current = Section(label=label, heading=text, paragraphs=[])
            sections.append(current)
        else:
            if current is None:
                current = Section(label="other", heading="", paragraphs=[])
                sections.append(current)
            current.paragraphs.append(text)

    doc = SectionedDocument(
        doc_id=doc_id,
        title=title,
        sections=sections,
        figures=_collect_figures(ordered),
    )
    return doc, flags


def classify_sections(
    paragraphs: list[Paragraph],
    doc_id: str,
    lexicon: HeadingLexicon | None = None,
) -> SectionedDocument:
    doc, _ = classify_sections_detailed(paragraphs, doc_id, lexicon)
    return doc


def _collect_figures(paragraphs: list[Paragraph]) -> list[FigureRef]:
    refs = []
    for p in paragraphs:
        text = repair_text(p.text()).strip()
        if _FIGURE_RE.match(text):
            refs.append(FigureRef(page=p.page, caption=text[:120]))
    return refs
