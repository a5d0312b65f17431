"""Sentence segmentation, tokenization, and feature vectorization.

Three vector modes feed the sentence classifier: raw term counts, TF-IDF,
and TF-IDF over n-grams.  The TF-IDF convention is pinned here so tests are
well defined: idf(t) = ln((1 + N) / (1 + df(t))) + 1, vectors L2-normalized.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .textnorm import repair_text

VectorMode = str  # "count" | "tfidf" | "ngram_tfidf"

MODES = ("count", "tfidf", "ngram_tfidf")

# Words after which a period never ends a sentence.
_ABBREVIATIONS = {
    "fig", "figs", "eq", "eqs", "ref", "refs", "al", "et", "etc", "e.g",
    "i.e", "vs", "cf", "no", "dr", "prof", "approx", "ca", "wt", "vol",
    "min", "max", "conc", "temp", "sec",
}

_SENT_BOUNDARY = re.compile(r"([.!?])(\s+)(?=[A-Z0-9°(])")

# Token classes, tried in order: degree-sign units ("°c"), digit-led tokens
# with an optional decimal part and attached unit letters ("12", "0.5",
# "2h", "50%"), letter-led tokens with hyphens and trailing percent
# ("tio2", "two-step", "wt%").
_TOKEN_RE = re.compile(
    r"°[a-zμ]+"
    r"|\d+(?:\.\d+)?[a-zμ%]*"
    r"|[a-zμ][a-z0-9μ]*(?:-[a-z0-9μ]+)*%?"
)


@dataclass(frozen=True)
class Sentence:
    """A single sentence with its position inside one document section."""

    doc_id: str
    section_label: str
    index: int
    text: str


def split_sentences(text: str, doc_id: str = "", section_label: str = "") -> list[Sentence]:
    """Split section text into sentences.

    Splits on sentence-final punctuation followed by whitespace and a capital
    letter or digit, guarded against abbreviations ("Fig.", "et al.") and
    single-letter initials.  Decimal numbers are safe because the digit after
    the period is not preceded by whitespace.
    """
    text = repair_text(text).strip()
    if not text:
        return []

    pieces: list[str] = []
    start = 0
    for match in _SENT_BOUNDARY.finditer(text):
        if match.group(1) == ".":
            before = text[: match.start()]
            word = re.split(r"\s+", before)[-1].lower() if before else ""
            word = word.lstrip("([\"'")
            if word in _ABBREVIATIONS or re.fullmatch(r"[a-z]", word):
                continue
        pieces.append(text[start : match.end(1)].strip())
        start = match.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)

    return [
        Sentence(doc_id=doc_id, section_label=section_label, index=i, text=p)
        for i, p in enumerate(pieces)
        if p
    ]


def tokenize(text: str) -> list[str]:
    """Lowercase and split into tokens.

    Intra-token hyphens and mixed letter/digit runs survive ("two-step",
    "tio2"), while "100°C" becomes the two tokens "100" and "°c" so that
    quantities and units vectorize independently.
    """
    return _TOKEN_RE.findall(text.lower())


def tokenize_spans(text: str) -> list[tuple[str, int, int]]:
    """Like :func:`tokenize` but with (token, start, end) character offsets."""
    return [(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(text.lower())]


def ngrams(tokens: Sequence[str], lo: int, hi: int) -> list[str]:
    """Contiguous n-grams for n in [lo, hi], joined with single spaces."""
    out: list[str] = []
    for n in range(lo, hi + 1):
        if n == 1:
            out.extend(tokens)
        else:
            out.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return out


@dataclass
class Vocabulary:
    """Fitted term space shared by all vectors of one corpus.

    Indices are dense 0..|V|-1, assigned in lexicographic term order so the
    mapping is deterministic across runs.
    """

    index: dict[str, int]
    document_frequency: dict[str, int]
    total_docs: int
    ngram_range: tuple[int, int] = (1, 1)

    def __len__(self) -> int:
        return len(self.index)

    def idf(self, term: str) -> float:
        df = self.document_frequency[term]
        return math.log((1 + self.total_docs) / (1 + df)) + 1.0

    def save(self, path: str | Path) -> None:
        payload = {
            "terms": {t: {"index": i, "df": self.document_frequency[t]} for t, i in self.index.items()},
            "n_docs": self.total_docs,
            "ngram_range": list(self.ngram_range),
        }
        Path(path).write_text(
            json.dumps(payload, sort_keys=True, ensure_ascii=False), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        terms = payload["terms"]
        return cls(
            index={t: rec["index"] for t, rec in terms.items()},
            document_frequency={t: rec["df"] for t, rec in terms.items()},
            total_docs=payload["n_docs"],
            ngram_range=tuple(payload["ngram_range"]),
        )

    @classmethod
    def from_dict(cls, payload: dict) -> "Vocabulary":
        terms = payload["terms"]
        return cls(
            index={t: rec["index"] for t, rec in terms.items()},
            document_frequency={t: rec["df"] for t, rec in terms.items()},
            total_docs=payload["n_docs"],
            ngram_range=tuple(payload["ngram_range"]),
        )

    def to_dict(self) -> dict:
        return {
            "terms": {t: {"index": i, "df": self.document_frequency[t]} for t, i in self.index.items()},
            "n_docs": self.total_docs,
            "ngram_range": list(self.ngram_range),
        }


@dataclass(frozen=True)
class FeatureVector:
    """Sparse vector: strictly increasing indices, non-negative weights."""

    entries: tuple[tuple[int, float], ...]
    mode: VectorMode

    def norm(self) -> float:
        return math.sqrt(sum(w * w for _, w in self.entries))

    def as_dict(self) -> dict[int, float]:
        return dict(self.entries)


def fit_vocabulary(
    corpus: Iterable[Sequence[str]],
    min_df: int = 1,
    ngram_range: tuple[int, int] = (1, 1),
) -> Vocabulary:
    """Build a vocabulary over the n-grams of a tokenized corpus.

    Terms appearing in fewer than ``min_df`` documents are dropped.  Raises
    ``ValueError`` on an empty corpus or an empty surviving vocabulary.
    """
    lo, hi = ngram_range
    if not (1 <= lo <= hi):
        raise ValueError(f"invalid ngram_range {ngram_range!r}")
    df: Counter[str] = Counter()
    n_docs = 0
    for tokens in corpus:
        n_docs += 1
        df.update(set(ngrams(tokens, lo, hi)))
    if n_docs == 0:
        raise ValueError("empty corpus")
    kept = sorted(t for t, d in df.items() if d >= min_df)
    if not kept:
        raise ValueError("no terms satisfy min_df")
    return Vocabulary(
        index={t: i for i, t in enumerate(kept)},
        document_frequency={t: df[t] for t in kept},
        total_docs=n_docs,
        ngram_range=(lo, hi),
    )


def vectorize(tokens: Sequence[str], vocab: Vocabulary, mode: VectorMode = "count") -> FeatureVector:
    """Vectorize one tokenized sentence against a fitted vocabulary.

    count: raw term frequencies.  tfidf / ngram_tfidf: tf * idf, then L2
    normalization.  Out-of-vocabulary terms are ignored; an all-OOV sentence
    yields the (valid) zero vector.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    lo, hi = vocab.ngram_range
    counts: Counter[str] = Counter(t for t in ngrams(tokens, lo, hi) if t in vocab.index)
    if mode == "count":
        entries = sorted((vocab.index[t], float(c)) for t, c in counts.items())
        return FeatureVector(entries=tuple(entries), mode=mode)
    weighted = {vocab.index[t]: c * vocab.idf(t) for t, c in counts.items()}
    norm = math.sqrt(sum(w * w for w in weighted.values()))
    if norm > 0:
        weighted = {i: w / norm for i, w in weighted.items()}
    return FeatureVector(entries=tuple(sorted(weighted.items())), mode=mode)
