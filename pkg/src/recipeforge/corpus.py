"""Searchable store over processed documents.

An in-memory inverted index with a single-file JSON persistence format.
Ranking is field-weighted TF-IDF cosine (weights: title 3, abstract 2,
experimental 1.5, everything else 1) rather than BM25, so a brute-force
scorer can reproduce rankings exactly; corpora here are desk-scale.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import nlp
from .textnorm import repair_text

INDEX_FORMAT = "recipeforge-index"
INDEX_VERSION = 1

FIELD_WEIGHTS = {"title": 3.0, "abstract": 2.0, "experimental": 1.5}
DEFAULT_FIELD_WEIGHT = 1.0

SNIPPET_CHARS = 160


def field_weight(label: str) -> float:
    return FIELD_WEIGHTS.get(label, DEFAULT_FIELD_WEIGHT)


class DuplicateDocument(ValueError):
    pass


class UnknownDocument(KeyError):
    pass


@dataclass
class IndexedDocument:
    doc_id: str
    title: str = ""
    doi: str | None = None
    sections: dict[str, str] = field(default_factory=dict)  # label -> text
    recipe: dict | None = None
    materials: set[str] = field(default_factory=set)
    morphologies: set[str] = field(default_factory=set)
    figures: list[dict] = field(default_factory=list)

    def fields(self) -> dict[str, str]:
        out = {"title": self.title}
        out.update(self.sections)
        return {k: v for k, v in out.items() if v}

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "title": self.title,
            "doi": self.doi,
            "sections": dict(self.sections),
            "recipe": self.recipe,
            "materials": sorted(self.materials),
            "morphologies": sorted(self.morphologies),
            "figures": list(self.figures),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "IndexedDocument":
        return cls(
            doc_id=payload["doc_id"],
            title=payload.get("title") or "",
            doi=payload.get("doi"),
            sections=dict(payload.get("sections", {})),
            recipe=payload.get("recipe"),
            materials=set(payload.get("materials", [])),
            morphologies=set(payload.get("morphologies", [])),
            figures=list(payload.get("figures", [])),
        )


def load_facet_gazetteer() -> dict[str, list[str]]:
    text = resources.files("recipeforge.data").joinpath("facets.json").read_text("utf-8")
    return json.loads(text)


def extract_facets(title: str, abstract: str, gazetteer: dict[str, list[str]] | None = None) -> tuple[set[str], set[str]]:
    """Controlled-vocabulary facet values found in title + abstract."""
    gazetteer = gazetteer or load_facet_gazetteer()
    text = repair_text(f"{title} {abstract}").lower()
    materials = set()
    morphologies = set()
    for name in gazetteer["materials"]:
        if re.search(rf"(?<![a-z0-9]){re.escape(name)}(?![a-z0-9])", text):
            materials.add(name)
    for name in gazetteer["morphologies"]:
        if re.search(rf"(?<![a-z0-9]){re.escape(name)}(?![a-z0-9])", text):
            morphologies.add(name)
    return materials, morphologies


@dataclass
class SearchHit:
    doc_id: str
    score: float
    snippet: str

    def to_dict(self) -> dict:
        return {"doc_id": self.doc_id, "score": self.score, "snippet": self.snippet}


@dataclass
class QueryResult:
    hits: list[SearchHit]
    total: int

    def to_dict(self) -> dict:
        return {"hits": [h.to_dict() for h in self.hits], "total": self.total}


class CorpusIndex:
    """Inverted index plus full document store.

    Postings map term -> {doc_id -> {field -> tf}}; document norms are
    derived at query time from the current df table so reindexing stays
    consistent.
    """

    def __init__(self) -> None:
        self.documents: dict[str, IndexedDocument] = {}
        self.postings: dict[str, dict[str, dict[str, int]]] = defaultdict(dict)

    # -- building -------------------------------------------------------

    def index_document(self, doc: IndexedDocument, reindex: bool = False) -> None:
        if doc.doc_id in self.documents and not reindex:
            raise DuplicateDocument(f"document already indexed: {doc.doc_id}")
        if doc.doc_id in self.documents:
            self._remove_postings(doc.doc_id)
        self.documents[doc.doc_id] = doc
        for label, text in doc.fields().items():
            for term, tf in Counter(nlp.tokenize(repair_text(text))).items():
                self.postings[term].setdefault(doc.doc_id, {})[label] = tf

    def _remove_postings(self, doc_id: str) -> None:
        empty = []
        for term, docs in self.postings.items():
            docs.pop(doc_id, None)
            if not docs:
                empty.append(term)
        for term in empty:
            del self.postings[term]

    # -- querying -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.documents)

    def idf(self, term: str) -> float:
        df = len(self.postings.get(term, {}))
        return math.log((1 + len(self.documents)) / (1 + df)) + 1.0

    def document_weights(self, doc_id: str) -> dict[str, float]:
        """Per-term field-weighted tf-idf vector of one document."""
        doc = self.documents[doc_id]
        weights: dict[str, float] = defaultdict(float)
        for label, text in doc.fields().items():
            w = field_weight(label)
            for term, tf in Counter(nlp.tokenize(repair_text(text))).items():
                weights[term] += w * tf * self.idf(term)
        return dict(weights)

    def _doc_norm(self, doc_id: str) -> float:
        return math.sqrt(sum(v * v for v in self.document_weights(doc_id).values()))

    def get_document(self, doc_id: str) -> IndexedDocument:
        if doc_id not in self.documents:
            raise UnknownDocument(doc_id)
        return self.documents[doc_id]

    def facet_values(self) -> dict[str, list[str]]:
        materials: set[str] = set()
        morphologies: set[str] = set()
        for doc in self.documents.values():
            materials |= doc.materials
            morphologies |= doc.morphologies
        return {"materials": sorted(materials), "morphologies": sorted(morphologies)}

    def _facet_candidates(self, material: str | None, morphology: str | None) -> list[str]:
        out = []
        for doc_id, doc in self.documents.items():
            if material is not None and material.lower() not in doc.materials:
                continue
            if morphology is not None and morphology.lower() not in doc.morphologies:
                continue
            out.append(doc_id)
        return out

    def search(
        self,
        query: str = "",
        material: str | None = None,
        morphology: str | None = None,
        k: int = 10,
    ) -> QueryResult:
        """Facet-filtered, TF-IDF-cosine-ranked search.

        Pure facet queries (no text) return all matching documents ordered
        by doc_id with score 0.  An empty query with no facets is an error.
        """
        query = query.strip()
        if not query and material is None and morphology is None:
            raise ValueError("empty query and no facet filters")

        candidates = self._facet_candidates(material, morphology)
        if not query:
            hits = [
                SearchHit(doc_id=doc_id, score=0.0, snippet=self._snippet(doc_id, []))
                for doc_id in sorted(candidates)
            ]
            return QueryResult(hits=hits[:k], total=len(hits))

        q_counts = Counter(nlp.tokenize(repair_text(query)))
        q_weights = {t: tf * self.idf(t) for t, tf in q_counts.items()}
        q_norm = math.sqrt(sum(v * v for v in q_weights.values()))
        if q_norm == 0:
            return QueryResult(hits=[], total=0)

        candidate_set = set(candidates)
        dots: dict[str, float] = defaultdict(float)
        for term, q_w in q_weights.items():
            idf = self.idf(term)
            for doc_id, per_field in self.postings.get(term, {}).items():
                if doc_id not in candidate_set:
                    continue
                d_w = sum(field_weight(label) * tf for label, tf in per_field.items()) * idf
                dots[doc_id] += q_w * d_w

        scored = []
        for doc_id, dot in dots.items():
            if dot <= 0:
                continue
            norm = self._doc_norm(doc_id)
            if norm == 0:
                continue
            scored.append((dot / (norm * q_norm), doc_id))
        scored.sort(key=lambda rec: (-rec[0], rec[1]))
        terms = list(q_weights)
        hits = [
            SearchHit(doc_id=doc_id, score=score, snippet=self._snippet(doc_id, terms))
            for score, doc_id in scored[:k]
        ]
        return QueryResult(hits=hits, total=len(scored))

    def _snippet(self, doc_id: str, terms: list[str]) -> str:
        """A window from the best-weighted field containing a query term."""
        doc = self.documents[doc_id]
        ordered = sorted(doc.fields().items(), key=lambda kv: -field_weight(kv[0]))
        for label, text in ordered:
            lowered = text.lower()
            for term in terms:
                pos = lowered.find(term)
                if pos >= 0:
                    start = max(0, pos - SNIPPET_CHARS // 4)
                    snippet = text[start : start + SNIPPET_CHARS].strip()
                    return snippet + ("…" if start + SNIPPET_CHARS < len(text) else "")
        title = doc.title or next(iter(doc.fields().values()), "")
        return title[:SNIPPET_CHARS]

    # -- persistence ----------------------------------------------------

    def save(self, path: str | Path) -> None:
        payload = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "documents": {doc_id: doc.to_dict() for doc_id, doc in sorted(self.documents.items())},
            "postings": {
                term: {doc_id: fields for doc_id, fields in sorted(docs.items())}
                for term, docs in sorted(self.postings.items())
            },
        }
        tmp = Path(str(path) + ".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True, ensure_ascii=False), encoding="utf-8")
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | Path) -> "CorpusIndex":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if payload.get("format") != INDEX_FORMAT:
            raise ValueError(f"{path}: not an index file")
        if payload.get("version") != INDEX_VERSION:
            raise ValueError(f"{path}: unsupported index version {payload.get('version')}")
        index = cls()
        for doc_id, rec in payload["documents"].items():
            index.documents[doc_id] = IndexedDocument.from_dict(rec)
        for term, docs in payload["postings"].items():
            index.postings[term] = {
                doc_id: {label: int(tf) for label, tf in fields.items()}
                for doc_id, fields in docs.items()
            }
        return index
