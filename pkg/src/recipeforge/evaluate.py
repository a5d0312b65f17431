"""Recipe-output scoring against hand-annotated ground truth.

Two views of quality per document: whole-text cosine similarity, and a
sentence-level match tally where full credit (1.0) needs pairwise similarity
of at least 0.70 and partial credit (0.5) needs strictly more than 0.50.
A high document similarity paired with low sentence precision is legal and
worth inspecting, so both always appear in the report.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .nlp import tokenize
from .textnorm import repair_text

FULL_CREDIT_AT = 0.70   # similarity >= this: credit 1.0
HALF_CREDIT_ABOVE = 0.50  # similarity strictly > this (and < full): credit 0.5


def term_vector(text: str) -> Counter[str]:
    """Raw term frequencies of the repaired, lowercased, tokenized text."""
    return Counter(tokenize(repair_text(text)))


def cosine_similarity(a: str, b: str) -> float:
    """Cosine of the two texts' term-frequency vectors; 0.0 if either is empty."""
    va, vb = term_vector(a), term_vector(b)
    dot = sum(va[t] * vb[t] for t in va.keys() & vb.keys())
    na = sum(c * c for c in va.values())
    nb = sum(c * c for c in vb.values())
    if na == 0 or nb == 0:
        return 0.0
    return dot / math.sqrt(na * nb)


@dataclass
class MatchedPair:
    out_idx: int
    truth_idx: int
    sim: float
    credit: float

    def to_dict(self) -> dict:
        return {"out_idx": self.out_idx, "truth_idx": self.truth_idx, "sim": self.sim, "credit": self.credit}


@dataclass
class MatchTally:
    """Credit sum plus extra/missed counts from sentence-level matching."""

    t_r: float
    e_r: int
    m_r: int
    pairs: list[MatchedPair] = field(default_factory=list)

    def precision(self) -> float:
        denom = self.t_r + self.e_r
        return self.t_r / denom if denom > 0 else 0.0

    def recall(self) -> float:
        denom = self.t_r + self.m_r
        return self.t_r / denom if denom > 0 else 0.0


@dataclass
class EvalReport:
    doc_id: str
    doc_similarity: float
    precision: float
    recall: float
    f1: float
    tally: MatchTally

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "doc_similarity": self.doc_similarity,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "t_r": self.tally.t_r,
            "e_r": self.tally.e_r,
            "m_r": self.tally.m_r,
            "pairs": [p.to_dict() for p in self.tally.pairs],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )


def credit_for(sim: float) -> float:
    """Credit per the threshold rules; 0.0 means the pair is rejected."""
    if sim >= FULL_CREDIT_AT:
        return 1.0
    if sim > HALF_CREDIT_ABOVE:
        return 0.5
    return 0.0


def sentence_match(output_sentences: Sequence[str], truth_sentences: Sequence[str]) -> MatchTally:
    """Greedy one-to-one assignment by descending pairwise cosine.

    Matched pairs earn credit per :func:`credit_for`; pairs at or below the
    half-credit floor are rejected.  Leftover output sentences count as
    extra (E_r), leftover truth sentences as missed (M_r).
    """
    sims = []
    for i, out in enumerate(output_sentences):
        for j, truth in enumerate(truth_sentences):
            sims.append((cosine_similarity(out, truth), i, j))
    # Deterministic: best similarity first, then lowest indices.
    sims.sort(key=lambda rec: (-rec[0], rec[1], rec[2]))

    used_out: set[int] = set()
    used_truth: set[int] = set()
    pairs: list[MatchedPair] = []
    t_r = 0.0
    for sim, i, j in sims:
        if sim <= HALF_CREDIT_ABOVE:
            break
        if i in used_out or j in used_truth:
            continue
        used_out.add(i)
        used_truth.add(j)
        credit = credit_for(sim)
        t_r += credit
        pairs.append(MatchedPair(out_idx=i, truth_idx=j, sim=sim, credit=credit))

    e_r = len(output_sentences) - len(used_out)
    m_r = len(truth_sentences) - len(used_truth)
    return MatchTally(t_r=t_r, e_r=e_r, m_r=m_r, pairs=pairs)


def doc_similarity(output_text: str, truth_text: str) -> float:
    """Whole-document cosine: concatenated recipe output vs full truth text."""
    return cosine_similarity(output_text, truth_text)


def report(
    doc_id: str,
    output_sentences: Sequence[str],
    truth_sentences: Sequence[str],
    truth_doc_id: str | None = None,
) -> EvalReport:
    """Combine document similarity and the sentence tally into one report.

    Comparisons only make sense within one document; a mismatched truth
    doc id is an error, not a zero score.
    """
    if truth_doc_id is not None and truth_doc_id != doc_id:
        raise ValueError(f"cross-document comparison: {doc_id!r} vs {truth_doc_id!r}")
    sim = doc_similarity(" ".join(output_sentences), " ".join(truth_sentences))
    tally = sentence_match(output_sentences, truth_sentences)
    precision = tally.precision()
    recall = tally.recall()
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return EvalReport(
        doc_id=doc_id,
        doc_similarity=sim,
        precision=precision,
        recall=recall,
        f1=f1,
        tally=tally,
    )


def corpus_summary(reports: Sequence[EvalReport]) -> dict:
    """Average per-document reports.

    Macro averages (mean of per-document metrics) are the primary numbers;
    micro averages (pooled T_r/E_r/M_r) are reported alongside since the
    choice is a convention.
    """
    if not reports:
        raise ValueError("no reports to summarize")
    n = len(reports)
    t_r = sum(r.tally.t_r for r in reports)
    e_r = sum(r.tally.e_r for r in reports)
    m_r = sum(r.tally.m_r for r in reports)
    micro_p = t_r / (t_r + e_r) if t_r + e_r > 0 else 0.0
    micro_r = t_r / (t_r + m_r) if t_r + m_r > 0 else 0.0
    micro_f1 = 2 * micro_p * micro_r / (micro_p + micro_r) if micro_p + micro_r > 0 else 0.0
    return {
        "n_docs": n,
        "doc_similarity": sum(r.doc_similarity for r in reports) / n,
        "precision": sum(r.precision for r in reports) / n,
        "recall": sum(r.recall for r in reports) / n,
        "f1": sum(r.f1 for r in reports) / n,
        "micro": {"precision": micro_p, "recall": micro_r, "f1": micro_f1},
    }


def load_truth(path: str | Path) -> tuple[str, list[str]]:
    """Read a ground-truth recipe file: {doc_id, sentences:[string]}."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return payload["doc_id"], list(payload["sentences"])
