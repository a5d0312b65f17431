"""Binary relevant/irrelevant sentence classifier.

Multinomial Naive Bayes with Laplace smoothing, trained on feature vectors
from :mod:`recipeforge.nlp`.  All arithmetic is in log space; products of
per-term probabilities underflow floats long before real sentences get long.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import nlp
from .nlp import FeatureVector, Vocabulary

RELEVANT = "relevant"
IRRELEVANT = "irrelevant"
LABELS = (RELEVANT, IRRELEVANT)

# Report classes follow the 0/1 convention: 1 = relevant, 0 = irrelevant.
CLASS_IDS = {RELEVANT: 1, IRRELEVANT: 0}

MODEL_FORMAT = "recipeforge-nb"
MODEL_VERSION = 1


@dataclass
class TrainingSet:
    """Labeled vectors sharing one vocabulary and mode."""

    pairs: list[tuple[FeatureVector, str]]
    provenance: str = ""

    def __post_init__(self) -> None:
        for _, label in self.pairs:
            if label not in LABELS:
                raise ValueError(f"unknown label {label!r}")

    def labels_present(self) -> set[str]:
        return {label for _, label in self.pairs}


@dataclass
class NaiveBayesModel:
    log_prior: dict[str, float]
    log_likelihood: dict[str, list[float]]  # label -> per-term-index logs
    vocabulary: Vocabulary
    alpha: float
    mode: str

    def save(self, path: str | Path) -> None:
        payload = {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "alpha": self.alpha,
            "mode": self.mode,
            "log_prior": self.log_prior,
            "log_likelihood": self.log_likelihood,
            "vocabulary": self.vocabulary.to_dict(),
        }
        Path(path).write_text(
            json.dumps(payload, sort_keys=True, ensure_ascii=False), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "NaiveBayesModel":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if payload.get("format") != MODEL_FORMAT:
            raise ValueError(f"{path}: not a classifier model file")
        if payload.get("version") != MODEL_VERSION:
            raise ValueError(f"{path}: unsupported model version {payload.get('version')}")
        return cls(
            log_prior=payload["log_prior"],
            log_likelihood=payload["log_likelihood"],
            vocabulary=Vocabulary.from_dict(payload["vocabulary"]),
            alpha=payload["alpha"],
            mode=payload["mode"],
        )


@dataclass
class ClassifierReport:
    accuracy: float
    per_class: dict[int, dict[str, float]]  # class id -> precision/recall/f1
    confusion: list[list[int]]  # [actual][predicted], class order (0, 1)
    n_eval: int

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {str(k): v for k, v in self.per_class.items()},
            "confusion": self.confusion,
            "n_eval": self.n_eval,
        }


def train(data: TrainingSet, alpha: float = 1.0, vocab: Vocabulary | None = None) -> NaiveBayesModel:
    """Fit the model: smoothed per-class term likelihoods plus class priors.

    log_likelihood(t, c) = ln((count(t,c) + alpha) / (total(c) + alpha * |V|)).
    When no vocabulary is supplied the term space is inferred from the widest
    vector and a placeholder vocabulary of matching size is attached.
    """
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    if not data.pairs:
        raise ValueError("empty training set")
    if data.labels_present() != set(LABELS):
        raise ValueError("training data must contain both classes")

    modes = {v.mode for v, _ in data.pairs}
    if len(modes) != 1:
        raise ValueError(f"mixed vector modes in training set: {sorted(modes)}")
    mode = modes.pop()

    if vocab is not None:
        size = len(vocab)
    else:
        size = max((max((i for i, _ in v.entries), default=-1) for v, _ in data.pairs)) + 1
        vocab = Vocabulary(
            index={f"t{i}": i for i in range(size)},
            document_frequency={f"t{i}": 1 for i in range(size)},
            total_docs=len(data.pairs),
        )

    counts = {label: [0.0] * size for label in LABELS}
    n_per_class = {label: 0 for label in LABELS}
    for vector, label in data.pairs:
        n_per_class[label] += 1
        row = counts[label]
        for i, w in vector.entries:
            if i >= size:
                raise ValueError(f"vector index {i} outside vocabulary of size {size}")
            row[i] += w

    total = sum(n_per_class.values())
    log_prior = {label: math.log(n_per_class[label] / total) for label in LABELS}
    log_likelihood = {}
    for label in LABELS:
        row = counts[label]
        denom = sum(row) + alpha * size
        log_likelihood[label] = [math.log((c + alpha) / denom) for c in row]

    return NaiveBayesModel(
        log_prior=log_prior,
        log_likelihood=log_likelihood,
        vocabulary=vocab,
        alpha=alpha,
        mode=mode,
    )


def train_on_corpus(
    texts: Sequence[str],
    labels: Sequence[str],
    mode: str = "count",
    alpha: float = 1.0,
    min_df: int = 1,
    ngram_range: tuple[int, int] | None = None,
) -> NaiveBayesModel:
    """Tokenize, fit a vocabulary, vectorize, and train in one call."""
    if len(texts) != len(labels):
        raise ValueError("texts and labels length mismatch")
    if ngram_range is None:
        ngram_range = (1, 2) if mode == "ngram_tfidf" else (1, 1)
    tokenized = [nlp.tokenize(t) for t in texts]
    vocab = nlp.fit_vocabulary(tokenized, min_df=min_df, ngram_range=ngram_range)
    vec_mode = "count" if mode == "count" else mode
    pairs = [(nlp.vectorize(toks, vocab, vec_mode), lab) for toks, lab in zip(tokenized, labels)]
    return train(TrainingSet(pairs=pairs), alpha=alpha, vocab=vocab)


def predict(model: NaiveBayesModel, vector: FeatureVector) -> tuple[str, dict[str, float]]:
    """Classify one vector; returns (label, per-class log-score).

    Score(c) = log-prior(c) + sum_t weight(t) * log-likelihood(t, c).
    Ties break toward ``irrelevant`` to keep downstream recipe precision high.
    """
    scores = {}
    for label in LABELS:
        row = model.log_likelihood[label]
        s = model.log_prior[label]
        for i, w in vector.entries:
            s += w * row[i]
        scores[label] = s
    if scores[RELEVANT] > scores[IRRELEVANT]:
        return RELEVANT, scores
    return IRRELEVANT, scores


def predict_text(model: NaiveBayesModel, text: str) -> tuple[str, dict[str, float]]:
    """Tokenize and classify raw sentence text with the model's own vocab."""
    vec_mode = "count" if model.mode == "count" else model.mode
    vector = nlp.vectorize(nlp.tokenize(text), model.vocabulary, vec_mode)
    return predict(model, vector)


def evaluate(model: NaiveBayesModel, heldout: TrainingSet) -> ClassifierReport:
    """Confusion matrix and accuracy / per-class precision, recall, F1."""
    if not heldout.pairs:
        raise ValueError("empty held-out set")
    # confusion[actual][predicted], indices per CLASS_IDS.
    confusion = [[0, 0], [0, 0]]
    for vector, label in heldout.pairs:
        predicted, _ = predict(model, vector)
        confusion[CLASS_IDS[label]][CLASS_IDS[predicted]] += 1
    return report_from_confusion(confusion)


def report_from_confusion(confusion: list[list[int]]) -> ClassifierReport:
    n = sum(sum(row) for row in confusion)
    correct = confusion[0][0] + confusion[1][1]
    per_class = {}
    for cid in (0, 1):
        tp = confusion[cid][cid]
        fp = confusion[1 - cid][cid]
        fn = confusion[cid][1 - cid]
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[cid] = {"precision": precision, "recall": recall, "f1": f1}
    return ClassifierReport(
        accuracy=correct / n,
        per_class=per_class,
        confusion=[list(row) for row in confusion],
        n_eval=n,
    )


def compare_feature_modes(
    texts: Sequence[str],
    labels: Sequence[str],
    modes: Iterable[str] = nlp.MODES,
    seed: int = 0,
    test_fraction: float = 0.25,
    alpha: float = 1.0,
) -> dict[str, ClassifierReport]:
    """Train/evaluate each feature mode on one identical seeded split."""
    if len(texts) != len(labels):
        raise ValueError("texts and labels length mismatch")
    order = list(range(len(texts)))
    random.Random(seed).shuffle(order)
    n_test = max(1, int(len(order) * test_fraction))
    test_idx = order[:n_test]
    train_idx = order[n_test:]

    reports: dict[str, ClassifierReport] = {}
    for mode in modes:
        model = train_on_corpus(
            [texts[i] for i in train_idx], [labels[i] for i in train_idx], mode=mode, alpha=alpha
        )
        vec_mode = "count" if mode == "count" else mode
        pairs = [
            (nlp.vectorize(nlp.tokenize(texts[i]), model.vocabulary, vec_mode), labels[i])
            for i in test_idx
        ]
        reports[mode] = evaluate(model, TrainingSet(pairs=pairs))
    return reports
