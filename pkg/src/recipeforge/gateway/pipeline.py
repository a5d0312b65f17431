"""End-to-end batch pipeline: span records in, indexed recipes out.

Each document runs ingest -> payload -> classify -> recipe -> (optional)
eval -> index; one document's failure is recorded and never aborts the
batch.  Given identical inputs and config the outputs are byte-identical,
so re-runs are safe.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .. import evaluate as evalmod
from .. import nlp, payload, stepclf
from ..corpus import CorpusIndex, IndexedDocument, extract_facets
from ..recipe import ActionLexicon, SentenceRef, extract_recipe, load_material_gazetteer

logger = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    input_dir: Path
    output_dir: Path
    index_path: Path | None = None
    model_path: Path | None = None          # None: treat every sentence as relevant
    lexicon_path: Path | None = None
    gazetteer_path: Path | None = None
    heading_lexicon_path: Path | None = None
    truth_dir: Path | None = None           # per-doc ground-truth recipes for eval
    grouping: str = "heuristic"
    eps: float | None = None
    min_pts: int = 3
    run_eval: bool = True

    def validate(self) -> None:
        if not Path(self.input_dir).exists():
            raise FileNotFoundError(f"input dir not found: {self.input_dir}")
        for label, p in (
            ("model", self.model_path),
            ("lexicon", self.lexicon_path),
            ("gazetteer", self.gazetteer_path),
            ("heading lexicon", self.heading_lexicon_path),
        ):
            if p is not None and not Path(p).exists():
                raise FileNotFoundError(f"{label} file not found: {p}")
        if self.grouping not in ("heuristic", "dbscan"):
            raise ValueError(f"unknown grouping {self.grouping!r}")
        if self.eps is not None and self.eps <= 0:
            raise ValueError("eps must be > 0")
        if self.min_pts < 1:
            raise ValueError("min_pts must be >= 1")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        kwargs = {}
        for key in (
            "input_dir", "output_dir", "index_path", "model_path", "lexicon_path",
            "gazetteer_path", "heading_lexicon_path", "truth_dir",
        ):
            if key in raw and raw[key] is not None:
                kwargs[key] = Path(raw[key])
        for key in ("grouping", "eps", "min_pts", "run_eval"):
            if key in raw:
                kwargs[key] = raw[key]
        return cls(**kwargs)


@dataclass
class DocumentStatus:
    doc_id: str
    source: str
    ok: bool
    stages: dict[str, str] = field(default_factory=dict)  # stage -> "ok"|"failed"|"skipped"
    error: str | None = None
    n_steps: int = 0

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "source": self.source,
            "ok": self.ok,
            "stages": dict(self.stages),
            "error": self.error,
            "n_steps": self.n_steps,
        }


@dataclass
class PipelineReport:
    documents: list[DocumentStatus] = field(default_factory=list)

    @property
    def n_ok(self) -> int:
        return sum(1 for d in self.documents if d.ok)

    @property
    def n_failed(self) -> int:
        return len(self.documents) - self.n_ok

    def to_dict(self) -> dict:
        return {
            "n_ok": self.n_ok,
            "n_failed": self.n_failed,
            "documents": [d.to_dict() for d in self.documents],
        }


def _input_files(input_dir: Path) -> list[Path]:
    files = []
    for p in sorted(Path(input_dir).iterdir()):
        if p.suffix.lower() in (".json", ".pdf") and p.is_file():
            files.append(p)
    return files


def experimental_sentences(doc: payload.SectionedDocument) -> list[tuple[SentenceRef, str]]:
    """Sentences of the experimental sections, indexed contiguously."""
    out: list[tuple[SentenceRef, str]] = []
    text = doc.section_text("experimental")
    for sentence in nlp.split_sentences(text, doc_id=doc.doc_id, section_label="experimental"):
        out.append(
            (SentenceRef(doc=doc.doc_id, section="experimental", sentence=sentence.index), sentence.text)
        )
    return out


def run_pipeline(config: PipelineConfig) -> PipelineReport:
    config.validate()
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    model = stepclf.NaiveBayesModel.load(config.model_path) if config.model_path else None
    lexicon = ActionLexicon.load(config.lexicon_path) if config.lexicon_path else ActionLexicon.default()
    gazetteer = load_material_gazetteer(config.gazetteer_path)
    heading_lexicon = (
        payload.HeadingLexicon.load(config.heading_lexicon_path)
        if config.heading_lexicon_path
        else None
    )

    index = CorpusIndex()
    report = PipelineReport()

    for source in _input_files(config.input_dir):
        status = DocumentStatus(doc_id=source.stem, source=str(source), ok=False)
        report.documents.append(status)
        try:
            result = payload.extract_document(
                source,
                grouping=config.grouping,
                eps=config.eps,
                min_pts=config.min_pts,
                lexicon=heading_lexicon,
            )
            status.doc_id = result.document.doc_id
            status.stages["payload"] = "ok"
        except Exception as exc:
            status.stages["payload"] = "failed"
            status.error = str(exc)
            logger.warning("payload failed for %s: %s", source, exc)
            continue

        doc = result.document
        try:
            sentences = experimental_sentences(doc)
            if model is not None:
                kept = []
                for ref, text in sentences:
                    label, _ = stepclf.predict_text(model, text)
                    if label == stepclf.RELEVANT:
                        kept.append((ref, text))
                sentences = kept
            status.stages["classify"] = "ok" if model is not None else "skipped"
        except Exception as exc:
            status.stages["classify"] = "failed"
            status.error = str(exc)
            continue

        try:
            recipe = extract_recipe(doc.doc_id, sentences, lexicon=lexicon, gazetteer=gazetteer)
            status.n_steps = len(recipe.steps)
            status.stages["recipe"] = "ok"
        except Exception as exc:
            status.stages["recipe"] = "failed"
            status.error = str(exc)
            continue

        doc.save(out_dir / f"{doc.doc_id}.sections.json")
        recipe.save(out_dir / f"{doc.doc_id}.recipe.json")

        if config.run_eval and config.truth_dir is not None:
            truth_file = Path(config.truth_dir) / f"{doc.doc_id}.json"
            if truth_file.exists():
                try:
                    truth_id, truth_sentences = evalmod.load_truth(truth_file)
                    eval_report = evalmod.report(
                        doc.doc_id,
                        [s.raw_text for s in recipe.steps],
                        truth_sentences,
                        truth_doc_id=truth_id,
                    )
                    eval_report.save(out_dir / f"{doc.doc_id}.eval.json")
                    status.stages["eval"] = "ok"
                except Exception as exc:
                    status.stages["eval"] = "failed"
                    status.error = str(exc)
                    continue
            else:
                status.stages["eval"] = "skipped"

        try:
            abstract = doc.section_text("abstract")
            materials, morphologies = extract_facets(doc.title or "", abstract)
            indexed = IndexedDocument(
                doc_id=doc.doc_id,
                title=doc.title or "",
                doi=_find_doi(doc),
                sections={label: doc.section_text(label) for label in set(doc.labels())},
                recipe=recipe.to_dict(),
                materials=materials,
                morphologies=morphologies,
                figures=[f.to_dict() for f in doc.figures],
            )
            index.index_document(indexed, reindex=True)
            status.stages["index"] = "ok"
        except Exception as exc:
            status.stages["index"] = "failed"
            status.error = str(exc)
            continue

        status.ok = True

    if config.index_path is not None:
        index.save(config.index_path)
    (out_dir / "pipeline_report.json").write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return report


def _find_doi(doc: payload.SectionedDocument) -> str | None:
    from ..acquire import DOI_RE

    for section in doc.sections:
        if section.label in ("title", "authors", "other", "abstract"):
            for text in section.paragraphs:
                m = DOI_RE.search(text)
                if m:
                    return m.group(0).rstrip(".,;")
    return None
