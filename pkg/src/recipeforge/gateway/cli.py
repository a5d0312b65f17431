"""Top-level command line: crawl | extract | score-layout | classify |
recipe | eval | index | run | serve.

Exit codes: 0 success, 1 fatal configuration error, 2 partial failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .. import evaluate as evalmod
from .. import acquire, payload, stepclf
from ..corpus import CorpusIndex, IndexedDocument, extract_facets
from ..recipe import ActionLexicon, Recipe, extract_recipe
from .pipeline import PipelineConfig, experimental_sentences, run_pipeline

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2


def _print(payload_obj) -> None:
    print(json.dumps(payload_obj, indent=2, sort_keys=True, ensure_ascii=False))


def cmd_crawl(args) -> int:
    overrides = {}
    if args.config:
        overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
    seeds_file = overrides.get("seeds", args.seeds)
    if seeds_file is None:
        print("crawl needs --seeds or a config file with a seeds entry", file=sys.stderr)
        return EXIT_FATAL
    config = acquire.CrawlConfig(
        seeds=acquire.load_seed_file(seeds_file),
        max_depth=int(overrides.get("depth", args.depth)),
        output_dir=Path(overrides.get("out", args.out)),
        politeness_delay_ms=int(overrides.get("delay_ms", args.delay_ms)),
        max_docs=int(overrides.get("max_docs", args.max_docs)),
    )
    report = acquire.crawl(config)
    _print(
        {
            "pages_visited": report.pages_visited,
            "pdfs_downloaded": report.pdfs_downloaded,
            "errors": report.errors,
        }
    )
    return EXIT_OK if report.errors == 0 else EXIT_PARTIAL


def cmd_extract(args) -> int:
    source = Path(args.infile)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    sources = sorted(source.iterdir()) if source.is_dir() else [source]
    failures = 0
    for path in sources:
        if path.suffix.lower() not in (".json", ".pdf"):
            continue
        try:
            result = payload.extract_document(
                path, grouping=args.grouping, eps=args.eps, min_pts=args.min_pts
            )
        except Exception as exc:
            logging.error("extraction failed for %s: %s", path, exc)
            failures += 1
            continue
        result.document.save(out_dir / f"{result.document.doc_id}.sections.json")
    return EXIT_PARTIAL if failures else EXIT_OK


def cmd_score_layout(args) -> int:
    truth_id, truth = payload.load_truth_file(args.truth)
    pred_payload = json.loads(Path(args.pred).read_text(encoding="utf-8"))
    if "pages" in pred_payload:
        result = payload.extract_document(Path(args.pred))
        if result.document.doc_id != truth_id:
            print(f"document id mismatch: {result.document.doc_id!r} vs {truth_id!r}", file=sys.stderr)
            return EXIT_FATAL
        predictions = payload.predicted_regions(result)
    else:
        if pred_payload.get("doc_id") != truth_id:
            print(f"document id mismatch: {pred_payload.get('doc_id')!r} vs {truth_id!r}", file=sys.stderr)
            return EXIT_FATAL
        predictions = [
            payload.PredictedRegion(page=int(r["page"]), bbox=tuple(r["bbox"]), label=r["label"])
            for r in pred_payload["regions"]
        ]
    score = payload.score_against_ground_truth(predictions, truth)
    tau = payload.reading_order_tau(
        [p for p in predictions if p.label != "header"],
        [t for t in truth if t.label != "header"],
    )
    out = score.to_dict()
    out["reading_order_tau"] = tau
    _print(out)
    return EXIT_OK


def _load_labeled(path: Path) -> tuple[list[str], list[str]]:
    payload_obj = json.loads(path.read_text(encoding="utf-8"))
    records = payload_obj["sentences"] if isinstance(payload_obj, dict) else payload_obj
    texts = [r["text"] for r in records]
    labels = [r["label"] for r in records]
    return texts, labels


def cmd_classify_train(args) -> int:
    texts, labels = _load_labeled(Path(args.data))
    mode = {"count": "count", "tfidf": "tfidf", "ngram": "ngram_tfidf"}[args.mode]
    model = stepclf.train_on_corpus(texts, labels, mode=mode, alpha=args.alpha)
    model.save(args.out)
    _print({"model": str(args.out), "mode": mode, "vocabulary": len(model.vocabulary)})
    return EXIT_OK


def cmd_classify_predict(args) -> int:
    model = stepclf.NaiveBayesModel.load(args.model)
    payload_obj = json.loads(Path(args.infile).read_text(encoding="utf-8"))
    if isinstance(payload_obj, dict):
        sentences = [r["text"] if isinstance(r, dict) else r for r in payload_obj["sentences"]]
    else:
        sentences = list(payload_obj)
    out = []
    for text in sentences:
        label, scores = stepclf.predict_text(model, text)
        out.append({"text": text, "label": label, "scores": scores})
    _print(out)
    return EXIT_OK


def cmd_recipe_extract(args) -> int:
    doc = payload.SectionedDocument.load(args.doc)
    model = stepclf.NaiveBayesModel.load(args.model) if args.model else None
    lexicon = ActionLexicon.load(args.lexicon) if args.lexicon else ActionLexicon.default()
    sentences = experimental_sentences(doc)
    if model is not None:
        sentences = [
            (ref, text)
            for ref, text in sentences
            if stepclf.predict_text(model, text)[0] == stepclf.RELEVANT
        ]
    recipe = extract_recipe(doc.doc_id, sentences, lexicon=lexicon)
    recipe.save(args.out)
    _print({"doc_id": doc.doc_id, "steps": len(recipe.steps), "out": str(args.out)})
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.corpus:
        reports = []
        for pred_file in sorted(Path(args.corpus).glob("*.recipe.json")):
            truth_file = pred_file.with_name(pred_file.name.replace(".recipe.json", ".truth.json"))
            if not truth_file.exists():
                continue
            recipe = Recipe.load(pred_file)
            truth_id, truth_sentences = evalmod.load_truth(truth_file)
            reports.append(
                evalmod.report(
                    recipe.doc_id,
                    [s.raw_text for s in recipe.steps],
                    truth_sentences,
                    truth_doc_id=truth_id,
                )
            )
        if not reports:
            print("no prediction/truth pairs found", file=sys.stderr)
            return EXIT_FATAL
        _print(evalmod.corpus_summary(reports))
        return EXIT_OK
    recipe = Recipe.load(args.pred)
    truth_id, truth_sentences = evalmod.load_truth(args.truth)
    report = evalmod.report(
        recipe.doc_id, [s.raw_text for s in recipe.steps], truth_sentences, truth_doc_id=truth_id
    )
    _print(report.to_dict())
    return EXIT_OK


def cmd_index_build(args) -> int:
    index = CorpusIndex()
    docs_dir = Path(args.docs)
    count = 0
    for sections_file in sorted(docs_dir.glob("*.sections.json")):
        doc = payload.SectionedDocument.load(sections_file)
        recipe_file = sections_file.with_name(sections_file.name.replace(".sections.json", ".recipe.json"))
        recipe_dict = json.loads(recipe_file.read_text(encoding="utf-8")) if recipe_file.exists() else None
        materials, morphologies = extract_facets(doc.title or "", doc.section_text("abstract"))
        index.index_document(
            IndexedDocument(
                doc_id=doc.doc_id,
                title=doc.title or "",
                sections={label: doc.section_text(label) for label in set(doc.labels())},
                recipe=recipe_dict,
                materials=materials,
                morphologies=morphologies,
                figures=[f.to_dict() for f in doc.figures],
            ),
            reindex=True,
        )
        count += 1
    index.save(args.out)
    _print({"indexed": count, "out": str(args.out)})
    return EXIT_OK


def cmd_index_search(args) -> int:
    index = CorpusIndex.load(args.index)
    try:
        result = index.search(query=args.q or "", material=args.material, morphology=args.morphology, k=args.k)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FATAL
    _print(result.to_dict())
    return EXIT_OK


def cmd_run(args) -> int:
    if args.config:
        config = PipelineConfig.from_file(args.config)
    else:
        if not args.infile or not args.out:
            print("run needs --config or both --in and --out", file=sys.stderr)
            return EXIT_FATAL
        config = PipelineConfig(
            input_dir=Path(args.infile),
            output_dir=Path(args.out),
            index_path=Path(args.index) if args.index else None,
            model_path=Path(args.model) if args.model else None,
            truth_dir=Path(args.truth_dir) if args.truth_dir else None,
            grouping=args.grouping,
        )
    try:
        config.validate()
    except (FileNotFoundError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FATAL
    report = run_pipeline(config)
    _print(report.to_dict())
    return EXIT_OK if report.n_failed == 0 else EXIT_PARTIAL


def cmd_serve(args) -> int:
    from .api import serve

    bind = os.environ.get("RECIPEFORGE_BIND", args.host)
    try:
        serve(args.index, args.static, host=bind, port=args.port)
    except Exception as exc:
        print(f"serve failed: {exc}", file=sys.stderr)
        return EXIT_FATAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recipeforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crawl", help="download PDFs from seed URLs")
    p.add_argument("--seeds", default=None, help="newline-delimited seed URL file")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--out", default="crawl-out")
    p.add_argument("--delay-ms", type=int, default=0, dest="delay_ms")
    p.add_argument("--max-docs", type=int, default=10_000, dest="max_docs")
    p.add_argument("--config", default=None, help="JSON config overriding the flags")
    p.set_defaults(func=cmd_crawl)

    p = sub.add_parser("extract", help="span records / PDFs -> sectioned documents")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--out", required=True)
    p.add_argument("--grouping", choices=("heuristic", "dbscan"), default="heuristic")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--min-pts", type=int, default=3, dest="min_pts")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("score-layout", help="score layout output against markup ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.set_defaults(func=cmd_score_layout)

    p = sub.add_parser("classify", help="sentence classifier")
    csub = p.add_subparsers(dest="subcommand", required=True)
    pt = csub.add_parser("train")
    pt.add_argument("--data", required=True, help="labeled sentences JSON")
    pt.add_argument("--mode", choices=("count", "tfidf", "ngram"), default="count")
    pt.add_argument("--alpha", type=float, default=1.0)
    pt.add_argument("--out", required=True)
    pt.set_defaults(func=cmd_classify_train)
    pp = csub.add_parser("predict")
    pp.add_argument("--model", required=True)
    pp.add_argument("--in", required=True, dest="infile")
    pp.set_defaults(func=cmd_classify_predict)

    p = sub.add_parser("recipe", help="recipe extraction")
    rsub = p.add_subparsers(dest="subcommand", required=True)
    rx = rsub.add_parser("extract")
    rx.add_argument("--doc", required=True, help="sectioned-document JSON")
    rx.add_argument("--model", default=None)
    rx.add_argument("--lexicon", default=None)
    rx.add_argument("--out", required=True)
    rx.set_defaults(func=cmd_recipe_extract)

    p = sub.add_parser("eval", help="score recipes against ground truth")
    p.add_argument("--pred", default=None)
    p.add_argument("--truth", default=None)
    p.add_argument("--corpus", default=None, help="directory of *.recipe.json / *.truth.json pairs")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("index", help="build or query the search index")
    isub = p.add_subparsers(dest="subcommand", required=True)
    ib = isub.add_parser("build")
    ib.add_argument("--docs", required=True, help="directory of extract outputs")
    ib.add_argument("--out", required=True)
    ib.set_defaults(func=cmd_index_build)
    isrch = isub.add_parser("search")
    isrch.add_argument("--index", required=True)
    isrch.add_argument("--q", default="")
    isrch.add_argument("--material", default=None)
    isrch.add_argument("--morphology", default=None)
    isrch.add_argument("--k", type=int, default=10)
    isrch.set_defaults(func=cmd_index_search)

    p = sub.add_parser("run", help="full pipeline over a directory")
    p.add_argument("--config", default=None, help="pipeline config JSON")
    p.add_argument("--in", default=None, dest="infile")
    p.add_argument("--out", default=None)
    p.add_argument("--index", default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--truth-dir", default=None, dest="truth_dir")
    p.add_argument("--grouping", choices=("heuristic", "dbscan"), default="heuristic")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("serve", help="serve the API and web UI")
    p.add_argument("--index", required=True)
    p.add_argument("--static", default=None, help="built web UI directory")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8571)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "eval" and not args.corpus and not (args.pred and args.truth):
        print("eval needs --pred and --truth, or --corpus", file=sys.stderr)
        return EXIT_FATAL
    try:
        return args.func(args)
    except (FileNotFoundError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
