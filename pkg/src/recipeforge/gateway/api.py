"""Read-only HTTP API over a committed corpus index, plus UI static files.

Every endpoint is a pure view over :class:`recipeforge.corpus.CorpusIndex`
results; errors come back as {"code", "message"} with a matching HTTP
status.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..corpus import CorpusIndex, UnknownDocument


def api_error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(index: CorpusIndex | str | Path, static_dir: str | Path | None = None) -> FastAPI:
    if not isinstance(index, CorpusIndex):
        index = CorpusIndex.load(index)

    app = FastAPI(title="recipeforge", version=__version__)

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__, "documents": len(index)}

    @app.get("/api/search")
    def search(q: str = "", material: str | None = None, morphology: str | None = None, k: int = 10):
        try:
            result = index.search(query=q, material=material, morphology=morphology, k=k)
        except ValueError as exc:
            return api_error(400, "invalid_query", str(exc))
        hits = []
        for hit in result.hits:
            doc = index.get_document(hit.doc_id)
            rec = hit.to_dict()
            rec["title"] = doc.title
            rec["figures"] = doc.figures
            hits.append(rec)
        return {"hits": hits, "total": result.total}

    @app.get("/api/docs/{doc_id}")
    def get_document(doc_id: str):
        try:
            return index.get_document(doc_id).to_dict()
        except UnknownDocument:
            return api_error(404, "doc_not_found", f"no document {doc_id!r}")

    @app.get("/api/docs/{doc_id}/recipe")
    def get_recipe(doc_id: str):
        try:
            doc = index.get_document(doc_id)
        except UnknownDocument:
            return api_error(404, "doc_not_found", f"no document {doc_id!r}")
        return doc.recipe or {"doc_id": doc_id, "steps": [], "grouping": "sequential"}

    @app.get("/api/docs/{doc_id}/figures")
    def get_figures(doc_id: str):
        try:
            doc = index.get_document(doc_id)
        except UnknownDocument:
            return api_error(404, "doc_not_found", f"no document {doc_id!r}")
        return {"doc_id": doc_id, "figures": doc.figures}

    @app.get("/api/facets")
    def facets():
        return index.facet_values()

    if static_dir is not None and Path(static_dir).is_dir():
        static_path = Path(static_dir)

        @app.get("/")
        def root():
            return FileResponse(static_path / "index.html")

        app.mount("/", StaticFiles(directory=str(static_path)), name="static")

    return app


def serve(index_path: str | Path, static_dir: str | Path | None, host: str, port: int) -> None:
    """Run the API until interrupted; fatal if the index cannot load."""
    import uvicorn

    app = create_app(index_path, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
