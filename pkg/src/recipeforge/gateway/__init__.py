from .api import create_app, serve
from .pipeline import (
    DocumentStatus,
    PipelineConfig,
    PipelineReport,
    experimental_sentences,
    run_pipeline,
)

__all__ = [
    "DocumentStatus",
    "PipelineConfig",
    "PipelineReport",
    "create_app",
    "experimental_sentences",
    "run_pipeline",
    "serve",
]
