"""recipeforge: scientific PDFs -> structured, searchable synthesis recipes."""

__version__ = "0.1.0"
