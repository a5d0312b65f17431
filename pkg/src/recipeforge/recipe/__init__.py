from .extract import (
    ActionMatch,
    Recipe,
    RecipeStep,
    SentenceRef,
    assemble,
    extract_recipe,
    extract_step,
    find_materials,
    recipe_to_xml,
    tag_actions,
)
from .lexicon import ActionLexicon, load_material_gazetteer, stem_candidates
from .quantities import Quantity, extract_quantities

__all__ = [
    "ActionLexicon",
    "ActionMatch",
    "Quantity",
    "Recipe",
    "RecipeStep",
    "SentenceRef",
    "assemble",
    "extract_quantities",
    "extract_recipe",
    "extract_step",
    "find_materials",
    "load_material_gazetteer",
    "recipe_to_xml",
    "stem_candidates",
    "tag_actions",
]
