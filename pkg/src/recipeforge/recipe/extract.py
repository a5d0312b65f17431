"""Recipe step extraction and assembly.

A step is one sentence's worth of procedure: the first action verb that
resolves in the lexicon, the materials it touches, and any number+unit
mentions.  Steps from one document, in sentence order, assemble into a
single sequential begin/end block.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .. import nlp
from ..textnorm import repair_text
from .lexicon import ActionLexicon, load_material_gazetteer
from .quantities import Quantity, extract_quantities

GROUPING_SEQUENTIAL = "sequential"

# Full-token chemical formula: element-style fragments, with either a digit
# or at least two capitals so ordinary words never qualify.
_FORMULA_TOKEN_RE = re.compile(r"(?:[A-Z][a-z]?\d*)+$")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")

# Formula-shaped tokens that are measurement/method acronyms, not materials.
_FORMULA_STOPLIST = {
    "DNA", "RNA", "EDS", "EDX", "FTIR", "HRTEM", "IR", "NMR", "PDF", "SEM",
    "TEM", "TGA", "UV", "XPS", "XRD", "PH",
}


@dataclass(frozen=True)
class ActionMatch:
    lemma: str
    canonical: str
    start: int
    end: int
    surface: str


@dataclass(frozen=True)
class SentenceRef:
    doc: str
    section: str
    sentence: int

    def to_dict(self) -> dict:
        return {"doc": self.doc, "section": self.section, "sentence": self.sentence}

    @classmethod
    def from_dict(cls, d: dict) -> "SentenceRef":
        return cls(doc=d["doc"], section=d["section"], sentence=int(d["sentence"]))


@dataclass
class RecipeStep:
    index: int
    action: str
    materials: list[str]
    quantities: list[Quantity]
    sentence_ref: SentenceRef
    raw_text: str
    secondary_actions: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "action": self.action,
            "materials": list(self.materials),
            "quantities": [q.to_dict() for q in self.quantities],
            "sentence_ref": self.sentence_ref.to_dict(),
            "raw_text": self.raw_text,
            "secondary_actions": list(self.secondary_actions),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RecipeStep":
        return cls(
            index=int(d["index"]),
            action=d["action"],
            materials=list(d["materials"]),
            quantities=[Quantity.from_dict(q) for q in d["quantities"]],
            sentence_ref=SentenceRef.from_dict(d["sentence_ref"]),
            raw_text=d["raw_text"],
            secondary_actions=list(d.get("secondary_actions", [])),
        )


@dataclass
class Recipe:
    doc_id: str
    steps: list[RecipeStep]
    grouping: str = GROUPING_SEQUENTIAL

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "steps": [s.to_dict() for s in self.steps],
            "grouping": self.grouping,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Recipe":
        return cls(
            doc_id=d["doc_id"],
            steps=[RecipeStep.from_dict(s) for s in d["steps"]],
            grouping=d.get("grouping", GROUPING_SEQUENTIAL),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "Recipe":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def tag_actions(sentence: str, lexicon: ActionLexicon) -> list[ActionMatch]:
    """Find lexicon action verbs in the sentence, in token order."""
    text = repair_text(sentence)
    matches: list[ActionMatch] = []
    for token, start, end in nlp.tokenize_spans(text):
        lemma = lexicon.match(token)
        if lemma is not None:
            matches.append(
                ActionMatch(
                    lemma=lemma,
                    canonical=lexicon.canonical(lemma),
                    start=start,
                    end=end,
                    surface=text[start:end],
                )
            )
    return matches


def is_formula_token(token: str) -> bool:
    if len(token) < 2 or token.upper() in _FORMULA_STOPLIST:
        return False
    if not _FORMULA_TOKEN_RE.fullmatch(token):
        return False
    capitals = sum(1 for ch in token if ch.isupper())
    has_digit = any(ch.isdigit() for ch in token)
    return has_digit or capitals >= 2


def find_materials(sentence: str, gazetteer: Sequence[str] | None = None) -> list[str]:
    """Material mentions: gazetteer hits plus chemical-formula tokens.

    Surfaces are reported as they appear, first occurrence order, deduped
    case-insensitively.
    """
    text = repair_text(sentence)
    if gazetteer is None:
        gazetteer = load_material_gazetteer()

    hits: list[tuple[int, str]] = []
    lower = text.lower()
    claimed = [False] * len(text)
    for name in gazetteer:  # longest first, so phrases beat their substrings
        for m in re.finditer(rf"(?<![A-Za-z0-9]){re.escape(name)}(?![A-Za-z0-9])", lower):
            if any(claimed[m.start() : m.end()]):
                continue
            for i in range(m.start(), m.end()):
                claimed[i] = True
            hits.append((m.start(), text[m.start() : m.end()]))

    for m in _WORD_RE.finditer(text):
        if any(claimed[m.start() : m.end()]):
            continue
        if is_formula_token(m.group(0)):
            hits.append((m.start(), m.group(0)))

    hits.sort(key=lambda h: h[0])
    seen: set[str] = set()
    out: list[str] = []
    for _, surface in hits:
        key = surface.lower()
        if key not in seen:
            seen.add(key)
            out.append(surface)
    return out


def extract_step(
    sentence: str,
    lexicon: ActionLexicon,
    gazetteer: Sequence[str] | None = None,
    sentence_ref: SentenceRef | None = None,
) -> RecipeStep | None:
    """Turn one relevant sentence into a step, or None if no action verb.

    The first action match names the step; any further matches are kept as
    secondary actions.
    """
    text = repair_text(sentence).strip()
    actions = tag_actions(text, lexicon)
    if not actions:
        return None
    primary = actions[0]
    secondary: list[str] = []
    for extra in actions[1:]:
        if extra.canonical != primary.canonical and extra.canonical not in secondary:
            secondary.append(extra.canonical)
    return RecipeStep(
        index=-1,
        action=primary.canonical,
        materials=find_materials(text, gazetteer),
        quantities=extract_quantities(text),
        sentence_ref=sentence_ref or SentenceRef(doc="", section="", sentence=-1),
        raw_text=text,
        secondary_actions=secondary,
    )


def assemble(steps: Sequence[RecipeStep]) -> Recipe:
    """Wrap one document's steps in a sequential block with indices 0..n-1.

    Steps must already be in source sentence order; an empty list yields a
    valid empty recipe.
    """
    docs = {s.sentence_ref.doc for s in steps}
    if len(docs) > 1:
        raise ValueError(f"steps from multiple documents: {sorted(docs)}")
    doc_id = docs.pop() if docs else ""
    indexed = []
    for i, step in enumerate(steps):
        indexed.append(
            RecipeStep(
                index=i,
                action=step.action,
                materials=list(step.materials),
                quantities=list(step.quantities),
                sentence_ref=step.sentence_ref,
                raw_text=step.raw_text,
                secondary_actions=list(step.secondary_actions),
            )
        )
    return Recipe(doc_id=doc_id, steps=indexed, grouping=GROUPING_SEQUENTIAL)


def extract_recipe(
    doc_id: str,
    sentences: Sequence[tuple[SentenceRef, str]],
    lexicon: ActionLexicon | None = None,
    gazetteer: Sequence[str] | None = None,
) -> Recipe:
    """Extract and assemble steps from (ref, text) sentences of one document."""
    lexicon = lexicon or ActionLexicon.default()
    if gazetteer is None:
        gazetteer = load_material_gazetteer()
    steps = []
    for ref, text in sentences:
        step = extract_step(text, lexicon, gazetteer, sentence_ref=ref)
        if step is not None:
            steps.append(step)
    recipe = assemble(steps)
    return Recipe(doc_id=doc_id, steps=recipe.steps, grouping=recipe.grouping)


def recipe_to_xml(recipe: Recipe, lexicon: ActionLexicon | None = None) -> str:
    """Export with explicit action-phrase tags inside each sentence.

    Interop format only; the pipeline itself passes typed values around.
    """
    lexicon = lexicon or ActionLexicon.default()
    root = ET.Element("recipe", {"doc": recipe.doc_id, "grouping": recipe.grouping})
    for step in recipe.steps:
        step_el = ET.SubElement(root, "step", {"index": str(step.index), "action": step.action})
        sentence_el = ET.SubElement(step_el, "sentence")
        matches = tag_actions(step.raw_text, lexicon)
        cursor = 0
        sentence_el.text = ""
        last_child: ET.Element | None = None
        for m in matches:
            gap = step.raw_text[cursor : m.start]
            if last_child is None:
                sentence_el.text += gap
            else:
                last_child.tail = (last_child.tail or "") + gap
            phrase = ET.SubElement(sentence_el, "actionPhrase", {"lemma": m.lemma})
            phrase.text = m.surface
            last_child = phrase
            cursor = m.end
        tail = step.raw_text[cursor:]
        if last_child is None:
            sentence_el.text += tail
        else:
            last_child.tail = (last_child.tail or "") + tail
        materials_el = ET.SubElement(step_el, "materials")
        for material in step.materials:
            mat_el = ET.SubElement(materials_el, "material")
            mat_el.text = material
        quantities_el = ET.SubElement(step_el, "quantities")
        for q in step.quantities:
            ET.SubElement(
                quantities_el,
                "quantity",
                {"value": repr(q.value), "unit": q.unit, "kind": q.kind},
            )
    return ET.tostring(root, encoding="unicode")
