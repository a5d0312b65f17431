"""Domain action lexicon and the light stemmer that matches verbs to it.

The lexicon is an editable data file, not code: domain adaptation in practice
means adding verbs like "inject" and ruling out verbs like "prepare", and
that should not require touching the tagger.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

_VOWELS = set("aeiou")


def stem_candidates(token: str) -> list[str]:
    """Plausible lemmas for a token, most specific first.

    Suffix stripping for -s/-es/-ies/-ed/-ing with final-consonant doubling
    ("stirred" -> "stir") and e-restoration ("diluted" -> "dilute").  No
    dictionary here: candidates are validated against the lexicon by the
    caller.
    """
    token = token.lower()
    cands = [token]
    if token.endswith("ies") and len(token) > 4:
        cands.append(token[:-3] + "y")
    if token.endswith("es") and len(token) > 3:
        cands.append(token[:-2])
    if token.endswith("s") and not token.endswith("ss") and len(token) > 2:
        cands.append(token[:-1])
    for suffix in ("ed", "ing"):
        if token.endswith(suffix) and len(token) > len(suffix) + 1:
            base = token[: -len(suffix)]
            cands.append(base)
            cands.append(base + "e")
            if len(base) >= 3 and base[-1] == base[-2] and base[-1] not in _VOWELS:
                cands.append(base[:-1])
    if token.endswith("ied") and len(token) > 4:
        cands.append(token[:-3] + "y")
    seen: set[str] = set()
    out = []
    for c in cands:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


@dataclass
class ActionLexicon:
    """Action lemma -> canonical name, plus a set of excluded lemmas."""

    entries: dict[str, str]
    exclusions: set[str] = field(default_factory=set)

    def __post_init__(self) -> None:
        self.entries = {k.lower(): v for k, v in self.entries.items()}
        self.exclusions = {e.lower() for e in self.exclusions}
        overlap = self.exclusions & set(self.entries)
        if overlap:
            raise ValueError(f"lemmas both listed and excluded: {sorted(overlap)}")

    def match(self, token: str) -> str | None:
        """Resolve a surface token to a lexicon lemma, or None.

        Excluded lemmas win over entries, so "prepared" never matches even
        if someone later adds "prepare" to a custom entry list.
        """
        for cand in stem_candidates(token):
            if cand in self.exclusions:
                return None
            if cand in self.entries:
                return cand
        return None

    def canonical(self, lemma: str) -> str:
        return self.entries[lemma]

    def without(self, *lemmas: str) -> "ActionLexicon":
        """Copy with extra lemmas moved to the exclusion set."""
        dropped = {l.lower() for l in lemmas}
        return ActionLexicon(
            entries={k: v for k, v in self.entries.items() if k not in dropped},
            exclusions=self.exclusions | dropped,
        )

    @classmethod
    def from_dict(cls, payload: dict) -> "ActionLexicon":
        entries = {rec["lemma"]: rec.get("canonical", rec["lemma"]) for rec in payload["actions"]}
        return cls(entries=entries, exclusions=set(payload.get("exclusions", [])))

    @classmethod
    def load(cls, path: str | Path) -> "ActionLexicon":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    @classmethod
    def default(cls) -> "ActionLexicon":
        text = resources.files("recipeforge.data").joinpath("action_lexicon.json").read_text("utf-8")
        return cls.from_dict(json.loads(text))

    def save(self, path: str | Path) -> None:
        payload = {
            "actions": [{"lemma": k, "canonical": v} for k, v in sorted(self.entries.items())],
            "exclusions": sorted(self.exclusions),
        }
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_material_gazetteer(path: str | Path | None = None) -> list[str]:
    """Material names for mention spotting; longest first so multi-word
    entries beat their own substrings."""
    if path is None:
        text = resources.files("recipeforge.data").joinpath("material_gazetteer.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    names = json.loads(text)["materials"]
    return sorted({n.lower() for n in names}, key=lambda n: (-len(n), n))
