"""Generator for the recipe sentence fixtures and their golden outputs.

The golden step values were verified by hand against the tagging, gazetteer,
and quantity rules before freezing; regenerate only after re-verifying.
"""

from __future__ import annotations

import json
from pathlib import Path

from recipeforge.recipe import SentenceRef, extract_recipe

HERE = Path(__file__).parent / "recipes"

GOLD_SILVER = {
    "doc_id": "gold-silver",
    "section": "experimental",
    "sentences": [
        "0.1 g of AgNO3 was dissolved in 50 mL of deionized water.",
        "The solution was stirred at 300 rpm for 30 min.",
        "We prepared the precursor solution one day earlier.",
        "A 5 mL aliquot of NaBH4 was injected into the flask.",
        "The mixture was heated to 60–70 °C and aged for 2 h.",
        "The results are shown in Figure 3.",
        "Heat.",
        "The product was washed with ethanol and dried at 80 °C for 12 h.",
    ],
}

MOJIBAKE_CORRUPT = {
    "doc_id": "mojibake",
    "section": "experimental",
    "sentences": [
        "The autoclave was heated to 180 Â°C for 12 h.",
        "The vessel was cooled in air once conversion stayed â¥ 95 wt% of TiO2.",
    ],
}

MOJIBAKE_CLEAN = {
    "doc_id": "mojibake",
    "section": "experimental",
    "sentences": [
        "The autoclave was heated to 180 °C for 12 h.",
        "The vessel was cooled in air once conversion stayed ≥ 95 wt% of TiO2.",
    ],
}


def write_sentences() -> None:
    HERE.mkdir(parents=True, exist_ok=True)
    for name, payload in (
        ("gold-silver.sentences.json", GOLD_SILVER),
        ("mojibake-corrupted.sentences.json", MOJIBAKE_CORRUPT),
        ("mojibake-clean.sentences.json", MOJIBAKE_CLEAN),
    ):
        (HERE / name).write_text(
            json.dumps(payload, indent=1, ensure_ascii=True) + "\n", encoding="utf-8"
        )


def write_golden() -> None:
    payload = GOLD_SILVER
    refs = [
        (SentenceRef(doc=payload["doc_id"], section=payload["section"], sentence=i), text)
        for i, text in enumerate(payload["sentences"])
    ]
    recipe = extract_recipe(payload["doc_id"], refs)
    (HERE / "gold-silver.golden.json").write_text(
        json.dumps(recipe.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


if __name__ == "__main__":
    write_sentences()
    write_golden()
    print(f"wrote fixtures to {HERE}")
