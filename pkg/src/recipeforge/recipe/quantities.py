"""Number + unit extraction from synthesis sentences.

Matches are made on repaired text so that a mojibake degree sign ("Â°C")
yields the same quantities as a clean one.  Ranges such as "60-70 °C" emit
two quantities flagged as a range pair.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..textnorm import repair_text

# surface -> (canonical unit, kind).  Surfaces are matched case-sensitively
# ("M" is molar, "m" is nothing); word forms are folded to symbols.
_UNIT_TABLE: list[tuple[str, str, str]] = [
    ("°C", "°C", "temperature"),
    ("° C", "°C", "temperature"),
    ("degC", "°C", "temperature"),
    ("K", "K", "temperature"),
    ("hours", "h", "time"),
    ("hour", "h", "time"),
    ("hrs", "h", "time"),
    ("hr", "h", "time"),
    ("h", "h", "time"),
    ("minutes", "min", "time"),
    ("minute", "min", "time"),
    ("mins", "min", "time"),
    ("min", "min", "time"),
    ("seconds", "s", "time"),
    ("second", "s", "time"),
    ("secs", "s", "time"),
    ("sec", "s", "time"),
    ("s", "s", "time"),
    ("mg", "mg", "mass"),
    ("g", "g", "mass"),
    ("mL", "mL", "volume"),
    ("ml", "mL", "volume"),
    ("µL", "µL", "volume"),
    ("µl", "µL", "volume"),
    ("μL", "µL", "volume"),
    ("μl", "µL", "volume"),
    ("L", "L", "volume"),
    ("mmol", "mmol", "other"),
    ("mol", "mol", "other"),
    ("M", "M", "concentration"),
    ("wt%", "wt%", "concentration"),
    ("wt %", "wt%", "concentration"),
    ("rpm", "rpm", "rate"),
    ("RPM", "rpm", "rate"),
    ("bar", "bar", "other"),
    ("kPa", "kPa", "other"),
    ("Pa", "Pa", "other"),
]

UNIT_KINDS = {canonical: kind for _, canonical, kind in _UNIT_TABLE}

# Longest surfaces first so "mmol" beats "mol", "mL" beats "L".
_UNIT_ALTERNATION = "|".join(
    re.escape(surface) for surface in sorted({s for s, _, _ in _UNIT_TABLE}, key=lambda s: (-len(s), s))
)

_NUMBER = r"\d+(?:\.\d+)?"
_QUANTITY_RE = re.compile(
    rf"(?<![\w.])({_NUMBER})(?:\s*[-–—~]\s*({_NUMBER}))?\s*({_UNIT_ALTERNATION})(?![A-Za-z0-9%])"
)

_SURFACE_MAP = {surface: (canonical, kind) for surface, canonical, kind in _UNIT_TABLE}


@dataclass(frozen=True)
class Quantity:
    value: float
    unit: str
    kind: str
    range_pair: bool = False

    def to_dict(self) -> dict:
        d = {"value": self.value, "unit": self.unit, "kind": self.kind}
        if self.range_pair:
            d["range_pair"] = True
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Quantity":
        return cls(
            value=float(d["value"]),
            unit=d["unit"],
            kind=d["kind"],
            range_pair=bool(d.get("range_pair", False)),
        )


def extract_quantities(text: str) -> list[Quantity]:
    """All number+unit mentions in the sentence, in order of appearance."""
    text = repair_text(text)
    out: list[Quantity] = []
    for match in _QUANTITY_RE.finditer(text):
        low, high, surface = match.group(1), match.group(2), match.group(3)
        canonical, kind = _SURFACE_MAP[surface]
        if high is not None:
            out.append(Quantity(value=float(low), unit=canonical, kind=kind, range_pair=True))
            out.append(Quantity(value=float(high), unit=canonical, kind=kind, range_pair=True))
        else:
            out.append(Quantity(value=float(low), unit=canonical, kind=kind))
    return out
