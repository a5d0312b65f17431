"""Unicode cleanup for text recovered from PDFs.

PDF-to-text conversion tends to mangle non-ASCII characters (degree signs,
comparison operators, micro signs) and to inject stray spaces inside chemical
formulas.  Everything downstream (tokenization, quantity extraction, recipe
scoring) assumes text has been passed through :func:`repair_text` first.
"""

from __future__ import annotations

import re
import unicodedata

# Characters the PDF conversion is known to mangle: degree sign, comparison
# operators, micro sign, plus-minus, dashes, curly quotes, minus, times,
# ff/fi/fl ligatures.  For each one we register its UTF-8 byte sequence
# misdecoded as cp1252 and as latin-1 so both flavours of double-encoding
# get repaired.
_REPAIR_TARGETS = (
    "°≥≤µ±–—‘’“”"
    "−×ﬀﬁﬂ"
)


def _build_mojibake_table() -> list[tuple[str, str]]:
    table: dict[str, str] = {}
    for ch in _REPAIR_TARGETS:
        raw = ch.encode("utf-8")
        for codec in ("cp1252", "latin-1"):
            try:
                bad = raw.decode(codec)
            except UnicodeDecodeError:
                continue
            if bad != ch:
                table.setdefault(bad, ch)
    # Longest first so multi-char sequences win over their prefixes.
    return sorted(table.items(), key=lambda kv: -len(kv[0]))


_MOJIBAKE = _build_mojibake_table()

# Two-letter symbols listed before one-letter so "Na" is not read as N + a.
_ELEMENTS = {
    "He", "Li", "Be", "Ne", "Na", "Mg", "Al", "Si", "Cl", "Ar", "Ca", "Sc",
    "Ti", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se",
    "Br", "Kr", "Rb", "Sr", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At",
    "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "Np", "Pu",
    "H", "B", "C", "N", "O", "F", "P", "S", "K", "V", "Y", "I", "W", "U",
}

_FORMULA_RUN_RE = re.compile(
    r"(?<![A-Za-z0-9])"
    r"((?:[A-Z][a-z]?\d*)+(?: (?:(?:[A-Z][a-z]?\d*)+|\d+))+)"
    r"(?![A-Za-z0-9])"
)


def _element_count(fragment: str) -> int:
    """Count element symbols in a formula fragment, or -1 if it is not one."""
    count = 0
    i = 0
    while i < len(fragment):
        if fragment[i : i + 2] in _ELEMENTS:
            i += 2
        elif fragment[i] in _ELEMENTS:
            i += 1
        else:
            return -1
        count += 1
        while i < len(fragment) and fragment[i].isdigit():
            i += 1
    return count


def collapse_formula_spaces(text: str) -> str:
    """Rejoin chemical formulas that extraction split with spaces.

    "Ti O 2" -> "TiO2", "AgNO 3" -> "AgNO3".  Conservative: every piece of
    the run must parse as element symbols (digits allowed), the run must
    contain at least two element symbols, and the merged token must contain
    a digit.  "At 100" (one element, trailing number) is left alone.
    """

    def _merge(match: re.Match) -> str:
        run = match.group(1)
        parts = run.split(" ")
        elements = 0
        for i, part in enumerate(parts):
            if part.isdigit():
                # A bare number only closes a formula ("Ti O 2"); one in the
                # middle means prose like "At 100 K".
                if i != len(parts) - 1:
                    return run
                continue
            n = _element_count(part)
            if n < 0:
                return run
            elements += n
        merged = "".join(parts)
        if elements >= 2 and any(ch.isdigit() for ch in merged):
            return merged
        return run

    return _FORMULA_RUN_RE.sub(_merge, text)


def repair_text(text: str) -> str:
    """Normalize text recovered from a PDF.

    Applies the mojibake table, NFKC normalization (folds the micro sign
    into Greek mu, ligatures into letter pairs), whitespace cleanup, and
    formula-space collapsing.
    """
    for bad, good in _MOJIBAKE:
        if bad in text:
            text = text.replace(bad, good)
    text = unicodedata.normalize("NFKC", text)
    text = re.sub(r"[ \t]+", " ", text)
    return collapse_formula_spaces(text)
