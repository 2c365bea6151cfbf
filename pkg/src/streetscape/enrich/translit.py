"""Deterministic German-to-English name transliteration.

Two passes over a shipped table: standalone title words first (longest
first, whole words only), then character substitutions for umlauts and
eszett.  Compound street-type suffixes like -straße are left attached, so
"Jägerstraße" becomes "Jaegerstrasse", not "Jaeger Street".  This is a
lookup, not machine translation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass(frozen=True)
class TransliterationTable:
    terms: tuple[tuple[str, str], ...]
    chars: dict[str, str] = field(default_factory=dict)


_DEFAULT_TERMS = (
    ("Bürgermeister", "Mayor"),
    ("Erzherzogin", "Archduchess"),
    ("Feldmarschall", "Field Marshal"),
    ("Erzherzog", "Archduke"),
    ("Kaiserin", "Empress"),
    ("Königin", "Queen"),
    ("Fürstin", "Princess"),
    ("Herzogin", "Duchess"),
    ("Gräfin", "Countess"),
    ("Doktor", "Doctor"),
    ("Kaiser", "Emperor"),
    ("Ritter", "Knight"),
    ("Herzog", "Duke"),
    ("Fürst", "Prince"),
    ("Sankt", "Saint"),
    ("König", "King"),
    ("Graf", "Count"),
    ("Professor", "Professor"),
    ("Pfarrer", "Pastor"),
    ("Bischof", "Bishop"),
    ("Heilige", "Saint"),
    ("Dr.", "Doctor"),
    ("St.", "Saint"),
)

_DEFAULT_CHARS = {
    "ä": "ae",
    "ö": "oe",
    "ü": "ue",
    "Ä": "Ae",
    "Ö": "Oe",
    "Ü": "Ue",
    "ß": "ss",
    "ẞ": "Ss",
}

DEFAULT_TABLE = TransliterationTable(
    terms=tuple(sorted(_DEFAULT_TERMS, key=lambda kv: -len(kv[0]))),
    chars=dict(_DEFAULT_CHARS),
)


def transliterate_name(name: str, table: TransliterationTable = DEFAULT_TABLE) -> str:
    """Apply the substitution table to a name; unmapped text is unchanged."""
    out = name
    for term, replacement in table.terms:
        # \b fails on terms ending in '.', so guard both ends manually.
        pattern = r"(?<!\w)" + re.escape(term) + r"(?!\w)"
        out = re.sub(pattern, replacement, out)
    if table.chars:
        out = "".join(table.chars.get(c, c) for c in out)
    return out
