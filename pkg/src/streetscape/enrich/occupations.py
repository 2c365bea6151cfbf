"""Occupation label classification against the shipped lexicon.

The lexicon is ~300 curated label→group rows.  Lookup is total: an exact
normalized match wins, otherwise the longest lexicon entry appearing as a
whole word in the label, otherwise ``other`` plus a line in the
unmatched-labels report so curation gaps surface instead of vanishing.
"""

from __future__ import annotations

import csv
import re
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from streetscape.core import OccupationGroup, SchemaError, normalize_name

PathLike = Union[str, Path]


class OccupationLexicon:
    """Normalized label → group table with substring fallback."""

    def __init__(self, table: dict[str, OccupationGroup]):
        self.table = dict(table)
        # Longest keys first so "playwright" beats "poet" inside
        # "poet and playwright"; alphabetical among equal lengths.
        self._by_length = sorted(self.table, key=lambda k: (-len(k), k))
        self._patterns = {
            key: re.compile(r"(?<!\w)" + re.escape(key) + r"(?!\w)")
            for key in self._by_length
        }

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, label: str) -> bool:
        return normalize_name(label) in self.table

    @classmethod
    def from_pairs(cls, pairs) -> "OccupationLexicon":
        table = {}
        for raw_label, group in pairs:
            table[normalize_name(raw_label)] = OccupationGroup(group)
        return cls(table)

    @classmethod
    def load(cls, path: Optional[PathLike] = None) -> "OccupationLexicon":
        """Read a lexicon CSV (``raw_label,group``); default is the shipped one."""
        if path is None:
            source = resources.files("streetscape.data").joinpath(
                "occupation_lexicon.csv"
            )
            fh = source.open("r", encoding="utf-8")
        else:
            fh = open(path, "r", encoding="utf-8", newline="")
        with fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or set(reader.fieldnames) != {
                "raw_label",
                "group",
            }:
                raise SchemaError("lexicon must have columns raw_label,group")
            try:
                return cls.from_pairs(
                    (row["raw_label"], row["group"]) for row in reader
                )
            except ValueError as exc:
                raise SchemaError(f"lexicon names an unknown group: {exc}") from exc


_default: Optional[OccupationLexicon] = None


def default_lexicon() -> OccupationLexicon:
    global _default
    if _default is None:
        _default = OccupationLexicon.load()
    return _default


def map_occupation(
    raw_label: str,
    lexicon: Optional[OccupationLexicon] = None,
    unmatched: Optional[list[str]] = None,
) -> OccupationGroup:
    """Classify one raw occupation label into its group.

    Total function: anything unrecognized maps to ``other`` and, when a
    collector list is passed, is appended to it for the report.
    """
    lexicon = lexicon or default_lexicon()
    label = normalize_name(raw_label)
    if not label:
        if unmatched is not None:
            unmatched.append(raw_label)
        return OccupationGroup.OTHER
    hit = lexicon.table.get(label)
    if hit is not None:
        return hit
    for key in lexicon._by_length:
        if lexicon._patterns[key].search(label):
            return lexicon.table[key]
    if unmatched is not None:
        unmatched.append(raw_label)
    return OccupationGroup.OTHER
