"""Honoree metadata acquisition: knowledge-base client, response archive,
persistent cache, occupation classification, and name transliteration."""

from streetscape.enrich.archive import ResponseArchive, canonical_json, request_key
from streetscape.enrich.cache import CachedHonoree, EnrichmentCache
from streetscape.enrich.client import (
    AmbiguousHonoree,
    EnrichmentReport,
    EponymCandidate,
    KBClient,
    RateLimiter,
    enrich_records,
    named_after_query,
    person_query,
    year_from_timestamp,
)
from streetscape.enrich.occupations import (
    OccupationLexicon,
    default_lexicon,
    map_occupation,
)
from streetscape.enrich.translit import (
    DEFAULT_TABLE,
    TransliterationTable,
    transliterate_name,
)

__all__ = [
    "AmbiguousHonoree",
    "CachedHonoree",
    "DEFAULT_TABLE",
    "EnrichmentCache",
    "EnrichmentReport",
    "EponymCandidate",
    "KBClient",
    "OccupationLexicon",
    "RateLimiter",
    "ResponseArchive",
    "TransliterationTable",
    "canonical_json",
    "default_lexicon",
    "enrich_records",
    "map_occupation",
    "named_after_query",
    "person_query",
    "request_key",
    "transliterate_name",
    "year_from_timestamp",
]
