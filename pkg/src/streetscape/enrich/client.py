"""Knowledge-base query client: street eponyms and honoree metadata.

Queries go out as SPARQL over HTTP and come back as standard SPARQL JSON.
Every request can be recorded into a response archive and replayed later,
which is how offline runs and tests work: same archive in, same enriched
dataset out.  Nothing is ever guessed; a field the response does not
contain stays absent, and each populated field keeps a pointer to the
response fragment it was parsed from.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Callable, Iterable, Optional, Sequence

import requests

from streetscape.core import (
    CityConfig,
    Gender,
    Honoree,
    NetworkError,
    StreetRecord,
    normalize_country,
    normalize_name,
)
from streetscape.enrich.archive import ResponseArchive, request_key
from streetscape.enrich.cache import CachedHonoree, EnrichmentCache
from streetscape.enrich.occupations import OccupationLexicon, map_occupation

log = logging.getLogger(__name__)

DEFAULT_RATE_LIMIT = 5.0
RETRY_ATTEMPTS = 3
RETRY_BASE_DELAY = 1.0


@dataclass(frozen=True)
class EponymCandidate:
    """One entity a street might be named after."""

    entity_id: str
    label: str
    is_person: bool
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0,1]")


@dataclass(frozen=True)
class AmbiguousHonoree:
    """Marker returned when several persons match a name and nothing in the
    response disambiguates them.  The caller decides; resolution is a
    human step."""

    name: str
    candidates: tuple[EponymCandidate, ...]


class RateLimiter:
    """Global minimum spacing between requests, shared across threads."""

    def __init__(self, per_second: float = DEFAULT_RATE_LIMIT):
        self.interval = 1.0 / per_second if per_second > 0 else 0.0
        self._lock = threading.Lock()
        self._next_at = 0.0

    def wait(self) -> None:
        if self.interval == 0.0:
            return
        with self._lock:
            now = time.monotonic()
            delay = self._next_at - now
            self._next_at = max(now, self._next_at) + self.interval
        if delay > 0:
            time.sleep(delay)


def named_after_query(area_id: str) -> str:
    """Streets of an area carrying a named-after relation, with a
    person/non-person classification of the eponym."""
    return (
        "SELECT ?street ?streetLabel ?eponym ?eponymLabel ?isPerson WHERE { "
        f"?street wdt:P31/wdt:P279* wd:Q79007 ; wdt:P131 wd:{area_id} ; "
        "wdt:P138 ?eponym . "
        "BIND(EXISTS { ?eponym wdt:P31 wd:Q5 } AS ?isPerson) "
        'SERVICE wikibase:label { bd:serviceParam wikibase:language "en" . } }'
    )


def person_query(name: str) -> str:
    """Persons matching a name, with the metadata fields the pipeline uses."""
    return (
        "SELECT ?person ?personLabel ?genderLabel ?occupationLabel "
        "?countryLabel ?birth ?death WHERE { "
        f'?person rdfs:label "{name}"@en ; wdt:P31 wd:Q5 . '
        "OPTIONAL { ?person wdt:P21 ?gender . } "
        "OPTIONAL { ?person wdt:P106 ?occupation . } "
        "OPTIONAL { ?person wdt:P27 ?country . } "
        "OPTIONAL { ?person wdt:P569 ?birth . } "
        "OPTIONAL { ?person wdt:P570 ?death . } "
        'SERVICE wikibase:label { bd:serviceParam wikibase:language "en" . } }'
    )


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class KBClient:
    """SPARQL client with retry, rate limiting, and record/replay.

    ``offline=True`` forbids the network entirely: a request not present
    in the archive is a hard error.  Otherwise requests hit the endpoint
    (bounded retries, exponential backoff) and, when an archive is
    attached, every response is recorded for later replay.
    """

    def __init__(
        self,
        endpoint: str,
        archive: Optional[ResponseArchive] = None,
        offline: bool = False,
        rate_limit: float = DEFAULT_RATE_LIMIT,
        transport: Optional[Callable[[str, dict], dict]] = None,
    ):
        self.endpoint = endpoint
        self.archive = archive
        self.offline = offline
        self.limiter = RateLimiter(rate_limit)
        self._send_lock = threading.Lock()
        self._session = requests.Session()
        # Swappable HTTP layer so tests exercise retry paths without sockets.
        self._transport = transport or self._http_transport

    def request_for(self, query: str) -> dict:
        """The canonical request object; its hash keys the archive."""
        return {"endpoint": self.endpoint, "query": query, "format": "json"}

    def _http_transport(self, endpoint: str, request: dict) -> dict:
        response = self._session.get(
            endpoint,
            params={"query": request["query"], "format": "json"},
            headers={"Accept": "application/sparql-results+json"},
            timeout=30,
        )
        response.raise_for_status()
        return response.json()

    def sparql(self, query: str) -> dict:
        """One query, archive-first.  Network misses retry with backoff and
        end in NetworkError; malformed payloads fail with an excerpt
        logged."""
        request = self.request_for(query)
        if self.archive is not None:
            stored = self.archive.get(request)
            if stored is not None:
                return stored
        if self.offline:
            raise NetworkError(
                f"offline: request {request_key(request)[:12]} not in archive"
            )

        last_error: Optional[Exception] = None
        for attempt in range(RETRY_ATTEMPTS):
            self.limiter.wait()
            try:
                with self._send_lock:
                    payload = self._transport(self.endpoint, request)
                break
            except (requests.RequestException, ValueError) as exc:
                last_error = exc
                if attempt < RETRY_ATTEMPTS - 1:
                    time.sleep(RETRY_BASE_DELAY * (2 ** attempt))
        else:
            raise NetworkError(
                f"{self.endpoint}: giving up after {RETRY_ATTEMPTS} attempts: "
                f"{last_error}"
            )

        if not isinstance(payload, dict) or "results" not in payload:
            log.error("malformed response payload: %.2000r", payload)
            raise NetworkError(f"{self.endpoint}: malformed response, logged")
        if self.archive is not None:
            self.archive.put(request, payload)
        return payload

    def query_named_after(self, city: CityConfig) -> list[tuple[str, EponymCandidate]]:
        """All streets of the city's KB area that are named after something,
        each with its eponym candidate."""
        if not city.kb_area_id:
            raise ValueError(f"{city.city_id}: no knowledge-base area id configured")
        payload = self.sparql(named_after_query(city.kb_area_id))
        out: list[tuple[str, EponymCandidate]] = []
        seen: set[tuple[str, str]] = set()
        for binding in payload["results"].get("bindings", []):
            street = _value(binding, "streetLabel") or _value(binding, "street")
            entity = _value(binding, "eponym")
            if street is None or entity is None:
                continue
            pair = (normalize_name(street), entity)
            if pair in seen:
                continue
            seen.add(pair)
            out.append(
                (
                    street,
                    EponymCandidate(
                        entity_id=entity,
                        label=_value(binding, "eponymLabel") or entity,
                        is_person=_value(binding, "isPerson") in ("true", "1"),
                        confidence=float(_value(binding, "score") or 1.0),
                    ),
                )
            )
        return out

    def resolve_honoree(
        self,
        name: str,
        cache: Optional[EnrichmentCache] = None,
        lexicon: Optional[OccupationLexicon] = None,
        chosen_entity: Optional[str] = None,
    ):
        """Honoree metadata for a person name: cache, then knowledge base.

        Returns a Honoree, or an AmbiguousHonoree marker when several
        persons match and no ``chosen_entity`` narrows them down.  Fields
        the response lacks stay absent.  Resolved honorees are cached with
        per-field provenance pointers.
        """
        if not name.strip():
            raise ValueError("empty name")
        if cache is not None:
            hit = cache.get(name)
            if hit is not None:
                return hit.honoree

        query = person_query(name)
        payload = self.sparql(query)
        bindings = payload["results"].get("bindings", [])

        by_entity: dict[str, int] = {}
        for i, binding in enumerate(bindings):
            entity = _value(binding, "person")
            if entity is not None and entity not in by_entity:
                by_entity[entity] = i
        if chosen_entity is not None:
            if chosen_entity not in by_entity:
                raise NetworkError(
                    f"{name}: chosen entity {chosen_entity} not among candidates"
                )
            by_entity = {chosen_entity: by_entity[chosen_entity]}
        if len(by_entity) > 1:
            return AmbiguousHonoree(
                name=name,
                candidates=tuple(
                    EponymCandidate(
                        entity_id=entity,
                        label=_value(bindings[i], "personLabel") or entity,
                        is_person=True,
                    )
                    for entity, i in by_entity.items()
                ),
            )

        provenance: dict[str, str] = {}
        honoree = Honoree(full_name=name)
        if by_entity:
            entity = next(iter(by_entity))
            first = by_entity[entity]
            # Merge rows of the chosen entity; first occurrence of each
            # field wins and supplies the provenance pointer.
            fields: dict[str, tuple[str, str]] = {}
            for i, binding in enumerate(bindings):
                if _value(binding, "person") != entity:
                    continue
                for var in ("genderLabel", "occupationLabel", "countryLabel", "birth", "death"):
                    value = _value(binding, var)
                    if value is not None and var not in fields:
                        fields[var] = (value, f"results.bindings[{i}].{var}.value")
            honoree, provenance = _honoree_from_fields(name, fields, lexicon)
        if cache is not None and (by_entity or not bindings):
            cache.put(
                name,
                honoree,
                provenance,
                retrieved_at=_utc_now(),
                request_hash=request_key(self.request_for(query)),
            )
        return honoree


def _value(binding: dict, var: str) -> Optional[str]:
    entry = binding.get(var)
    if not entry:
        return None
    value = entry.get("value")
    if value is None:
        return None
    return str(value)


def year_from_timestamp(value: str) -> Optional[int]:
    """Year of an xsd:dateTime-ish value; negative years are BC."""
    text = value.strip()
    if not text:
        return None
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    digits = text.split("-", 1)[0].split("T", 1)[0]
    if not digits.isdecimal():
        return None
    return sign * int(digits)


def _honoree_from_fields(
    name: str,
    fields: dict[str, tuple[str, str]],
    lexicon: Optional[OccupationLexicon],
) -> tuple[Honoree, dict[str, str]]:
    provenance: dict[str, str] = {}
    gender = Gender.UNKNOWN
    if "genderLabel" in fields:
        value, pointer = fields["genderLabel"]
        lowered = value.strip().lower()
        if lowered in ("female", "male"):
            gender = Gender(lowered)
            provenance["gender"] = pointer

    occupation_raw = None
    occupation_group = None
    if "occupationLabel" in fields:
        occupation_raw, pointer = fields["occupationLabel"]
        provenance["occupation_raw"] = pointer
        occupation_group = map_occupation(occupation_raw, lexicon)

    country = None
    if "countryLabel" in fields:
        value, pointer = fields["countryLabel"]
        country = normalize_country(value)
        if country is not None:
            provenance["country_of_origin"] = pointer

    birth = death = None
    if "birth" in fields:
        value, pointer = fields["birth"]
        birth = year_from_timestamp(value)
        if birth is not None:
            provenance["birth_year"] = pointer
    if "death" in fields:
        value, pointer = fields["death"]
        death = year_from_timestamp(value)
        if death is not None:
            provenance["death_year"] = pointer

    return (
        Honoree(
            full_name=name,
            gender=gender,
            occupation_raw=occupation_raw,
            occupation_group=occupation_group,
            country_of_origin=country,
            birth_year=birth,
            death_year=death,
        ),
        provenance,
    )


@dataclass
class EnrichmentReport:
    looked_up: int = 0
    cache_hits: int = 0
    already_complete: int = 0
    ambiguous: list[AmbiguousHonoree] = None
    unmatched_occupations: list[str] = None

    def __post_init__(self) -> None:
        if self.ambiguous is None:
            self.ambiguous = []
        if self.unmatched_occupations is None:
            self.unmatched_occupations = []


def _missing_fields(honoree: Honoree) -> bool:
    return (
        honoree.gender is Gender.UNKNOWN
        or honoree.country_of_origin is None
        or honoree.birth_year is None
        or honoree.death_year is None
        or honoree.occupation_group is None
    )


def enrich_records(
    records: Iterable[StreetRecord],
    client: KBClient,
    cache: Optional[EnrichmentCache] = None,
    lexicon: Optional[OccupationLexicon] = None,
    decisions: Optional[dict[str, str]] = None,
) -> tuple[list[StreetRecord], EnrichmentReport]:
    """Fill missing honoree fields from the knowledge base.

    Curated values are never overwritten; only absent fields are filled.
    Records whose honoree is already complete cost nothing.  Ambiguous
    names resolve through the ``decisions`` map (name → entity id) when
    given, otherwise they are collected in the report untouched.
    """
    report = EnrichmentReport()
    out: list[StreetRecord] = []
    for record in records:
        honoree = record.honoree
        if honoree is None or not _missing_fields(honoree):
            report.already_complete += 1
            out.append(record)
            continue
        if cache is not None and cache.get(honoree.full_name) is not None:
            report.cache_hits += 1
        report.looked_up += 1
        chosen = (decisions or {}).get(normalize_name(honoree.full_name))
        resolved = client.resolve_honoree(
            honoree.full_name, cache=cache, lexicon=lexicon, chosen_entity=chosen
        )
        if isinstance(resolved, AmbiguousHonoree):
            report.ambiguous.append(resolved)
            out.append(record)
            continue
        merged = replace(
            honoree,
            gender=honoree.gender if honoree.gender is not Gender.UNKNOWN else resolved.gender,
            occupation_raw=honoree.occupation_raw or resolved.occupation_raw,
            # group re-derived below so unmatched labels reach the report
            occupation_group=honoree.occupation_group,
            country_of_origin=honoree.country_of_origin or resolved.country_of_origin,
            birth_year=(
                honoree.birth_year if honoree.birth_year is not None else resolved.birth_year
            ),
            death_year=(
                honoree.death_year if honoree.death_year is not None else resolved.death_year
            ),
        )
        if merged.occupation_raw and merged.occupation_group is None:
            merged = replace(
                merged,
                occupation_group=map_occupation(
                    merged.occupation_raw, lexicon, report.unmatched_occupations
                ),
            )
        out.append(replace(record, honoree=merged))
    return out, report
