"""Domain types shared by every pipeline stage.

Street records, honoree metadata, city and district configuration, decade
arithmetic, and the validity rules that decide which streets a metric may
count.  Everything here is immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import csv
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Optional

# Coordinate conventions: (lon, lat) in WGS84.
Coord = tuple[float, float]
# A geometry is a coordinate sequence; length 1 means a point.
CoordSeq = tuple[Coord, ...]
# A ring is a closed coordinate sequence (first == last vertex).
Ring = tuple[Coord, ...]
# A polygon is one outer ring followed by zero or more holes.
PolygonCoords = tuple[Ring, ...]
MultiPolygon = tuple[PolygonCoords, ...]

# Plausible range for street denomination years; outside it is a data error.
DENOMINATION_YEAR_MIN = 1000
DENOMINATION_YEAR_MAX = 2100


class DataError(Exception):
    """Input data violates a documented contract."""


class SchemaError(DataError):
    """A file does not match its documented schema."""


class GeometryError(DataError):
    """A geometry is malformed (open ring, self-intersection, wrong type)."""


class NetworkError(Exception):
    """A knowledge-base request failed or was forbidden in offline mode."""


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"
    UNKNOWN = "unknown"


class OccupationGroup(str, Enum):
    """The twelve occupation groups streets are classified into.

    Eleven named groups plus ``OTHER`` for labels no lexicon entry matches.
    """

    CREATIVE_PERFORMING_ARTISTS = "creative_performing_artists"
    AUTHORS_JOURNALISTS_LINGUISTS = "authors_journalists_linguists"
    SCIENCE_ENGINEERING = "science_engineering"
    LEGAL_SOCIAL_CULTURAL = "legal_social_cultural"
    CRAFT_TRADES = "craft_trades"
    BUSINESS_ADMINISTRATION = "business_administration"
    LEGISLATORS = "legislators"
    ARMED_FORCES_OFFICERS = "armed_forces_officers"
    RELIGIOUS = "religious"
    HEALTH_ASSOCIATE = "health_associate"
    TEACHING = "teaching"
    OTHER = "other"

    @property
    def label(self) -> str:
        """Human-readable group label."""
        return _GROUP_LABELS[self]


_GROUP_LABELS = {
    OccupationGroup.CREATIVE_PERFORMING_ARTISTS: "creative and performing artists",
    OccupationGroup.AUTHORS_JOURNALISTS_LINGUISTS: "authors, journalists and linguists",
    OccupationGroup.SCIENCE_ENGINEERING: "science and engineering professionals",
    OccupationGroup.LEGAL_SOCIAL_CULTURAL: "legal, social and cultural professionals",
    OccupationGroup.CRAFT_TRADES: "craft and related trades workers",
    OccupationGroup.BUSINESS_ADMINISTRATION: "business and administration professionals",
    OccupationGroup.LEGISLATORS: "legislators",
    OccupationGroup.ARMED_FORCES_OFFICERS: "commissioned armed forces officers",
    OccupationGroup.RELIGIOUS: "religious professionals",
    OccupationGroup.HEALTH_ASSOCIATE: "health associate professionals",
    OccupationGroup.TEACHING: "teaching professionals",
    OccupationGroup.OTHER: "other",
}

# Deterministic tie-break order for rankings: enum definition order.
GROUP_ORDER = {g: i for i, g in enumerate(OccupationGroup)}


class Metric(str, Enum):
    """Metric families with distinct field requirements."""

    GENDER = "gender"
    FOREIGNER = "foreigner"
    FHD = "fhd"
    OCCUPATION = "occupation"


@dataclass(frozen=True)
class Honoree:
    """Person a street commemorates.

    Optional fields stay ``None`` when the source could not resolve them;
    they are never guessed.  ``birth_year``/``death_year`` are plain signed
    integers (negative = BC).
    """

    full_name: str
    gender: Gender = Gender.UNKNOWN
    occupation_raw: Optional[str] = None
    occupation_group: Optional[OccupationGroup] = None
    country_of_origin: Optional[str] = None
    birth_year: Optional[int] = None
    death_year: Optional[int] = None

    @property
    def has_lifespan(self) -> bool:
        return self.birth_year is not None and self.death_year is not None

    @property
    def lifespan_valid(self) -> bool:
        """Both years present and in order.  Inverted lifespans are kept in
        memory so downstream consumers can skip and report them."""
        return self.has_lifespan and self.birth_year <= self.death_year


@dataclass(frozen=True)
class StreetRecord:
    """One honorific street of one city."""

    city_id: str
    street_name: str
    district_id: Optional[str] = None
    denomination_year: Optional[int] = None
    geometry: Optional[CoordSeq] = None
    honoree: Optional[Honoree] = None


@dataclass(frozen=True)
class District:
    district_id: str
    name: str
    polygon: MultiPolygon


@dataclass(frozen=True)
class CityConfig:
    """Per-city analysis configuration.

    ``start_decade`` is the year the analysis window opens; records are
    filtered at decade granularity (see ``metrics.apply_start_decade``), so
    a non-multiple-of-10 value like 1666 behaves as its decade.
    """

    city_id: str
    display_name: str
    home_country: str
    start_decade: int
    districts: tuple[District, ...] = ()
    kb_area_id: Optional[str] = None


def decade_of(year: int) -> int:
    """Decade start year containing ``year``.

    Floor division, not truncation: ``decade_of(-5) == -10``.
    """
    return (year // 10) * 10


def decade_range(first_year: int, last_year: int) -> range:
    """All decade start years touched by [first_year, last_year]."""
    return range(decade_of(first_year), decade_of(last_year) + 10, 10)


def is_countable(record: StreetRecord, metric: Metric) -> bool:
    """Whether ``record`` carries every field ``metric`` requires.

    Any metric needs a resolved honoree with known gender; on top of that,
    foreigner metrics need a country, lifespan coverage needs both birth and
    death years, and occupation metrics need a resolved group.
    """
    h = record.honoree
    if h is None or h.gender is Gender.UNKNOWN:
        return False
    if metric is Metric.GENDER:
        return True
    if metric is Metric.FOREIGNER:
        return h.country_of_origin is not None
    if metric is Metric.FHD:
        return h.has_lifespan
    if metric is Metric.OCCUPATION:
        return h.occupation_group is not None
    raise ValueError(f"unknown metric: {metric!r}")


def normalize_name(text: str) -> str:
    """Search key for a street or person name.

    Case-folds and strips diacritics while collapsing whitespace; the
    display form is kept elsewhere.  ``casefold`` expands German eszett, so
    'Jägerstraße' and 'JAGERSTRASSE' share a key.
    """
    decomposed = unicodedata.normalize("NFKD", text)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return " ".join(stripped.casefold().split())


def check_denomination_year(year: int) -> int:
    """Validate a denomination year against the plausible range.

    Out-of-range years are a validation error, never silently accepted.
    """
    if not DENOMINATION_YEAR_MIN <= year <= DENOMINATION_YEAR_MAX:
        raise DataError(
            f"denomination year {year} outside plausible range "
            f"{DENOMINATION_YEAR_MIN}..{DENOMINATION_YEAR_MAX}"
        )
    return year


def _load_country_aliases() -> dict[str, str]:
    table: dict[str, str] = {}
    with resources.files("streetscape.data").joinpath("country_aliases.csv").open(
        "r", encoding="utf-8"
    ) as fh:
        for row in csv.DictReader(fh):
            table[normalize_name(row["name"])] = row["alpha2"].upper()
    return table


_COUNTRY_ALIASES: Optional[dict[str, str]] = None


def normalize_country(value: str) -> Optional[str]:
    """ISO 3166-1 alpha-2 code for a country name or code.

    Accepts codes as-is; names (including historical polities such as
    Austria-Hungary) go through the shipped alias table.  Returns ``None``
    when the value cannot be mapped.
    """
    global _COUNTRY_ALIASES
    text = value.strip()
    if not text:
        return None
    if len(text) == 2 and text.isalpha() and text.isascii():
        return text.upper()
    if _COUNTRY_ALIASES is None:
        _COUNTRY_ALIASES = _load_country_aliases()
    return _COUNTRY_ALIASES.get(normalize_name(text))
