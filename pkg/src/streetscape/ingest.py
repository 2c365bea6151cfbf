"""Parsers for the three input formats: curated city datasets, district
polygons, and OSM road extracts.

Every parser is deterministic and accounts for each input row exactly once:
``rows_read == rows_kept + sum(rows_dropped_by_reason.values())`` on every
report, whatever the input looks like.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from streetscape.core import (
    CityConfig,
    CoordSeq,
    DataError,
    District,
    Gender,
    GeometryError,
    Honoree,
    MultiPolygon,
    OccupationGroup,
    PolygonCoords,
    SchemaError,
    StreetRecord,
    check_denomination_year,
    normalize_country,
    normalize_name,
)
from streetscape.spatial import ring_self_intersects

PathLike = Union[str, Path]

CURATED_COLUMNS = (
    "city",
    "street_name",
    "district",
    "denomination_year",
    "honoree_name",
    "gender",
    "occupation_raw",
    "occupation_group",
    "country",
    "birth_year",
    "death_year",
)

# Highway classes excluded from street counting by default.
DEFAULT_EXCLUDED_CLASSES = ("motorway", "trunk", "cycleway", "path")

# The OSM highway values we recognize.  Unknown classes are kept but
# flagged so a typo'd extract is visible in the report.
KNOWN_HIGHWAY_CLASSES = frozenset(
    {
        "bridleway",
        "busway",
        "construction",
        "corridor",
        "cycleway",
        "footway",
        "living_street",
        "motorway",
        "motorway_link",
        "path",
        "pedestrian",
        "primary",
        "primary_link",
        "raceway",
        "residential",
        "road",
        "secondary",
        "secondary_link",
        "service",
        "steps",
        "tertiary",
        "tertiary_link",
        "track",
        "trunk",
        "trunk_link",
        "unclassified",
    }
)


@dataclass(frozen=True)
class RoadSegment:
    """One named road from an OSM extract."""

    name: str
    highway_class: str
    geometry: CoordSeq


@dataclass
class IngestReport:
    """Row accounting for one parsed file."""

    rows_read: int = 0
    rows_kept: int = 0
    rows_dropped_by_reason: dict[str, int] = field(default_factory=dict)
    rows_flagged_by_reason: dict[str, int] = field(default_factory=dict)

    def keep(self) -> None:
        self.rows_read += 1
        self.rows_kept += 1

    def drop(self, reason: str) -> None:
        self.rows_read += 1
        self.rows_dropped_by_reason[reason] = (
            self.rows_dropped_by_reason.get(reason, 0) + 1
        )

    def flag(self, reason: str) -> None:
        """Mark a kept row as suspicious without dropping it."""
        self.rows_flagged_by_reason[reason] = (
            self.rows_flagged_by_reason.get(reason, 0) + 1
        )

    @property
    def balanced(self) -> bool:
        return self.rows_read == self.rows_kept + sum(
            self.rows_dropped_by_reason.values()
        )

    def as_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_kept": self.rows_kept,
            "rows_dropped_by_reason": dict(sorted(self.rows_dropped_by_reason.items())),
            "rows_flagged_by_reason": dict(sorted(self.rows_flagged_by_reason.items())),
        }


def _parse_year(text: str) -> Optional[int]:
    """Signed integer year, ``None`` for blank, ValueError for garbage."""
    text = text.strip()
    if not text:
        return None
    return int(text)


def body_lines(fh):
    """Skip the leading ``#`` metadata block that pipeline outputs carry;
    everything from the header row on is data."""
    leading = True
    for line in fh:
        if leading and line.startswith("#"):
            continue
        leading = False
        yield line


def parse_curated_dataset(
    path: PathLike, city: CityConfig
) -> tuple[list[StreetRecord], IngestReport]:
    """Read a canonical city dataset CSV into street records.

    Rows for other cities, rows without an honoree, rows with malformed or
    impossible years, and duplicate (street, district) pairs are dropped,
    each under its own reason; the first occurrence of a duplicate wins.
    """
    report = IngestReport()
    records: list[StreetRecord] = []
    seen: set[tuple[str, Optional[str]]] = set()

    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(body_lines(fh))
        header = reader.fieldnames
        if header is None:
            raise SchemaError(f"{path}: empty file, expected header")
        missing = [c for c in CURATED_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column {missing[0]!r}")
        extra = [c for c in header if c not in CURATED_COLUMNS]
        if extra:
            raise SchemaError(f"{path}: unknown column {extra[0]!r}")

        for row in reader:
            if any(row.get(c) is None for c in CURATED_COLUMNS):
                report.drop("bad_value")
                continue
            if row["city"].strip() != city.city_id:
                report.drop("other_city")
                continue
            street_name = row["street_name"].strip()
            if not street_name:
                report.drop("no_street_name")
                continue
            honoree_name = row["honoree_name"].strip()
            if not honoree_name:
                report.drop("no_honoree")
                continue

            try:
                denomination_year = _parse_year(row["denomination_year"])
                birth_year = _parse_year(row["birth_year"])
                death_year = _parse_year(row["death_year"])
            except ValueError:
                report.drop("bad_year")
                continue
            try:
                if denomination_year is not None:
                    check_denomination_year(denomination_year)
            except DataError:
                report.drop("bad_year")
                continue
            if (
                birth_year is not None
                and death_year is not None
                and birth_year > death_year
            ):
                report.drop("bad_year")
                continue

            gender_text = row["gender"].strip().lower()
            try:
                gender = Gender(gender_text) if gender_text else Gender.UNKNOWN
            except ValueError:
                report.drop("bad_value")
                continue
            group_text = row["occupation_group"].strip()
            try:
                group = OccupationGroup(group_text) if group_text else None
            except ValueError:
                report.drop("bad_value")
                continue

            district = row["district"].strip() or None
            key = (normalize_name(street_name), district)
            if key in seen:
                report.drop("duplicate")
                continue
            seen.add(key)

            country_text = row["country"].strip()
            records.append(
                StreetRecord(
                    city_id=city.city_id,
                    street_name=street_name,
                    district_id=district,
                    denomination_year=denomination_year,
                    honoree=Honoree(
                        full_name=honoree_name,
                        gender=gender,
                        occupation_raw=row["occupation_raw"].strip() or None,
                        occupation_group=group,
                        country_of_origin=(
                            normalize_country(country_text) if country_text else None
                        ),
                        birth_year=birth_year,
                        death_year=death_year,
                    ),
                )
            )
            report.keep()

    assert report.balanced
    return records, report


def write_canonical(
    records: Sequence[StreetRecord],
    path: PathLike,
    header_lines: Sequence[str] = (),
) -> None:
    """Serialize records back to the canonical CSV, optionally under a
    ``#``-prefixed metadata block that parsers skip."""

    def year(value: Optional[int]) -> str:
        return "" if value is None else str(value)

    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CURATED_COLUMNS)
        for r in records:
            h = r.honoree
            writer.writerow(
                [
                    r.city_id,
                    r.street_name,
                    r.district_id or "",
                    year(r.denomination_year),
                    h.full_name if h else "",
                    h.gender.value if h else "",
                    (h.occupation_raw or "") if h else "",
                    (h.occupation_group.value if h and h.occupation_group else ""),
                    (h.country_of_origin or "") if h else "",
                    year(h.birth_year) if h else "",
                    year(h.death_year) if h else "",
                ]
            )


def _rings_from_geojson(
    coordinates, feature_index: int
) -> PolygonCoords:
    rings = []
    for ring in coordinates:
        coords = tuple((float(x), float(y)) for x, y in ring)
        if len(coords) < 4:
            raise GeometryError(
                f"feature {feature_index}: ring with {len(coords)} points, need >= 4"
            )
        if coords[0] != coords[-1]:
            raise GeometryError(f"feature {feature_index}: ring is not closed")
        if ring_self_intersects(coords):
            raise GeometryError(f"feature {feature_index}: self-intersecting ring")
        rings.append(coords)
    if not rings:
        raise GeometryError(f"feature {feature_index}: polygon with no rings")
    return tuple(rings)


def parse_districts(path: PathLike) -> list[District]:
    """Read district polygons from a GeoJSON FeatureCollection.

    Features must be Polygon or MultiPolygon in WGS84 and carry a ``name``
    property; an ``id`` property, when present, becomes the district id.
    File order is preserved because it is the tie-break order for boundary
    assignment.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON: {exc}") from exc

    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise SchemaError(f"{path}: expected a GeoJSON FeatureCollection")
    crs = doc.get("crs")
    if crs is not None:
        crs_name = str(crs.get("properties", {}).get("name", ""))
        if not crs_name.endswith(("CRS84", "4326")):
            raise SchemaError(f"{path}: unsupported CRS {crs_name!r}, expected WGS84")

    districts: list[District] = []
    for i, feature in enumerate(doc.get("features", [])):
        geometry = feature.get("geometry") or {}
        gtype = geometry.get("type")
        if gtype == "Polygon":
            polygon: MultiPolygon = (
                _rings_from_geojson(geometry["coordinates"], i),
            )
        elif gtype == "MultiPolygon":
            polygon = tuple(
                _rings_from_geojson(part, i) for part in geometry["coordinates"]
            )
        else:
            raise GeometryError(
                f"feature {i}: geometry type {gtype!r}, expected Polygon or MultiPolygon"
            )
        properties = feature.get("properties") or {}
        name = properties.get("name")
        if not name:
            raise SchemaError(f"feature {i}: missing 'name' property")
        district_id = str(properties.get("id", name))
        districts.append(District(district_id=district_id, name=str(name), polygon=polygon))
    return districts


def parse_wkt_linestring(text: str) -> CoordSeq:
    """Parse ``LINESTRING (lon lat, lon lat, ...)`` into coordinate tuples."""
    body = text.strip()
    if not body.upper().startswith("LINESTRING"):
        raise DataError(f"not a WKT linestring: {text[:40]!r}")
    open_paren = body.find("(")
    close_paren = body.rfind(")")
    if open_paren == -1 or close_paren == -1 or close_paren < open_paren:
        raise DataError(f"malformed WKT: {text[:40]!r}")
    coords = []
    for pair in body[open_paren + 1 : close_paren].split(","):
        parts = pair.split()
        if len(parts) != 2:
            raise DataError(f"malformed WKT coordinate: {pair.strip()!r}")
        coords.append((float(parts[0]), float(parts[1])))
    if len(coords) < 2:
        raise DataError(f"linestring needs >= 2 points: {text[:40]!r}")
    return tuple(coords)


def _has_decimal_digit(text: str) -> bool:
    return any(c.isdecimal() for c in text)


def parse_osm_roads(
    path: PathLike,
    exclusions: Sequence[str] = DEFAULT_EXCLUDED_CLASSES,
) -> tuple[list[RoadSegment], IngestReport]:
    """Read a tab-separated road extract: ``highway_class<TAB>name<TAB>WKT``.

    Excluded classes, unnamed or number-bearing names, and repeats of an
    already-seen normalized name are dropped; any Unicode decimal digit in
    the name disqualifies it.  Unknown highway classes are kept but
    flagged.  Blank lines are not records.
    """
    excluded = {c.strip() for c in exclusions}
    report = IngestReport()
    segments: list[RoadSegment] = []
    seen: set[str] = set()

    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                report.drop("bad_value")
                continue
            highway_class, name, wkt = parts
            highway_class = highway_class.strip()
            name = name.strip()
            if highway_class in excluded:
                report.drop("excluded_class")
                continue
            if not name or _has_decimal_digit(name):
                report.drop("numbered_or_unnamed")
                continue
            key = normalize_name(name)
            if key in seen:
                report.drop("duplicate")
                continue
            try:
                geometry = parse_wkt_linestring(wkt)
            except DataError:
                report.drop("bad_value")
                continue
            seen.add(key)
            if highway_class not in KNOWN_HIGHWAY_CLASSES:
                report.flag("unknown_highway_class")
            segments.append(
                RoadSegment(name=name, highway_class=highway_class, geometry=geometry)
            )
            report.keep()

    assert report.balanced
    return segments, report
