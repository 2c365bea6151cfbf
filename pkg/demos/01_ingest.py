"""
Ingesting curated streets, district polygons, and road extracts
===============================================================

Three parsers feed the pipeline.  The curated dataset is the backbone:
one row per honorific street, strict schema, every dropped row accounted
for by reason.  District boundaries arrive as GeoJSON polygons, and the
full street inventory as a tab-separated OSM extract that needs heavy
filtering before it means anything.
"""

from pathlib import Path

from streetscape.config import load_config
from streetscape.ingest import parse_curated_dataset, parse_districts, parse_osm_roads

DATA = Path(__file__).resolve().parents[1] / "data"
config = load_config(DATA / "configs" / "streetscape.toml")
paris = config.city("paris")

records, report = parse_curated_dataset(paris.paths.dataset, paris.config)
print(f"curated rows read    {report.rows_read}")
print(f"curated rows kept    {report.rows_kept}")
for reason, n in sorted(report.rows_dropped_by_reason.items()):
    print(f"  dropped {reason:<12} {n}")

first = records[0]
print(f"\noldest street: {first.street_name} ({first.denomination_year}), "
      f"honoring {first.honoree.full_name} "
      f"({first.honoree.birth_year} to {first.honoree.death_year})")

districts = parse_districts(paris.paths.districts)
print(f"\ndistricts: {len(districts)}, e.g. {districts[0].name!r}")

# The OSM extract holds every mapped way; motorways, cycleways, numbered
# and unnamed service roads, and duplicate names all go.  What survives
# is the denominator for coverage estimates.
roads, osm_report = parse_osm_roads(paris.paths.osm)
print(f"\nosm lines read {osm_report.rows_read}, streets kept {osm_report.rows_kept}")
for reason, n in sorted(osm_report.rows_dropped_by_reason.items()):
    print(f"  dropped {reason:<20} {n}")
