"""
District assignment and choropleth export
=========================================

Street records carry a district when the source says so; the rest are
placed geometrically against the district polygons.  Per-district shares
then feed an equal-interval binned GeoJSON ready for any web map.
"""

import dataclasses
import json
import tempfile
from pathlib import Path

from streetscape.config import load_config
from streetscape.ingest import parse_curated_dataset, parse_districts
from streetscape.metrics import apply_start_decade, f_prop_districts
from streetscape.spatial import assign_all, emit_choropleth

DATA = Path(__file__).resolve().parents[1] / "data"
config = load_config(DATA / "configs" / "streetscape.toml")
vienna = config.city("vienna")

records, _ = parse_curated_dataset(vienna.paths.dataset, vienna.config)
districts = parse_districts(vienna.paths.districts)
records, stats = assign_all(records, districts)
print(f"assigned {stats['assigned']} records to {len(districts)} districts "
      f"({stats['unassigned']} unplaceable)")

city = dataclasses.replace(vienna.config, districts=tuple(districts))
modern = apply_start_decade(records, city)

# Female share per district, measured against the city-wide honorific
# total, so the map shows where the city put its female honorees.
metric = f_prop_districts(modern, city)
top = sorted(metric.values.items(), key=lambda kv: -kv[1])[:5]
print("\nhighest female shares:")
by_id = {d.district_id: d.name for d in districts}
for district_id, value in top:
    print(f"  {by_id[district_id]:<20} {value:.2%}")

doc = emit_choropleth(metric, districts, bins=config.bins)
out = Path(tempfile.mkdtemp(prefix="streetscape-map-")) / "female.geojson"
out.write_text(json.dumps(doc, indent=1), encoding="utf-8")
feature = doc["features"][0]
print(f"\nwrote {out}")
print(f"features: {len(doc['features'])}, "
      f"sample properties: {feature['properties']}")
