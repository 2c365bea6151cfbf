"""
Auditing the curated dataset with a street sample
=================================================

The curated files claim to hold every honorific street.  The audit draws
a seeded, district-stratified sample from the full road inventory, a
human marks each street honorific or not (plus the honoree's gender),
and the annotated sheet yields the honorific share with a Wilson
interval.  The bundled Paris sheet is already filled in.
"""

from pathlib import Path

from streetscape.config import load_config
from streetscape.ingest import parse_districts, parse_osm_roads
from streetscape.validate import (
    draw_sample,
    estimate_coverage,
    make_plan,
    read_annotations,
)

DATA = Path(__file__).resolve().parents[1] / "data"
config = load_config(DATA / "configs" / "streetscape.toml")
paris = config.city("paris")

roads, _ = parse_osm_roads(paris.paths.osm)
districts = parse_districts(paris.paths.districts)
plan = make_plan("paris", [d.district_id for d in districts],
                 seed=config.seed, sample_size=config.sample_size)
print(f"plan: {plan.sample_size} streets over {len(plan.strata)} districts, "
      f"seed {plan.seed} ({plan.algorithm})")

sample = draw_sample(roads, plan, districts)
print(f"drawn: {len(sample)} streets, first three: {sample[:3]}")

# Drawing again with the same seed gives the same list; the sheet a
# second annotator receives is the sheet the first one got.
assert draw_sample(roads, plan, districts) == sample

rows = read_annotations(paris.paths.annotations)
report = estimate_coverage(rows, city_id="paris")
lo, hi = report.honorific_interval
print(f"\nannotated: {report.sample_size} rows")
print(f"honorific: {report.honorific_count}/{report.sample_size} = "
      f"{float(report.honorific_share):.1%}, 95% interval "
      f"[{lo:.1%}, {hi:.1%}]")
flo, fhi = report.female_interval
print(f"female honorees in the sample: {report.female_count} "
      f"({float(report.female_share):.1%} of honorific, "
      f"95% interval [{flo:.1%}, {fhi:.1%}])")
