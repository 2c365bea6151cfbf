"""
Decade series, occupation rankings, and rank stability
======================================================

All metrics live on a decade grid.  For Paris: the share of streets
honoring women per denomination decade, the share honoring foreigners,
lifespan coverage of the honoree population, and the running rank of the
twelve occupation groups with its half-century stability.
"""

from pathlib import Path

from streetscape.config import load_config
from streetscape.core import OccupationGroup
from streetscape.ingest import parse_curated_dataset
from streetscape.metrics import (
    apply_start_decade,
    f_prop_series,
    fhd,
    for_prop_series,
    half_century_stability,
    occupation_ranking,
    pooled_for_prop,
)

DATA = Path(__file__).resolve().parents[1] / "data"
config = load_config(DATA / "configs" / "streetscape.toml")
paris = config.city("paris")

records, _ = parse_curated_dataset(paris.paths.dataset, paris.config)
modern = apply_start_decade(records, paris.config)
print(f"records: {len(records)} total, {len(modern)} since "
      f"{paris.config.start_decade}")

female = f_prop_series(modern, paris.config)
foreign = for_prop_series(modern, paris.config)
print("\ndecade  female  foreign")
for decade in sorted(female.values):
    print(f"{decade}s  {female.values[decade]:>6.1%}  "
          f"{foreign.values.get(decade, float('nan')):>7.1%}")
print(f"pooled foreign share: "
      f"{pooled_for_prop(modern, paris.config.home_country):.1%}")

# Lifespan coverage: for each decade, how many honorees were alive then.
coverage, report = fhd(modern)
peak = max(coverage.values, key=lambda d: coverage.values[d])
print(f"\nlifespan coverage peaks in the {peak}s "
      f"({coverage.values[peak]:.0f} honorees alive; "
      f"{report.counted} counted, {report.excluded_missing_years} undated)")

# Cumulative occupation ranks: the military climbs to first place by the
# 1940s, then newer denominations dilute it.
ranking = occupation_ranking(modern, city_id="paris")
military = OccupationGroup.ARMED_FORCES_OFFICERS
print("\ndecade  military rank")
for decade in sorted(ranking.by_decade):
    if decade >= 1900:
        print(f"{decade}s  {ranking.rank_of(decade, military)}")

stability = half_century_stability(ranking)
print("\nhalf-century  mean consecutive-decade tau")
for start, entry in sorted(stability.items()):
    if entry.mean_tau is not None:
        print(f"{start}-{start + 50}  {entry.mean_tau:.3f}")
