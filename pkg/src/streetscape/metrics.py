"""Decade and district indicators computed from enriched street records.

Every function here is pure: records in, values out, no I/O.  Proportions
are plain floats; count series carry explicit zeros between their first
and last decade, while proportion series leave undefined decades absent
because 0/0 is not 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from scipy.stats import kendalltau as _scipy_kendalltau

from streetscape.core import (
    GROUP_ORDER,
    CityConfig,
    District,
    Gender,
    Metric,
    OccupationGroup,
    StreetRecord,
    decade_of,
    decade_range,
    is_countable,
)

# Reason attached to a decade whose denominator is empty: there were dated
# streets but none countable for the metric, which is not the same as 0.
NO_COUNTABLE = "no_countable_streets"

CUMULATIVE = "cumulative"
PER_DECADE = "per_decade"


@dataclass(frozen=True)
class DecadeSeries:
    """Ordered decade → value map for one metric of one city."""

    metric_id: str
    city_id: str
    values: dict[int, float]
    flags: dict[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", dict(sorted(self.values.items())))
        object.__setattr__(self, "flags", dict(sorted(self.flags.items())))

    @property
    def decades(self) -> tuple[int, ...]:
        return tuple(self.values)


@dataclass(frozen=True)
class DistrictMetric:
    """district_id → value map for one metric of one city."""

    metric_id: str
    city_id: str
    values: dict[str, float]


@dataclass(frozen=True)
class RankEntry:
    group: OccupationGroup
    count: int
    rank: int


@dataclass(frozen=True)
class OccupationRanking:
    """Per-decade ordered group rankings, cumulative or per-decade counts."""

    city_id: str
    mode: str
    by_decade: dict[int, tuple[RankEntry, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "by_decade", dict(sorted(self.by_decade.items())))

    def rank_of(self, decade: int, group: OccupationGroup) -> Optional[int]:
        entries = self.by_decade.get(decade)
        if entries is None:
            return None
        for entry in entries:
            if entry.group is group:
                return entry.rank
        return None

    def counts(self, decade: int) -> dict[OccupationGroup, int]:
        return {e.group: e.count for e in self.by_decade.get(decade, ())}


@dataclass(frozen=True)
class FhdReport:
    counted: int
    skipped_invalid_lifespan: int
    excluded_missing_years: int


@dataclass(frozen=True)
class StabilityEntry:
    half_century: int
    mean_tau: Optional[float]
    pairs_used: int
    pairs_skipped: int
    reason: Optional[str] = None


def _dated(records: Iterable[StreetRecord], metric: Metric) -> list[StreetRecord]:
    return [
        r
        for r in records
        if r.denomination_year is not None and is_countable(r, metric)
    ]


def _is_foreign(record: StreetRecord, home_country: str) -> bool:
    return record.honoree.country_of_origin != home_country


def apply_start_decade(
    records: Iterable[StreetRecord], city: CityConfig
) -> list[StreetRecord]:
    """Drop records denominated before the city's analysis window.

    Comparison is at decade granularity: a record survives iff
    decade(denomination_year) >= decade(start_decade).  Undated records
    pass through; decade-indexed metrics skip them anyway, and lifespan
    coverage must not lose them.
    """
    threshold = decade_of(city.start_decade)
    return [
        r
        for r in records
        if r.denomination_year is None or decade_of(r.denomination_year) >= threshold
    ]


def f_prop_by_decade(
    records: Iterable[StreetRecord], decade: int
) -> Optional[float]:
    """Share of streets denominated in ``decade`` honoring women.

    ``None`` when the decade has no gender-countable streets: an absent
    value, not zero.
    """
    pool = [
        r
        for r in _dated(records, Metric.GENDER)
        if decade_of(r.denomination_year) == decade
    ]
    if not pool:
        return None
    female = sum(1 for r in pool if r.honoree.gender is Gender.FEMALE)
    return female / len(pool)


def for_prop_by_decade(
    records: Iterable[StreetRecord],
    decade: int,
    home_country: str,
    strict: bool = False,
) -> Optional[float]:
    """Share of streets denominated in ``decade`` honoring foreigners.

    ``strict=True`` reproduces the literal published formula, whose
    numerator counts foreigner streets of every decade; the result can
    then exceed 1.  Default counts foreigners within the decade.
    """
    dated = _dated(records, Metric.FOREIGNER)
    pool = [r for r in dated if decade_of(r.denomination_year) == decade]
    if not pool:
        return None
    numerator_pool = dated if strict else pool
    foreign = sum(1 for r in numerator_pool if _is_foreign(r, home_country))
    return foreign / len(pool)


def _district_prop(
    records: Iterable[StreetRecord],
    district_id: str,
    metric: Metric,
    predicate,
    within_district: bool,
) -> float:
    assigned = [
        r for r in records if r.district_id is not None and is_countable(r, metric)
    ]
    local = [r for r in assigned if r.district_id == district_id]
    hits = sum(1 for r in local if predicate(r))
    denominator = len(local) if within_district else len(assigned)
    if denominator == 0:
        return 0.0
    return hits / denominator


def f_prop_by_district(
    records: Iterable[StreetRecord],
    district: Union[District, str],
    within_district: bool = False,
) -> float:
    """Female-honoree streets of one district as a share of the city total.

    The denominator is every district-assigned countable street in the
    city, so district values sum to the city-wide female share.
    ``within_district=True`` switches to the district's own street count,
    which reads better on a map but loses that identity.
    """
    district_id = district.district_id if isinstance(district, District) else district
    return _district_prop(
        records,
        district_id,
        Metric.GENDER,
        lambda r: r.honoree.gender is Gender.FEMALE,
        within_district,
    )


def for_prop_by_district(
    records: Iterable[StreetRecord],
    district: Union[District, str],
    home_country: str,
    within_district: bool = False,
) -> float:
    """Foreign-honoree streets of one district as a share of the city total."""
    district_id = district.district_id if isinstance(district, District) else district
    return _district_prop(
        records,
        district_id,
        Metric.FOREIGNER,
        lambda r: _is_foreign(r, home_country),
        within_district,
    )


def pooled_f_prop(records: Iterable[StreetRecord]) -> Optional[float]:
    """Female share over all countable records, every decade pooled."""
    pool = [r for r in records if is_countable(r, Metric.GENDER)]
    if not pool:
        return None
    return sum(1 for r in pool if r.honoree.gender is Gender.FEMALE) / len(pool)


def pooled_for_prop(
    records: Iterable[StreetRecord], home_country: str
) -> Optional[float]:
    """Foreigner share over all countable records, every decade pooled."""
    pool = [r for r in records if is_countable(r, Metric.FOREIGNER)]
    if not pool:
        return None
    return sum(1 for r in pool if _is_foreign(r, home_country)) / len(pool)


def f_prop_series(records: Sequence[StreetRecord], city: CityConfig) -> DecadeSeries:
    return _proportion_series(
        records, city, "f_prop_by_decade", lambda pool, dec: f_prop_by_decade(pool, dec)
    )


def for_prop_series(
    records: Sequence[StreetRecord], city: CityConfig, strict: bool = False
) -> DecadeSeries:
    metric_id = "for_prop_by_decade_literal" if strict else "for_prop_by_decade"
    return _proportion_series(
        records,
        city,
        metric_id,
        lambda pool, dec: for_prop_by_decade(pool, dec, city.home_country, strict),
    )


def _proportion_series(
    records: Sequence[StreetRecord], city: CityConfig, metric_id: str, compute
) -> DecadeSeries:
    dated_any = [r for r in records if r.denomination_year is not None]
    values: dict[int, float] = {}
    flags: dict[int, str] = {}
    for decade in sorted({decade_of(r.denomination_year) for r in dated_any}):
        value = compute(records, decade)
        if value is None:
            flags[decade] = NO_COUNTABLE
        else:
            values[decade] = value
    return DecadeSeries(
        metric_id=metric_id, city_id=city.city_id, values=values, flags=flags
    )


def f_prop_districts(
    records: Sequence[StreetRecord], city: CityConfig, within_district: bool = False
) -> DistrictMetric:
    metric_id = "f_prop_by_district_within" if within_district else "f_prop_by_district"
    return DistrictMetric(
        metric_id=metric_id,
        city_id=city.city_id,
        values={
            d.district_id: f_prop_by_district(records, d, within_district)
            for d in city.districts
        },
    )


def for_prop_districts(
    records: Sequence[StreetRecord], city: CityConfig, within_district: bool = False
) -> DistrictMetric:
    metric_id = (
        "for_prop_by_district_within" if within_district else "for_prop_by_district"
    )
    return DistrictMetric(
        metric_id=metric_id,
        city_id=city.city_id,
        values={
            d.district_id: for_prop_by_district(
                records, d, city.home_country, within_district
            )
            for d in city.districts
        },
    )


def fhd(
    records: Iterable[StreetRecord], city_id: str = ""
) -> tuple[DecadeSeries, FhdReport]:
    """Decade → number of honorees whose lifespan touches that decade.

    Each record votes once for every decade from decade(birth) through
    decade(death).  Records with an inverted lifespan are skipped and
    counted; records missing either year are excluded and counted.  The
    series spans its min..max decade with explicit zeros in gaps.  Start
    decades never filter this series: lifespans predate naming windows.
    """
    counts: dict[int, int] = {}
    counted = skipped = excluded = 0
    for record in records:
        h = record.honoree
        if h is None or h.gender is Gender.UNKNOWN:
            continue
        if not h.has_lifespan:
            excluded += 1
            continue
        if not h.lifespan_valid:
            skipped += 1
            continue
        for decade in decade_range(h.birth_year, h.death_year):
            counts[decade] = counts.get(decade, 0) + 1
        counted += 1

    values: dict[int, float] = {}
    if counts:
        for decade in decade_range(min(counts), max(counts)):
            values[decade] = float(counts.get(decade, 0))
    series = DecadeSeries(metric_id="fhd", city_id=city_id, values=values)
    return series, FhdReport(
        counted=counted,
        skipped_invalid_lifespan=skipped,
        excluded_missing_years=excluded,
    )


def denominations_by_decade(
    records: Iterable[StreetRecord], city_id: str = ""
) -> DecadeSeries:
    """Fraction of dated streets (re)named in each decade; sums to 1.

    Decades between the first and last naming event appear explicitly,
    zero-valued when nothing happened.
    """
    years = [r.denomination_year for r in records if r.denomination_year is not None]
    values: dict[int, float] = {}
    if years:
        counts: dict[int, int] = {}
        for year in years:
            decade = decade_of(year)
            counts[decade] = counts.get(decade, 0) + 1
        total = len(years)
        for decade in decade_range(min(years), max(years)):
            values[decade] = counts.get(decade, 0) / total
    return DecadeSeries(metric_id="denomination_fraction", city_id=city_id, values=values)


def occupation_ranking(
    records: Iterable[StreetRecord], mode: str = CUMULATIVE, city_id: str = ""
) -> OccupationRanking:
    """Rank the twelve occupation groups for every decade.

    Cumulative mode (the default) counts streets denominated in decades up
    to and including d; per-decade mode counts within d only.  All twelve
    groups are ranked every decade, ties broken by higher count first and
    then enum declaration order, so ranks are a dense 1..12.
    """
    if mode not in (CUMULATIVE, PER_DECADE):
        raise ValueError(f"unknown ranking mode: {mode!r}")
    dated = _dated(records, Metric.OCCUPATION)
    by_decade: dict[int, tuple[RankEntry, ...]] = {}
    if dated:
        per_decade_counts: dict[int, dict[OccupationGroup, int]] = {}
        for r in dated:
            decade = decade_of(r.denomination_year)
            bucket = per_decade_counts.setdefault(decade, {})
            group = r.honoree.occupation_group
            bucket[group] = bucket.get(group, 0) + 1

        running = {g: 0 for g in OccupationGroup}
        first = min(per_decade_counts)
        last = max(per_decade_counts)
        for decade in decade_range(first, last):
            fresh = per_decade_counts.get(decade, {})
            for group, n in fresh.items():
                running[group] += n
            counts = dict(running) if mode == CUMULATIVE else {
                g: fresh.get(g, 0) for g in OccupationGroup
            }
            ordered = sorted(
                OccupationGroup, key=lambda g: (-counts[g], GROUP_ORDER[g])
            )
            by_decade[decade] = tuple(
                RankEntry(group=g, count=counts[g], rank=i + 1)
                for i, g in enumerate(ordered)
            )
    return OccupationRanking(city_id=city_id, mode=mode, by_decade=by_decade)


Ranking = Union[Sequence, Mapping]


def _rank_vector(ranking: Ranking) -> dict:
    """Item → score.  Sequences are orderings (position = rank); mappings
    give ranks or scores directly and may contain ties."""
    if isinstance(ranking, Mapping):
        return dict(ranking)
    items = list(ranking)
    if len(set(items)) != len(items):
        raise ValueError("ordered ranking contains duplicate items")
    return {item: position for position, item in enumerate(items)}


def kendall_tau(rank_a: Ranking, rank_b: Ranking) -> float:
    """Tie-aware rank correlation (tau-b) between two rankings.

    Rankings must cover the same items, as an ordered sequence or as a
    mapping item → rank/score.  Returns nan when either side is all ties,
    which has no defined correlation.
    """
    a = _rank_vector(rank_a)
    b = _rank_vector(rank_b)
    if set(a) != set(b):
        raise ValueError("rankings cover different item sets")
    if len(a) < 2:
        raise ValueError("need at least 2 items to correlate")
    items = sorted(a, key=repr)
    x = [a[item] for item in items]
    y = [b[item] for item in items]
    result = _scipy_kendalltau(x, y, variant="b")
    return float(result[0])


HALF_CENTURIES = (1800, 1850, 1900, 1950)


def half_century_stability(
    ranking: OccupationRanking,
    half_centuries: Sequence[int] = HALF_CENTURIES,
) -> dict[int, StabilityEntry]:
    """Mean consecutive-decade rank correlation within each 50-year window.

    Window H averages tau over the pairs (H, H+10) .. (H+40, H+50),
    computed on the group count vectors so tied counts are tied ranks.
    Missing decades shrink the average; windows left with no usable pair
    come back value-less with a reason.
    """
    out: dict[int, StabilityEntry] = {}
    for start in half_centuries:
        taus = []
        skipped = 0
        for decade in range(start, start + 50, 10):
            lo = ranking.counts(decade)
            hi = ranking.counts(decade + 10)
            if not lo or not hi:
                skipped += 1
                continue
            tau = kendall_tau(lo, hi)
            if tau != tau:
                skipped += 1
                continue
            taus.append(tau)
        if taus:
            out[start] = StabilityEntry(
                half_century=start,
                mean_tau=sum(taus) / len(taus),
                pairs_used=len(taus),
                pairs_skipped=skipped,
            )
        else:
            out[start] = StabilityEntry(
                half_century=start,
                mean_tau=None,
                pairs_used=0,
                pairs_skipped=skipped,
                reason="fewer than 2 ranked decades in window",
            )
    return out


def dataset_summary(records: Sequence[StreetRecord]) -> dict:
    """Headline counts: street total, denomination span, lifespan span."""
    years = [r.denomination_year for r in records if r.denomination_year is not None]
    births = [
        r.honoree.birth_year
        for r in records
        if r.honoree is not None and r.honoree.birth_year is not None
    ]
    deaths = [
        r.honoree.death_year
        for r in records
        if r.honoree is not None and r.honoree.death_year is not None
    ]
    return {
        "honorific_streets": len(records),
        "denomination_min": min(years) if years else None,
        "denomination_max": max(years) if years else None,
        "birth_min": min(births) if births else None,
        "death_max": max(deaths) if deaths else None,
    }
