"""Ground-truth spot check: stratified street sampling, annotation
round-trip, and coverage estimates.

The sampler is the one part of the package that uses randomness, so it is
pinned down hard: a named generator algorithm, an explicit seed, sorted
iteration everywhere, and strata drawn in a fixed order.  Two calls with
the same seed and the same road set return the same names, whatever order
the roads came in.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from streetscape.core import (
    DataError,
    District,
    Gender,
    SchemaError,
    StreetRecord,
    normalize_name,
)
from streetscape.ingest import RoadSegment, body_lines
from streetscape.spatial import assign_district

PathLike = Union[str, Path]

# The sampler's RNG, recorded in every report so a sample can be re-drawn
# by any future release (or an entirely different tool).
RNG_ALGORITHM = "numpy-pcg64"

DEFAULT_SAMPLE_SIZE = 200

ANNOTATION_COLUMNS = ("street_name", "district", "is_honorific", "honoree_gender")


@dataclass(frozen=True)
class SamplePlan:
    """How many streets to draw from each district."""

    city_id: str
    seed: int
    sample_size: int = DEFAULT_SAMPLE_SIZE
    strata: dict[str, int] = field(default_factory=dict)
    algorithm: str = RNG_ALGORITHM


def make_plan(
    city_id: str,
    district_ids: Sequence[str],
    seed: int,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
) -> SamplePlan:
    """Uniform stratification: quotas differ by at most 1 and sum to
    ``sample_size``; earlier districts absorb the remainder."""
    if not district_ids:
        return SamplePlan(
            city_id=city_id, seed=seed, sample_size=sample_size, strata={"": sample_size}
        )
    base, extra = divmod(sample_size, len(district_ids))
    strata = {
        d: base + (1 if i < extra else 0) for i, d in enumerate(district_ids)
    }
    return SamplePlan(city_id=city_id, seed=seed, sample_size=sample_size, strata=strata)


def stratify(
    roads: Iterable[RoadSegment], districts: Sequence[District]
) -> dict[str, list[RoadSegment]]:
    """Group roads by the district containing them; unplaceable roads land
    under ``""`` and take no part in stratified draws."""
    if not districts:
        return {"": list(roads)}
    out: dict[str, list[RoadSegment]] = {}
    for road in roads:
        probe = StreetRecord(city_id="", street_name=road.name, geometry=road.geometry)
        district_id = assign_district(probe, districts) or ""
        out.setdefault(district_id, []).append(road)
    return out


def draw_sample(
    roads: Sequence[RoadSegment],
    plan: SamplePlan,
    districts: Sequence[District] = (),
) -> list[str]:
    """Seeded stratified sample of street names, without replacement.

    Districts short of their quota contribute everything they have; the
    shortfall is redistributed one street at a time, round-robin over the
    strata that still have spare roads.  When the whole road set is
    smaller than the sample size, every name is returned (the report layer
    warns).  Output is sorted; sampling is over names, so input order
    never matters.
    """
    rng = np.random.default_rng(plan.seed)
    by_district = stratify(roads, districts)

    pools: dict[str, list[str]] = {}
    for stratum in sorted(plan.strata):
        # Raw name as tie-break: distinct spellings with one normalized
        # form must still order identically under any input permutation.
        pools[stratum] = sorted(
            {road.name for road in by_district.get(stratum, [])},
            key=lambda n: (normalize_name(n), n),
        )

    chosen: list[str] = []
    for stratum in sorted(plan.strata):
        pool = pools[stratum]
        quota = min(plan.strata[stratum], len(pool))
        if quota == 0:
            continue
        picks = rng.choice(len(pool), size=quota, replace=False)
        for i in sorted(picks.tolist()):
            chosen.append(pool[i])
        pools[stratum] = [name for j, name in enumerate(pool) if j not in set(picks.tolist())]

    shortfall = plan.sample_size - len(chosen)
    while shortfall > 0:
        open_strata = [s for s in sorted(pools) if pools[s]]
        if not open_strata:
            break
        for stratum in open_strata:
            if shortfall == 0:
                break
            pool = pools[stratum]
            pick = int(rng.integers(len(pool)))
            chosen.append(pool.pop(pick))
            shortfall -= 1

    return sorted(chosen, key=lambda n: (normalize_name(n), n))


@dataclass(frozen=True)
class AnnotationRow:
    street_name: str
    district: Optional[str]
    is_honorific: Optional[bool]
    honoree_gender: Optional[Gender]


def write_annotation_template(
    sample: Sequence[tuple[str, Optional[str]]],
    path: PathLike,
    header_lines: Sequence[str] = (),
) -> None:
    """Empty annotation sheet for a drawn sample: one row per street,
    judgment columns blank until a human fills them."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ANNOTATION_COLUMNS)
        for name, district in sample:
            writer.writerow([name, district or "", "", ""])


_TRUE = {"true", "yes", "1", "y"}
_FALSE = {"false", "no", "0", "n"}


def read_annotations(path: PathLike) -> list[AnnotationRow]:
    """Parse an annotation sheet, enforcing its one structural rule:
    a gender judgment implies the street was marked honorific."""
    rows: list[AnnotationRow] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(body_lines(fh))
        header = reader.fieldnames or []
        missing = [c for c in ANNOTATION_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column {missing[0]!r}")
        for i, row in enumerate(reader, start=2):
            flag_text = (row["is_honorific"] or "").strip().lower()
            if not flag_text:
                is_honorific = None
            elif flag_text in _TRUE:
                is_honorific = True
            elif flag_text in _FALSE:
                is_honorific = False
            else:
                raise DataError(f"{path}:{i}: unreadable is_honorific {flag_text!r}")
            gender_text = (row["honoree_gender"] or "").strip().lower()
            try:
                gender = Gender(gender_text) if gender_text else None
            except ValueError:
                raise DataError(
                    f"{path}:{i}: unreadable honoree_gender {gender_text!r}"
                ) from None
            if gender is not None and is_honorific is not True:
                raise DataError(
                    f"{path}:{i}: gender annotated on a non-honorific street"
                )
            rows.append(
                AnnotationRow(
                    street_name=row["street_name"],
                    district=(row["district"] or "").strip() or None,
                    is_honorific=is_honorific,
                    honoree_gender=gender,
                )
            )
    return rows


def wilson_interval(successes: int, n: int, z: float = 1.96) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if n == 0:
        raise ValueError("empty sample has no interval")
    p = successes / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = (z / denom) * sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class CoverageReport:
    """Sample-based honorific/female shares with exact fractions, Wilson
    intervals, and (when provided) the curated dataset's own shares for a
    side-by-side comparison."""

    city_id: str
    sample_size: int
    honorific_count: int
    honorific_share: Fraction
    honorific_interval: tuple[float, float]
    female_count: int
    female_share: Optional[Fraction]
    female_interval: Optional[tuple[float, float]]
    dataset_people_share: Optional[Fraction] = None
    dataset_female_share: Optional[Fraction] = None

    def as_dict(self) -> dict:
        def frac(f: Optional[Fraction]) -> Optional[dict]:
            if f is None:
                return None
            return {
                "numerator": f.numerator,
                "denominator": f.denominator,
                "value": float(f),
            }

        return {
            "city_id": self.city_id,
            "sample_size": self.sample_size,
            "honorific_count": self.honorific_count,
            "honorific_share": frac(self.honorific_share),
            "honorific_interval_95": list(self.honorific_interval),
            "female_count": self.female_count,
            "female_share": frac(self.female_share),
            "female_interval_95": (
                list(self.female_interval) if self.female_interval else None
            ),
            # Curated honorific count over the OSM street total: how much of
            # the sampled reality the curated dataset covers.
            "dataset_people_share": frac(self.dataset_people_share),
            "dataset_female_share": frac(self.dataset_female_share),
        }


def estimate_coverage(
    annotations: Sequence[AnnotationRow],
    city_id: str = "",
    dataset_honorific_total: Optional[int] = None,
    osm_street_total: Optional[int] = None,
    dataset_female_share: Optional[Fraction] = None,
) -> CoverageReport:
    """Shares of honorific streets and of women among them, from a fully
    annotated sample.

    Percentages are exact rationals of the annotation counts.  Rows never
    annotated are a hard error listing every offender; a sample is either
    done or not usable.
    """
    unannotated = [r.street_name for r in annotations if r.is_honorific is None]
    if unannotated:
        raise DataError(
            "unannotated rows: " + ", ".join(sorted(unannotated, key=normalize_name))
        )
    n = len(annotations)
    if n == 0:
        raise DataError("empty annotation file")
    honorific = [r for r in annotations if r.is_honorific]
    female = [r for r in honorific if r.honoree_gender is Gender.FEMALE]

    female_share: Optional[Fraction] = None
    female_interval: Optional[tuple[float, float]] = None
    if honorific:
        female_share = Fraction(len(female), len(honorific))
        female_interval = wilson_interval(len(female), len(honorific))

    dataset_people_share: Optional[Fraction] = None
    if dataset_honorific_total is not None and osm_street_total:
        dataset_people_share = Fraction(dataset_honorific_total, osm_street_total)

    return CoverageReport(
        city_id=city_id,
        sample_size=n,
        honorific_count=len(honorific),
        honorific_share=Fraction(len(honorific), n),
        honorific_interval=wilson_interval(len(honorific), n),
        female_count=len(female),
        female_share=female_share,
        female_interval=female_interval,
        dataset_people_share=dataset_people_share,
        dataset_female_share=dataset_female_share,
    )
