"""Builders shared across test modules."""

from __future__ import annotations

from streetscape.core import (
    District,
    Gender,
    Honoree,
    OccupationGroup,
    StreetRecord,
)


def honoree(
    name="Test Person",
    gender=Gender.MALE,
    group=OccupationGroup.OTHER,
    raw=None,
    country="FR",
    birth=1800,
    death=1870,
) -> Honoree:
    return Honoree(
        full_name=name,
        gender=gender,
        occupation_raw=raw,
        occupation_group=group,
        country_of_origin=country,
        birth_year=birth,
        death_year=death,
    )


def rec(
    street="Rue Test",
    city="testville",
    district=None,
    year=1900,
    geometry=None,
    **honoree_kwargs,
) -> StreetRecord:
    return StreetRecord(
        city_id=city,
        street_name=street,
        district_id=district,
        denomination_year=year,
        geometry=geometry,
        honoree=honoree(**honoree_kwargs),
    )


def bare_rec(street="Rue Vide", city="testville", year=1900) -> StreetRecord:
    """Record with no honoree at all."""
    return StreetRecord(city_id=city, street_name=street, denomination_year=year)


def square_ring(x0: float, y0: float, size: float):
    """Closed CCW square ring with corner at (x0, y0)."""
    return (
        (x0, y0),
        (x0 + size, y0),
        (x0 + size, y0 + size),
        (x0, y0 + size),
        (x0, y0),
    )


def square_district(district_id: str, x0: float, y0: float, size: float = 1.0, name=None) -> District:
    return District(
        district_id=district_id,
        name=name or district_id,
        polygon=((square_ring(x0, y0, size),),),
    )
