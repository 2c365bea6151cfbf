"""Street-name analytics: who a city chooses to remember, measured from its map.

The package turns raw street inventories into decade-resolved indicators of
commemorative culture: how many streets honor people, which genders and
occupations they represent, how many honorees were born abroad, and which
historical decades the naming activity looks back to.
"""

from streetscape.core import (
    CityConfig,
    DataError,
    District,
    Gender,
    GeometryError,
    Honoree,
    Metric,
    NetworkError,
    OccupationGroup,
    SchemaError,
    StreetRecord,
    decade_of,
    decade_range,
    is_countable,
    normalize_country,
    normalize_name,
)

__version__ = "0.1.0"

__all__ = [
    "CityConfig",
    "DataError",
    "District",
    "Gender",
    "GeometryError",
    "Honoree",
    "Metric",
    "NetworkError",
    "OccupationGroup",
    "SchemaError",
    "StreetRecord",
    "decade_of",
    "decade_range",
    "is_countable",
    "normalize_country",
    "normalize_name",
    "__version__",
]
