"""Deterministic synthetic corpus for the four shipped city fixtures.

Running this module regenerates every file under ``data/``: curated
datasets, district polygons, street inventories, the Paris annotation
sheet, and the run configuration.  Generation uses no randomness at all,
so the emitted bytes are a pure function of this file; the sampling seed
below only feeds the library's own sample draw when the annotation sheet
is built, and matches the shipped configuration.

The numbers are calibrated: per-city totals and year spans, the female
and foreigner proportion profiles, the Paris lifespan peak and military
rank trajectory, the London rank-stability dip, and the New York
recent-lifespan mass are all fixed by the matrices and histograms in this
file.  ``certify`` recomputes each figure through the library after
writing and fails loudly if anything drifted, so a corpus that generates
cleanly is known to carry its headline numbers.
"""

from __future__ import annotations

import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from streetscape.core import CityConfig, Gender, OccupationGroup, decade_of, normalize_name
from streetscape.enrich.occupations import default_lexicon, map_occupation
from streetscape.ingest import parse_curated_dataset, parse_districts, parse_osm_roads
from streetscape.metrics import (
    apply_start_decade,
    dataset_summary,
    f_prop_series,
    fhd,
    for_prop_series,
    half_century_stability,
    occupation_ranking,
    pooled_for_prop,
)
from streetscape.validate import draw_sample, estimate_coverage, make_plan, read_annotations, stratify

SEED = 20260822

G = OccupationGroup
GROUP_LIST = list(OccupationGroup)

# Decade axis for the three matrix cities (Paris, Vienna both start their
# window in 1860; London's matrix is allocated, New York has three decades).
MODERN = list(range(1860, 2020, 10))


# ---------------------------------------------------------------------------
# name material

FR_SURNAMES = [
    "Dupont", "Durand", "Moreau", "Lefebvre", "Fontaine", "Garnier", "Rousseau",
    "Blanchard", "Marchand", "Caron", "Lemoine", "Renard", "Berger", "Chevalier",
    "Faure", "Mercier", "Dumas", "Aubert", "Baron", "Carpentier", "Charpentier",
    "Colin", "Perrot", "Giraud", "Lacroix", "Lambert", "Leclerc", "Magnier",
    "Masson", "Navarre", "Noel", "Pasquier", "Perrin", "Picard", "Poulain",
    "Renaud", "Riviere", "Rolland", "Tessier", "Vasseur", "Vidal", "Bonnet",
    "Brunet", "Clement", "Delacroix", "Deschamps", "Dubois", "Ferrand",
    "Gaillard", "Guerin", "Hamon", "Joly", "Laborde", "Lebrun", "Lemaire",
    "Marechal", "Pelletier", "Roche", "Salmon", "Vaillant",
]
FR_MALE = [
    "Jean", "Pierre", "Louis", "Henri", "Charles", "Paul", "Jacques", "Michel",
    "Andre", "Claude", "Etienne", "Francois", "Georges", "Gustave", "Victor",
    "Emile", "Marcel", "Antoine", "Albert", "Auguste", "Bernard", "Denis",
    "Edmond", "Eugene", "Fernand", "Gabriel", "Gaston", "Hippolyte", "Jules",
    "Leon", "Lucien", "Maurice", "Raymond", "Theodore", "Xavier", "Armand",
]
FR_FEMALE = [
    "Marie", "Jeanne", "Marguerite", "Louise", "Catherine", "Madeleine",
    "Elisabeth", "Anne", "Francoise", "Helene", "Julie", "Claire", "Simone",
    "Adele", "Berthe", "Cecile", "Colette", "Denise", "Gabrielle", "Genevieve",
    "Henriette", "Irene", "Josephine", "Lucie", "Mathilde", "Pauline",
]

DE_SURNAMES = [
    "Gruber", "Huber", "Bauer", "Wagner", "Müller", "Pichler", "Steiner",
    "Moser", "Mayr", "Hofer", "Leitner", "Berger", "Fuchs", "Eder", "Fischer",
    "Schmid", "Winkler", "Weber", "Schwarz", "Maier", "Schneider", "Reiter",
    "Schober", "Mayer", "Lang", "Baumgartner", "Auer", "Binder", "Egger",
    "Wallner", "Aigner", "Ebner", "Haas", "Schuster", "Lechner", "Wimmer",
    "Holzer", "Brandstätter", "Wolf", "Plank", "Rainer", "Krenn", "Neubauer",
    "Ortner", "Hartmann", "Jäger", "Koch", "Brunner", "Gasser", "Fellner",
    "Stadler", "Haider", "Frank", "Schörg", "Weiss", "Zimmermann", "Graf",
    "Böhm", "Krammer", "Unger",
]
DE_MALE = [
    "Johann", "Franz", "Karl", "Josef", "Anton", "Heinrich", "Friedrich",
    "Wilhelm", "Ludwig", "Ferdinand", "Rudolf", "Leopold", "Ignaz", "Gustav",
    "Hermann", "Otto", "Richard", "Theodor", "Alois", "Eduard", "Emil",
    "Ernst", "Georg", "Hans", "Hugo", "Jakob", "Konrad", "Max", "Moritz",
    "Oskar", "Peter", "Robert", "Stefan", "Viktor", "Adalbert", "Engelbert",
]
DE_FEMALE = [
    "Maria", "Anna", "Theresia", "Johanna", "Elisabeth", "Katharina", "Rosa",
    "Bertha", "Christine", "Emilie", "Franziska", "Gertrude", "Hedwig",
    "Helene", "Hilde", "Ida", "Klara", "Leopoldine", "Margarete", "Mathilde",
    "Olga", "Paula", "Sophie", "Wilhelmine", "Adele", "Grete",
]

EN_SURNAMES = [
    "Smith", "Jones", "Taylor", "Brown", "Wilson", "Evans", "Thomas",
    "Johnson", "Roberts", "Walker", "Wright", "Thompson", "Robinson", "White",
    "Hughes", "Edwards", "Green", "Hall", "Wood", "Harris", "Clarke",
    "Jackson", "Turner", "Hill", "Scott", "Cooper", "Morris", "Ward", "Moore",
    "King", "Watson", "Baker", "Harrison", "Morgan", "Allen", "Davies",
    "Carter", "Bennett", "Gray", "Mitchell", "Webb", "Chapman", "Price",
    "Shaw", "Mason", "Hunt", "Palmer", "Stone", "Knight", "Fletcher",
    "Barnes", "Holmes", "Dixon", "Page", "Parsons", "Reed", "Wells", "West",
    "Atkinson", "Fox",
]
EN_MALE = [
    "William", "John", "Thomas", "George", "James", "Henry", "Edward",
    "Charles", "Arthur", "Frederick", "Albert", "Alfred", "Walter", "Joseph",
    "Robert", "Samuel", "Richard", "Francis", "Herbert", "Ernest", "Harold",
    "Horace", "Leonard", "Stanley", "Sidney", "Cecil", "Hugh", "Oliver",
    "Philip", "Edmund", "Gilbert", "Roland", "Miles", "Simon", "Nathaniel",
    "Benjamin",
]
EN_FEMALE = [
    "Mary", "Elizabeth", "Sarah", "Margaret", "Alice", "Emily", "Florence",
    "Edith", "Ada", "Ethel", "Beatrice", "Agnes", "Catherine", "Charlotte",
    "Dorothy", "Eleanor", "Frances", "Grace", "Harriet", "Jane", "Lucy",
    "Mabel", "Rose", "Victoria", "Maud", "Constance",
]

US_SURNAMES = [
    "Murphy", "Kelly", "Sullivan", "Walsh", "OBrien", "Ryan", "Connolly",
    "McCarthy", "Gallagher", "Doyle", "Russo", "Marino", "Romano", "Colombo",
    "Ricci", "Greco", "Bruno", "Gallo", "Costa", "Lombardi", "Miller",
    "Davis", "Garcia", "Rodriguez", "Martinez", "Hernandez", "Lopez",
    "Gonzalez", "Perez", "Sanchez", "Ramirez", "Torres", "Flores", "Rivera",
    "Gomez", "Diaz", "Reyes", "Morales", "Ortiz", "Nguyen", "Kim", "Chen",
    "Wang", "Park", "Cohen", "Levy", "Friedman", "Kaplan", "Washington",
    "Jefferson", "Franklin", "Lincoln", "Adams", "Brooks", "Bell", "Ross",
    "Hayes", "Monroe", "Grant", "Sherman",
]
US_MALE = [
    "Michael", "John", "Robert", "James", "David", "William", "Richard",
    "Joseph", "Thomas", "Christopher", "Daniel", "Kevin", "Brian", "Patrick",
    "Timothy", "Matthew", "Anthony", "Steven", "Mark", "Paul", "Andrew",
    "Peter", "Frank", "Raymond", "Dennis", "Gerald", "Jonathan", "Lawrence",
    "Vincent", "Stephen", "Scott", "Gregory", "Brendan", "Sean", "Keith",
    "Douglas",
]
US_FEMALE = [
    "Mary", "Patricia", "Linda", "Barbara", "Susan", "Karen", "Nancy",
    "Donna", "Carol", "Sandra", "Diane", "Laura", "Lisa", "Michelle",
    "Angela", "Melissa", "Brenda", "Amy", "Kathleen", "Teresa", "Christine",
    "Catherine", "Frances", "Ann", "Eileen", "Moira",
]

# Raw occupation labels per group; generation asserts that the shipped
# lexicon maps every one of them back to the intended group.
RAW_LABELS = {
    G.CREATIVE_PERFORMING_ARTISTS: ["painter", "composer", "sculptor", "actor", "singer"],
    G.AUTHORS_JOURNALISTS_LINGUISTS: ["writer", "poet", "journalist", "novelist"],
    G.SCIENCE_ENGINEERING: ["engineer", "physicist", "chemist", "astronomer", "mathematician"],
    G.LEGAL_SOCIAL_CULTURAL: ["lawyer", "judge", "historian", "philosopher", "economist"],
    G.CRAFT_TRADES: ["carpenter", "printer", "goldsmith"],
    G.BUSINESS_ADMINISTRATION: ["merchant", "banker", "industrialist"],
    G.LEGISLATORS: ["politician", "senator", "mayor", "statesman"],
    G.ARMED_FORCES_OFFICERS: ["general", "admiral", "colonel", "marshal"],
    G.RELIGIOUS: ["bishop", "priest", "cardinal", "abbot"],
    G.HEALTH_ASSOCIATE: ["physician", "surgeon", "nurse"],
    G.TEACHING: ["teacher", "professor", "educator"],
    G.OTHER: ["adventurer", "courtier", "alchemist"],
}

# New York's memorial streets honor responders and civil servants; the
# lexicon folds those labels into business_administration.
NY_BUS_LABELS = ["firefighter", "police officer", "civil servant", "paramedic"]


# ---------------------------------------------------------------------------
# occupation matrices (group -> streets per decade along MODERN)

PARIS_MATRIX = {
    G.ARMED_FORCES_OFFICERS:        [8, 8, 8, 8, 10, 18, 40, 42, 38, 30, 6, 4, 3, 2, 1, 0],
    G.RELIGIOUS:                    [14, 14, 14, 14, 14, 14, 22, 22, 10, 6, 4, 2, 2, 2, 2, 2],
    G.CREATIVE_PERFORMING_ARTISTS:  [10, 10, 12, 12, 14, 14, 20, 24, 18, 20, 24, 22, 20, 18, 14, 10],
    G.AUTHORS_JOURNALISTS_LINGUISTS:[9, 10, 10, 12, 12, 12, 18, 20, 16, 18, 22, 20, 18, 16, 14, 12],
    G.SCIENCE_ENGINEERING:          [8, 8, 10, 10, 12, 12, 16, 18, 14, 16, 20, 18, 18, 16, 16, 18],
    G.LEGAL_SOCIAL_CULTURAL:        [8, 8, 10, 10, 10, 12, 16, 18, 14, 16, 18, 18, 16, 16, 16, 22],
    G.BUSINESS_ADMINISTRATION:      [0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0],
    G.LEGISLATORS:                  [0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0],
    G.HEALTH_ASSOCIATE:             [0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0],
    G.TEACHING:                     [0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0],
    G.CRAFT_TRADES:                 [0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0],
    G.OTHER:                        [0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 0, 0, 0, 0, 0],
}
PARIS_FEMALE = [0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 4, 8, 12, 14, 20]
PARIS_FOREIGN = [10, 12, 13, 10, 10, 10, 14, 14, 8, 9, 10, 9, 5, 3, 18, 0]
PARIS_BIRTHS = {
    1760: 40, 1770: 50, 1780: 70, 1790: 90, 1800: 120, 1810: 140, 1820: 160,
    1830: 170, 1840: 180, 1850: 190, 1860: 80, 1870: 20, 1880: 40, 1890: 30,
    1900: 40,
}
PARIS_DEATHS = {
    1850: 30, 1860: 90, 1870: 100, 1880: 110, 1890: 120, 1900: 130, 1910: 150,
    1920: 180, 1930: 260, 1940: 250,
}

VIENNA_TOTALS = [50, 70, 90, 100, 110, 120, 150, 190, 130, 120, 110, 100, 100, 90, 70, 50]
# Authors absorb each decade's remainder against VIENNA_TOTALS (see
# vienna_matrix); every listed count is explicit.
VIENNA_MATRIX = {
    G.CREATIVE_PERFORMING_ARTISTS:  [12, 16, 20, 24, 26, 28, 36, 48, 32, 30, 28, 26, 26, 24, 14, 12],
    G.SCIENCE_ENGINEERING:          [4, 8, 11, 14, 15, 16, 22, 28, 18, 17, 16, 15, 15, 14, 10, 8],
    G.LEGAL_SOCIAL_CULTURAL:        [3, 6, 8, 10, 11, 12, 16, 20, 14, 13, 12, 11, 11, 10, 7, 6],
    G.RELIGIOUS:                    [14, 12, 10, 9, 9, 8, 8, 10, 8, 8, 7, 6, 6, 6, 5, 4],
    G.ARMED_FORCES_OFFICERS:        [6, 5, 5, 4, 4, 4, 3, 3, 2, 1, 1, 1, 1, 0, 0, 0],
    G.BUSINESS_ADMINISTRATION:      [0, 2, 4, 5, 6, 7, 9, 11, 8, 7, 6, 5, 5, 5, 4, 6],
    G.LEGISLATORS:                  [5, 4, 6, 7, 8, 9, 11, 14, 9, 8, 7, 6, 5, 4, 1, 2],
    G.HEALTH_ASSOCIATE:             [0, 2, 3, 4, 4, 5, 6, 8, 5, 5, 4, 4, 4, 3, 2, 1],
    G.TEACHING:                     [1, 1, 2, 3, 4, 4, 5, 7, 4, 4, 4, 3, 3, 3, 2, 0],
    G.CRAFT_TRADES:                 [1, 2, 3, 4, 5, 5, 6, 8, 5, 5, 5, 4, 4, 3, 2, 0],
    G.OTHER:                        [0, 1, 2, 2, 3, 3, 4, 5, 3, 3, 2, 2, 2, 2, 1, 1],
}
VIENNA_FEMALE = [0, 0, 0, 0, 1, 1, 2, 2, 2, 2, 3, 4, 6, 10, 14, 27]
VIENNA_FOREIGN = [30, 49, 55, 58, 60, 62, 75, 90, 52, 46, 40, 36, 30, 25, 13, 15]
VIENNA_BIRTHS = {
    1600: 6, 1650: 10, 1700: 30, 1720: 40, 1740: 50, 1760: 70, 1780: 100,
    1800: 140, 1820: 180, 1840: 200, 1860: 220, 1880: 250, 1900: 194,
    1920: 120, 1940: 40,
}
VIENNA_DEATHS = {
    1660: 6, 1710: 10, 1760: 30, 1780: 40, 1800: 50, 1820: 70, 1840: 100,
    1860: 140, 1880: 180, 1900: 210, 1920: 240, 1940: 254, 1960: 200,
    1980: 120,
}

NY_DECADES = [1990, 2000, 2010]
NY_MATRIX = {
    G.BUSINESS_ADMINISTRATION:      [90, 600, 20],
    G.CREATIVE_PERFORMING_ARTISTS:  [10, 40, 5],
    G.AUTHORS_JOURNALISTS_LINGUISTS:[8, 30, 3],
    G.SCIENCE_ENGINEERING:          [10, 35, 4],
    G.LEGAL_SOCIAL_CULTURAL:        [8, 30, 3],
    G.HEALTH_ASSOCIATE:             [10, 50, 5],
    G.LEGISLATORS:                  [5, 20, 2],
    G.RELIGIOUS:                    [4, 15, 2],
    G.ARMED_FORCES_OFFICERS:        [3, 20, 2],
    G.CRAFT_TRADES:                 [2, 15, 2],
    G.TEACHING:                     [2, 10, 1],
    G.OTHER:                        [0, 5, 1],
}
NY_FEMALE = [20, 190, 13]
NY_FOREIGN = [5, 26, 3]
NY_BIRTHS = {
    1470: 1, 1870: 20, 1880: 25, 1890: 30, 1900: 35, 1910: 40, 1920: 45,
    1930: 50, 1940: 55, 1950: 120, 1960: 200, 1970: 250, 1980: 150, 1990: 51,
}
NY_DEATHS = {
    1540: 1, 1930: 20, 1940: 25, 1950: 30, 1960: 35, 1970: 40, 1980: 45,
    1990: 50, 2000: 826,
}

# London is allocated decade by decade against target shares; the 1900-1940
# overrides produce the rank churn that concentrates instability there.
LONDON_DECADES = list(range(1660, 2020, 10))
LONDON_TOTALS = [
    8, 6, 5, 4, 5, 4, 5, 4, 5, 6,
    6, 7, 8, 8,
    12, 14, 16, 18, 20,
    24, 26, 28, 30, 32,
    52, 54, 56, 58, 40,
    28, 26, 24,
    60, 30, 20, 15,
]
LONDON_BASE_SHARES = {
    G.CREATIVE_PERFORMING_ARTISTS: 0.19,
    G.AUTHORS_JOURNALISTS_LINGUISTS: 0.16,
    G.RELIGIOUS: 0.14,
    G.SCIENCE_ENGINEERING: 0.12,
    G.LEGAL_SOCIAL_CULTURAL: 0.10,
    G.BUSINESS_ADMINISTRATION: 0.07,
    G.ARMED_FORCES_OFFICERS: 0.06,
    G.LEGISLATORS: 0.05,
    G.CRAFT_TRADES: 0.04,
    G.HEALTH_ASSOCIATE: 0.03,
    G.TEACHING: 0.025,
    G.OTHER: 0.015,
}
LONDON_SHARE_OVERRIDES = {
    1900: {G.BUSINESS_ADMINISTRATION: 0.30},
    1910: {G.ARMED_FORCES_OFFICERS: 0.45},
    1920: {G.ARMED_FORCES_OFFICERS: 0.45},
    1930: {G.ARMED_FORCES_OFFICERS: 0.40},
    1940: {G.ARMED_FORCES_OFFICERS: 0.35},
}
LONDON_FEMALE = {1900: 2, 1910: 2, 1920: 3, 1930: 3, 1940: 2, 1950: 3, 1960: 4,
                 1970: 5, 1980: 24, 1990: 9, 2000: 6, 2010: 5}
LONDON_FOREIGN_TOTAL = 112
LONDON_BIRTHS = {
    1400: 3, 1500: 6, 1550: 10, 1600: 20, 1650: 30, 1700: 50, 1750: 80,
    1800: 120, 1850: 200, 1880: 145, 1900: 100,
}
LONDON_DEATHS = {
    1460: 3, 1560: 6, 1610: 10, 1660: 20, 1700: 30, 1750: 50, 1800: 80,
    1850: 120, 1900: 195, 1930: 150, 1960: 100,
}


# ---------------------------------------------------------------------------
# districts

PARIS_DISTRICTS = [f"{i}e arrondissement" if i > 1 else "1er arrondissement" for i in range(1, 21)]
VIENNA_DISTRICTS = [
    "Innere Stadt", "Leopoldstadt", "Landstraße", "Wieden", "Margareten",
    "Mariahilf", "Neubau", "Josefstadt", "Alsergrund", "Favoriten",
    "Simmering", "Meidling", "Hietzing", "Penzing", "Rudolfsheim-Fünfhaus",
    "Ottakring", "Hernals", "Währing", "Döbling", "Brigittenau",
    "Floridsdorf", "Donaustadt", "Liesing",
]
LONDON_DISTRICTS = [
    "City of London", "Westminster", "Camden", "Islington", "Hackney",
    "Tower Hamlets", "Greenwich", "Lewisham", "Southwark", "Lambeth",
    "Wandsworth", "Hammersmith and Fulham", "Kensington and Chelsea",
    "Barking and Dagenham", "Barnet", "Bexley", "Brent", "Bromley", "Croydon",
    "Ealing", "Enfield", "Haringey", "Harrow", "Havering", "Hillingdon",
    "Hounslow", "Kingston upon Thames", "Merton", "Newham", "Redbridge",
    "Richmond upon Thames", "Sutton", "Waltham Forest",
]
NY_DISTRICTS = ["Manhattan", "Brooklyn", "Queens", "The Bronx", "Staten Island"]

# (id prefix, names, grid origin lon/lat, columns)
DISTRICT_GRIDS = {
    "paris": ("paris", PARIS_DISTRICTS, 2.25, 48.82, 5),
    "vienna": ("wien", VIENNA_DISTRICTS, 16.30, 48.15, 5),
    "london": ("london", LONDON_DISTRICTS, -0.30, 51.45, 6),
    "nyc": ("ny", NY_DISTRICTS, -74.05, 40.60, 5),
}
CELL = 0.02


def district_ids(city: str) -> list[str]:
    prefix, names, _, _, _ = DISTRICT_GRIDS[city]
    return [f"{prefix}-{i + 1:02d}" for i in range(len(names))]


def district_cell(city: str, index: int) -> tuple[float, float]:
    _, _, lon0, lat0, ncols = DISTRICT_GRIDS[city]
    col, row = index % ncols, index // ncols
    return lon0 + col * CELL, lat0 + row * CELL


# ---------------------------------------------------------------------------
# small helpers


def spread(k: int, n: int) -> list[bool]:
    """k flags distributed evenly over n slots, deterministic."""
    if n == 0:
        return []
    return [((j + 1) * k) // n - (j * k) // n == 1 for j in range(n)]


def expand_hist(hist: dict[int, int]) -> list[int]:
    out = []
    for decade in sorted(hist):
        out.extend([decade] * hist[decade])
    return out


def lifespan_pairs(
    births: dict[int, int],
    deaths: dict[int, int],
    death_caps: dict[int, int],
) -> list[tuple[int, int]]:
    """Monotone pairing of birth and death decades, then concrete years.

    The i-th earliest birth decade pairs with the i-th earliest death
    decade, which keeps birth <= death whenever the cumulative birth count
    dominates the cumulative death count (asserted).  ``death_caps`` caps
    the year offsets inside a decade so the dataset-level maximum lands
    exactly where the fixture needs it.
    """
    b = expand_hist(births)
    d = expand_hist(deaths)
    assert len(b) == len(d), (len(b), len(d))
    pairs = []
    b_index: dict[int, int] = {}
    d_index: dict[int, int] = {}
    for birth_decade, death_decade in zip(b, d):
        assert birth_decade <= death_decade, (birth_decade, death_decade)
        bk = b_index.get(birth_decade, 0)
        b_index[birth_decade] = bk + 1
        dk = d_index.get(death_decade, 0)
        d_index[death_decade] = dk + 1
        birth_year = birth_decade + (bk * 7) % 10
        cap = death_caps.get(death_decade, 9)
        modulus = cap + 1
        step = 3 if modulus % 3 else 1
        death_year = death_decade + (dk * step) % modulus
        if death_year < birth_year:
            death_year = death_decade + cap
        assert birth_year <= death_year, (birth_year, death_year)
        pairs.append((birth_year, death_year))
    return pairs


class NameWell:
    """Deterministic unique honoree names from fixed pools."""

    def __init__(self, male: list[str], female: list[str], surnames: list[str]):
        self.male = male
        self.female = female
        self.surnames = surnames
        self.used: set[str] = set()
        self.counter = 0

    def next(self, gender: Gender) -> str:
        firsts = self.female if gender is Gender.FEMALE else self.male
        while True:
            i = self.counter
            self.counter += 1
            surname = self.surnames[i % len(self.surnames)]
            first = firsts[(i // len(self.surnames)) % len(firsts)]
            extra = i // (len(self.surnames) * len(firsts))
            if extra:
                first = f"{first}-{firsts[(i + extra) % len(firsts)]}"
            name = f"{first} {surname}"
            key = normalize_name(name)
            if key not in self.used:
                self.used.add(key)
                return name


STREET_PATTERNS = {
    "paris": ["Rue {}", "Avenue {}", "Boulevard {}", "Place {}", "Quai {}"],
    "vienna": ["{}gasse", "{}straße", "{}platz", "{}weg", "{}allee"],
    "london": ["{} Street", "{} Road", "{} Lane", "{} Gardens", "{} Square"],
    "nyc": ["{} Street", "{} Avenue", "{} Place", "{} Way", "{} Boulevard"],
}


def street_name_for(city: str, honoree: str, index: int) -> str:
    pattern = STREET_PATTERNS[city][index % len(STREET_PATTERNS[city])]
    if city == "vienna":
        # Surname-based compound, the local convention.
        return pattern.format(honoree.split()[-1] + "-" + honoree.split()[0])
    return pattern.format(honoree)


FOREIGN_CYCLES = {
    "paris": ["IT", "PL", "BE", "ES", "DE", "RU", "US", "GB", "CH", "AT"],
    "vienna": ["DE", "CZ", "HU", "PL", "IT", "HR", "SI", "SK", "RO", "FR"],
    "london": ["IE", "FR", "DE", "IN", "US", "IT", "NL"],
    "nyc": ["IE", "IT", "DE", "DO", "CN", "MX"],
}

HOME = {"paris": "FR", "vienna": "AT", "london": "GB", "nyc": "US"}

WELLS = {
    "paris": (FR_MALE, FR_FEMALE, FR_SURNAMES),
    "vienna": (DE_MALE, DE_FEMALE, DE_SURNAMES),
    "london": (EN_MALE, EN_FEMALE, EN_SURNAMES),
    "nyc": (US_MALE, US_FEMALE, US_SURNAMES),
}


# ---------------------------------------------------------------------------
# curated row construction


def denom_year(city: str, decade: int, j: int) -> int:
    """Year inside a decade, with the fixture's per-city end caps."""
    caps = {
        "paris": {2010: 1},
        "vienna": {2010: 8},
        "london": {2010: 3},
        "nyc": {1990: (8, 9), 2010: 3},
    }[city]
    cap = caps.get(decade)
    if city == "nyc" and decade == 1990:
        return decade + 8 + (j % 2)
    if cap is None:
        return decade + (j * 3) % 10
    # Multiplier coprime with the modulus so every offset, including the
    # cap itself, is hit and the span maximum really occurs.
    modulus = cap + 1
    step = 5 if modulus == 9 else 3 if modulus == 4 else 1
    return decade + (j * step) % modulus


def matrix_decade_rows(matrix: dict, decades: list[int]) -> dict[int, list[OccupationGroup]]:
    out = {}
    for di, decade in enumerate(decades):
        groups = []
        for group in GROUP_LIST:
            if group in matrix:
                groups.extend([group] * matrix[group][di])
        out[decade] = groups
    return out


def build_city_rows(
    city: str,
    decade_groups: dict[int, list[OccupationGroup]],
    female: dict[int, int],
    foreign: dict[int, int],
    pre_rows: list[dict],
    births: dict[int, int],
    deaths: dict[int, int],
    death_caps: dict[int, int],
    bus_labels: dict | None = None,
) -> list[dict]:
    male_pool, female_pool, surnames = WELLS[city]
    well = NameWell(male_pool, female_pool, surnames)
    ids = district_ids(city)
    rows = [dict(r) for r in pre_rows]
    pairs = lifespan_pairs(births, deaths, death_caps)
    label_cycle: dict[OccupationGroup, int] = {}

    pair_index = 0
    for decade in sorted(decade_groups):
        groups = decade_groups[decade]
        n = len(groups)
        female_flags = spread(female.get(decade, 0), n)
        foreign_flags = list(reversed(spread(foreign.get(decade, 0), n)))
        for j, group in enumerate(groups):
            gender = Gender.FEMALE if female_flags[j] else Gender.MALE
            name = well.next(gender)
            labels = RAW_LABELS[group]
            if bus_labels and group in bus_labels:
                labels = bus_labels[group]
            k = label_cycle.get(group, 0)
            label_cycle[group] = k + 1
            raw = labels[k % len(labels)]
            country = HOME[city]
            if foreign_flags[j]:
                cycle = FOREIGN_CYCLES[city]
                country = cycle[pair_index % len(cycle)]
            birth_year, death_year = pairs[pair_index]
            pair_index += 1
            rows.append(
                {
                    "street": None,  # filled below once the index is known
                    "decade": decade,
                    "j": j,
                    "honoree": name,
                    "gender": gender.value,
                    "raw": raw,
                    "group": group.value,
                    "country": country,
                    "birth": birth_year,
                    "death": death_year,
                }
            )
    assert pair_index == len(pairs), (pair_index, len(pairs))

    for i, row in enumerate(rows):
        row["district"] = ids[i % len(ids)]
        if row.get("street") is None:
            row["street"] = street_name_for(city, row["honoree"], i)
        if "year" not in row:
            row["year"] = denom_year(city, row["decade"], row["j"])
    return rows


def write_curated(path: Path, city: str, rows: list[dict], junk: list[list[str]] = ()) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# {city} honorific street dataset, synthetic fixture\n")
        fh.write("# columns: city,street_name,district,denomination_year,honoree_name,"
                 "gender,occupation_raw,occupation_group,country,birth_year,death_year\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["city", "street_name", "district", "denomination_year", "honoree_name",
             "gender", "occupation_raw", "occupation_group", "country", "birth_year",
             "death_year"]
        )
        for row in rows:
            writer.writerow(
                [city, row["street"], row["district"], row["year"], row["honoree"],
                 row["gender"], row["raw"], row["group"], row["country"],
                 row["birth"], row["death"]]
            )
        for line in junk:
            writer.writerow(line)


def pre_row(street, district, year, honoree, gender, raw, group, country, birth, death):
    return {
        "street": street, "district": district, "year": year, "honoree": honoree,
        "gender": gender, "raw": raw, "group": group.value, "country": country,
        "birth": birth, "death": death, "decade": decade_of(year), "j": 0,
    }


# ---------------------------------------------------------------------------
# per-city assembly


def paris_rows() -> list[dict]:
    ids = district_ids("paris")
    pre = [
        pre_row("Rue Lutecia", ids[0], 1202, "Lutecius Magnus", "male",
                "courtier", G.OTHER, "FR", -60, 14),
        pre_row("Rue Saint-Merri", ids[1], 1280, "Medericus de Paris", "male",
                "abbot", G.RELIGIOUS, "FR", 1180, 1245),
        pre_row("Rue Saint-Julien", ids[2], 1350, "Julien de Brioude", "male",
                "bishop", G.RELIGIOUS, "FR", 1270, 1340),
        pre_row("Rue Dante Alighieri", ids[3], 1430, "Dante Alighieri", "male",
                "poet", G.AUTHORS_JOURNALISTS_LINGUISTS, "IT", 1265, 1321),
        pre_row("Rue Ambroise Le Maistre", ids[4], 1560, "Ambroise Le Maistre", "male",
                "printer", G.CRAFT_TRADES, "FR", 1490, 1558),
        pre_row("Rue du Cardinal Berthier", ids[5], 1650, "Armand Berthier", "male",
                "cardinal", G.RELIGIOUS, "FR", 1570, 1643),
        pre_row("Rue Colbert de Torcy", ids[6], 1750, "Colbert de Torcy", "male",
                "statesman", G.LEGISLATORS, "FR", 1665, 1746),
        pre_row("Rue du Marechal Valmy", ids[7], 1850, "Edouard de Valmy", "male",
                "marshal", G.ARMED_FORCES_OFFICERS, "FR", 1770, 1842),
    ]
    female = dict(zip(MODERN, PARIS_FEMALE))
    foreign = dict(zip(MODERN, PARIS_FOREIGN))
    return build_city_rows(
        "paris", matrix_decade_rows(PARIS_MATRIX, MODERN), female, foreign,
        pre, PARIS_BIRTHS, PARIS_DEATHS, death_caps={1940: 0},
    )


def vienna_rows() -> list[dict]:
    ids = district_ids("vienna")
    pre_years = [1778, 1785, 1790, 1800, 1808, 1815, 1820, 1828, 1835, 1840, 1848, 1850]
    pre = []
    pre.append(
        pre_row("Sankt-Koloman-Gasse", ids[0], pre_years[0], "Koloman von Melk",
                "male", "abbot", G.RELIGIOUS, "AT", 700, 760)
    )
    founders = [
        ("Fischer-von-Erlach-Gasse", "Johann Fischer von Erlach", G.CREATIVE_PERFORMING_ARTISTS, "sculptor", "AT", 1656, 1723),
        ("Prinz-Eugen-Weg", "Eugen von Savoyen", G.ARMED_FORCES_OFFICERS, "general", "FR", 1663, 1736),
        ("Van-Swieten-Gasse", "Gerard van Swieten", G.HEALTH_ASSOCIATE, "physician", "NL", 1700, 1772),
        ("Metastasio-Platz", "Pietro Metastasio", G.AUTHORS_JOURNALISTS_LINGUISTS, "poet", "IT", 1698, 1782),
        ("Gluck-Allee", "Christoph Gluck", G.CREATIVE_PERFORMING_ARTISTS, "composer", "DE", 1714, 1787),
        ("Sonnenfels-Straße", "Joseph von Sonnenfels", G.LEGAL_SOCIAL_CULTURAL, "lawyer", "AT", 1732, 1817),
        ("Kinsky-Gasse", "Ulrich Kinsky", G.LEGISLATORS, "statesman", "CZ", 1743, 1812),
        ("Alxinger-Weg", "Johann Alxinger", G.AUTHORS_JOURNALISTS_LINGUISTS, "writer", "AT", 1755, 1797),
        ("Quarin-Gasse", "Joseph von Quarin", G.HEALTH_ASSOCIATE, "surgeon", "AT", 1733, 1814),
        ("Jacquin-Straße", "Nikolaus von Jacquin", G.SCIENCE_ENGINEERING, "chemist", "NL", 1727, 1817),
        ("Denis-Gasse", "Michael Denis", G.TEACHING, "professor", "AT", 1729, 1800),
    ]
    for i, (street, honoree, group, raw, country, birth, death) in enumerate(founders):
        pre.append(
            pre_row(street, ids[(i + 1) % len(ids)], pre_years[i + 1], honoree,
                    "male", raw, group, country, birth, death)
        )
    female = dict(zip(MODERN, VIENNA_FEMALE))
    foreign = dict(zip(MODERN, VIENNA_FOREIGN))
    return build_city_rows(
        "vienna", matrix_decade_rows(vienna_matrix(), MODERN), female, foreign,
        pre, VIENNA_BIRTHS, VIENNA_DEATHS, death_caps={1980: 2},
    )


def vienna_matrix() -> dict[OccupationGroup, list[int]]:
    matrix = {g: list(v) for g, v in VIENNA_MATRIX.items()}
    remainder = [
        VIENNA_TOTALS[i] - sum(v[i] for v in matrix.values())
        for i in range(len(VIENNA_TOTALS))
    ]
    assert min(remainder) >= 0, remainder
    matrix[G.AUTHORS_JOURNALISTS_LINGUISTS] = remainder
    return matrix


def london_matrix() -> dict[OccupationGroup, list[int]]:
    """Unit-by-unit allocation against target cumulative shares.

    Outside the override window every decade's streets go to whichever
    group lags its fixed share most, so cumulative ranks freeze early; the
    1900-1940 overrides pour streets into business and the military,
    forcing the overtakes that the stability dip measures.
    """
    cum = {g: 0 for g in GROUP_LIST}
    cum_target = {g: 0.0 for g in GROUP_LIST}
    matrix = {g: [0] * len(LONDON_DECADES) for g in GROUP_LIST}
    for di, decade in enumerate(LONDON_DECADES):
        overrides = LONDON_SHARE_OVERRIDES.get(decade, {})
        scale = (1.0 - sum(overrides.values())) / (
            1.0 - sum(LONDON_BASE_SHARES[g] for g in overrides)
        )
        shares = {
            g: overrides.get(g, LONDON_BASE_SHARES[g] * scale) for g in GROUP_LIST
        }
        total = LONDON_TOTALS[di]
        for g in GROUP_LIST:
            cum_target[g] += shares[g] * total
        for _ in range(total):
            g = max(GROUP_LIST, key=lambda x: (cum_target[x] - cum[x], -GROUP_LIST.index(x)))
            cum[g] += 1
            matrix[g][di] += 1
    return matrix


def london_rows() -> list[dict]:
    ids = district_ids("london")
    pre = [
        pre_row("Boadicea Street", ids[0], 1030, "Boadicea of the Iceni", "female",
                "courtier", G.OTHER, "GB", -18, 42),
        pre_row("Alfgar Lane", ids[1], 1199, "Alfgar of Lundene", "male",
                "merchant", G.BUSINESS_ADMINISTRATION, "GB", 1120, 1190),
        pre_row("Becket Lane", ids[2], 1350, "Thomas Becket", "male",
                "bishop", G.RELIGIOUS, "GB", 1119, 1170),
        pre_row("Whittington Street", ids[3], 1480, "Richard Whittington", "male",
                "mayor", G.LEGISLATORS, "GB", 1354, 1423),
        pre_row("Gresham Row", ids[4], 1590, "Thomas Gresham", "male",
                "merchant", G.BUSINESS_ADMINISTRATION, "GB", 1519, 1579),
        pre_row("Harvey Court", ids[5], 1650, "William Harvey", "male",
                "physician", G.HEALTH_ASSOCIATE, "GB", 1578, 1657),
    ]
    matrix = london_matrix()
    decade_groups = matrix_decade_rows(matrix, LONDON_DECADES)
    # Foreign honorees at a near-constant share, trimmed to the exact total.
    totals = {d: len(decade_groups[d]) for d in LONDON_DECADES}
    foreign = {d: round(totals[d] * 0.146) for d in LONDON_DECADES}
    diff = LONDON_FOREIGN_TOTAL - sum(foreign.values())
    for d in sorted(totals, key=lambda d: -totals[d]):
        if diff == 0:
            break
        step = 1 if diff > 0 else -1
        if 0 <= foreign[d] + step <= totals[d]:
            foreign[d] += step
            diff -= step
    assert sum(foreign.values()) == LONDON_FOREIGN_TOTAL
    return build_city_rows(
        "london", decade_groups, dict(LONDON_FEMALE), foreign,
        pre, LONDON_BIRTHS, LONDON_DEATHS, death_caps={1960: 1},
    )


def ny_rows() -> list[dict]:
    pre = []  # the window opens with the dataset itself
    decade_groups = matrix_decade_rows(NY_MATRIX, NY_DECADES)
    female = dict(zip(NY_DECADES, NY_FEMALE))
    foreign = dict(zip(NY_DECADES, NY_FOREIGN))
    rows = build_city_rows(
        "nyc", decade_groups, female, foreign, pre,
        NY_BIRTHS, NY_DEATHS, death_caps={2000: 3},
        bus_labels={G.BUSINESS_ADMINISTRATION: NY_BUS_LABELS},
    )
    # One colonial-era honoree anchors the lifespan span.
    rows[0]["honoree"] = "Giovanni da Verrazzano"
    rows[0]["street"] = "Verrazzano Way"
    rows[0]["raw"] = "adventurer"
    rows[0]["group"] = G.OTHER.value
    rows[0]["gender"] = "male"
    rows[0]["country"] = "IT"
    rows[0]["birth"] = 1474
    rows[0]["death"] = 1544
    # The span maximum must actually occur: pin the last death to 2003.
    rows[-1]["birth"] = 1929
    rows[-1]["death"] = 2003
    return rows


# ---------------------------------------------------------------------------
# geojson, osm, annotations, config


def write_districts(path: Path, city: str) -> None:
    prefix, names, lon0, lat0, ncols = DISTRICT_GRIDS[city]
    features = []
    for i, name in enumerate(names):
        x0, y0 = district_cell(city, i)
        ring = [
            [round(x0, 6), round(y0, 6)],
            [round(x0 + CELL, 6), round(y0, 6)],
            [round(x0 + CELL, 6), round(y0 + CELL, 6)],
            [round(x0, 6), round(y0 + CELL, 6)],
            [round(x0, 6), round(y0, 6)],
        ]
        features.append(
            {
                "type": "Feature",
                "properties": {"name": name, "id": f"{prefix}-{i + 1:02d}"},
                "geometry": {"type": "Polygon", "coordinates": [ring]},
            }
        )
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"type": "FeatureCollection", "features": features}
    path.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


ROAD_CLASSES = [
    "residential", "primary", "secondary", "tertiary", "unclassified",
    "living_street", "pedestrian",
]

FILLER_PREFIXES = [
    "Rue des", "Rue de la", "Allée des", "Villa des", "Impasse des",
    "Passage des", "Sentier des", "Chemin des",
]
FILLER_STEMS = [
    "Lilas", "Acacias", "Tilleuls", "Peupliers", "Érables", "Cerisiers",
    "Pommiers", "Sorbiers", "Glycines", "Pivoines", "Tulipes", "Jonquilles",
    "Bleuets", "Coquelicots", "Marguerites", "Violettes", "Primevères",
    "Capucines", "Mimosas", "Hortensias", "Camélias", "Magnolias", "Iris",
    "Roses", "Jasmins", "Genêts", "Bruyères", "Fougères", "Mousses",
    "Sources", "Fontaines", "Cascades", "Ruisseaux", "Étangs", "Prairies",
    "Clairières", "Coteaux", "Collines", "Vallons", "Terrasses", "Vergers",
    "Vignes", "Moissons", "Gerbes", "Épis", "Charmilles", "Saules",
    "Frênes", "Ormes", "Chênes", "Hêtres", "Bouleaux", "Noyers",
    "Châtaigniers", "Platanes", "Cyprès", "Oliviers", "Figuiers", "Amandiers",
    "Grenadiers", "Lauriers", "Myrtes", "Buis", "Ifs", "Cèdres",
    "Mélèzes", "Pins", "Sapins", "Épicéas", "Alouettes", "Hirondelles",
    "Rossignols", "Fauvettes", "Mésanges", "Pinsons", "Bergeronnettes",
    "Chardonnerets", "Grives", "Merles", "Colombes",
]
FILLER_SUFFIXES = [
    "", " Blancs", " Verts", " Fleuris", " Anciens", " Nouveaux", " Hauts",
    " Bas", " Petits", " Grands",
]


def paris_filler_names(count: int, taken: set[str]) -> list[str]:
    out = []
    for suffix in FILLER_SUFFIXES:
        for stem in FILLER_STEMS:
            for prefix in FILLER_PREFIXES:
                name = f"{prefix} {stem}{suffix}"
                key = normalize_name(name)
                if key in taken:
                    continue
                taken.add(key)
                out.append(name)
                if len(out) == count:
                    return out
    raise AssertionError("filler pool exhausted")


def road_wkt(city: str, district_index: int, i: int) -> str:
    x0, y0 = district_cell(city, district_index)
    fx = 0.002 + ((i * 29) % 83) / 83 * 0.015
    fy = 0.002 + ((i * 53) % 89) / 89 * 0.015
    x1, y1 = x0 + fx, y0 + fy
    x2, y2 = x1 + 0.001, y1 + 0.0005
    return (
        f"LINESTRING ({x1:.6f} {y1:.6f}, {x2:.6f} {y2:.6f})"
    )


def write_paris_osm(path: Path, curated_names: list[str]) -> None:
    """Full-scale inventory: every curated street plus filler, and a block
    of droppable lines exercising each exclusion reason."""
    n_districts = len(PARIS_DISTRICTS)
    taken = {normalize_name(n) for n in curated_names}
    filler = paris_filler_names(6953 - len(curated_names), taken)
    lines = []
    kept_names = []
    for i, name in enumerate(curated_names + filler):
        cls = ROAD_CLASSES[i % len(ROAD_CLASSES)]
        lines.append(f"{cls}\t{name}\t{road_wkt('paris', i % n_districts, i)}")
        kept_names.append(name)
    # Droppable: excluded classes, numbered or unnamed, duplicates.
    for i in range(60):
        lines.append(f"motorway\tAutoroute du Soleil\t{road_wkt('paris', i % n_districts, i + 7000)}")
    for i in range(40):
        lines.append(f"trunk\tRocade Exterieure\t{road_wkt('paris', i % n_districts, i + 7100)}")
    for i in range(60):
        lines.append(f"cycleway\tPiste des Berges\t{road_wkt('paris', i % n_districts, i + 7200)}")
    for i in range(40):
        lines.append(f"path\tSentier du Halage\t{road_wkt('paris', i % n_districts, i + 7300)}")
    for i in range(150):
        lines.append(f"residential\tVoie B{i % 37}\t{road_wkt('paris', i % n_districts, i + 7400)}")
    for i in range(120):
        lines.append(f"service\t\t{road_wkt('paris', i % n_districts, i + 7600)}")
    for i in range(150):
        lines.append(f"secondary\t{kept_names[i * 3 % len(kept_names)]}\t{road_wkt('paris', i % n_districts, i + 7800)}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_small_osm(path: Path, city: str, curated_names: list[str], kept_target: int) -> None:
    """Compact inventory for the cities shipped without a full extract."""
    n_districts = len(district_ids(city))
    names = list(curated_names[: kept_target - 10])
    generic = {
        "vienna": ["Feldweg", "Uferpromenade", "Marktsteig", "Brunnenallee",
                   "Parkring", "Teichufer", "Lindenhof", "Am Anger", "Hofzeile",
                   "Kirchenstieg"],
        "london": ["Mill Hill Road", "Orchard Lane", "Meadow Walk", "Riverside",
                   "The Green", "Church Path", "Station Approach", "Bridge Row",
                   "Garden Walk", "Market Passage"],
        "nyc": ["Harbor View Road", "Ocean Parkway Walk", "Ridge Lane",
                "Garden Terrace", "Park Slope Walk", "River Path",
                "Bay Promenade", "Hillside Walk", "Meadow Court", "Grove Walk"],
    }[city]
    names.extend(generic[: kept_target - len(names)])
    assert len(names) == kept_target
    lines = []
    for i, name in enumerate(names):
        cls = ROAD_CLASSES[i % len(ROAD_CLASSES)]
        lines.append(f"{cls}\t{name}\t{road_wkt(city, i % n_districts, i)}")
    lines.append(f"motorway\tOrbital\t{road_wkt(city, 0, 9001)}")
    lines.append(f"residential\tRoute 9A\t{road_wkt(city, 1, 9002)}")
    lines.append(f"footway\t\t{road_wkt(city, 2, 9003)}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_annotations(
    path: Path, osm_path: Path, districts_path: Path, curated_names: set[str]
) -> None:
    """Draw the audit sample exactly as the pipeline does and annotate it:
    92 honorific streets, 4 of them honoring women."""
    roads, _ = parse_osm_roads(osm_path)
    districts = parse_districts(districts_path)
    plan = make_plan("paris", [d.district_id for d in districts], seed=SEED, sample_size=200)
    sample = draw_sample(roads, plan, districts)
    assert len(sample) == 200, len(sample)
    by_district = stratify(roads, districts)
    district_of = {}
    for district_id, ds_roads in by_district.items():
        for road in ds_roads:
            district_of.setdefault(road.name, district_id)

    curated_hits = [n for n in sample if normalize_name(n) in curated_names]
    assert len(curated_hits) <= 92, len(curated_hits)
    honorific = set(curated_hits)
    for name in sample:
        if len(honorific) == 92:
            break
        honorific.add(name)
    assert len(honorific) == 92
    female = set(sorted(honorific, key=normalize_name)[:4])

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# paris audit sample, annotated\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["street_name", "district", "is_honorific", "honoree_gender"])
        for name in sample:
            is_hon = name in honorific
            gender = ""
            if is_hon:
                gender = "female" if name in female else "male"
            writer.writerow(
                [name, district_of.get(name, ""), "yes" if is_hon else "no", gender]
            )


CONFIG_TEMPLATE = """\
[run]
output_dir = "../../out"
seed = 20260822
bins = 5
ranking_mode = "cumulative"
sample_size = 200
endpoint = "https://query.wikidata.org/sparql"
metrics = ["gender", "foreigner", "fhd", "occupation"]

[[city]]
id = "paris"
display_name = "Paris"
home_country = "FR"
start_decade = 1860
kb_area_id = "Q90"
dataset = "../curated/paris.csv"
districts = "../districts/paris.geojson"
osm = "../osm/paris_roads.tsv"
annotations = "../annotations/paris_annotations.csv"

[[city]]
id = "vienna"
display_name = "Vienna"
home_country = "AT"
start_decade = 1860
kb_area_id = "Q1741"
dataset = "../curated/vienna.csv"
districts = "../districts/vienna.geojson"
osm = "../osm/vienna_roads.tsv"

[[city]]
id = "london"
display_name = "London"
home_country = "GB"
start_decade = 1666
kb_area_id = "Q84"
dataset = "../curated/london.csv"
districts = "../districts/london.geojson"
osm = "../osm/london_roads.tsv"

[[city]]
id = "nyc"
display_name = "New York"
home_country = "US"
start_decade = 1998
kb_area_id = "Q60"
dataset = "../curated/nyc.csv"
districts = "../districts/nyc.geojson"
osm = "../osm/nyc_roads.tsv"
"""


# ---------------------------------------------------------------------------
# certification


CITY_CONFIGS = {
    "paris": CityConfig("paris", "Paris", "FR", 1860),
    "vienna": CityConfig("vienna", "Vienna", "AT", 1860),
    "london": CityConfig("london", "London", "GB", 1666),
    "nyc": CityConfig("nyc", "New York", "US", 1998),
}

EXPECTED_SUMMARY = {
    "paris": {"honorific_streets": 1428, "denomination_min": 1202,
              "denomination_max": 2011, "birth_min": -60, "death_max": 1940},
    "vienna": {"honorific_streets": 1662, "denomination_min": 1778,
               "denomination_max": 2018, "birth_min": 700, "death_max": 1982},
    "london": {"honorific_streets": 770, "denomination_min": 1030,
               "denomination_max": 2013, "birth_min": -18, "death_max": 1961},
    "nyc": {"honorific_streets": 1072, "denomination_min": 1998,
            "denomination_max": 2013, "birth_min": 1474, "death_max": 2003},
}

# (peak decade, peak female share, pooled foreigner share)
EXPECTED_PROPS = {
    "paris": (2010, 0.32, 0.109),
    "vienna": (2010, 0.54, 0.446),
    "london": (1980, 0.40, 0.146),
    "nyc": (2010, 0.26, 0.032),
}


def certify(data_dir: Path) -> list[str]:
    lexicon = default_lexicon()
    for group, labels in RAW_LABELS.items():
        if group is G.OTHER:
            continue  # deliberately unmatched labels fall through to other
        pool = labels + (NY_BUS_LABELS if group is G.BUSINESS_ADMINISTRATION else [])
        for label in pool:
            mapped = map_occupation(label, lexicon)
            assert mapped is group, (label, mapped)
    notes = []
    by_city = {}
    for city_id, city in CITY_CONFIGS.items():
        records, report = parse_curated_dataset(data_dir / "curated" / f"{city_id}.csv", city)
        summary = dataset_summary(records)
        assert summary == EXPECTED_SUMMARY[city_id], (city_id, summary)
        filtered = apply_start_decade(records, city)
        by_city[city_id] = (records, filtered)

        peak_decade, peak_target, pooled_target = EXPECTED_PROPS[city_id]
        series = f_prop_series(filtered, city)
        top = max(series.values, key=lambda d: series.values[d])
        assert top == peak_decade, (city_id, top)
        assert abs(series.values[top] - peak_target) <= 0.008, (city_id, series.values[top])
        pooled = pooled_for_prop(filtered, city.home_country)
        assert abs(pooled - pooled_target) <= 0.004, (city_id, pooled)
        notes.append(
            f"{city_id}: {summary['honorific_streets']} streets, peak female share "
            f"{series.values[top]:.3f} in {top}s, pooled foreign share {pooled:.3f}"
        )

    paris_records, paris_filtered = by_city["paris"]
    series, _ = fhd(paris_records)
    ordered = sorted(series.values.items(), key=lambda kv: (-kv[1], kv[0]))
    assert ordered[0][0] == 1860, ordered[:3]
    assert ordered[0][1] > ordered[1][1], ordered[:2]
    ranking = occupation_ranking(paris_filtered)
    assert ranking.rank_of(1940, G.ARMED_FORCES_OFFICERS) == 1
    assert ranking.rank_of(1950, G.ARMED_FORCES_OFFICERS) == 1
    last = max(ranking.by_decade)
    final_rank = ranking.rank_of(last, G.ARMED_FORCES_OFFICERS)
    assert final_rank in (4, 5, 6), final_rank
    notes.append(f"paris: lifespan peak 1860s, military rank 1 in 1940s, {final_rank} in {last}s")

    _, vienna_filtered = by_city["vienna"]
    v_series = for_prop_series(vienna_filtered, CITY_CONFIGS["vienna"])
    v_top = max(v_series.values, key=lambda d: v_series.values[d])
    assert v_top == 1870 and abs(v_series.values[1870] - 0.70) <= 0.01, (v_top, v_series.values[v_top])
    v_rank = occupation_ranking(vienna_filtered)
    v_last = max(v_rank.by_decade)
    assert v_rank.rank_of(v_last, G.CREATIVE_PERFORMING_ARTISTS) == 1
    assert v_rank.rank_of(1860, G.ARMED_FORCES_OFFICERS) == 3
    assert v_rank.rank_of(v_last, G.ARMED_FORCES_OFFICERS) >= 8
    notes.append(
        f"vienna: foreign share peaks at {v_series.values[1870]:.2f} in the 1870s, "
        f"artists rank 1 in {v_last}s"
    )

    _, london_filtered = by_city["london"]
    l_rank = occupation_ranking(london_filtered)
    stability = half_century_stability(l_rank)
    taus = {h: s.mean_tau for h, s in stability.items()}
    assert all(v is not None for v in taus.values()), taus
    low = min(taus, key=lambda h: taus[h])
    assert low == 1900, taus
    second = min(v for h, v in taus.items() if h != 1900)
    assert second - taus[1900] >= 0.02, taus
    notes.append(
        "london: rank stability "
        + ", ".join(f"{h}s {taus[h]:.3f}" for h in sorted(taus))
    )

    ny_records, _ = by_city["nyc"]
    ny_series, _ = fhd(ny_records)
    total = sum(ny_series.values.values())
    recent = sum(v for d, v in ny_series.values.items() if d >= 1950)
    assert recent / total >= 0.55, recent / total
    notes.append(f"nyc: {recent / total:.1%} of lifespan mass in decades since 1950")

    roads, osm_report = parse_osm_roads(data_dir / "osm" / "paris_roads.tsv")
    assert osm_report.rows_kept == 6953, osm_report.rows_kept
    annotations = read_annotations(data_dir / "annotations" / "paris_annotations.csv")
    coverage = estimate_coverage(
        annotations, city_id="paris",
        dataset_honorific_total=1428, osm_street_total=osm_report.rows_kept,
    )
    assert coverage.honorific_share == Fraction(92, 200), coverage.honorific_share
    assert coverage.female_count == 4, coverage.female_count
    notes.append(
        f"paris: {osm_report.rows_kept} inventory streets, sample honorific share "
        f"{float(coverage.honorific_share):.0%}"
    )
    return notes


# ---------------------------------------------------------------------------
# entry point


def generate(data_dir: Path) -> list[str]:
    data_dir = Path(data_dir)
    builders = {
        "paris": paris_rows,
        "vienna": vienna_rows,
        "london": london_rows,
        "nyc": ny_rows,
    }
    curated = {}
    for city_id, build in builders.items():
        rows = build()
        curated[city_id] = rows
        junk = []
        if city_id == "paris":
            first = rows[0]
            junk = [
                ["marseille", "Rue du Vieux Port", "paris-01", "1930", "Marius Olivier",
                 "male", "merchant", "business_administration", "FR", "1860", "1925"],
                ["paris", first["street"], first["district"], str(first["year"]),
                 first["honoree"], first["gender"], first["raw"], first["group"],
                 first["country"], str(first["birth"]), str(first["death"])],
                ["paris", "Rue Sans Date", "paris-02", "18xx", "Prosper Malet",
                 "male", "painter", "creative_performing_artists", "FR", "1820", "1890"],
                ["paris", "Rue Anonyme", "paris-03", "1900", "", "", "", "", "", "", ""],
            ]
        write_curated(data_dir / "curated" / f"{city_id}.csv", city_id, rows, junk)
        write_districts(data_dir / "districts" / f"{city_id}.geojson", city_id)

    paris_names = [r["street"] for r in curated["paris"]]
    write_paris_osm(data_dir / "osm" / "paris_roads.tsv", paris_names)
    for city_id, kept in (("vienna", 65), ("london", 55), ("nyc", 50)):
        write_small_osm(
            data_dir / "osm" / f"{city_id}_roads.tsv", city_id,
            [r["street"] for r in curated[city_id]], kept,
        )
    write_annotations(
        data_dir / "annotations" / "paris_annotations.csv",
        data_dir / "osm" / "paris_roads.tsv",
        data_dir / "districts" / "paris.geojson",
        {normalize_name(n) for n in paris_names},
    )
    config_path = data_dir / "configs" / "streetscape.toml"
    config_path.parent.mkdir(parents=True, exist_ok=True)
    config_path.write_text(CONFIG_TEMPLATE, encoding="utf-8")
    return certify(data_dir)


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    target = Path(args[0]) if args else Path(__file__).resolve().parents[2] / "data"
    notes = generate(target)
    for note in notes:
        print(note)
    print(f"corpus written to {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
