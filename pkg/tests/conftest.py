from __future__ import annotations

from pathlib import Path

import pytest

from streetscape.config import load_config
from streetscape.ingest import parse_curated_dataset

REPO = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return REPO / "data"


@pytest.fixture(scope="session")
def run_config(data_dir):
    return load_config(data_dir / "configs" / "streetscape.toml")


@pytest.fixture(scope="session")
def city_records(run_config):
    """city_id -> (CityConfig, parsed records) for the shipped corpus."""
    out = {}
    for entry in run_config.cities:
        records, _ = parse_curated_dataset(entry.paths.dataset, entry.config)
        out[entry.config.city_id] = (entry.config, records)
    return out
