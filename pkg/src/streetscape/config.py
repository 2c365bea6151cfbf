"""Run configuration: one TOML file describing cities, paths, and knobs.

The file is the single source of truth for a run.  Its raw text is kept
and echoed verbatim into every output's metadata header, and its hash is
stamped alongside, so any result file can be traced back to the exact
configuration that produced it.  All declared paths are checked before
any stage starts; a run either has its inputs or fails immediately.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from streetscape.core import CityConfig, DataError, SchemaError

PathLike = Union[str, Path]

ENV_CONFIG = "STREETONOMICS_CONFIG"
DEFAULT_CONFIG_NAME = "streetscape.toml"

DEFAULT_SEED = 20260822
DEFAULT_PARALLELISM = 4
DEFAULT_BINS = 5
DEFAULT_RATE_LIMIT = 5.0


@dataclass(frozen=True)
class CityPaths:
    """Where one city's inputs live.  ``dataset`` and ``districts`` are
    required for the pipeline; ``osm`` and ``annotations`` only for the
    validation protocol."""

    dataset: Path
    districts: Path
    osm: Optional[Path] = None
    annotations: Optional[Path] = None


@dataclass(frozen=True)
class CityEntry:
    config: CityConfig
    paths: CityPaths


@dataclass(frozen=True)
class RunConfig:
    cities: tuple[CityEntry, ...]
    output_dir: Path
    seed: int = DEFAULT_SEED
    parallelism: int = DEFAULT_PARALLELISM
    bins: int = DEFAULT_BINS
    ranking_mode: str = "cumulative"
    endpoint: str = ""
    cache_path: Optional[Path] = None
    archive_dir: Optional[Path] = None
    decisions_file: Optional[Path] = None
    offline: bool = False
    strict_formulae: bool = False
    rate_limit: float = DEFAULT_RATE_LIMIT
    metrics: tuple[str, ...] = ("gender", "foreigner", "fhd", "occupation")
    sample_size: int = 200
    raw_text: str = ""
    source_path: Optional[Path] = None

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.raw_text.encode("utf-8")).hexdigest()

    def city(self, city_id: str) -> CityEntry:
        for entry in self.cities:
            if entry.config.city_id == city_id:
                return entry
        raise DataError(f"no city {city_id!r} in config")


def find_config_path(explicit: Optional[PathLike] = None) -> Path:
    """Resolve the config location: explicit flag, then the environment
    variable, then ./streetscape.toml."""
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(ENV_CONFIG)
    if env:
        return Path(env)
    return Path(DEFAULT_CONFIG_NAME)


def _require(table: dict, key: str, context: str):
    if key not in table:
        raise SchemaError(f"config: missing {key!r} in {context}")
    return table[key]


def _resolve(base: Path, value: str) -> Path:
    path = Path(value)
    return path if path.is_absolute() else (base / path)


def load_config(path: Optional[PathLike] = None) -> RunConfig:
    """Parse and validate a run config.

    Relative paths are resolved against the config file's directory, so a
    config travels with its data.  Input files that are declared but do
    not exist fail here, not mid-pipeline.
    """
    config_path = find_config_path(path)
    if not config_path.exists():
        raise DataError(f"config file not found: {config_path}")
    raw_text = config_path.read_text(encoding="utf-8")
    try:
        doc = tomllib.loads(raw_text)
    except tomllib.TOMLDecodeError as exc:
        raise SchemaError(f"{config_path}: invalid TOML: {exc}") from exc

    base = config_path.parent.resolve()
    run = doc.get("run", {})

    cities: list[CityEntry] = []
    for i, block in enumerate(doc.get("city", [])):
        context = f"[[city]] #{i}"
        city_id = str(_require(block, "id", context))
        dataset = _resolve(base, str(_require(block, "dataset", context)))
        districts_path = _resolve(base, str(_require(block, "districts", context)))
        osm = block.get("osm")
        annotations = block.get("annotations")
        paths = CityPaths(
            dataset=dataset,
            districts=districts_path,
            osm=_resolve(base, str(osm)) if osm else None,
            annotations=_resolve(base, str(annotations)) if annotations else None,
        )
        for label, p in (("dataset", paths.dataset), ("districts", paths.districts), ("osm", paths.osm)):
            if p is not None and not p.exists():
                raise DataError(f"{context} ({city_id}): {label} file not found: {p}")
        cities.append(
            CityEntry(
                config=CityConfig(
                    city_id=city_id,
                    display_name=str(block.get("display_name", city_id)),
                    home_country=str(_require(block, "home_country", context)).upper(),
                    start_decade=int(_require(block, "start_decade", context)),
                    kb_area_id=block.get("kb_area_id"),
                ),
                paths=paths,
            )
        )
    if not cities:
        raise SchemaError("config: no [[city]] blocks")

    cache = run.get("cache")
    archive = run.get("archive")
    decisions = run.get("decisions")
    config = RunConfig(
        cities=tuple(cities),
        output_dir=_resolve(base, str(run.get("output_dir", "out"))),
        seed=int(run.get("seed", DEFAULT_SEED)),
        parallelism=int(run.get("parallelism", DEFAULT_PARALLELISM)),
        bins=int(run.get("bins", DEFAULT_BINS)),
        ranking_mode=str(run.get("ranking_mode", "cumulative")),
        endpoint=str(run.get("endpoint", "")),
        cache_path=_resolve(base, str(cache)) if cache else None,
        archive_dir=_resolve(base, str(archive)) if archive else None,
        decisions_file=_resolve(base, str(decisions)) if decisions else None,
        offline=bool(run.get("offline", False)),
        strict_formulae=bool(run.get("strict_formulae", False)),
        rate_limit=float(run.get("rate_limit", DEFAULT_RATE_LIMIT)),
        metrics=tuple(run.get("metrics", ["gender", "foreigner", "fhd", "occupation"])),
        sample_size=int(run.get("sample_size", 200)),
        raw_text=raw_text,
        source_path=config_path.resolve(),
    )
    if config.ranking_mode not in ("cumulative", "per_decade"):
        raise SchemaError(f"config: unknown ranking_mode {config.ranking_mode!r}")
    if config.bins < 2:
        raise SchemaError("config: bins must be >= 2")
    return config


def file_sha256(path: PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()
