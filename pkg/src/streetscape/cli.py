"""Command-line pipeline.

Subcommands mirror the processing stages: ``ingest`` parses and checks the
curated dataset, ``enrich`` fills honoree fields from the knowledge base,
``metrics`` computes the time series and district tables, ``map`` writes
choropleth GeoJSON, ``validate`` draws the audit sample and scores
annotations, and ``reproduce`` runs everything end to end and writes a
checksum bundle.

Every output embeds the tool version, the configuration digest, and the
digests of the inputs it was computed from.  CSV files carry these as
leading ``#`` comment lines; JSON and GeoJSON files carry a ``metadata``
member.  A ``manifest.json`` in the output directory records, per stage and
city, the input digests and output digests of the last run; a stage whose
inputs are unchanged and whose outputs still match is skipped.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import click

from . import __version__
from .config import CityEntry, RunConfig, file_sha256, load_config
from .core import DataError, Honoree, NetworkError, StreetRecord, normalize_name
from .enrich.archive import ResponseArchive, canonical_json
from .enrich.cache import EnrichmentCache
from .enrich.client import KBClient, enrich_records
from .enrich.occupations import OccupationLexicon, default_lexicon
from .ingest import (
    parse_curated_dataset,
    parse_districts,
    parse_osm_roads,
    write_canonical,
)
from .metrics import (
    CUMULATIVE,
    PER_DECADE,
    apply_start_decade,
    dataset_summary,
    denominations_by_decade,
    f_prop_districts,
    f_prop_series,
    fhd,
    for_prop_districts,
    for_prop_series,
    half_century_stability,
    occupation_ranking,
    pooled_f_prop,
    pooled_for_prop,
)
from .spatial import assign_all, emit_choropleth
from .validate import (
    draw_sample,
    estimate_coverage,
    make_plan,
    read_annotations,
    stratify,
    write_annotation_template,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NETWORK = 3

STAGES = ("ingest", "enrich", "metrics", "map", "validate")


# ---------------------------------------------------------------------------
# shared state and provenance plumbing


@dataclasses.dataclass
class CliState:
    config: RunConfig
    no_prompt: bool = False


def _params_hash(**params) -> str:
    """Digest of the stage-relevant knobs that are not part of the config
    file text (CLI overrides)."""
    return hashlib.sha256(canonical_json(params).encode("utf-8")).hexdigest()


def _dir_digest(directory: Path) -> str:
    """Content digest of a directory of archive files.  Stable across
    platforms: sorted relative names paired with file digests."""
    entries = []
    if directory.is_dir():
        for child in sorted(directory.rglob("*")):
            if child.is_file():
                entries.append((child.relative_to(directory).as_posix(), file_sha256(child)))
    return hashlib.sha256(canonical_json(entries).encode("utf-8")).hexdigest()


def _meta_lines(config: RunConfig, inputs: dict) -> list[str]:
    lines = [
        f"streetscape {__version__}",
        f"config sha256:{config.config_hash}",
    ]
    for name in sorted(inputs):
        lines.append(f"input {name} sha256:{inputs[name]}")
    lines.append("configuration, verbatim:")
    for raw in config.raw_text.splitlines():
        lines.append(f"| {raw}")
    return lines


def _meta_obj(config: RunConfig, inputs: dict) -> dict:
    return {
        "tool_version": __version__,
        "config_sha256": config.config_hash,
        "input_sha256": dict(sorted(inputs.items())),
        "config_text": config.raw_text,
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if value.is_integer():
            return str(int(value))
        return repr(value)
    return str(value)


def _write_csv(path: Path, columns: Sequence[str], rows, meta: Sequence[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    path.write_text(text + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# manifest


def _manifest_path(config: RunConfig) -> Path:
    return config.output_dir / "manifest.json"


def _load_manifest(config: RunConfig) -> dict:
    path = _manifest_path(config)
    if not path.is_file():
        return {"version": 1, "stages": {}}
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return {"version": 1, "stages": {}}
    if not isinstance(data, dict) or "stages" not in data:
        return {"version": 1, "stages": {}}
    return data


def _save_manifest(config: RunConfig, manifest: dict) -> None:
    _write_json(_manifest_path(config), manifest)


def _stage_key(stage: str, city_id: str) -> str:
    return f"{stage}/{city_id}"


def _stage_fresh(config: RunConfig, manifest: dict, key: str, inputs: dict) -> bool:
    """True when the recorded inputs match and every recorded output is
    still present with its recorded digest."""
    entry = manifest["stages"].get(key)
    if not entry or entry.get("inputs") != inputs:
        return False
    outputs = entry.get("outputs", {})
    if not outputs:
        return False
    for rel, digest in outputs.items():
        path = config.output_dir / rel
        if not path.is_file() or file_sha256(path) != digest:
            return False
    return True


def _record_stage(
    config: RunConfig, manifest: dict, key: str, inputs: dict, outputs: Sequence[Path]
) -> None:
    recorded = {}
    for path in outputs:
        rel = path.relative_to(config.output_dir).as_posix()
        recorded[rel] = file_sha256(path)
    manifest["stages"][key] = {"inputs": inputs, "outputs": recorded}
    _save_manifest(config, manifest)


# ---------------------------------------------------------------------------
# stage helpers


def _entries(state: CliState, cities: Sequence[str]) -> list[CityEntry]:
    if not cities:
        return list(state.config.cities)
    return [state.config.city(c) for c in cities]


def _ingest_out(config: RunConfig, city_id: str) -> Path:
    return config.output_dir / "ingest" / city_id / "records.csv"


def _enrich_out(config: RunConfig, city_id: str) -> Path:
    return config.output_dir / "enrich" / city_id / "records.csv"


def _require(path: Path, what: str, command: str) -> Path:
    if not path.is_file():
        raise DataError(f"{what} missing at {path}; run 'streetscape {command}' first")
    return path


def _load_stage_records(path: Path, entry: CityEntry) -> list[StreetRecord]:
    records, _ = parse_curated_dataset(path, entry.config)
    return records


def run_ingest(state: CliState, entries: Sequence[CityEntry]) -> None:
    config = state.config
    manifest = _load_manifest(config)
    for entry in entries:
        city = entry.config.city_id
        inputs = {
            "tool": __version__,
            "config": config.config_hash,
            "dataset": file_sha256(entry.paths.dataset),
            "districts": file_sha256(entry.paths.districts),
        }
        key = _stage_key("ingest", city)
        if _stage_fresh(config, manifest, key, inputs):
            click.echo(f"{city}: ingest up to date")
            continue
        records, report = parse_curated_dataset(entry.paths.dataset, entry.config)
        districts = parse_districts(entry.paths.districts)
        out = _ingest_out(config, city)
        out.parent.mkdir(parents=True, exist_ok=True)
        meta_inputs = {k: v for k, v in inputs.items() if k not in ("tool", "config")}
        write_canonical(records, out, header_lines=_meta_lines(config, meta_inputs))
        report_path = out.parent / "report.json"
        _write_json(
            report_path,
            {
                "metadata": _meta_obj(config, meta_inputs),
                "city": city,
                "districts": len(districts),
                "report": report.as_dict(),
            },
        )
        _record_stage(config, manifest, key, inputs, [out, report_path])
        click.echo(f"{city}: ingested {report.rows_kept} of {report.rows_read} rows")


def _resolve_ambiguous(
    state: CliState,
    entry: CityEntry,
    records: list[StreetRecord],
    client: KBClient,
    cache: Optional[EnrichmentCache],
    lexicon: OccupationLexicon,
    decisions: dict,
    ambiguous,
):
    """Prompt for each ambiguous honoree and re-run enrichment with the
    chosen entities.  Only called when a terminal is attached."""
    for amb in ambiguous:
        click.echo(f"{entry.config.city_id}: '{amb.name}' matches several entities:")
        for i, cand in enumerate(amb.candidates, start=1):
            kind = "person" if cand.is_person else "not a person"
            click.echo(f"  {i}. {cand.entity_id} {cand.label} ({kind})")
        index = click.prompt("choose", type=click.IntRange(1, len(amb.candidates)))
        decisions[normalize_name(amb.name)] = amb.candidates[index - 1].entity_id
    return enrich_records(records, client, cache=cache, lexicon=lexicon, decisions=decisions)


def run_enrich(state: CliState, entries: Sequence[CityEntry]) -> None:
    config = state.config
    manifest = _load_manifest(config)
    archive = ResponseArchive(config.archive_dir) if config.archive_dir else None
    cache = EnrichmentCache(config.cache_path) if config.cache_path else None
    lexicon = default_lexicon()
    decisions: dict = {}
    if config.decisions_file and config.decisions_file.is_file():
        decisions = json.loads(config.decisions_file.read_text(encoding="utf-8"))
    try:
        for entry in entries:
            city = entry.config.city_id
            upstream = _require(_ingest_out(config, city), f"{city}: ingested dataset", "ingest")
            inputs = {
                "tool": __version__,
                "config": config.config_hash,
                "records": file_sha256(upstream),
                "params": _params_hash(
                    offline=config.offline,
                    endpoint=config.endpoint,
                    decisions=decisions,
                ),
            }
            if archive is not None:
                inputs["archive"] = _dir_digest(config.archive_dir)
            key = _stage_key("enrich", city)
            if _stage_fresh(config, manifest, key, inputs):
                click.echo(f"{city}: enrich up to date")
                continue
            records = _load_stage_records(upstream, entry)
            client = KBClient(
                config.endpoint,
                archive=archive,
                offline=config.offline,
                rate_limit=config.rate_limit,
            )
            enriched, report = enrich_records(
                records, client, cache=cache, lexicon=lexicon, decisions=decisions
            )
            if report.ambiguous and not state.no_prompt and sys.stdin.isatty():
                enriched, report = _resolve_ambiguous(
                    state, entry, records, client, cache, lexicon, decisions, report.ambiguous
                )
                if config.decisions_file:
                    _write_json(config.decisions_file, decisions)
            for amb in report.ambiguous:
                click.echo(
                    f"{city}: '{amb.name}' is ambiguous "
                    f"({len(amb.candidates)} candidates); left unenriched",
                    err=True,
                )
            out = _enrich_out(config, city)
            out.parent.mkdir(parents=True, exist_ok=True)
            meta_inputs = {"records": inputs["records"]}
            write_canonical(enriched, out, header_lines=_meta_lines(config, meta_inputs))
            report_path = out.parent / "report.json"
            _write_json(
                report_path,
                {
                    "metadata": _meta_obj(config, meta_inputs),
                    "city": city,
                    "looked_up": report.looked_up,
                    "cache_hits": report.cache_hits,
                    "already_complete": report.already_complete,
                    "ambiguous": [
                        {
                            "name": amb.name,
                            "candidates": [
                                {
                                    "entity_id": c.entity_id,
                                    "label": c.label,
                                    "is_person": c.is_person,
                                }
                                for c in amb.candidates
                            ],
                        }
                        for amb in report.ambiguous
                    ],
                    "unmatched_occupations": sorted(set(report.unmatched_occupations)),
                },
            )
            _record_stage(config, manifest, key, inputs, [out, report_path])
            click.echo(
                f"{city}: enriched ({report.looked_up} lookups, "
                f"{report.cache_hits} cache hits, {report.already_complete} complete)"
            )
    finally:
        if cache is not None:
            cache.close()


def _metric_rows(series) -> list[tuple]:
    return [(k, v) for k, v in series.values.items()]


def run_metrics(
    state: CliState, entries: Sequence[CityEntry], within_district: bool = False
) -> None:
    config = state.config
    manifest = _load_manifest(config)
    for entry in entries:
        city = entry.config.city_id
        upstream = _require(_enrich_out(config, city), f"{city}: enriched dataset", "enrich")
        inputs = {
            "tool": __version__,
            "config": config.config_hash,
            "records": file_sha256(upstream),
            "districts": file_sha256(entry.paths.districts),
            "params": _params_hash(
                strict=config.strict_formulae,
                ranking_mode=config.ranking_mode,
                within_district=within_district,
                metrics=list(config.metrics),
            ),
        }
        key = _stage_key("metrics", city)
        if _stage_fresh(config, manifest, key, inputs):
            click.echo(f"{city}: metrics up to date")
            continue
        records = _load_stage_records(upstream, entry)
        if not records:
            click.echo(f"{city}: no records; writing empty series", err=True)
        districts = parse_districts(entry.paths.districts)
        city_config = dataclasses.replace(entry.config, districts=tuple(districts))
        assigned, _ = assign_all(records, districts)
        filtered = apply_start_decade(assigned, city_config)

        meta_inputs = {"records": inputs["records"], "districts": inputs["districts"]}
        meta = _meta_lines(config, meta_inputs)
        out_dir = config.output_dir / "metrics" / city
        outputs: list[Path] = []
        combined: dict = {"metadata": _meta_obj(config, meta_inputs), "city": city}

        def emit_series(name: str, series) -> None:
            path = out_dir / f"{name}.csv"
            _write_csv(path, ("decade", "value"), _metric_rows(series), meta)
            outputs.append(path)
            combined[name] = {
                "values": {str(k): v for k, v in series.values.items()},
                "flags": {str(k): sorted(f) for k, f in series.flags.items()},
            }

        def emit_district(name: str, metric) -> None:
            path = out_dir / f"{name}.csv"
            _write_csv(path, ("district", "value"), sorted(metric.values.items()), meta)
            outputs.append(path)
            combined[name] = {"values": dict(sorted(metric.values.items()))}

        wanted = set(config.metrics)
        if "gender" in wanted:
            emit_series("f_prop_dd", f_prop_series(filtered, city_config))
            emit_district(
                "f_prop_district",
                f_prop_districts(filtered, city_config, within_district=within_district),
            )
        if "foreigner" in wanted:
            emit_series(
                "for_prop_dd",
                for_prop_series(filtered, city_config, strict=config.strict_formulae),
            )
            emit_district(
                "for_prop_district",
                for_prop_districts(filtered, city_config, within_district=within_district),
            )
        if "fhd" in wanted:
            fhd_series, fhd_report = fhd(assigned, city_id=city)
            emit_series("fhd", fhd_series)
            combined["fhd"]["report"] = {
                "counted": fhd_report.counted,
                "skipped_invalid_lifespan": fhd_report.skipped_invalid_lifespan,
                "excluded_missing_years": fhd_report.excluded_missing_years,
            }
            emit_series("denomination_fraction", denominations_by_decade(filtered, city_id=city))
        if "occupation" in wanted:
            ranking = occupation_ranking(filtered, mode=config.ranking_mode, city_id=city)
            rank_path = out_dir / "occupation_ranking.csv"
            rank_rows = []
            for decade in sorted(ranking.by_decade):
                for entry_row in ranking.by_decade[decade]:
                    rank_rows.append(
                        (decade, entry_row.group.value, entry_row.count, entry_row.rank)
                    )
            _write_csv(rank_path, ("decade", "group", "count", "rank"), rank_rows, meta)
            outputs.append(rank_path)
            combined["occupation_ranking"] = {
                "mode": ranking.mode,
                "by_decade": {
                    str(d): [
                        {"group": e.group.value, "count": e.count, "rank": e.rank}
                        for e in ranking.by_decade[d]
                    ]
                    for d in sorted(ranking.by_decade)
                },
            }
            stability = half_century_stability(ranking)
            entries_sorted = [stability[h] for h in sorted(stability)]
            stab_path = out_dir / "stability.csv"
            _write_csv(
                stab_path,
                ("half_century", "mean_tau", "pairs_used", "pairs_skipped", "reason"),
                [
                    (s.half_century, s.mean_tau, s.pairs_used, s.pairs_skipped, s.reason)
                    for s in entries_sorted
                ],
                meta,
            )
            outputs.append(stab_path)
            combined["stability"] = [
                {
                    "half_century": s.half_century,
                    "mean_tau": s.mean_tau,
                    "pairs_used": s.pairs_used,
                    "pairs_skipped": s.pairs_skipped,
                    "reason": s.reason,
                }
                for s in entries_sorted
            ]

        pooled_path = out_dir / "pooled.csv"
        pooled_rows = [
            ("f_prop", pooled_f_prop(filtered)),
            ("for_prop", pooled_for_prop(filtered, city_config.home_country)),
        ]
        _write_csv(pooled_path, ("metric", "value"), pooled_rows, meta)
        outputs.append(pooled_path)
        combined["pooled"] = {name: value for name, value in pooled_rows}

        json_path = out_dir / "metrics.json"
        _write_json(json_path, combined)
        outputs.append(json_path)
        _record_stage(config, manifest, key, inputs, outputs)
        click.echo(f"{city}: metrics written ({len(outputs)} files)")


def run_map(
    state: CliState, entries: Sequence[CityEntry], within_district: bool = False
) -> None:
    config = state.config
    manifest = _load_manifest(config)
    for entry in entries:
        city = entry.config.city_id
        upstream = _require(_enrich_out(config, city), f"{city}: enriched dataset", "enrich")
        inputs = {
            "tool": __version__,
            "config": config.config_hash,
            "records": file_sha256(upstream),
            "districts": file_sha256(entry.paths.districts),
            "params": _params_hash(
                bins=config.bins,
                within_district=within_district,
                strict=config.strict_formulae,
            ),
        }
        key = _stage_key("map", city)
        if _stage_fresh(config, manifest, key, inputs):
            click.echo(f"{city}: map up to date")
            continue
        records = _load_stage_records(upstream, entry)
        districts = parse_districts(entry.paths.districts)
        city_config = dataclasses.replace(entry.config, districts=tuple(districts))
        assigned, _ = assign_all(records, districts)
        filtered = apply_start_decade(assigned, city_config)
        meta_inputs = {"records": inputs["records"], "districts": inputs["districts"]}
        out_dir = config.output_dir / "map" / city
        outputs = []
        pairs = (
            (
                "choropleth_female",
                f_prop_districts(filtered, city_config, within_district=within_district),
            ),
            (
                "choropleth_foreign",
                for_prop_districts(filtered, city_config, within_district=within_district),
            ),
        )
        for name, metric in pairs:
            collection = emit_choropleth(metric, districts, bins=config.bins)
            collection["metadata"] = _meta_obj(config, meta_inputs)
            path = out_dir / f"{name}.geojson"
            _write_json(path, collection)
            outputs.append(path)
        _record_stage(config, manifest, key, inputs, outputs)
        click.echo(f"{city}: choropleths written")


def run_validate(state: CliState, entries: Sequence[CityEntry]) -> None:
    config = state.config
    manifest = _load_manifest(config)
    for entry in entries:
        city = entry.config.city_id
        if entry.paths.osm is None:
            click.echo(f"{city}: no street inventory configured; skipping", err=True)
            continue
        inputs = {
            "tool": __version__,
            "config": config.config_hash,
            "osm": file_sha256(entry.paths.osm),
            "districts": file_sha256(entry.paths.districts),
            "dataset": file_sha256(entry.paths.dataset),
            "params": _params_hash(seed=config.seed, sample_size=config.sample_size),
        }
        if entry.paths.annotations and entry.paths.annotations.is_file():
            inputs["annotations"] = file_sha256(entry.paths.annotations)
        key = _stage_key("validate", city)
        if _stage_fresh(config, manifest, key, inputs):
            click.echo(f"{city}: validate up to date")
            continue
        roads, osm_report = parse_osm_roads(entry.paths.osm)
        districts = parse_districts(entry.paths.districts)
        plan = make_plan(
            city,
            [d.district_id for d in districts],
            seed=config.seed,
            sample_size=config.sample_size,
        )
        population = len({normalize_name(r.name) for r in roads})
        if population < plan.sample_size:
            click.echo(
                f"{city}: street inventory has {population} distinct names, "
                f"fewer than the requested sample of {plan.sample_size}",
                err=True,
            )
        sample = draw_sample(roads, plan, districts)
        by_district = stratify(roads, districts)
        district_of = {}
        for district_id, names in by_district.items():
            for name in names:
                district_of[name] = district_of.get(name, district_id)
        out_dir = config.output_dir / "validate" / city
        meta_inputs = {"osm": inputs["osm"], "districts": inputs["districts"]}
        sample_path = out_dir / "sample.csv"
        sample_path.parent.mkdir(parents=True, exist_ok=True)
        write_annotation_template(
            [(name, district_of.get(name, "")) for name in sample],
            sample_path,
            header_lines=_meta_lines(config, meta_inputs),
        )
        report_path = out_dir / "sample_report.json"
        _write_json(
            report_path,
            {
                "metadata": _meta_obj(config, meta_inputs),
                "city": city,
                "algorithm": plan.algorithm,
                "seed": plan.seed,
                "sample_size": plan.sample_size,
                "strata": dict(sorted(plan.strata.items())),
                "drawn": len(sample),
                "streets_kept": osm_report.rows_kept,
                "streets_read": osm_report.rows_read,
                "dropped": dict(sorted(osm_report.rows_dropped_by_reason.items())),
            },
        )
        outputs = [sample_path, report_path]

        if entry.paths.annotations and entry.paths.annotations.is_file():
            annotations = read_annotations(entry.paths.annotations)
            dataset_records, _ = parse_curated_dataset(entry.paths.dataset, entry.config)
            female = sum(
                1
                for r in dataset_records
                if r.honoree is not None and r.honoree.gender.value == "female"
            )
            coverage = estimate_coverage(
                annotations,
                city_id=city,
                dataset_honorific_total=len(dataset_records),
                osm_street_total=osm_report.rows_kept,
                dataset_female_share=(
                    Fraction(female, len(dataset_records)) if dataset_records else None
                ),
            )
            coverage_path = out_dir / "coverage.json"
            payload = coverage.as_dict()
            payload["metadata"] = _meta_obj(
                config, dict(meta_inputs, annotations=inputs["annotations"])
            )
            _write_json(coverage_path, payload)
            text_path = out_dir / "coverage.txt"
            text_path.write_text(_coverage_text(city, coverage), encoding="utf-8")
            outputs.extend([coverage_path, text_path])
            click.echo(
                f"{city}: honorific share "
                f"{float(coverage.honorific_share):.1%} "
                f"[{coverage.honorific_interval[0]:.1%}, {coverage.honorific_interval[1]:.1%}]"
            )
        _record_stage(config, manifest, key, inputs, outputs)
        click.echo(f"{city}: sample of {len(sample)} streets written")


def _coverage_text(city: str, coverage) -> str:
    lines = [f"city: {city}", f"sample size: {coverage.sample_size}"]
    lo, hi = coverage.honorific_interval
    lines.append(
        f"honorific: {coverage.honorific_count}/{coverage.sample_size} "
        f"({float(coverage.honorific_share):.1%})  95% CI [{lo:.1%}, {hi:.1%}]"
    )
    if coverage.female_share is not None:
        flo, fhi = coverage.female_interval
        lines.append(
            f"female among honorific: {coverage.female_count}/{coverage.honorific_count} "
            f"({float(coverage.female_share):.1%})  95% CI [{flo:.1%}, {fhi:.1%}]"
        )
    if coverage.dataset_people_share is not None:
        d = coverage.dataset_people_share
        lines.append(
            "dataset honorific share (curated honorific / street inventory): "
            f"{float(d):.1%}"
        )
    if coverage.dataset_female_share is not None:
        d = coverage.dataset_female_share
        lines.append(f"dataset female share: {float(d):.1%}")
    return "\n".join(lines) + "\n"


def run_reproduce(state: CliState) -> None:
    config = state.config
    entries = list(config.cities)
    run_ingest(state, entries)
    run_enrich(state, entries)
    run_metrics(state, entries)
    run_map(state, entries)
    run_validate(state, entries)

    rows = []
    for entry in entries:
        city = entry.config.city_id
        records = _load_stage_records(_enrich_out(config, city), entry)
        summary = dataset_summary(records)
        rows.append(
            (
                city,
                summary["honorific_streets"],
                summary["denomination_min"],
                summary["denomination_max"],
                summary["birth_min"],
                summary["death_max"],
            )
        )
        click.echo(
            f"{city}: {summary['honorific_streets']} honorific streets, "
            f"denominations {summary['denomination_min']}-{summary['denomination_max']}"
        )
    out_dir = config.output_dir / "reproduce"
    counts_path = out_dir / "counts.csv"
    _write_csv(
        counts_path,
        (
            "city",
            "honorific_streets",
            "denomination_min",
            "denomination_max",
            "birth_min",
            "death_max",
        ),
        rows,
        _meta_lines(config, {}),
    )

    checksum_path = out_dir / "checksums.txt"
    skip = {"manifest.json", "reproduce/checksums.txt"}
    lines = []
    for path in sorted(config.output_dir.rglob("*")):
        if not path.is_file():
            continue
        rel = path.relative_to(config.output_dir).as_posix()
        if rel in skip:
            continue
        lines.append(f"{file_sha256(path)}  {rel}")
    checksum_path.parent.mkdir(parents=True, exist_ok=True)
    checksum_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"reproduce: {len(lines)} artifacts checksummed")


# ---------------------------------------------------------------------------
# click wiring


@click.group(name="streetscape")
@click.version_option(version=__version__)
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="Path to the TOML configuration.")
@click.option("--seed", type=int, default=None, help="Override the sampling seed.")
@click.option("--offline", is_flag=True, help="Never touch the network.")
@click.option("--strict-formulae", is_flag=True,
              help="Use the literal published formulae where they differ.")
@click.option("--no-prompt", is_flag=True, help="Never ask interactively.")
@click.option("--output-dir", type=click.Path(path_type=Path), default=None,
              help="Override the output directory.")
@click.pass_context
def cli(ctx, config_path, seed, offline, strict_formulae, no_prompt, output_dir):
    """Quantify a city's cultural footprint from its honorific street names."""
    config = load_config(config_path)
    replacements = {}
    if seed is not None:
        replacements["seed"] = seed
    if offline:
        replacements["offline"] = True
    if strict_formulae:
        replacements["strict_formulae"] = True
    if output_dir is not None:
        replacements["output_dir"] = output_dir
    if replacements:
        config = dataclasses.replace(config, **replacements)
    ctx.obj = CliState(config=config, no_prompt=no_prompt)


_city_option = click.option(
    "--city", "cities", multiple=True, help="Restrict to the given city id (repeatable)."
)
_within_option = click.option(
    "--within-district",
    is_flag=True,
    help="Use district-local denominators instead of city totals.",
)


@cli.command()
@_city_option
@click.pass_obj
def ingest(state: CliState, cities):
    """Parse and check the curated datasets."""
    run_ingest(state, _entries(state, cities))


@cli.command()
@_city_option
@click.pass_obj
def enrich(state: CliState, cities):
    """Fill missing honoree fields from the knowledge base."""
    run_enrich(state, _entries(state, cities))


@cli.command()
@_city_option
@_within_option
@click.pass_obj
def metrics(state: CliState, cities, within_district):
    """Compute decade series, rankings, and district tables."""
    run_metrics(state, _entries(state, cities), within_district=within_district)


@cli.command(name="map")
@_city_option
@_within_option
@click.pass_obj
def map_cmd(state: CliState, cities, within_district):
    """Write district choropleth GeoJSON."""
    run_map(state, _entries(state, cities), within_district=within_district)


@cli.command()
@_city_option
@click.pass_obj
def validate(state: CliState, cities):
    """Draw the audit sample and score annotations if present."""
    run_validate(state, _entries(state, cities))


@cli.command()
@click.pass_obj
def reproduce(state: CliState):
    """Run the whole pipeline and write the checksum bundle."""
    run_reproduce(state)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point with the documented exit codes: 0 success, 1 usage,
    2 bad data, 3 network trouble."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except NetworkError as exc:
        click.echo(f"network error: {exc}", err=True)
        return EXIT_NETWORK
    except (DataError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
