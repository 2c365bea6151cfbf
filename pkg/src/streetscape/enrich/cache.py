"""Persistent honoree cache: one SQLite file, one row per resolved name.

Each row stores the resolved fields as a canonical JSON payload plus, for
every populated field, a provenance pointer into the response it came
from.  Hits return the stored payload text verbatim, so a value cached
once can never drift.  Writes are serialized behind a lock and are
immediately visible to readers in the same run.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from streetscape.core import DataError, Gender, Honoree, OccupationGroup, normalize_name
from streetscape.enrich.archive import canonical_json

PathLike = Union[str, Path]

FORMAT_VERSION = "1"

_SCHEMA = """
CREATE TABLE IF NOT EXISTS meta (
    key TEXT PRIMARY KEY,
    value TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS honorees (
    name_key TEXT PRIMARY KEY,
    payload TEXT NOT NULL,
    retrieved_at TEXT NOT NULL,
    request_hash TEXT
);
"""


@dataclass(frozen=True)
class CachedHonoree:
    """One cache row: the honoree, where each field came from, and the
    stored payload text (byte-identical across hits)."""

    honoree: Honoree
    provenance: dict[str, str]
    retrieved_at: str
    request_hash: Optional[str]
    payload: str


def _honoree_to_payload(honoree: Honoree, provenance: dict[str, str]) -> str:
    return canonical_json(
        {
            "full_name": honoree.full_name,
            "gender": honoree.gender.value,
            "occupation_raw": honoree.occupation_raw,
            "occupation_group": (
                honoree.occupation_group.value if honoree.occupation_group else None
            ),
            "country_of_origin": honoree.country_of_origin,
            "birth_year": honoree.birth_year,
            "death_year": honoree.death_year,
            "provenance": provenance,
        }
    )


def _payload_to_honoree(payload: str) -> tuple[Honoree, dict[str, str]]:
    doc = json.loads(payload)
    honoree = Honoree(
        full_name=doc["full_name"],
        gender=Gender(doc["gender"]),
        occupation_raw=doc["occupation_raw"],
        occupation_group=(
            OccupationGroup(doc["occupation_group"])
            if doc["occupation_group"]
            else None
        ),
        country_of_origin=doc["country_of_origin"],
        birth_year=doc["birth_year"],
        death_year=doc["death_year"],
    )
    return honoree, doc.get("provenance", {})


class EnrichmentCache:
    """name → resolved honoree store, keyed by normalized name."""

    def __init__(self, path: PathLike):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        with self._lock:
            self._conn.executescript(_SCHEMA)
            row = self._conn.execute(
                "SELECT value FROM meta WHERE key = 'format_version'"
            ).fetchone()
            if row is None:
                self._conn.execute(
                    "INSERT INTO meta (key, value) VALUES ('format_version', ?)",
                    (FORMAT_VERSION,),
                )
                self._conn.commit()
            elif row[0] != FORMAT_VERSION:
                raise DataError(
                    f"{self.path}: cache format {row[0]} unsupported, "
                    f"expected {FORMAT_VERSION}"
                )

    def get(self, name: str) -> Optional[CachedHonoree]:
        key = normalize_name(name)
        with self._lock:
            row = self._conn.execute(
                "SELECT payload, retrieved_at, request_hash FROM honorees "
                "WHERE name_key = ?",
                (key,),
            ).fetchone()
        if row is None:
            return None
        payload, retrieved_at, request_hash = row
        honoree, provenance = _payload_to_honoree(payload)
        return CachedHonoree(
            honoree=honoree,
            provenance=provenance,
            retrieved_at=retrieved_at,
            request_hash=request_hash,
            payload=payload,
        )

    def put(
        self,
        name: str,
        honoree: Honoree,
        provenance: dict[str, str],
        retrieved_at: str,
        request_hash: Optional[str] = None,
    ) -> None:
        """Store a resolution.  Every populated optional field must carry a
        provenance pointer; a value with no source is a bug upstream."""
        for field_name in (
            "occupation_raw",
            "country_of_origin",
            "birth_year",
            "death_year",
        ):
            if getattr(honoree, field_name) is not None and field_name not in provenance:
                raise DataError(f"field {field_name!r} populated without provenance")
        if honoree.gender is not Gender.UNKNOWN and "gender" not in provenance:
            raise DataError("field 'gender' populated without provenance")
        payload = _honoree_to_payload(honoree, provenance)
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO honorees "
                "(name_key, payload, retrieved_at, request_hash) VALUES (?, ?, ?, ?)",
                (normalize_name(name), payload, retrieved_at, request_hash),
            )
            self._conn.commit()

    def __len__(self) -> int:
        with self._lock:
            (n,) = self._conn.execute("SELECT COUNT(*) FROM honorees").fetchone()
        return n

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def __enter__(self) -> "EnrichmentCache":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
