"""Recorded knowledge-base responses, one JSON file per request.

File name = sha256 of the canonical request JSON, so a replay run finds
each stored response by recomputing the hash of the request it is about
to send.  The archive is what makes enrichment testable with the network
unplugged.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Optional, Union

PathLike = Union[str, Path]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def request_key(request: dict) -> str:
    """Content hash identifying one request."""
    return hashlib.sha256(canonical_json(request).encode("utf-8")).hexdigest()


class ResponseArchive:
    """Directory of ``<request-hash>.json`` files, each holding the request
    it answers and the raw response payload."""

    def __init__(self, directory: PathLike):
        self.directory = Path(directory)

    def _path(self, request: dict) -> Path:
        return self.directory / f"{request_key(request)}.json"

    def get(self, request: dict) -> Optional[dict]:
        path = self._path(request)
        if not path.exists():
            return None
        with open(path, "r", encoding="utf-8") as fh:
            stored = json.load(fh)
        return stored["response"]

    def put(self, request: dict, response: dict) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(request)
        body = json.dumps(
            {"request": request, "response": response},
            sort_keys=True,
            indent=2,
            ensure_ascii=False,
        )
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body + "\n")
        return path

    def __contains__(self, request: dict) -> bool:
        return self._path(request).exists()

    def __len__(self) -> int:
        if not self.directory.exists():
            return 0
        return sum(1 for _ in self.directory.glob("*.json"))
