"""
Knowledge-base enrichment with record and replay
================================================

Honoree metadata comes from a SPARQL endpoint.  Every response is
archived under a content hash of the request, so a later run replays the
same answers with the network switched off entirely.  This demo fakes
the endpoint with an in-process transport, records one response, then
resolves the same query again offline.
"""

import tempfile
from pathlib import Path

from streetscape.enrich import (
    EnrichmentCache,
    KBClient,
    ResponseArchive,
    person_query,
    request_key,
)

scratch = Path(tempfile.mkdtemp(prefix="streetscape-replay-"))

RESPONSE = {
    "results": {
        "bindings": [
            {
                "person": {"value": "Q41921"},
                "personLabel": {"value": "Rosa Parks"},
                "genderLabel": {"value": "female"},
                "occupationLabel": {"value": "civil rights activist"},
                "countryLabel": {"value": "United States of America"},
                "birth": {"value": "1913-02-04T00:00:00Z"},
                "death": {"value": "2005-10-24T00:00:00Z"},
            }
        ]
    }
}

calls = []


def canned_transport(endpoint, request):
    calls.append(request_key(request))
    return RESPONSE


archive = ResponseArchive(scratch / "archive")
cache = EnrichmentCache(scratch / "cache.sqlite")

online = KBClient("https://kb.example/sparql", archive=archive,
                  transport=canned_transport)
resolved = online.resolve_honoree("Rosa Parks", cache=cache)
print(f"resolved: {resolved.full_name}, {resolved.gender.value}, "
      f"{resolved.country_of_origin}, {resolved.birth_year}-{resolved.death_year}")
print(f"occupation {resolved.occupation_raw!r} -> {resolved.occupation_group.value}")
print(f"transport calls: {len(calls)}, archived responses: {len(archive)}")

# Same endpoint, offline, no transport at all: the archive answers.
offline = KBClient("https://kb.example/sparql", archive=archive, offline=True)
replayed = offline.sparql(person_query("Rosa Parks"))
print(f"\noffline replay returned {len(replayed['results']['bindings'])} binding(s)")

# The cache keeps per-field provenance: where in the response each value
# came from, plus the request hash that produced it.
hit = cache.get("rosa parks")
for field, pointer in sorted(hit.provenance.items()):
    print(f"  {field:<18} <- {pointer}")
print(f"  request {hit.request_hash[:12]}...")
