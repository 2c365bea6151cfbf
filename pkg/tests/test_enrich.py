"""Enrichment: lexicon, transliteration, archive, cache, KB client."""

import json
import sqlite3

import pytest
import requests

from streetscape.core import (
    DataError,
    Gender,
    NetworkError,
    OccupationGroup,
    SchemaError,
)
from streetscape.enrich import (
    AmbiguousHonoree,
    EnrichmentCache,
    KBClient,
    OccupationLexicon,
    ResponseArchive,
    canonical_json,
    enrich_records,
    map_occupation,
    person_query,
    request_key,
    transliterate_name,
    year_from_timestamp,
)

from helpers import honoree, rec

AUTH = OccupationGroup.AUTHORS_JOURNALISTS_LINGUISTS
ARM = OccupationGroup.ARMED_FORCES_OFFICERS
CRE = OccupationGroup.CREATIVE_PERFORMING_ARTISTS
OTHER = OccupationGroup.OTHER


class TestLexicon:
    def test_exact_match_wins(self):
        lex = OccupationLexicon.from_pairs([
            ("field marshal", "armed_forces_officers"),
            ("marshal", "legislators"),
        ])
        assert map_occupation("Field Marshal", lex) is ARM
        assert map_occupation("grand marshal", lex) is OccupationGroup.LEGISLATORS

    def test_longest_substring_wins(self):
        lex = OccupationLexicon.from_pairs([
            ("poet", "authors_journalists_linguists"),
            ("playwright", "creative_performing_artists"),
        ])
        assert map_occupation("poet and playwright", lex) is CRE

    def test_whole_words_only(self):
        lex = OccupationLexicon.from_pairs([("poet", "authors_journalists_linguists")])
        unmatched = []
        assert map_occupation("poetaster", lex, unmatched) is OTHER
        assert unmatched == ["poetaster"]

    def test_accent_insensitive(self):
        lex = OccupationLexicon.from_pairs([("general", "armed_forces_officers")])
        assert map_occupation("Général", lex) is ARM

    def test_empty_label_is_other(self):
        lex = OccupationLexicon.from_pairs([("poet", "authors_journalists_linguists")])
        unmatched = []
        assert map_occupation("   ", lex, unmatched) is OTHER
        assert unmatched == ["   "]

    def test_container_protocol(self):
        lex = OccupationLexicon.from_pairs([("poet", "authors_journalists_linguists")])
        assert len(lex) == 1
        assert "Poet" in lex
        assert "novelist" not in lex

    def test_shipped_lexicon_loads(self):
        lex = OccupationLexicon.load()
        assert len(lex) > 300
        assert map_occupation("composer", lex) is CRE
        assert map_occupation("politician", lex) is OccupationGroup.LEGISLATORS
        assert map_occupation("physicist", lex) is OccupationGroup.SCIENCE_ENGINEERING
        assert map_occupation("nun", lex) is OccupationGroup.RELIGIOUS

    def test_wrong_columns_rejected(self, tmp_path):
        path = tmp_path / "lex.csv"
        path.write_text("label,group\npoet,authors_journalists_linguists\n",
                        encoding="utf-8")
        with pytest.raises(SchemaError, match="raw_label,group"):
            OccupationLexicon.load(path)

    def test_unknown_group_rejected(self, tmp_path):
        path = tmp_path / "lex.csv"
        path.write_text("raw_label,group\npoet,wordsmiths\n", encoding="utf-8")
        with pytest.raises(SchemaError, match="unknown group"):
            OccupationLexicon.load(path)

    def test_custom_file_round_trip(self, tmp_path):
        path = tmp_path / "lex.csv"
        path.write_text(
            "raw_label,group\nskald,authors_journalists_linguists\n",
            encoding="utf-8",
        )
        lex = OccupationLexicon.load(path)
        assert map_occupation("skald", lex) is AUTH


class TestTransliterate:
    @pytest.mark.parametrize("name,expected", [
        ("Jägerstraße", "Jaegerstrasse"),
        ("Kaiser-Wilhelm-Ring", "Emperor-Wilhelm-Ring"),
        ("Kaiserin Elisabeth", "Empress Elisabeth"),
        ("Bürgermeister-Müller-Platz", "Mayor-Mueller-Platz"),
        ("Dr.-Karl-Renner-Ring", "Doctor-Karl-Renner-Ring"),
        ("Königin-Luise-Straße", "Queen-Luise-Strasse"),
        ("Main Street", "Main Street"),
    ])
    def test_table(self, name, expected):
        assert transliterate_name(name) == expected

    def test_title_inside_word_untouched(self):
        # "Graf" must not fire inside "Grafenberg"
        assert transliterate_name("Grafenberggasse") == "Grafenberggasse"


class TestArchive:
    def test_request_key_ignores_dict_order(self):
        a = {"endpoint": "https://kb.example/sparql", "query": "SELECT 1", "format": "json"}
        b = {"format": "json", "query": "SELECT 1", "endpoint": "https://kb.example/sparql"}
        assert request_key(a) == request_key(b)
        assert canonical_json(a) == canonical_json(b)

    def test_round_trip(self, tmp_path):
        archive = ResponseArchive(tmp_path / "archive")
        request = {"endpoint": "e", "query": "q", "format": "json"}
        response = {"results": {"bindings": [{"x": {"value": "1"}}]}}
        assert archive.get(request) is None
        assert request not in archive
        path = archive.put(request, response)
        assert path.name == f"{request_key(request)}.json"
        assert archive.get(request) == response
        assert request in archive
        assert len(archive) == 1

    def test_stored_file_carries_the_request(self, tmp_path):
        archive = ResponseArchive(tmp_path / "archive")
        request = {"endpoint": "e", "query": "q", "format": "json"}
        path = archive.put(request, {"results": {"bindings": []}})
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["request"] == request


def binding(entity, label, gender=None, occupation=None, country=None,
            birth=None, death=None):
    row = {
        "person": {"value": entity},
        "personLabel": {"value": label},
    }
    if gender:
        row["genderLabel"] = {"value": gender}
    if occupation:
        row["occupationLabel"] = {"value": occupation}
    if country:
        row["countryLabel"] = {"value": country}
    if birth:
        row["birth"] = {"value": birth}
    if death:
        row["death"] = {"value": death}
    return row


def results(*bindings):
    return {"results": {"bindings": list(bindings)}}


class Transport:
    """Scripted transport: pops canned payloads, or raises them."""

    def __init__(self, *payloads):
        self.payloads = list(payloads)
        self.calls = 0

    def __call__(self, endpoint, request):
        self.calls += 1
        if not self.payloads:
            raise AssertionError("transport called with nothing scripted")
        item = self.payloads.pop(0)
        if isinstance(item, Exception):
            raise item
        return item


def client(*payloads, archive=None, offline=False):
    return KBClient(
        "https://kb.example/sparql",
        archive=archive,
        offline=offline,
        rate_limit=1e9,
        transport=Transport(*payloads),
    )


class TestKBClient:
    def test_success_records_to_archive(self, tmp_path):
        archive = ResponseArchive(tmp_path / "a")
        kb = client(results(binding("Q1", "Ada")), archive=archive)
        payload = kb.sparql("SELECT x")
        assert payload["results"]["bindings"][0]["person"]["value"] == "Q1"
        assert len(archive) == 1
        # replay: the transport has nothing scripted, the archive answers
        assert kb.sparql("SELECT x") == payload
        assert kb._transport.calls == 1

    def test_offline_archive_hit(self, tmp_path):
        archive = ResponseArchive(tmp_path / "a")
        request = {"endpoint": "https://kb.example/sparql", "query": "SELECT x",
                   "format": "json"}
        archive.put(request, results())
        kb = client(archive=archive, offline=True)
        assert kb.sparql("SELECT x") == results()

    def test_offline_miss_is_hard_error(self, tmp_path):
        kb = client(archive=ResponseArchive(tmp_path / "a"), offline=True)
        with pytest.raises(NetworkError, match="offline"):
            kb.sparql("SELECT x")

    def test_retry_backoff_then_success(self, monkeypatch):
        delays = []
        monkeypatch.setattr("streetscape.enrich.client.time.sleep", delays.append)
        kb = client(
            requests.ConnectionError("down"),
            requests.ConnectionError("still down"),
            results(binding("Q1", "Ada")),
        )
        payload = kb.sparql("SELECT x")
        assert payload == results(binding("Q1", "Ada"))
        assert kb._transport.calls == 3
        assert [d for d in delays if d >= 1.0] == [1.0, 2.0]

    def test_gives_up_after_bounded_attempts(self, monkeypatch):
        monkeypatch.setattr("streetscape.enrich.client.time.sleep", lambda s: None)
        kb = client(*(requests.ConnectionError("down") for _ in range(5)))
        with pytest.raises(NetworkError, match="giving up after 3 attempts"):
            kb.sparql("SELECT x")
        assert kb._transport.calls == 3

    def test_undecodable_body_retries_too(self, monkeypatch):
        monkeypatch.setattr("streetscape.enrich.client.time.sleep", lambda s: None)
        kb = client(ValueError("not json"), results())
        assert kb.sparql("SELECT x") == results()

    @pytest.mark.parametrize("payload", [{"ok": True}, ["results"], "results"])
    def test_malformed_payload_rejected_and_not_archived(self, tmp_path, payload):
        archive = ResponseArchive(tmp_path / "a")
        kb = client(payload, archive=archive)
        with pytest.raises(NetworkError, match="malformed"):
            kb.sparql("SELECT x")
        assert len(archive) == 0

    def test_request_shape(self):
        kb = client()
        assert kb.request_for("SELECT x") == {
            "endpoint": "https://kb.example/sparql",
            "query": "SELECT x",
            "format": "json",
        }


class TestYearFromTimestamp:
    @pytest.mark.parametrize("text,expected", [
        ("1913-02-04T00:00:00Z", 1913),
        ("2005-10-24T00:00:00Z", 2005),
        ("-0063-01-01T00:00:00Z", -63),
        ("1820", 1820),
        ("", None),
        ("unknown", None),
    ])
    def test_parse(self, text, expected):
        assert year_from_timestamp(text) == expected


ROSA = binding(
    "Q41921", "Rosa Parks",
    gender="female",
    occupation="civil rights activist",
    country="United States of America",
    birth="1913-02-04T00:00:00Z",
    death="2005-10-24T00:00:00Z",
)


class TestResolveHonoree:
    def test_full_resolution(self):
        kb = client(results(ROSA))
        resolved = kb.resolve_honoree("Rosa Parks")
        assert resolved.gender is Gender.FEMALE
        assert resolved.occupation_raw == "civil rights activist"
        assert resolved.occupation_group is OccupationGroup.LEGAL_SOCIAL_CULTURAL
        assert resolved.country_of_origin == "US"
        assert resolved.birth_year == 1913
        assert resolved.death_year == 2005

    def test_empty_name_rejected(self):
        with pytest.raises(ValueError, match="empty name"):
            client().resolve_honoree("   ")

    def test_first_occurrence_wins_across_rows(self, tmp_path):
        rows = results(
            binding("Q1", "Ada", birth="1815-12-10T00:00:00Z"),
            binding("Q1", "Ada", birth="1816-01-01T00:00:00Z",
                    occupation="mathematician"),
        )
        cache = EnrichmentCache(tmp_path / "cache.sqlite")
        kb = client(rows)
        resolved = kb.resolve_honoree("Ada Lovelace", cache=cache)
        assert resolved.birth_year == 1815
        hit = cache.get("Ada Lovelace")
        assert hit.provenance["birth_year"] == "results.bindings[0].birth.value"
        assert hit.provenance["occupation_raw"] == (
            "results.bindings[1].occupationLabel.value"
        )

    def test_two_entities_are_ambiguous(self):
        rows = results(binding("Q1", "Jean Martin (painter)"),
                       binding("Q2", "Jean Martin (general)"))
        resolved = client(rows).resolve_honoree("Jean Martin")
        assert isinstance(resolved, AmbiguousHonoree)
        assert [c.entity_id for c in resolved.candidates] == ["Q1", "Q2"]
        assert resolved.candidates[0].label == "Jean Martin (painter)"

    def test_chosen_entity_narrows(self):
        rows = results(binding("Q1", "Jean Martin", occupation="painter"),
                       binding("Q2", "Jean Martin", occupation="general"))
        resolved = client(rows).resolve_honoree("Jean Martin", chosen_entity="Q2")
        assert resolved.occupation_raw == "general"
        assert resolved.occupation_group is ARM

    def test_chosen_entity_must_be_a_candidate(self):
        rows = results(binding("Q1", "Jean Martin"))
        with pytest.raises(NetworkError, match="Q9 not among candidates"):
            client(rows).resolve_honoree("Jean Martin", chosen_entity="Q9")

    def test_cache_answers_second_resolution(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache.sqlite")
        first = client(results(ROSA))
        resolved = first.resolve_honoree("Rosa Parks", cache=cache)
        # no payload scripted: a transport call would blow up
        second = client()
        assert second.resolve_honoree("Rosa Parks", cache=cache) == resolved
        assert second._transport.calls == 0

    def test_cache_key_is_normalized(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache.sqlite")
        client(results(ROSA)).resolve_honoree("Rosa Parks", cache=cache)
        assert client().resolve_honoree("ROSA PARKS", cache=cache).birth_year == 1913

    def test_no_match_cached_as_blank(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache.sqlite")
        resolved = client(results()).resolve_honoree("Nobody Known", cache=cache)
        assert resolved.gender is Gender.UNKNOWN
        assert resolved.birth_year is None
        assert len(cache) == 1
        assert client().resolve_honoree("Nobody Known", cache=cache) == resolved

    def test_request_hash_points_at_the_query(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "cache.sqlite")
        kb = client(results(ROSA))
        kb.resolve_honoree("Rosa Parks", cache=cache)
        hit = cache.get("Rosa Parks")
        assert hit.request_hash == request_key(
            kb.request_for(person_query("Rosa Parks"))
        )

    def test_unrecognized_gender_label_stays_unknown(self):
        rows = results(binding("Q1", "Ada", gender="unrecorded"))
        assert client(rows).resolve_honoree("Ada").gender is Gender.UNKNOWN


class TestCache:
    def test_provenance_required_for_populated_fields(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "c.sqlite")
        with pytest.raises(DataError, match="birth_year"):
            cache.put("X", honoree("X", birth=1900, death=None, country=None,
                                   gender=Gender.UNKNOWN), {},
                      retrieved_at="2026-08-22T00:00:00Z")

    def test_gender_needs_provenance_too(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "c.sqlite")
        h = honoree("X", birth=None, death=None, country=None)
        with pytest.raises(DataError, match="gender"):
            cache.put("X", h, {}, retrieved_at="2026-08-22T00:00:00Z")

    def test_derived_group_needs_no_provenance(self, tmp_path):
        from streetscape.core import Honoree
        cache = EnrichmentCache(tmp_path / "c.sqlite")
        h = Honoree(full_name="X", occupation_group=OTHER)
        cache.put("X", h, {}, retrieved_at="2026-08-22T00:00:00Z")
        assert cache.get("X").honoree.occupation_group is OTHER

    def test_payload_is_stable(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "c.sqlite")
        h = honoree("Ada Lovelace", birth=1815, death=1852)
        prov = {f: "results.bindings[0]" for f in
                ("gender", "country_of_origin", "birth_year", "death_year",
                 "occupation_raw")}
        cache.put("Ada Lovelace", h, prov, retrieved_at="t", request_hash="r")
        assert cache.get("Ada Lovelace").payload == cache.get("ada lovelace").payload

    def test_context_manager_closes(self, tmp_path):
        path = tmp_path / "c.sqlite"
        with EnrichmentCache(path) as cache:
            cache.put("X", honoree("X", birth=None, death=None, country=None,
                                   gender=Gender.UNKNOWN), {},
                      retrieved_at="t")
        reopened = EnrichmentCache(path)
        assert len(reopened) == 1
        reopened.close()

    def test_unknown_format_version_rejected(self, tmp_path):
        path = tmp_path / "c.sqlite"
        EnrichmentCache(path).close()
        conn = sqlite3.connect(path)
        conn.execute("UPDATE meta SET value = 'v999' WHERE key = 'format_version'")
        conn.commit()
        conn.close()
        with pytest.raises(DataError, match="v999"):
            EnrichmentCache(path)


class TestEnrichRecords:
    def test_complete_records_cost_nothing(self):
        records = [rec(), rec(street="Rue B")]
        kb = client()  # any lookup would fail: nothing scripted
        out, report = enrich_records(records, kb)
        assert out == records
        assert report.already_complete == 2
        assert report.looked_up == 0

    def test_curated_fields_survive_the_merge(self):
        curated = rec(name="Rosa Parks", gender=Gender.FEMALE, birth=None,
                      death=None, country=None, group=None, raw=None)
        wrong = binding("Q41921", "Rosa Parks", gender="male",
                        occupation="civil rights activist",
                        country="United States of America",
                        birth="1913-02-04T00:00:00Z",
                        death="2005-10-24T00:00:00Z")
        out, report = enrich_records([curated], client(results(wrong)))
        merged = out[0].honoree
        assert merged.gender is Gender.FEMALE
        assert merged.country_of_origin == "US"
        assert merged.birth_year == 1913
        assert merged.death_year == 2005
        assert report.looked_up == 1

    def test_ambiguous_left_untouched_and_reported(self):
        record = rec(name="Jean Martin", birth=None, death=None)
        rows = results(binding("Q1", "Jean Martin"), binding("Q2", "Jean Martin"))
        out, report = enrich_records([record], client(rows))
        assert out[0] == record
        assert [a.name for a in report.ambiguous] == ["Jean Martin"]

    def test_decisions_map_settles_ambiguity(self):
        record = rec(name="Jean Martin", birth=None, death=None)
        rows = results(
            binding("Q1", "Jean Martin", birth="1800-01-01T00:00:00Z",
                    death="1870-01-01T00:00:00Z"),
            binding("Q2", "Jean Martin", birth="1912-01-01T00:00:00Z",
                    death="1999-01-01T00:00:00Z"),
        )
        out, report = enrich_records(
            [record], client(rows), decisions={"jean martin": "Q2"}
        )
        assert out[0].honoree.birth_year == 1912
        assert report.ambiguous == []

    def test_unmatched_occupation_reported(self):
        record = rec(name="Elias Krog", group=None, raw=None, birth=None, death=None)
        rows = results(binding("Q7", "Elias Krog", occupation="alchemist",
                               birth="1600-01-01T00:00:00Z",
                               death="1660-01-01T00:00:00Z"))
        out, report = enrich_records([record], client(rows))
        assert out[0].honoree.occupation_group is OTHER
        assert report.unmatched_occupations == ["alchemist"]

    def test_cache_hit_accounting(self, tmp_path):
        cache = EnrichmentCache(tmp_path / "c.sqlite")
        client(results(ROSA)).resolve_honoree("Rosa Parks", cache=cache)
        record = rec(name="Rosa Parks", gender=Gender.UNKNOWN, birth=None,
                     death=None, country=None, group=None, raw=None)
        out, report = enrich_records([record], client(), cache=cache)
        assert report.cache_hits == 1
        assert report.looked_up == 1
        assert out[0].honoree.gender is Gender.FEMALE


class TestNamedAfter:
    def test_requires_area_id(self):
        from streetscape.core import CityConfig
        city = CityConfig("t", "T", "FR", 1860)
        with pytest.raises(ValueError, match="area id"):
            client().query_named_after(city)

    def test_dedup_and_person_flag(self):
        from streetscape.core import CityConfig
        city = CityConfig("t", "T", "FR", 1860, kb_area_id="Q90")
        def street(label, entity, is_person):
            return {
                "street": {"value": "S1"},
                "streetLabel": {"value": label},
                "eponym": {"value": entity},
                "eponymLabel": {"value": label.split(" ", 1)[-1]},
                "isPerson": {"value": is_person},
            }
        rows = results(
            street("Rue Pasteur", "Q100", "true"),
            street("Rue Pasteur", "Q100", "true"),
            street("Rue du Chêne", "Q200", "false"),
        )
        out = client(rows).query_named_after(city)
        assert [(s, c.entity_id, c.is_person) for s, c in out] == [
            ("Rue Pasteur", "Q100", True),
            ("Rue du Chêne", "Q200", False),
        ]
