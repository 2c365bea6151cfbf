import math

import pytest
from hypothesis import given, settings, strategies as st

from streetscape.core import CityConfig, Gender, OccupationGroup
from streetscape.metrics import (
    CUMULATIVE,
    PER_DECADE,
    apply_start_decade,
    dataset_summary,
    denominations_by_decade,
    f_prop_by_decade,
    f_prop_series,
    fhd,
    for_prop_by_decade,
    half_century_stability,
    kendall_tau,
    occupation_ranking,
    pooled_f_prop,
    pooled_for_prop,
)

import oracle_suite
from helpers import bare_rec, rec

CITY = CityConfig("testville", "Testville", "FR", 1860)
G = OccupationGroup


class TestOracleEquivalence:
    def test_fhd_matches_year_iteration(self):
        oracle_suite.check_fhd(instances=300)

    def test_kendall_matches_pairwise_definition(self):
        oracle_suite.check_kendall(rankings=200)

    def test_district_values_sum_to_city_share(self):
        oracle_suite.check_district_sum()


class TestStartDecade:
    def test_decade_granularity(self):
        london = CityConfig("london", "London", "GB", 1666)
        records = [rec(street=f"S{y}", year=y) for y in (1650, 1660, 1665, 1666, 1700)]
        kept = apply_start_decade(records, london)
        assert [r.denomination_year for r in kept] == [1660, 1665, 1666, 1700]

    def test_undated_records_pass(self):
        records = [rec(year=None), rec(street="S2", year=1700)]
        kept = apply_start_decade(records, CITY)
        assert [r.denomination_year for r in kept] == [None]


class TestProportions:
    def test_f_prop_counts_females_among_dated_countables(self):
        records = [
            rec(street="A", year=1901, gender=Gender.FEMALE),
            rec(street="B", year=1905),
            rec(street="C", year=1909, gender=Gender.UNKNOWN),
            rec(street="D", year=1912, gender=Gender.FEMALE),
        ]
        assert f_prop_by_decade(records, 1900) == 0.5
        assert f_prop_by_decade(records, 1910) == 1.0
        assert f_prop_by_decade(records, 1920) is None

    def test_for_prop_default_is_within_decade(self):
        records = [
            rec(street="A", year=1901, country="IT"),
            rec(street="B", year=1905, country="FR"),
            rec(street="C", year=1915, country="PL"),
        ]
        assert for_prop_by_decade(records, 1900, "FR") == 0.5

    def test_for_prop_strict_numerator_spans_all_decades(self):
        records = [
            rec(street="A", year=1901, country="IT"),
            rec(street="B", year=1905, country="FR"),
            rec(street="C", year=1915, country="PL"),
        ]
        # Numerator counts both foreigners; denominator stays the 1900s pool.
        assert for_prop_by_decade(records, 1900, "FR", strict=True) == 1.0

    def test_series_flags_empty_decades(self):
        records = [
            rec(street="A", year=1901),
            rec(street="B", year=1925, gender=Gender.UNKNOWN),
        ]
        series = f_prop_series(records, CITY)
        assert 1900 in series.values
        assert 1920 not in series.values
        assert "no countable" in series.flags[1920].lower() or series.flags[1920]

    def test_pooled(self):
        records = [
            rec(street="A", gender=Gender.FEMALE, country="IT"),
            rec(street="B"),
            rec(street="C", gender=Gender.UNKNOWN),
        ]
        assert pooled_f_prop(records) == 0.5
        assert pooled_for_prop(records, "FR") == 0.5
        assert pooled_f_prop([]) is None
        assert pooled_for_prop([bare_rec()], "FR") is None


class TestFhd:
    def test_counts_every_touched_decade(self):
        records = [rec(street="A", birth=1888, death=1911)]
        series, report = fhd(records)
        assert series.values == {1880: 1.0, 1890: 1.0, 1900: 1.0, 1910: 1.0}
        assert report.counted == 1

    def test_gap_decades_are_explicit_zeros(self):
        records = [
            rec(street="A", birth=1700, death=1710),
            rec(street="B", birth=1780, death=1790),
        ]
        series, _ = fhd(records)
        assert series.values[1740] == 0.0
        assert sorted(series.values) == list(range(1700, 1800, 10))

    def test_bc_lifespans(self):
        records = [rec(street="A", birth=-60, death=14)]
        series, _ = fhd(records)
        assert series.values[-60] == 1
        assert series.values[0] == 1
        assert series.values[10] == 1
        assert -70 not in series.values

    def test_missing_and_inverted_are_reported_not_counted(self):
        records = [
            rec(street="A", birth=None, death=1900),
            rec(street="B", birth=1900, death=1800),
            bare_rec(street="C"),  # no honoree at all: silently out of scope
        ]
        series, report = fhd(records)
        assert series.values == {}
        assert report.counted == 0
        assert report.excluded_missing_years == 1
        assert report.skipped_invalid_lifespan == 1

    def test_empty_input(self):
        series, report = fhd([])
        assert series.values == {}
        assert report.counted == 0


class TestDenominations:
    def test_fractions_over_dated_records(self):
        records = [
            rec(street="A", year=1901),
            rec(street="B", year=1909),
            rec(street="C", year=1915),
            rec(street="D", year=None),
        ]
        series = denominations_by_decade(records)
        assert series.values == {1900: 2 / 3, 1910: 1 / 3}
        assert abs(sum(series.values.values()) - 1.0) < 1e-12


class TestRanking:
    def build(self):
        rows = []
        # 1900s: 3 artists, 1 general; 1910s: 1 artist, 2 generals
        for i in range(3):
            rows.append(rec(street=f"A{i}", year=1900 + i, group=G.CREATIVE_PERFORMING_ARTISTS))
        rows.append(rec(street="G0", year=1905, group=G.ARMED_FORCES_OFFICERS))
        rows.append(rec(street="A9", year=1910, group=G.CREATIVE_PERFORMING_ARTISTS))
        for i in range(2):
            rows.append(rec(street=f"G{i+1}", year=1911 + i, group=G.ARMED_FORCES_OFFICERS))
        return rows

    def test_cumulative_mode_accumulates(self):
        ranking = occupation_ranking(self.build(), mode=CUMULATIVE)
        assert ranking.counts(1900)[G.CREATIVE_PERFORMING_ARTISTS] == 3
        assert ranking.counts(1910)[G.CREATIVE_PERFORMING_ARTISTS] == 4
        assert ranking.counts(1910)[G.ARMED_FORCES_OFFICERS] == 3

    def test_per_decade_mode_does_not(self):
        ranking = occupation_ranking(self.build(), mode=PER_DECADE)
        assert ranking.counts(1910)[G.CREATIVE_PERFORMING_ARTISTS] == 1
        assert ranking.counts(1910)[G.ARMED_FORCES_OFFICERS] == 2

    def test_ranks_dense_and_tie_broken_by_group_order(self):
        ranking = occupation_ranking(self.build(), mode=PER_DECADE)
        by_1910 = {e.group: e.rank for e in ranking.by_decade[1910]}
        assert by_1910[G.ARMED_FORCES_OFFICERS] == 1
        assert by_1910[G.CREATIVE_PERFORMING_ARTISTS] == 2
        # All 12 groups appear, zero-count ones after the counted ones.
        assert len(ranking.by_decade[1910]) == 12
        ranks = [e.rank for e in ranking.by_decade[1910]]
        assert sorted(ranks) == list(range(1, 13))

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            occupation_ranking([], mode="alphabetical")

    def test_rank_of_missing_decade_is_none(self):
        ranking = occupation_ranking(self.build())
        assert ranking.rank_of(1800, G.RELIGIOUS) is None


class TestKendall:
    def test_identical_rankings(self):
        assert kendall_tau(["a", "b", "c"], ["a", "b", "c"]) == 1.0

    def test_reversed_rankings(self):
        assert kendall_tau(["a", "b", "c"], ["c", "b", "a"]) == -1.0

    def test_mapping_with_ties(self):
        tau = kendall_tau({"a": 1, "b": 1, "c": 2}, {"a": 1, "b": 2, "c": 3})
        ref = oracle_suite.oracles.tau_b_pairwise([1, 1, 2], [1, 2, 3])
        assert abs(tau - ref) < 1e-12

    def test_all_ties_is_nan(self):
        assert math.isnan(kendall_tau({"a": 1, "b": 1}, {"a": 1, "b": 2}))

    def test_disjoint_items_rejected(self):
        with pytest.raises(ValueError):
            kendall_tau({"a": 1, "b": 2}, {"a": 1, "c": 2})

    def test_duplicate_sequence_items_rejected(self):
        with pytest.raises(ValueError):
            kendall_tau(["a", "a"], ["a", "b"])


class TestStability:
    def test_windows_and_min(self):
        # Stable everywhere except a churn decade inside the 1900 window.
        rows = []
        for decade in range(1800, 2010, 10):
            for i in range(5):
                rows.append(rec(street=f"A{decade}{i}", year=decade, group=G.CREATIVE_PERFORMING_ARTISTS))
            rows.append(rec(street=f"B{decade}", year=decade, group=G.RELIGIOUS))
        for i in range(40):
            rows.append(rec(street=f"W{i}", year=1915, group=G.ARMED_FORCES_OFFICERS))
        ranking = occupation_ranking(rows, mode=CUMULATIVE)
        stability = half_century_stability(ranking)
        assert set(stability) == {1800, 1850, 1900, 1950}
        taus = {h: s.mean_tau for h, s in stability.items()}
        assert min(taus, key=lambda h: taus[h]) == 1900

    def test_sparse_window_reports_reason(self):
        rows = [rec(street="A", year=1805, group=G.RELIGIOUS)]
        ranking = occupation_ranking(rows)
        stability = half_century_stability(ranking)
        entry = stability[1950]
        assert entry.mean_tau is None
        assert entry.reason

    def test_missing_decades_shrink_pair_count(self):
        rows = [
            rec(street="A", year=1805, group=G.RELIGIOUS),
            rec(street="B", year=1815, group=G.RELIGIOUS),
            rec(street="C", year=1845, group=G.CREATIVE_PERFORMING_ARTISTS),
        ]
        ranking = occupation_ranking(rows, mode=PER_DECADE)
        entry = half_century_stability(ranking)[1800]
        assert entry.pairs_used + entry.pairs_skipped == 5


class TestSummary:
    def test_summary_fields(self):
        records = [
            rec(street="A", year=1202, birth=-60, death=14),
            rec(street="B", year=2011, birth=1900, death=1980),
        ]
        assert dataset_summary(records) == {
            "honorific_streets": 2,
            "denomination_min": 1202,
            "denomination_max": 2011,
            "birth_min": -60,
            "death_max": 1980,
        }


years = st.integers(min_value=-500, max_value=2100)


class TestProperties:
    @given(st.lists(st.tuples(years, st.integers(0, 150)), min_size=1, max_size=30))
    @settings(max_examples=60, deadline=None)
    def test_fhd_support_matches_lifespan_hull(self, spans):
        records = [
            rec(street=f"S{i}", birth=b, death=b + d)
            for i, (b, d) in enumerate(spans)
        ]
        series, _ = fhd(records)
        lo = min(b for b, _ in spans)
        hi = max(b + d for b, d in spans)
        decades = sorted(series.values)
        assert decades[0] == (lo // 10) * 10
        assert decades[-1] == (hi // 10) * 10
        assert series.values[decades[0]] >= 1
        assert series.values[decades[-1]] >= 1
        assert all(v >= 0 for v in series.values.values())
        # The hull is contiguous: every decade between the ends is present.
        assert decades == list(range(decades[0], decades[-1] + 10, 10))

    @given(
        st.lists(
            st.tuples(st.booleans(), st.integers(1900, 1999)),
            min_size=1,
            max_size=40,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_f_prop_stays_in_unit_interval(self, rows):
        records = [
            rec(street=f"S{i}", year=y, gender=Gender.FEMALE if f else Gender.MALE)
            for i, (f, y) in enumerate(rows)
        ]
        series = f_prop_series(records, CityConfig("t", "T", "FR", 1800))
        for value in series.values.values():
            assert 0.0 <= value <= 1.0

    @given(
        st.lists(st.integers(0, 5), min_size=2, max_size=8),
        st.lists(st.integers(0, 5), min_size=2, max_size=8),
    )
    @settings(max_examples=80, deadline=None)
    def test_kendall_symmetry(self, x, y):
        n = min(len(x), len(y))
        x, y = x[:n], y[:n]
        items = [f"i{i}" for i in range(n)]
        a, b = dict(zip(items, x)), dict(zip(items, y))
        t1, t2 = kendall_tau(a, b), kendall_tau(b, a)
        assert (math.isnan(t1) and math.isnan(t2)) or abs(t1 - t2) < 1e-12

    @given(st.lists(st.sampled_from(list(G)), min_size=1, max_size=60))
    @settings(max_examples=60, deadline=None)
    def test_cumulative_counts_monotone(self, groups):
        records = [
            rec(street=f"S{i}", year=1900 + (i % 8) * 10, group=g)
            for i, g in enumerate(groups)
        ]
        ranking = occupation_ranking(records, mode=CUMULATIVE)
        decades = sorted(ranking.by_decade)
        for earlier, later in zip(decades, decades[1:]):
            ce, cl = ranking.counts(earlier), ranking.counts(later)
            for group in ce:
                assert cl.get(group, 0) >= ce[group]
