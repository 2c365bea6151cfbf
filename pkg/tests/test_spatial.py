import warnings

import pytest

from streetscape.metrics import DistrictMetric
from streetscape.spatial import (
    assign_all,
    assign_district,
    bin_of,
    emit_choropleth,
    linestring_length,
    overlap_length,
    point_in_polygon,
    point_on_boundary,
    representative_point,
    ring_self_intersects,
)

import oracle_suite
from helpers import rec, square_district, square_ring

UNIT = ((square_ring(0.0, 0.0, 1.0),),)


class TestOracleEquivalence:
    def test_pip_matches_ray_casting(self):
        oracle_suite.check_pip(points=3000)

    def test_sampling_is_deterministic(self):
        oracle_suite.check_sampling(seeds=25)


class TestPointInPolygon:
    def test_interior_and_exterior(self):
        assert point_in_polygon((0.5, 0.5), UNIT)
        assert not point_in_polygon((1.5, 0.5), UNIT)

    def test_boundary_counts_as_inside(self):
        assert point_in_polygon((1.0, 0.5), UNIT)
        assert point_in_polygon((0.0, 0.0), UNIT)

    def test_boundary_detection(self):
        assert point_on_boundary((0.5, 0.0), UNIT)
        assert not point_on_boundary((0.5, 0.5), UNIT)

    def test_hole_interior_is_outside(self):
        holed = (
            (
                square_ring(0.0, 0.0, 3.0),
                square_ring(1.0, 1.0, 1.0),
            ),
        )
        assert point_in_polygon((0.5, 0.5), holed)
        assert not point_in_polygon((1.5, 1.5), holed)

    def test_multipolygon_either_part(self):
        two = ((square_ring(0.0, 0.0, 1.0),), (square_ring(5.0, 5.0, 1.0),))
        assert point_in_polygon((0.5, 0.5), two)
        assert point_in_polygon((5.5, 5.5), two)
        assert not point_in_polygon((3.0, 3.0), two)


class TestRings:
    def test_simple_ring_ok(self):
        assert not ring_self_intersects(square_ring(0.0, 0.0, 1.0))

    def test_bowtie_detected(self):
        bowtie = ((0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0))
        assert ring_self_intersects(bowtie)


class TestGeometryHelpers:
    def test_linestring_length(self):
        assert linestring_length(((0.0, 0.0), (3.0, 4.0))) == 5.0

    def test_representative_point_on_street(self):
        coords = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0))
        assert representative_point(coords) == (1.0, 0.5)
        assert representative_point(((2.0, 3.0),)) == (2.0, 3.0)

    def test_overlap_length_full_and_partial(self):
        inside = ((0.2, 0.5), (0.8, 0.5))
        assert overlap_length(inside, UNIT) == pytest.approx(0.6)
        crossing = ((0.5, 0.5), (1.5, 0.5))
        assert overlap_length(crossing, UNIT) == pytest.approx(0.5)
        outside = ((2.0, 2.0), (3.0, 2.0))
        assert overlap_length(outside, UNIT) == 0.0


class TestAssignment:
    def districts(self):
        return [
            square_district("west", 0.0, 0.0),
            square_district("east", 1.0, 0.0),
        ]

    def test_declared_district_wins_over_geometry(self):
        r = rec(district="east", geometry=((0.2, 0.2), (0.3, 0.2)))
        assert assign_district(r, self.districts()) == "east"

    def test_declared_district_matches_display_name(self):
        districts = [square_district("d-01", 0.0, 0.0, name="Innere Stadt")]
        r = rec(district="Innere Stadt")
        assert assign_district(r, districts) == "d-01"

    def test_geometry_assignment_by_representative_point(self):
        r = rec(district=None, geometry=((1.2, 0.5), (1.4, 0.5)))
        assert assign_district(r, self.districts()) == "east"

    def test_boundary_street_goes_to_larger_overlap(self):
        # Representative point sits exactly on the shared edge x=1.
        r = rec(district=None, geometry=((0.7, 0.5), (1.3, 0.5)))
        assert assign_district(r, self.districts()) == "west"
        r2 = rec(district=None, geometry=((0.9, 0.5), (1.8, 0.5)))
        assert assign_district(r2, self.districts()) == "east"

    def test_unplaceable_street(self):
        r = rec(district=None, geometry=((9.0, 9.0), (9.1, 9.0)))
        assert assign_district(r, self.districts()) is None

    def test_no_geometry_no_district(self):
        r = rec(district=None)
        assert assign_district(r, self.districts()) is None

    def test_assign_all_accounting(self):
        records = [
            rec(street="A", district=None, geometry=((0.5, 0.5), (0.6, 0.5))),
            rec(street="B", district=None, geometry=((9.0, 9.0), (9.1, 9.0))),
        ]
        assigned, report = assign_all(records, self.districts())
        assert report == {"assigned": 1, "unassigned": 1}
        assert assigned[0].district_id == "west"
        assert assigned[1].district_id is None


class TestBins:
    def test_equal_interval_edges(self):
        assert bin_of(0.0, 1.0, 5) == 0
        assert bin_of(0.2, 1.0, 5) == 0
        assert bin_of(0.2000000001, 1.0, 5) == 1
        assert bin_of(1.0, 1.0, 5) == 4

    def test_zero_max(self):
        assert bin_of(0.0, 0.0, 5) == 0


class TestChoropleth:
    def metric(self, values):
        return DistrictMetric(metric_id="f_prop_by_district", city_id="t", values=values)

    def test_every_district_appears_once(self):
        districts = [square_district(f"d{i}", float(i), 0.0) for i in range(3)]
        doc = emit_choropleth(self.metric({"d0": 0.2, "d2": 0.4}), districts, bins=4)
        assert doc["type"] == "FeatureCollection"
        props = [f["properties"] for f in doc["features"]]
        assert [p["district_id"] for p in props] == ["d0", "d1", "d2"]
        by_id = {p["district_id"]: p for p in props}
        assert by_id["d1"]["value"] == 0.0
        assert by_id["d2"]["bin"] == 3

    def test_geometry_round_trips_as_geojson_polygon(self):
        districts = [square_district("d0", 0.0, 0.0)]
        doc = emit_choropleth(self.metric({"d0": 1.0}), districts, bins=2)
        geom = doc["features"][0]["geometry"]
        assert geom["type"] == "Polygon"
        assert geom["coordinates"][0][0] == [0.0, 0.0]

    def test_too_few_bins_rejected(self):
        with pytest.raises(ValueError):
            emit_choropleth(self.metric({}), [square_district("d0", 0.0, 0.0)], bins=1)

    def test_all_zero_warns_single_bin(self):
        districts = [square_district("d0", 0.0, 0.0)]
        with pytest.warns(UserWarning):
            doc = emit_choropleth(self.metric({"d0": 0.0}), districts, bins=5)
        assert doc["features"][0]["properties"]["bin"] == 0
