"""District assignment and choropleth map data.

All geometry is WGS84 lon/lat in double precision.  Predicates use an
epsilon of 1e-9 degrees (about 0.1 mm) to classify on-boundary points;
a point on a shared boundary belongs to the first district in config
order, which keeps assignment deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import replace
from typing import Iterable, Optional, Sequence

from streetscape.core import (
    Coord,
    CoordSeq,
    District,
    MultiPolygon,
    PolygonCoords,
    Ring,
    StreetRecord,
    normalize_name,
)

BOUNDARY_EPS = 1e-9

# Streets a district lookup could not place; reported, never guessed.
UNASSIGNED = None


def _cross(o: Coord, a: Coord, b: Coord) -> float:
    """Signed area of the parallelogram (a-o, b-o); >0 means b left of o→a."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _point_segment_dist_sq(p: Coord, a: Coord, b: Coord) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    len_sq = dx * dx + dy * dy
    if len_sq == 0.0:
        ex, ey = px - ax, py - ay
        return ex * ex + ey * ey
    t = ((px - ax) * dx + (py - ay) * dy) / len_sq
    t = min(1.0, max(0.0, t))
    cx, cy = ax + t * dx, ay + t * dy
    ex, ey = px - cx, py - cy
    return ex * ex + ey * ey


def _winding_number(p: Coord, ring: Ring) -> int:
    wn = 0
    x, y = p
    for a, b in zip(ring, ring[1:]):
        if a[1] <= y:
            if b[1] > y and _cross(a, b, p) > 0:
                wn += 1
        elif b[1] <= y and _cross(a, b, p) < 0:
            wn -= 1
    return wn


def point_on_boundary(p: Coord, polygon: MultiPolygon, eps: float = BOUNDARY_EPS) -> bool:
    """Whether ``p`` lies within ``eps`` of any ring edge of ``polygon``."""
    eps_sq = eps * eps
    for rings in polygon:
        for ring in rings:
            for a, b in zip(ring, ring[1:]):
                if _point_segment_dist_sq(p, a, b) <= eps_sq:
                    return True
    return False


def point_in_polygon(p: Coord, polygon: MultiPolygon, eps: float = BOUNDARY_EPS) -> bool:
    """Containment test for a multipolygon with holes.

    Boundary points (within ``eps``) count as inside; interior points of a
    hole do not.
    """
    if eps > 0.0 and point_on_boundary(p, polygon, eps):
        return True
    for rings in polygon:
        if not rings:
            continue
        if _winding_number(p, rings[0]) == 0:
            continue
        if all(_winding_number(p, hole) == 0 for hole in rings[1:]):
            return True
    return False


def _collinear_overlap(a: Coord, b: Coord, c: Coord, d: Coord) -> bool:
    """Whether collinear segments ab and cd share more than nothing."""

    def within(lo: float, hi: float, v: float) -> bool:
        return min(lo, hi) <= v <= max(lo, hi)

    # Project on the axis with the larger extent to dodge vertical lines.
    axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
    return (
        within(a[axis], b[axis], c[axis])
        or within(a[axis], b[axis], d[axis])
        or within(c[axis], d[axis], a[axis])
        or within(c[axis], d[axis], b[axis])
    )


def segments_intersect(a: Coord, b: Coord, c: Coord, d: Coord) -> bool:
    """Whether closed segments ab and cd share at least one point."""
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        return _collinear_overlap(a, b, c, d)
    if d1 == 0 and _point_segment_dist_sq(a, c, d) == 0.0:
        return True
    if d2 == 0 and _point_segment_dist_sq(b, c, d) == 0.0:
        return True
    if d3 == 0 and _point_segment_dist_sq(c, a, b) == 0.0:
        return True
    if d4 == 0 and _point_segment_dist_sq(d, a, b) == 0.0:
        return True
    return False


def ring_self_intersects(ring: Ring) -> bool:
    """Whether any two non-adjacent edges of a closed ring touch.

    Adjacent edges legitimately share a vertex and are skipped, including
    the first/last pair that meet at the closure point.
    """
    segs = [
        (a, b) for a, b in zip(ring, ring[1:]) if a != b
    ]
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_intersect(*segs[i], *segs[j]):
                return True
    return False


def linestring_length(coords: CoordSeq) -> float:
    """Planar length in degrees.  Only ever compared against lengths of the
    same linestring, so the lon/lat anisotropy cancels out."""
    total = 0.0
    for a, b in zip(coords, coords[1:]):
        total += ((b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2) ** 0.5
    return total


def representative_point(coords: CoordSeq) -> Coord:
    """Midpoint of the middle segment; the point itself for point geometry.

    Unlike a centroid this always lies on the street, even for concave
    shapes.
    """
    if len(coords) == 1:
        return coords[0]
    mid = (len(coords) - 1) // 2
    a, b = coords[mid], coords[mid + 1]
    return ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)


def _segment_crossing_params(a: Coord, b: Coord, c: Coord, d: Coord) -> list[float]:
    """Parameters t along ab where ab meets segment cd."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0.0:
        # Parallel or collinear: endpoints of cd that land on ab bound the
        # shared stretch, which is all the clipper needs.
        params = []
        for p in (c, d):
            if _cross(a, b, p) == 0.0:
                axis = 0 if abs(r[0]) >= abs(r[1]) else 1
                if r[axis] != 0.0:
                    t = (p[axis] - a[axis]) / r[axis]
                    if 0.0 <= t <= 1.0:
                        params.append(t)
        return params
    qp = (c[0] - a[0], c[1] - a[1])
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
        return [t]
    return []


def overlap_length(coords: CoordSeq, polygon: MultiPolygon) -> float:
    """Length of the portion of a linestring inside ``polygon``.

    Each segment is cut at every polygon-edge crossing; a sub-interval is
    inside iff its midpoint is (strict winding test, no epsilon).
    """
    total = 0.0
    for a, b in zip(coords, coords[1:]):
        seg_len = ((b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2) ** 0.5
        if seg_len == 0.0:
            continue
        params = [0.0, 1.0]
        for rings in polygon:
            for ring in rings:
                for c, d in zip(ring, ring[1:]):
                    params.extend(_segment_crossing_params(a, b, c, d))
        params = sorted(set(params))
        for lo, hi in zip(params, params[1:]):
            mid = ((a[0] + (b[0] - a[0]) * (lo + hi) / 2.0),
                   (a[1] + (b[1] - a[1]) * (lo + hi) / 2.0))
            if point_in_polygon(mid, polygon, eps=0.0):
                total += (hi - lo) * seg_len
    return total


def _match_by_name(name: str, districts: Sequence[District]) -> Optional[str]:
    key = normalize_name(name)
    for d in districts:
        if normalize_name(d.district_id) == key or normalize_name(d.name) == key:
            return d.district_id
    return UNASSIGNED


def assign_district(
    record: StreetRecord,
    districts: Sequence[District],
    eps: float = BOUNDARY_EPS,
) -> Optional[str]:
    """District id for a street, or ``None`` when nothing matches.

    A declared district name wins over geometry.  Geometry is resolved by
    point-in-polygon on the representative point; when that point sits on a
    boundary (or in no district at all) the street goes to the district
    overlapping the largest share of its length, earlier config order
    breaking ties.
    """
    if record.district_id:
        return _match_by_name(record.district_id, districts)
    if record.geometry is None or not record.geometry:
        return UNASSIGNED

    rep = representative_point(record.geometry)
    on_edge = any(point_on_boundary(rep, d.polygon, eps) for d in districts)
    if not on_edge:
        for d in districts:
            if point_in_polygon(rep, d.polygon, eps):
                return d.district_id

    if len(record.geometry) >= 2:
        best_id: Optional[str] = UNASSIGNED
        best_len = 0.0
        for d in districts:
            length = overlap_length(record.geometry, d.polygon)
            if length > best_len:
                best_len = length
                best_id = d.district_id
        if best_len > 0.0:
            return best_id
    if on_edge:
        for d in districts:
            if point_in_polygon(rep, d.polygon, eps):
                return d.district_id
    return UNASSIGNED


def assign_all(
    records: Iterable[StreetRecord],
    districts: Sequence[District],
) -> tuple[list[StreetRecord], dict[str, int]]:
    """Fill ``district_id`` on every record; count what could not be placed.

    Returns new records (inputs are immutable) and a report mapping
    ``assigned``/``unassigned`` to counts.  Unassigned records keep a
    ``None`` district and are excluded from district metrics downstream.
    """
    out: list[StreetRecord] = []
    report = {"assigned": 0, "unassigned": 0}
    for record in records:
        district_id = assign_district(record, districts)
        if district_id is UNASSIGNED:
            report["unassigned"] += 1
            out.append(replace(record, district_id=None))
        else:
            report["assigned"] += 1
            out.append(replace(record, district_id=district_id))
    return out, report


def _ring_to_geojson(ring: Ring) -> list[list[float]]:
    return [[x, y] for x, y in ring]


def _polygon_to_geojson(polygon: MultiPolygon) -> dict:
    if len(polygon) == 1:
        return {
            "type": "Polygon",
            "coordinates": [_ring_to_geojson(r) for r in polygon[0]],
        }
    return {
        "type": "MultiPolygon",
        "coordinates": [
            [_ring_to_geojson(r) for r in rings] for rings in polygon
        ],
    }


def bin_of(value: float, vmax: float, bins: int) -> int:
    """Equal-interval bin index over [0, vmax], upper edges inclusive.

    A hair of relative slack keeps exact edge values (0.5 with width 0.5)
    in the lower bin despite float rounding.
    """
    if vmax <= 0.0:
        return 0
    width = vmax / bins
    for k in range(bins):
        if value <= width * (k + 1) * (1.0 + 1e-12):
            return k
    return bins - 1


def emit_choropleth(metric, districts: Sequence[District], bins: int) -> dict:
    """GeoJSON FeatureCollection shading each district by a metric value.

    Every configured district appears exactly once; districts missing from
    the metric get value 0.
    """
    if bins < 2:
        raise ValueError(f"need at least 2 bins, got {bins}")
    values = {d.district_id: float(metric.values.get(d.district_id, 0.0)) for d in districts}
    vmax = max(values.values(), default=0.0)
    if vmax == 0.0:
        warnings.warn(
            f"choropleth for {metric.metric_id}: all district values are zero, "
            "emitting a single bin",
            stacklevel=2,
        )
    features = []
    for d in districts:
        value = values[d.district_id]
        features.append(
            {
                "type": "Feature",
                "geometry": _polygon_to_geojson(d.polygon),
                "properties": {
                    "district_id": d.district_id,
                    "name": d.name,
                    "metric_id": metric.metric_id,
                    "value": value,
                    "bin": bin_of(value, vmax, bins),
                },
            }
        )
    return {"type": "FeatureCollection", "features": features}
