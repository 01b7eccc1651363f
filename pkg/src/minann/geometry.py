"""Planar polygon primitives: containment, symmetry, parallel offsets.

Polygons are ordered complex vertex arrays, counterclockwise, closed
implicitly (last vertex connects back to the first).  Offsets move
every edge parallel to itself by the requested distance; joins are
mitered (limit 4, falling back to bevel), which for convex polygons and
small distances reproduces the exact parallel polygon.
"""

from __future__ import annotations

import numpy as np

from .errors import GeometryError, OffsetError

__all__ = ["Polygon", "regular_polygon", "segment_distance",
           "point_segment_distance"]

_MITER_LIMIT = 4.0


class Polygon:
    """Simple closed polygon, counterclockwise complex vertices."""

    __slots__ = ("vertices",)

    def __init__(self, vertices, validate: bool = True):
        vs = np.asarray([complex(v) for v in vertices], dtype=complex)
        if len(vs) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        if validate:
            if _signed_area(vs) <= 0:
                raise GeometryError("polygon must be counterclockwise")
            if not _is_simple(vs):
                raise GeometryError("polygon is self-intersecting")
        self.vertices = vs

    # -- basic measures ---------------------------------------------------
    @property
    def n_sides(self) -> int:
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return list(zip(vs, np.roll(vs, -1)))

    def edge_lengths(self) -> np.ndarray:
        vs = self.vertices
        return np.abs(np.roll(vs, -1) - vs)

    def perimeter(self) -> float:
        return float(self.edge_lengths().sum())

    def area(self) -> float:
        return float(_signed_area(self.vertices))

    def circumradius(self) -> float:
        return float(np.max(np.abs(self.vertices)))

    def inradius(self) -> float:
        """Min distance from the origin to an edge line segment."""
        vs = self.vertices
        return float(np.min(point_segment_distance(0j, vs, np.roll(vs, -1))))

    # -- predicates --------------------------------------------------------
    def is_symmetric(self, tol: float = 1e-9) -> bool:
        """Closed under v -> -v as a vertex set."""
        vs = self.vertices
        for v in vs:
            if np.min(np.abs(vs + v)) > tol:
                return False
        return True

    def contains(self, points) -> np.ndarray:
        """Vectorized strict interior test (crossing number)."""
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        x, y = pts.real, pts.imag
        vs = self.vertices
        x0, y0 = vs.real, vs.imag
        x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
        inside = np.zeros(pts.shape, dtype=bool)
        for j in range(len(vs)):
            cross = (y0[j] > y) != (y1[j] > y)
            # x-coordinate of the edge at height y
            with np.errstate(divide="ignore", invalid="ignore"):
                xin = (x1[j] - x0[j]) * (y - y0[j]) / (y1[j] - y0[j]) + x0[j]
            inside ^= cross & (x < xin)
        return inside

    def distance_to_boundary(self, points) -> np.ndarray:
        """Unsigned distance to the polygon curve."""
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        vs = self.vertices
        a, b = vs, np.roll(vs, -1)
        out = np.full(pts.shape, np.inf)
        for j in range(len(vs)):
            out = np.minimum(out, point_segment_distance(pts, a[j], b[j]))
        return out

    def is_convex(self, tol: float = 1e-12) -> bool:
        vs = self.vertices
        d = np.roll(vs, -1) - vs
        cross = (d.real * np.roll(d, -1).imag - d.imag * np.roll(d, -1).real)
        return bool(np.all(cross > -tol * np.abs(d) * np.abs(np.roll(d, -1))))

    # -- offsets -----------------------------------------------------------
    def offset_inward(self, distance: float) -> "Polygon":
        """Parallel polygon at the given distance toward the interior."""
        return self._offset(float(distance))

    def offset_outward(self, distance: float) -> "Polygon":
        return self._offset(-float(distance))

    def _offset(self, d: float) -> "Polygon":
        """Signed parallel offset: d > 0 shrinks (inward for CCW)."""
        vs = self.vertices
        n = len(vs)
        dirs = np.roll(vs, -1) - vs
        lens = np.abs(dirs)
        if np.any(lens == 0):
            raise GeometryError("degenerate polygon edge")
        units = dirs / lens
        normals = 1j * units  # inward for CCW
        new_pts = []
        for j in range(n):
            jp = (j - 1) % n
            p = _offset_join(vs[j], units[jp], normals[jp], units[j],
                             normals[j], d)
            new_pts.extend(p)
        try:
            out = Polygon(new_pts)
        except GeometryError as exc:
            raise OffsetError(f"offset by {d} collapsed the polygon") from exc
        if out.area() >= self.area() and d > 0:
            raise OffsetError(f"inward offset by {d} did not shrink")
        # every point of a genuine parallel offset sits at distance >= |d|
        # from the source boundary, on the correct side; inverted or
        # self-overlapped results fail this
        ovs = out.vertices
        samples = np.concatenate([ovs, 0.5 * (ovs + np.roll(ovs, -1))])
        dist = self.distance_to_boundary(samples)
        if np.min(dist) < abs(d) * (1 - 1e-9) - 1e-15:
            raise OffsetError(f"offset by {d} broke the parallel-distance "
                              f"invariant (min {np.min(dist):.3g})")
        side_ok = self.contains(samples) if d > 0 else ~self.contains(samples)
        if not np.all(side_ok):
            raise OffsetError(f"offset by {d} crossed the source polygon")
        return out

    def scaled(self, factor: float) -> "Polygon":
        return Polygon(self.vertices * float(factor))

    def __repr__(self):
        return (f"Polygon({self.n_sides} sides, R={self.circumradius():.4g}, "
                f"r={self.inradius():.4g})")


def _offset_join(vertex, u_prev, n_prev, u_next, n_next, d):
    """Offset vertex for two adjacent edges moved inward by d.

    Miter (line intersection) when the miter length is acceptable;
    bevel (two points) otherwise.
    """
    a_prev = vertex + n_prev * d
    a_next = vertex + n_next * d
    denom = u_prev.real * u_next.imag - u_prev.imag * u_next.real
    if abs(denom) < 1e-14:  # collinear edges
        return [a_next]
    # intersection of lines a_prev + t u_prev and a_next + s u_next
    rhs = a_next - a_prev
    t = (rhs.real * u_next.imag - rhs.imag * u_next.real) / denom
    miter = a_prev + t * u_prev
    if abs(miter - vertex) > _MITER_LIMIT * abs(d):
        return [a_prev, a_next]
    return [miter]


def regular_polygon(n_sides: int, circumradius: float,
                    phase: float = 0.0) -> Polygon:
    """Regular n-gon; even n gives a symmetric (v -> -v closed) polygon.

    For even n the second half of the vertex array is the exact
    float negation of the first, so symmetry holds bit-exactly.
    """
    if n_sides % 2 == 0:
        k = np.arange(n_sides // 2)
        half = circumradius * np.exp(1j * (2 * np.pi * k / n_sides + phase))
        vs = np.concatenate([half, -half])
    else:
        k = np.arange(n_sides)
        vs = circumradius * np.exp(1j * (2 * np.pi * k / n_sides + phase))
    return Polygon(vs)


def point_segment_distance(points, a, b) -> np.ndarray:
    """Distance from points to the segment [a, b]; broadcasts either side."""
    pts = np.asarray(points, dtype=complex)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = b - a
    dd = np.abs(d) ** 2
    dd = np.where(dd == 0, 1.0, dd)
    t = ((pts - a).real * d.real + (pts - a).imag * d.imag) / dd
    t = np.clip(t, 0.0, 1.0)
    return np.abs(a + t * d - pts)


def segment_distance(a0, a1, b0, b1) -> float:
    """Min distance between segments [a0,a1] and [b0,b1] (0 if crossing)."""
    if _segments_cross(a0, a1, b0, b1):
        return 0.0
    return float(min(
        point_segment_distance(a0, b0, b1),
        point_segment_distance(a1, b0, b1),
        point_segment_distance(b0, a0, a1),
        point_segment_distance(b1, a0, a1),
    ))


def _orient(a, b, c) -> float:
    return (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)


def _segments_cross(a0, a1, b0, b1) -> bool:
    d1 = _orient(b0, b1, a0)
    d2 = _orient(b0, b1, a1)
    d3 = _orient(a0, a1, b0)
    d4 = _orient(a0, a1, b1)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True
    return False


def _signed_area(vs: np.ndarray) -> float:
    x, y = vs.real, vs.imag
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _is_simple(vs: np.ndarray) -> bool:
    n = len(vs)
    segs = list(zip(vs, np.roll(vs, -1)))
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent segments share an endpoint
            if _segments_cross(segs[i][0], segs[i][1], segs[j][0], segs[j][1]):
                return False
    return True
