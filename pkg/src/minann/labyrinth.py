"""Nested-offset labyrinth over a polygonal pair.

Geometry: a pair (P, Q) of symmetric convex polygons sandwiching the
circles of radii 1/3 and 2/3.  Near each polygon a band of nested
parallel rings is drawn, joined radially by division columns; walls
(rings plus alternately blocked column pieces) carve the band into thin
corridor arcs.  The arcs crossed by one column, together with that
column, form a comb; metric amplification on the combs is what blows up
intrinsic boundary distance.

Everything here is analytic: for a convex polygon the offset depth is
the minimum of edge-plane distances, ring polygons are exact parallel
offsets, columns are affine in depth, and corridor components are
determined by label arithmetic.  No rasterization is involved, so the
model stays exact at clearances far below any feasible mesh size.

Side/labels convention: each polygon carries 2N division columns labeled
1..2N with column N+i antipodal to column i.  Gap g (0-based, between
rings g and g+1) is blocked by even labels when g is even and by odd
labels when g is odd.  Each corridor arc is crossed by exactly one
non-blocking column, its owner; comb(i) = column i plus owned arcs.
Comb indices: P-side combs 1..2N, Q-side combs mapped to amplification
stages N+1..2N (see ``stage_sets``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, OffsetError
from .geometry import Polygon, point_segment_distance, regular_polygon

__all__ = ["PolygonalPair", "Labyrinth", "LabyrinthParams", "RegionTag",
           "make_polygonal_pair", "offset_pair", "build_labyrinth",
           "default_pair"]


# ---------------------------------------------------------------------------
# polygonal pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolygonalPair:
    """Validated pair: D_{1/3} in Int(Q) in D_{2/3} in Int(P) in D_1."""

    P: Polygon
    Q: Polygon

    def annulus_contains(self, points) -> np.ndarray:
        """Strict membership in T = Int(P) minus closed Int(Q)."""
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        inside_p = self.P.contains(pts)
        outside_q = ~self.Q.contains(pts)
        on_q = self.Q.distance_to_boundary(pts) < 1e-14
        return inside_p & outside_q & ~on_q


def make_polygonal_pair(P: Polygon, Q: Polygon,
                        symmetry_tol: float = 1e-9) -> PolygonalPair:
    """Validate all containment and symmetry clauses; name the violation."""
    checks = [
        ("P symmetric", P.is_symmetric(symmetry_tol)),
        ("Q symmetric", Q.is_symmetric(symmetry_tol)),
        ("closed disk of radius 1/3 inside Int(Q)", Q.inradius() > 1.0 / 3.0),
        ("closure of Int(Q) inside open disk of radius 2/3",
         Q.circumradius() < 2.0 / 3.0),
        ("closed disk of radius 2/3 inside Int(P)", P.inradius() > 2.0 / 3.0),
        ("closure of Int(P) inside the unit disk", P.circumradius() < 1.0),
    ]
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise GeometryError("polygonal pair validation failed: "
                            + "; ".join(failed))
    return PolygonalPair(P, Q)


def default_pair() -> PolygonalPair:
    """Default octagon pair (circumradii 0.95 and 0.45)."""
    return make_polygonal_pair(regular_polygon(8, 0.95),
                               regular_polygon(8, 0.45))


def offset_pair(pair: PolygonalPair, xi: float) -> PolygonalPair:
    """(P^xi, Q^xi): P moved inward, Q outward, so T^xi sits inside T."""
    if xi <= 0:
        raise ValueError("offset distance must be strictly positive")
    try:
        P2 = pair.P.offset_inward(xi)
        Q2 = pair.Q.offset_outward(xi)
    except OffsetError as exc:
        raise OffsetError(f"pair offset {xi} invalid: {exc}") from exc
    if not (Q2.circumradius() < P2.inradius()):
        raise OffsetError(f"pair offset {xi} closes the annulus")
    return PolygonalPair(P2, Q2)


# ---------------------------------------------------------------------------
# one band side (nested rings near P or near Q)
# ---------------------------------------------------------------------------

class BandSide:
    """Ring stack and division columns near one polygon of the pair.

    ``depth`` increases into the band: inward from P, outward from Q.
    """

    def __init__(self, polygon: Polygon, outward: bool, n_rings: int,
                 spacing: float, n_columns: int):
        self.base = polygon
        self.outward = outward
        self.n_rings = n_rings
        self.spacing = spacing
        self.depth_total = spacing * (n_rings - 1)
        self.n_columns = n_columns  # = 2N
        sign = -1.0 if outward else 1.0
        self.rings = [polygon if k == 0 else polygon._offset(sign * spacing * k)
                      for k in range(n_rings)]
        self._perims = np.asarray([r.perimeter() for r in self.rings])
        # edge plane data for the depth function (convex polygons only)
        vs = polygon.vertices
        dirs = np.roll(vs, -1) - vs
        units = dirs / np.abs(dirs)
        normals = 1j * units  # inward for CCW
        self._n = normals
        self._d = (vs.real * normals.real + vs.imag * normals.imag)
        self._verts = vs
        self._units = units
        self._edge_len = np.abs(dirs)
        # columns: label L (1..2N) at side i, fraction m/q with
        # L-1 = i*q + m;  endpoints on ring 0 and the deepest ring
        q = n_columns // polygon.n_sides
        self.divisions_per_side = q
        self._col_w0 = np.empty(n_columns, dtype=complex)
        self._col_wb = np.empty(n_columns, dtype=complex)
        deep = self.rings[-1].vertices
        for c in range(n_columns):
            i, m = divmod(c, q)
            t = m / q
            self._col_w0[c] = vs[i] + t * (vs[(i + 1) % len(vs)] - vs[i])
            self._col_wb[c] = deep[i] + t * (deep[(i + 1) % len(deep)] - deep[i])

    # -- coordinates -------------------------------------------------------
    def _edge_planes(self, pts) -> np.ndarray:
        """(n_pts, n_edges) signed distances to edge lines, positive inside."""
        return (pts.real[:, None] * self._n.real[None, :]
                + pts.imag[:, None] * self._n.imag[None, :]) - self._d[None, :]

    def depth(self, points) -> np.ndarray:
        """Signed offset depth; 0 on the base polygon, positive into the band.

        For convex polygons the parallel (miter) offset family is exactly
        the level sets of the min edge-plane distance, so this is exact.
        """
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        d = self._edge_planes(pts).min(axis=1)
        return -d if self.outward else d

    def column_coordinate(self, points) -> np.ndarray:
        """Continuous column coordinate in [0, 2N): label - 1 at columns."""
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        edge = self._edge_planes(pts).argmin(axis=1)
        a = self._verts[edge]
        u = self._units[edge]
        t = ((pts - a).real * u.real + (pts - a).imag * u.imag) / self._edge_len[edge]
        t = np.clip(t, 0.0, 1.0 - 1e-15)
        return (edge + t) * self.divisions_per_side

    def column_point(self, label: int, depth) -> np.ndarray:
        """Point of column ``label`` (1..2N) at the given depth(s)."""
        c = (int(label) - 1) % self.n_columns
        t = np.asarray(depth, dtype=float) / self.depth_total
        return self._col_w0[c] + t * (self._col_wb[c] - self._col_w0[c])

    def column_segment(self, label: int, d0: float, d1: float):
        return (complex(self.column_point(label, d0)),
                complex(self.column_point(label, d1)))

    def ring_point(self, lc, depth) -> np.ndarray:
        """Point at continuous column coordinate lc on the ring at depth.

        Linear between adjacent column points (inter-column intervals
        never cross polygon corners: corners are columns).
        """
        lc = np.asarray(lc, dtype=float) % self.n_columns
        c0 = np.floor(lc).astype(int)
        t = lc - c0
        d = np.asarray(depth, dtype=float)
        frac = d / self.depth_total
        w0a = self._col_w0[c0 % self.n_columns]
        wba = self._col_wb[c0 % self.n_columns]
        w0b = self._col_w0[(c0 + 1) % self.n_columns]
        wbb = self._col_wb[(c0 + 1) % self.n_columns]
        pa = w0a + frac * (wba - w0a)
        pb = w0b + frac * (wbb - w0b)
        return pa + t * (pb - pa)

    def min_side_length(self) -> float:
        return float(min(r.edge_lengths().min() for r in self.rings))

    def max_side_length(self) -> float:
        return float(max(r.edge_lengths().max() for r in self.rings))


# ---------------------------------------------------------------------------
# labyrinth
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabyrinthParams:
    """Scale overrides; None keeps the construction defaults.

    Defaults realize the full-scale law: 2N^2+1 rings per side at
    spacing 1/N^3 over band depth 2/N, clearance min(spacing/4, r1/N^2),
    fattening min(clearance/2, 1/(8 N^3)).  Desk-scale profiles override
    ring counts and band depth to keep multiplier degrees and mesh sizes
    tractable; every measured constant is reported against the same
    inequalities either way.
    """

    n_rings: int | None = None
    band_depth: float | None = None
    eta: float | None = None
    delta: float | None = None


@dataclass(frozen=True)
class RegionTag:
    """Classification of one point.

    kind: 'omega' (in a comb: corridor arc or on the column itself),
    'collar' (in the delta-fattening, off the comb), 'maze_free' (in a
    corridor component owned by no comb; unreachable for this
    construction, kept for contract completeness), 'band_free' (in the
    walls/moats of a band, outside every fattening), 'annulus' (in T off
    the bands), 'outside' (not in T).
    """

    kind: str
    index: int | None = None  # amplification stage 1..2N
    half: int | None = None   # 1 or 2 (antipodal halves)


class Labyrinth:
    def __init__(self, pair: PolygonalPair, N: int,
                 params: LabyrinthParams = LabyrinthParams()):
        s_p = pair.P.n_sides
        s_q = pair.Q.n_sides
        if N <= 0 or N % s_p or N % s_q:
            raise ValueError(f"N = {N} must be a positive multiple of both "
                             f"side counts ({s_p}, {s_q})")
        if not (pair.P.is_convex() and pair.Q.is_convex()):
            raise GeometryError("labyrinth construction requires convex "
                                "polygons (analytic offset-depth model)")
        self.pair = pair
        self.N = N
        self.params = params

        band = params.band_depth if params.band_depth is not None else 2.0 / N
        n_rings = params.n_rings if params.n_rings is not None else 2 * N * N + 1
        if n_rings < 3 or n_rings % 2 == 0:
            raise ValueError("ring count must be odd and >= 3 so gaps come "
                             "in blocked/unblocked pairs")
        spacing = band / (n_rings - 1)

        # containment guards: bands keep clear of the circle of radius 2/3
        if pair.P.inradius() - band <= 2.0 / 3.0:
            raise GeometryError(
                f"P-band of depth {band:.4g} reaches the circle of radius "
                f"2/3 (P inradius {pair.P.inradius():.4g}); increase N or "
                "shrink the band")
        q_outer = pair.Q.offset_outward(band)
        if q_outer.circumradius() >= 2.0 / 3.0:
            raise GeometryError("Q-band reaches the circle of radius 2/3")

        self.sides = {
            "P": BandSide(pair.P, outward=False, n_rings=n_rings,
                          spacing=spacing, n_columns=2 * N),
            "Q": BandSide(pair.Q, outward=True, n_rings=n_rings,
                          spacing=spacing, n_columns=2 * N),
        }
        self.n_rings = n_rings
        self.spacing = spacing
        self.band_depth = band

        # measured bounds over all ring polygons
        self.r1 = min(self.sides["P"].min_side_length(),
                      self.sides["Q"].min_side_length())
        self.r2 = max(self.sides["P"].max_side_length(),
                      self.sides["Q"].max_side_length())

        eta_default = min(spacing / 4.0, self.r1 / (N * N))
        self.eta = params.eta if params.eta is not None else eta_default
        if not (0 < self.eta < spacing / 2):
            raise GeometryError(f"clearance {self.eta:.4g} must sit in "
                                f"(0, spacing/2 = {spacing / 2:.4g})")
        delta_default = min(self.eta / 2.0, 1.0 / (8.0 * N ** 3))
        self.delta = params.delta if params.delta is not None else delta_default
        if not (0 < self.delta <= self.eta / 2):
            raise GeometryError("fattening must sit in (0, clearance/2]")

        self.r3 = self._measure_r3()

    # -- label arithmetic ----------------------------------------------------
    def blocking_parity(self, gap: int) -> int:
        """Parity of blocking labels in gap g: even g -> even labels."""
        return 0 if gap % 2 == 0 else 1

    def owner_label(self, gap: int, lc) -> np.ndarray:
        """Owner column label of the corridor interval at coordinate lc.

        Blocking labels b satisfy b % 2 == 0 for even gaps (labels are
        1-based).  The open interval between consecutive blocking labels
        contains exactly one non-blocking label: the owner.
        """
        lc = np.asarray(lc, dtype=float)
        two_n = 2 * self.N
        lab = lc + 1.0  # continuous label coordinate in [1, 2N+1)
        if self.blocking_parity(gap) == 0:
            b_left = 2.0 * np.floor(lab / 2.0)
        else:
            b_left = 2.0 * np.floor((lab - 1.0) / 2.0) + 1.0
        owner = (b_left + 1.0 - 1.0) % two_n + 1.0
        return owner.astype(int)

    def stage_of(self, side: str, label) -> tuple[np.ndarray, np.ndarray]:
        """(stage index 1..2N, half 1|2) of a comb on the given side.

        P-side combs feed stages 1..N, Q-side combs stages N+1..2N; the
        half distinguishes the two antipodal columns (label vs label+N).
        """
        label = np.asarray(label, dtype=int)
        N = self.N
        base = 0 if side == "P" else N
        idx = np.where(label <= N, label, label - N) + base
        half = np.where(label <= N, 1, 2)
        return idx, half

    def stage_sets(self, stage: int) -> list[tuple[str, int]]:
        """The two (side, column label) combs amplified at a stage."""
        N = self.N
        if not 1 <= stage <= 2 * N:
            raise ValueError(f"stage must be 1..{2 * N}")
        side = "P" if stage <= N else "Q"
        i = stage if stage <= N else stage - N
        return [(side, i), (side, i + N)]

    # -- classification ------------------------------------------------------
    def classify_points(self, points):
        """Vectorized classification.

        Returns a dict of arrays: kind (int code), stage, half, side
        (0 P / 1 Q / -1), depth, gap.  Codes: 0 outside, 1 annulus,
        2 band_free, 3 collar, 4 omega.
        """
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        n = len(pts)
        kind = np.zeros(n, dtype=int)
        stage = np.full(n, -1)
        half = np.full(n, -1)
        side_code = np.full(n, -1)
        depth_out = np.full(n, np.nan)
        gap_out = np.full(n, -1)

        in_t = self.pair.annulus_contains(pts)
        kind[in_t] = 1
        for s_i, side in enumerate(("P", "Q")):
            bs = self.sides[side]
            d = bs.depth(pts)
            sel = in_t & (d > 0) & (d < bs.depth_total)
            if not np.any(sel):
                continue
            idx = np.nonzero(sel)[0]
            res = self._classify_in_band(side, pts[idx], d[idx])
            kind[idx] = res["kind"]
            stage[idx] = res["stage"]
            half[idx] = res["half"]
            side_code[idx] = s_i
            depth_out[idx] = d[idx]
            gap_out[idx] = res["gap"]
        return {"kind": kind, "stage": stage, "half": half,
                "side": side_code, "depth": depth_out, "gap": gap_out}

    def _classify_in_band(self, side: str, pts, d):
        bs = self.sides[side]
        sp, eta = self.spacing, self.eta
        n = len(pts)
        g = np.clip((d // sp).astype(int), 0, bs.n_rings - 2)
        d_ring = np.minimum(d - g * sp, (g + 1) * sp - d)
        lc = bs.column_coordinate(pts)

        # distances to the blocking column pieces of the point's own gap
        d_block = np.full(n, np.inf)
        block_label = np.full(n, -1)
        parity = np.where(g % 2 == 0, 0, 1)
        lab = lc + 1.0
        for k in (-2, -1, 0, 1, 2, 3):
            cand = np.where(parity == 0,
                            2.0 * np.floor(lab / 2.0) + 2 * k,
                            2.0 * np.floor((lab - 1.0) / 2.0) + 1.0 + 2 * k)
            cand_idx = ((cand - 1) % (2 * self.N)).astype(int)
            a = bs._col_w0[cand_idx] + (g * sp / bs.depth_total) \
                * (bs._col_wb[cand_idx] - bs._col_w0[cand_idx])
            b = bs._col_w0[cand_idx] + ((g + 1) * sp / bs.depth_total) \
                * (bs._col_wb[cand_idx] - bs._col_w0[cand_idx])
            dist = point_segment_distance(pts, a, b)
            closer = dist < d_block
            d_block = np.where(closer, dist, d_block)
            block_label = np.where(closer, cand_idx + 1, block_label)

        dist_h = np.minimum(d_ring, d_block)
        in_omega_arc = dist_h >= eta

        owner = self._owner_vec(g, lc)
        # on the column segment itself (any column is part of its comb)
        d_own_col = self._distance_to_column(side, pts, None)
        on_column = d_own_col["dist"] < 1e-12 * max(1.0, bs.depth_total)

        kind = np.full(n, 2)
        stage = np.full(n, -1)
        half = np.full(n, -1)
        kind[in_omega_arc] = 4
        st, hf = self.stage_of(side, owner)
        stage[in_omega_arc] = st[in_omega_arc]
        half[in_omega_arc] = hf[in_omega_arc]
        if np.any(on_column & ~in_omega_arc):
            iw = np.nonzero(on_column & ~in_omega_arc)[0]
            kind[iw] = 4
            st2, hf2 = self.stage_of(side, d_own_col["label"][iw])
            stage[iw] = st2
            half[iw] = hf2

        # collar membership for the rest: within delta of some comb
        rest = np.nonzero(kind == 2)[0]
        if len(rest):
            dist, labels = self._comb_distances(side, pts[rest], d[rest],
                                                g[rest], lc[rest])
            near = dist < self.delta
            iw = rest[near]
            kind[iw] = 3
            st3, hf3 = self.stage_of(side, labels[near])
            stage[iw] = st3
            half[iw] = hf3
        return {"kind": kind, "stage": stage, "half": half, "gap": g}

    def _owner_vec(self, g, lc):
        two_n = 2 * self.N
        lab = lc + 1.0
        b_left = np.where(g % 2 == 0,
                          2.0 * np.floor(lab / 2.0),
                          2.0 * np.floor((lab - 1.0) / 2.0) + 1.0)
        return ((b_left) % two_n + 1).astype(int)

    def _distance_to_column(self, side, pts, labels=None):
        """Distance to the nearest full column segment (and its label)."""
        bs = self.sides[side]
        lc = bs.column_coordinate(pts)
        best = np.full(len(pts), np.inf)
        best_label = np.full(len(pts), -1)
        for k in (-1, 0, 1):
            cand = (np.round(lc) + k) % bs.n_columns
            ci = cand.astype(int)
            dist = point_segment_distance(pts, bs._col_w0[ci], bs._col_wb[ci])
            closer = dist < best
            best = np.where(closer, dist, best)
            best_label = np.where(closer, ci + 1, best_label)
        return {"dist": best, "label": best_label.astype(int)}

    def _comb_distances(self, side, pts, d, g, lc):
        """Distance to the nearest comb (column + owned arcs) and its label."""
        bs = self.sides[side]
        sp, eta = self.spacing, self.eta
        col = self._distance_to_column(side, pts, None)
        best = col["dist"]
        best_label = col["label"]
        # arcs of the point's own gap: nearest arc is the owner interval's
        owner = self._owner_vec(g, lc)
        d_lo = g * sp + eta
        d_hi = (g + 1) * sp - eta
        dd = np.maximum.reduce([np.zeros_like(d), d_lo - d, d - d_hi])
        # lateral shortfall: inside the interval the arc is overhead;
        # near the blocking columns the arc face sits eta away laterally
        lab = lc + 1.0
        b_left = np.where(g % 2 == 0, 2.0 * np.floor(lab / 2.0),
                          2.0 * np.floor((lab - 1.0) / 2.0) + 1.0)
        b_right = b_left + 2.0
        # convert label-lengths to arclength locally
        ring_here = self.ring_arc_scale(side, d)
        lat = np.minimum(lab - b_left, b_right - lab) * ring_here
        dl = np.maximum(0.0, eta - lat)
        d_arc = np.hypot(dd, dl)
        closer = d_arc < best
        best = np.where(closer, d_arc, best)
        best_label = np.where(closer, owner, best_label)
        return best, best_label.astype(int)

    def ring_arc_scale(self, side, depth) -> np.ndarray:
        """Arclength of one label unit at the given depth (approximate:
        uses the mean inter-column spacing of the nearest ring)."""
        bs = self.sides[side]
        k = np.clip(np.round(np.asarray(depth) / self.spacing).astype(int),
                    0, bs.n_rings - 1)
        return bs._perims[k] / bs.n_columns

    def classify_point(self, z: complex) -> RegionTag:
        res = self.classify_points([z])
        kind = int(res["kind"][0])
        names = {0: "outside", 1: "annulus", 2: "band_free", 3: "collar",
                 4: "omega"}
        stage = int(res["stage"][0])
        half = int(res["half"][0])
        return RegionTag(names[kind],
                         stage if stage > 0 else None,
                         half if half > 0 else None)

    # -- comb geometry -------------------------------------------------------
    def comb_arcs(self, side: str, label: int):
        """Arc descriptors (gap, lc_start, lc_end) owned by a column.

        lc values may run outside [0, 2N); ``ring_point`` wraps them.
        """
        out = []
        for g in range(self.n_rings - 1):
            if self.blocking_parity(g) == (0 if label % 2 == 0 else 1):
                continue  # column blocks this gap: no arc here
            # interval spans between the adjacent blocking labels
            out.append((g, float(label - 2), float(label)))
        return out

    def comb_polylines(self, side: str, label: int, include_column=True):
        """Polylines carrying the comb: the column plus arc centerlines.

        Arc centerlines run along the corridor mid-depth between the
        blocking columns (shrunk laterally by the clearance).
        """
        bs = self.sides[side]
        sp, eta = self.spacing, self.eta
        lines = []
        if include_column:
            lines.append(np.asarray(bs.column_segment(label, 0.0,
                                                      bs.depth_total)))
        for g, lc_a, lc_b in self.comb_arcs(side, label):
            d_mid = (g + 0.5) * sp
            scale = float(self.ring_arc_scale(side, np.asarray([d_mid]))[0])
            inset = eta / scale
            a = lc_a + inset
            b = lc_b - inset
            if b <= a:
                continue
            # walk integer label points between the clipped ends
            lcs = [a]
            k = np.floor(a) + 1
            while k < b:
                lcs.append(k)
                k += 1
            lcs.append(b)
            pts = bs.ring_point(np.asarray(lcs), d_mid)
            lines.append(pts)
        return lines

    def sample_comb(self, side: str, label: int, ds: float) -> np.ndarray:
        """Points on the comb at arclength step ds."""
        out = []
        for line in self.comb_polylines(side, label):
            out.append(_sample_polyline(line, ds))
        return np.concatenate(out) if out else np.empty(0, dtype=complex)

    def sample_stage(self, stage: int, ds: float) -> np.ndarray:
        """Points on omega_stage (both halves)."""
        parts = [self.sample_comb(side, lab, ds)
                 for side, lab in self.stage_sets(stage)]
        return np.concatenate(parts)

    def sample_collar_boundary(self, stage: int, ds: float) -> np.ndarray:
        """Points on the boundary of the delta-fattening of a stage."""
        delta = self.delta
        out = []
        for side, lab in self.stage_sets(stage):
            for line in self.comb_polylines(side, lab):
                seg_pts, seg_norm = _polyline_normals(line, ds)
                out.append(seg_pts + seg_norm * delta)
                out.append(seg_pts - seg_norm * delta)
                # end caps
                for end, prev in ((line[0], line[1]), (line[-1], line[-2])):
                    u = (end - prev) / abs(end - prev)
                    out.append(np.asarray([end + delta * u]))
        pts = np.concatenate([np.atleast_1d(p) for p in out])
        return pts[self.pair.annulus_contains(pts)]

    # -- measured constants ---------------------------------------------------
    def _measure_r3(self) -> float:
        """r3 with diam(fattened half-comb) <= r3 / N, measured exactly
        from comb extents."""
        worst = 0.0
        for side in ("P", "Q"):
            bs = self.sides[side]
            for label in range(1, 2 * self.N + 1):
                pts = []
                for line in self.comb_polylines(side, label):
                    pts.append(line)
                allp = np.concatenate(pts)
                diam = _set_diameter(allp) + 2 * self.delta
                worst = max(worst, diam)
        return worst * self.N

    def measured_constants(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "r3": self.r3,
                "eta": self.eta, "delta": self.delta,
                "spacing": self.spacing, "band_depth": self.band_depth,
                "n_rings": self.n_rings}

    def min_comb_gap_estimate(self) -> float:
        """Analytic minimum gap between distinct combs (= clearance)."""
        return self.eta

    # -- separation certificate ------------------------------------------------
    def verify_separation(self) -> dict:
        """Combinatorial crossing bound per ring pair.

        Between consecutive even rings a path avoiding corridor
        components must pass the blocked gaps at column slits of
        alternating parity; the lateral shuttle between adjacent
        opposite-parity columns costs at least the inter-column spacing
        minus the slit allowances.  Reports the per-ring-pair certified
        minimum and its comparison against r1/(2N).
        """
        out = {}
        for side in ("P", "Q"):
            bs = self.sides[side]
            pair_minima = []
            n_pairs = (self.n_rings - 1) // 2
            for p_idx in range(n_pairs):
                d_mid = (2 * p_idx + 1) * self.spacing
                # min adjacent column distance at this depth
                pts = np.asarray([bs.column_point(l, d_mid)
                                  for l in range(1, bs.n_columns + 1)])
                gaps = np.abs(np.roll(pts, -1) - pts)
                lateral = float(gaps.min()) - 2 * self.eta - 2 * self.delta
                pair_minima.append(max(lateral, 0.0))
            certified = float(np.sum(pair_minima))
            out[side] = {
                "ring_pairs": n_pairs,
                "per_pair_min": float(min(pair_minima)) if pair_minima else 0.0,
                "certified_euclidean_total": certified,
                "reference_r1_over_2N": self.r1 / (2 * self.N),
                "per_pair_beats_reference":
                    bool(min(pair_minima) >= self.r1 / (2 * self.N)),
            }
        return out

    # -- export -----------------------------------------------------------------
    def export_geometry(self, fh) -> None:
        """Layered text export: one primitive per line."""
        def emit(kind, index, pts):
            coords = " ".join(f"{p.real:.17g} {p.imag:.17g}" for p in pts)
            fh.write(f"{kind} {index} {coords}\n")

        emit("boundary", 0, np.append(self.pair.P.vertices,
                                      self.pair.P.vertices[0]))
        emit("boundary", 1, np.append(self.pair.Q.vertices,
                                      self.pair.Q.vertices[0]))
        for side in ("P", "Q"):
            bs = self.sides[side]
            for k, ring in enumerate(bs.rings):
                emit(f"ring-{side}", k, np.append(ring.vertices,
                                                  ring.vertices[0]))
            for label in range(1, bs.n_columns + 1):
                a, b = bs.column_segment(label, 0.0, bs.depth_total)
                emit(f"column-{side}", label, [a, b])
            for label in range(1, bs.n_columns + 1):
                for j, line in enumerate(self.comb_polylines(side, label,
                                                             include_column=False)):
                    emit(f"arc-{side}-{label}", j, line)


def build_labyrinth(pair: PolygonalPair, N: int,
                    params: LabyrinthParams = LabyrinthParams()) -> Labyrinth:
    return Labyrinth(pair, N, params)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _sample_polyline(line, ds: float) -> np.ndarray:
    line = np.asarray(line, dtype=complex)
    out = [line[:1]]
    for a, b in zip(line, line[1:]):
        seg = abs(b - a)
        n = max(1, int(np.ceil(seg / ds)))
        t = np.arange(1, n + 1) / n
        out.append(a + t * (b - a))
    return np.concatenate(out)


def _polyline_normals(line, ds: float):
    """Sample points and unit normals along a polyline."""
    line = np.asarray(line, dtype=complex)
    pts, nrm = [], []
    for a, b in zip(line, line[1:]):
        seg = abs(b - a)
        n = max(1, int(np.ceil(seg / ds)))
        t = (np.arange(n) + 0.5) / n
        p = a + t * (b - a)
        u = (b - a) / seg
        pts.append(p)
        nrm.append(np.full(n, 1j * u))
    return np.concatenate(pts), np.concatenate(nrm)


def _set_diameter(pts: np.ndarray) -> float:
    """Diameter via bounding box corners (exact up to sqrt(2) factor is
    not acceptable here, so use hull-free pairwise on the extremes)."""
    if len(pts) > 400:
        # extreme points in 16 directions bound the hull tightly
        dirs = np.exp(1j * np.arange(16) / 16 * 2 * np.pi)
        idx = set()
        for d in dirs:
            proj = pts.real * d.real + pts.imag * d.imag
            idx.add(int(np.argmax(proj)))
            idx.add(int(np.argmin(proj)))
        pts = pts[sorted(idx)]
    diff = np.abs(pts[:, None] - pts[None, :])
    return float(diff.max())
