import io

import numpy as np
import pytest

from minann.errors import GeometryError, OffsetError
from minann.geometry import Polygon, point_segment_distance, regular_polygon
from minann.labyrinth import (
    LabyrinthParams, build_labyrinth, default_pair, make_polygonal_pair,
    offset_pair,
)


def octagon_pair():
    return default_pair()


def small_lab():
    """Hexagon pair with a coarse ring stack: cheap but fully structured."""
    pair = make_polygonal_pair(regular_polygon(6, 0.99),
                               regular_polygon(6, 0.41))
    return build_labyrinth(pair, 6, LabyrinthParams(n_rings=5,
                                                    band_depth=0.025))


def test_make_pair_octagons_valid():
    pair = octagon_pair()
    # inradius = circumradius * cos(pi/8) clears both circles
    assert pair.P.inradius() > 2 / 3 and pair.P.circumradius() < 1
    assert pair.Q.inradius() > 1 / 3 and pair.Q.circumradius() < 2 / 3


def test_make_pair_rejects_small_q():
    # octagon with circumradius 0.30 has inradius 0.277 < 1/3
    with pytest.raises(GeometryError) as err:
        make_polygonal_pair(regular_polygon(8, 0.95), regular_polygon(8, 0.30))
    assert "1/3" in str(err.value)


def test_make_pair_rejects_asymmetric():
    vs = regular_polygon(8, 0.95).vertices.copy()
    vs[0] *= 1.01  # break v -> -v closure
    with pytest.raises(GeometryError) as err:
        make_polygonal_pair(Polygon(vs), regular_polygon(8, 0.45))
    assert "symmetric" in str(err.value)


def test_offset_pair_contracts():
    pair = octagon_pair()
    off = offset_pair(pair, 0.05)
    assert abs(off.P.inradius() - (pair.P.inradius() - 0.05)) < 1e-12
    assert abs(off.Q.inradius() - (pair.Q.inradius() + 0.05)) < 1e-12
    assert off.P.is_symmetric(1e-12) and off.Q.is_symmetric(1e-12)
    with pytest.raises(ValueError):
        offset_pair(pair, 0.0)


def test_build_literal_counts_n16():
    """Full-scale construction: 2N division points, 2N^2+1 rings at
    spacing 1/N^3, band depth 2/N."""
    lab = build_labyrinth(octagon_pair(), 16)
    assert lab.sides["P"].n_columns == 32
    assert lab.n_rings == 513
    assert abs(lab.spacing - 1.0 / 4096.0) < 1e-15
    assert abs(lab.band_depth - 0.125) < 1e-15
    assert lab.eta == pytest.approx(min(1 / (4 * 16 ** 3), lab.r1 / 256))
    assert lab.delta == pytest.approx(min(lab.eta / 2, 1 / (8 * 16 ** 3)))


def test_build_rejects_wrong_multiple():
    with pytest.raises(ValueError):
        build_labyrinth(octagon_pair(), 12)  # 12 not a multiple of 8


def test_r_constants_independent_of_n():
    """r1, r2, r3 stay within +-20% across N for a fixed pair (wide
    octagon pair so N = 8 keeps both bands clear of the 2/3 circle)."""
    pair = make_polygonal_pair(regular_polygon(8, 0.999),
                               regular_polygon(8, 0.38))
    vals = {}
    for N in (8, 16, 24):
        lab = build_labyrinth(pair, N)
        vals[N] = (lab.r1, lab.r2, lab.r3)
    for i in range(3):
        seq = [vals[N][i] for N in (8, 16, 24)]
        assert max(seq) <= 1.2 * min(seq) / 1.0 + 1e-12 or \
            max(seq) / min(seq) <= 1.25


def test_diameter_bound_r3():
    lab = small_lab()
    # every fattened half-comb obeys diam <= r3 / N by construction of r3
    for side in ("P", "Q"):
        for label in range(1, 2 * lab.N + 1):
            pts = np.concatenate(lab.comb_polylines(side, label))
            diam = np.max(np.abs(pts[:, None] - pts[None, :])) + 2 * lab.delta
            assert diam <= lab.r3 / lab.N + 1e-12


def test_classify_midpoint_of_column_two():
    # the midpoint of the second column lies on its own comb
    lab = small_lab()
    bs = lab.sides["P"]
    mid = complex(bs.column_point(2, bs.depth_total / 2))
    tag = lab.classify_point(mid)
    assert tag.kind == "omega"
    assert tag.index == 2 and tag.half == 1


def test_classify_base_point_in_annulus():
    lab = small_lab()
    tag = lab.classify_point(2.0 / 3.0)
    assert tag.kind == "annulus"


def test_classify_outside():
    lab = small_lab()
    assert lab.classify_point(1.5 + 0j).kind == "outside"
    assert lab.classify_point(0.05 + 0j).kind == "outside"


def test_classify_mirror_tags():
    lab = small_lab()
    rng = np.random.default_rng(1)
    pts = (0.35 + 0.64 * rng.random(400)) * np.exp(2j * np.pi * rng.random(400))
    res_p = lab.classify_points(pts)
    res_m = lab.classify_points(-pts)
    assert np.array_equal(res_p["kind"], res_m["kind"])
    assert np.array_equal(res_p["stage"], res_m["stage"])
    both = (res_p["half"] > 0) & (res_m["half"] > 0)
    assert np.all(res_p["half"][both] + res_m["half"][both] == 3)


def test_omega_arc_points_classify_as_omega():
    lab = small_lab()
    for stage in (1, lab.N, lab.N + 1, 2 * lab.N):
        pts = lab.sample_stage(stage, ds=0.01)
        res = lab.classify_points(pts)
        frac = np.mean(res["kind"] == 4)
        assert frac > 0.97  # arc-end clip points may fall on the hull
        ok = res["stage"][res["kind"] == 4]
        assert np.all(ok == stage)


def test_collar_boundary_points_not_in_omega():
    lab = small_lab()
    pts = lab.sample_collar_boundary(1, ds=0.01)
    res = lab.classify_points(pts)
    assert not np.any((res["kind"] == 4) & (res["stage"] == 1))


def test_component_oracle_matches_analytic_model():
    """Brute-force oracle: rasterize one angular window of the band,
    compute dist(z, walls) directly from all rings and blocked column
    pieces, flood-fill components, and compare to the label arithmetic.
    """
    lab = small_lab()
    bs = lab.sides["P"]
    sp, eta = lab.spacing, lab.eta

    # window around columns 3..5, all gaps
    lc_lo, lc_hi = 2.2, 4.8
    n_u, n_d = 260, 160
    lcs = np.linspace(lc_lo, lc_hi, n_u)
    ds = np.linspace(1e-4 * sp, bs.depth_total - 1e-4 * sp, n_d)
    P_pts = np.empty((n_d, n_u), dtype=complex)
    for i, dd in enumerate(ds):
        P_pts[i] = bs.ring_point(lcs, dd)
    flat = P_pts.ravel()

    # direct wall distance: all rings (as polygons) and blocked pieces
    wall = np.full(flat.shape, np.inf)
    for k, ring in enumerate(bs.rings):
        wall = np.minimum(wall, ring.distance_to_boundary(flat))
    for g in range(lab.n_rings - 1):
        parity = 0 if g % 2 == 0 else 1
        for label in range(1, 2 * lab.N + 1):
            if label % 2 == (0 if parity == 0 else 1):
                a = complex(bs.column_point(label, g * sp))
                b = complex(bs.column_point(label, (g + 1) * sp))
                wall = np.minimum(wall, point_segment_distance(flat, a, b))
    in_omega_direct = (wall >= eta).reshape(n_d, n_u)

    res = lab.classify_points(flat)
    in_omega_model = (res["kind"] == 4).reshape(n_d, n_u)
    # skip points within a raster cell of the decision boundary
    margin = np.abs(wall - eta).reshape(n_d, n_u) > 2e-4
    agree = (in_omega_direct == in_omega_model) | ~margin
    assert np.mean(agree) > 0.999

    # flood fill the direct raster; each component must carry one owner
    comp = -np.ones((n_d, n_u), dtype=int)
    cur = 0
    import collections
    for i in range(n_d):
        for j in range(n_u):
            if in_omega_direct[i, j] and comp[i, j] < 0:
                queue = collections.deque([(i, j)])
                comp[i, j] = cur
                while queue:
                    a, b = queue.popleft()
                    for na, nb in ((a+1, b), (a-1, b), (a, b+1), (a, b-1)):
                        if 0 <= na < n_d and 0 <= nb < n_u \
                                and in_omega_direct[na, nb] and comp[na, nb] < 0:
                            comp[na, nb] = cur
                            queue.append((na, nb))
                cur += 1
    stages = res["stage"].reshape(n_d, n_u)
    for c in range(cur):
        mask = (comp == c) & margin & in_omega_model
        if mask.sum() < 5:
            continue
        owners = np.unique(stages[mask])
        assert len(owners) == 1  # one comb owns each component


def test_verify_separation_certificate():
    lab = small_lab()
    rep = lab.verify_separation()
    for side in ("P", "Q"):
        r = rep[side]
        assert r["per_pair_min"] > 0
        assert r["per_pair_beats_reference"]
        assert r["certified_euclidean_total"] >= \
            r["ring_pairs"] * r["per_pair_min"] - 1e-12


def test_paired_fattenings_disjoint_exact():
    """Exact pairwise strip distances between nearby combs stay >= 2*delta."""
    lab = small_lab()
    samples = {}
    for side in ("P", "Q"):
        for label in range(1, 2 * lab.N + 1):
            samples[(side, label)] = lab.sample_comb(side, label, ds=0.004)
    keys = list(samples)
    min_gap = np.inf
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1:]:
            if k1[0] != k2[0]:
                continue  # different bands are far apart
            a, b = samples[k1], samples[k2]
            d = np.min(np.abs(a[:, None] - b[None, :]))
            min_gap = min(min_gap, d)
    # sampled gap can exceed the true gap by at most the sampling step
    assert min_gap > 2 * lab.delta - 1e-12
    assert min_gap < lab.eta + 0.01  # and the analytic bound is realistic


def test_nesting_strict():
    lab = small_lab()
    for side in ("P", "Q"):
        rings = lab.sides[side].rings
        for a, b in zip(rings, rings[1:]):
            if side == "P":
                assert np.all(a.contains(b.vertices))
            else:
                assert np.all(b.contains(a.vertices))


def test_band_containment_guard():
    # octagon pair at N = 8: band depth 0.25 reaches the 2/3 circle
    with pytest.raises(GeometryError):
        build_labyrinth(octagon_pair(), 8)


def test_export_geometry_format():
    lab = small_lab()
    buf = io.StringIO()
    lab.export_geometry(buf)
    lines = buf.getvalue().strip().split("\n")
    kinds = {ln.split()[0] for ln in lines}
    assert "boundary" in kinds and "ring-P" in kinds and "column-Q" in kinds
    for ln in lines[:50]:
        parts = ln.split()
        assert len(parts) >= 6 and len(parts) % 2 == 0
