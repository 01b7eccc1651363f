"""Weierstrass representation machinery.

A conformal minimal immersion X of the punctured disk is encoded by a
holomorphic f and meromorphic g through

    phi1 = f/2 (1 - g^2),  phi2 = i f/2 (1 + g^2),  phi3 = f g,

with X(z) = Re int_{z0}^z phi(w) dw + c and conformal factor
lambda = |f|(1+|g|^2)/2 = |phi|/sqrt(2).  g is the stereographic
projection of the Gauss map (projection from the north pole here, so
g = 0 maps to the south pole).

A phi-triple is "square-symmetric" when every component is a function
of z^2; then phi(z) = phi(-z), X(z) + X(-z) is constant, and loops
around the puncture carry no real periods.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, PathRoutingError
from .handles import ConstFn, EvalBatch, Fn, SumFn, as_fn
from .quadrature import PolylinePath, path_integral

__all__ = ["PhiTriple", "WeierstrassData", "phi_from_fg", "fg_from_phi",
           "fg_handles_from_phi", "immerse", "conformal_factor", "gauss_map",
           "is_z2_type", "symmetry_defect", "period_defect",
           "symmetric_polar_grid", "PoleOfGError"]


class PoleOfGError(DomainError):
    """f = phi1 - i phi2 vanishes at the probe: g has a pole there."""


@dataclass(frozen=True)
class PhiTriple:
    """Three complex function handles on the punctured disk."""

    phi1: Fn
    phi2: Fn
    phi3: Fn
    z2type: bool = False

    def components(self):
        return (self.phi1, self.phi2, self.phi3)

    def eval(self, points):
        """Stacked evaluation; returns (3, n) complex array."""
        batch = EvalBatch(np.atleast_1d(np.asarray(points, dtype=complex)).ravel())
        return np.stack([batch.eval(c) for c in self.components()])

    def norm(self, points):
        """Euclidean norm ||phi|| per point."""
        v = self.eval(points)
        return np.sqrt((np.abs(v) ** 2).sum(axis=0))

    def conformality_residual(self, points):
        """|phi1^2+phi2^2+phi3^2| / ||phi||^2 per point (0 for valid data)."""
        v = self.eval(points)
        num = np.abs((v ** 2).sum(axis=0))
        den = (np.abs(v) ** 2).sum(axis=0)
        return num / np.where(den == 0, 1.0, den)

    def rotated(self, matrix) -> "PhiTriple":
        """Apply a real 3x3 matrix componentwise: phi'_i = sum_j M_ij phi_j."""
        M = np.asarray(matrix, dtype=float)
        comps = self.components()
        new = [SumFn([(M[i, j], comps[j]) for j in range(3)]) for i in range(3)]
        return PhiTriple(*new, z2type=self.z2type)


@dataclass(frozen=True)
class WeierstrassData:
    """Immersion data: (f, g) handles, derived phi, base point, translation.

    ``clear_radius`` is the radius of the forbidden central region for
    integration paths (the inner-hole circumradius when working on an
    annulus); 0 means only the origin itself is avoided.
    """

    f: Fn
    g: Fn
    phi: PhiTriple
    base_point: complex = 2.0 / 3.0
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))
    clear_radius: float = 0.0

    @staticmethod
    def from_fg(f, g, base_point=2.0 / 3.0, translation=None,
                z2type=False, clear_radius=0.0) -> "WeierstrassData":
        f = as_fn(f)
        g = as_fn(g)
        trip = phi_from_fg_handles(f, g, z2type=z2type)
        c = np.zeros(3) if translation is None else np.asarray(translation, float)
        return WeierstrassData(f, g, trip, complex(base_point), c, clear_radius)

    @staticmethod
    def flat(a: float = 5.0, base_point=2.0 / 3.0) -> "WeierstrassData":
        """Planar immersion u+iv -> a/2 (u, -v, 0): f = a, g = 0."""
        c = np.array([a / 2 * (2.0 / 3.0), 0.0, 0.0]) if base_point == 2.0 / 3.0 \
            else np.array([a / 2 * np.real(base_point), -a / 2 * np.imag(base_point), 0.0])
        return WeierstrassData.from_fg(ConstFn(a), ConstFn(0.0),
                                       base_point=base_point, translation=c,
                                       z2type=True)

    def with_translation(self, c) -> "WeierstrassData":
        return replace(self, translation=np.asarray(c, float))

    def lambda_values(self, points):
        """Conformal factor at points via ||phi||/sqrt(2) (pole-safe)."""
        return self.phi.norm(points) / np.sqrt(2.0)


def phi_from_fg_handles(f: Fn, g: Fn, z2type=False) -> PhiTriple:
    g2 = g * g
    fg2 = f * g2
    phi1 = SumFn([(0.5, f), (-0.5, fg2)])
    phi2 = SumFn([(0.5j, f), (0.5j, fg2)])
    phi3 = f * g
    return PhiTriple(phi1, phi2, phi3, z2type=z2type)


def phi_from_fg(data: WeierstrassData) -> PhiTriple:
    """The phi-triple induced by the data's (f, g)."""
    return phi_from_fg_handles(data.f, data.g, z2type=data.phi.z2type)


def fg_from_phi(phi: PhiTriple, probe: complex, pole_rtol: float = 1e-13):
    """Recover (f, g) values at a probe: f = phi1 - i phi2, g = phi3/f.

    Raises PoleOfGError when the denominator vanishes relative to the
    local phi magnitude (g has a pole; f carries a double zero there).
    """
    v = phi.eval([probe])[:, 0]
    fval = v[0] - 1j * v[1]
    scale = float(np.sqrt((np.abs(v) ** 2).sum()))
    if abs(fval) <= pole_rtol * max(scale, 1.0):
        raise PoleOfGError(f"phi1 - i phi2 vanishes at probe {probe}")
    return fval, v[2] / fval


def fg_handles_from_phi(phi: PhiTriple):
    """(f, g) as handles: f = phi1 - i phi2, g = phi3 / f."""
    f = SumFn([(1.0, phi.phi1), (-1j, phi.phi2)])
    g = phi.phi3 / f
    return f, g


def route_path(base: complex, z: complex, clear_radius: float = 0.0,
               arc_segments: int = 24) -> PolylinePath:
    """Deterministic polyline from base to z avoiding the central hole.

    Straight when the segment clears the hole; otherwise walk a
    polygonal arc at the base radius (shorter angular direction, ties
    counterclockwise), then a radial leg.
    """
    if z == base:
        raise ValueError("empty path")
    if abs(z) <= clear_radius:
        raise PathRoutingError(f"target {z} inside the forbidden radius "
                               f"{clear_radius}")
    a, b = complex(base), complex(z)
    d = b - a
    t = -(a.real * d.real + a.imag * d.imag) / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    min_dist = abs(a + t * d)
    if min_dist > clear_radius and min_dist > 0:
        return PolylinePath([a, b])
    r0 = max(abs(a), clear_radius * 1.05)
    th0, th1 = np.angle(a), np.angle(b)
    dth = (th1 - th0 + np.pi) % (2 * np.pi) - np.pi
    if dth == -np.pi:
        dth = np.pi
    n = max(2, int(np.ceil(abs(dth) / (2 * np.pi) * arc_segments)))
    arc = [r0 * np.exp(1j * (th0 + dth * k / n)) for k in range(1, n + 1)]
    verts = [a] + arc
    if verts[-1] != b:
        verts.append(b)
    return PolylinePath(verts)


def immerse(data: WeierstrassData, z: complex, tol: float = 1e-10,
            path: PolylinePath | None = None) -> np.ndarray:
    """X(z) = Re int_{base}^z phi(w) dw + c as a real 3-vector."""
    if z == data.base_point:
        return data.translation.copy()
    if path is None:
        path = route_path(data.base_point, z, data.clear_radius)
    integral = path_integral(lambda pts: data.phi.eval(pts).T, path, tol)
    return np.real(integral) + data.translation


def conformal_factor(data: WeierstrassData, z: complex) -> float:
    """lambda(z) = |f|(1+|g|^2)/2, via ||phi||/sqrt(2) at poles of g."""
    try:
        fv = complex(data.f(z))
        gv = complex(data.g(z))
        if np.isfinite(gv.real) and np.isfinite(gv.imag):
            return 0.5 * abs(fv) * (1.0 + abs(gv) ** 2)
    except ZeroDivisionError:
        pass
    return float(data.lambda_values([z])[0])


def gauss_map(data: WeierstrassData, z: complex) -> np.ndarray:
    """Unit normal: inverse stereographic image of g(z) from (0,0,1).

    g = 0 maps to the south pole; a pole of g maps to the north pole.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        gv = complex(data.g(z))
    if not (np.isfinite(gv.real) and np.isfinite(gv.imag)):
        return np.array([0.0, 0.0, 1.0])
    denom = 1.0 + abs(gv) ** 2
    return np.array([2 * gv.real, 2 * gv.imag, abs(gv) ** 2 - 1.0]) / denom


def gauss_values(phi: PhiTriple, points) -> np.ndarray:
    """Vectorized Gauss map from a phi-triple; returns (n, 3) unit rows.

    Uses n = (2 Re g, 2 Im g, |g|^2-1)/(1+|g|^2) written in terms of
    f = phi1 - i phi2 and phi3 so poles of g come out as the north pole.
    """
    v = phi.eval(points)
    fv = v[0] - 1j * v[1]
    p3 = v[2]
    den = np.abs(fv) ** 2 + np.abs(p3) ** 2
    den = np.where(den == 0, 1.0, den)
    w = np.conj(fv) * p3
    out = np.stack([2 * w.real, 2 * w.imag,
                    np.abs(p3) ** 2 - np.abs(fv) ** 2]) / den
    return out.T


def is_z2_type(phi: PhiTriple, probes, tol: float = 1e-10) -> bool:
    """True iff phi(z) = phi(-z) on the probes within relative tol.

    Probes must be a symmetric set; both signs are evaluated here so any
    set works, but symmetric grids keep the test meaningful.
    """
    pts = np.atleast_1d(np.asarray(probes, dtype=complex))
    vp = phi.eval(pts)
    vm = phi.eval(-pts)
    diff = np.sqrt((np.abs(vp - vm) ** 2).sum(axis=0))
    norm = np.sqrt((np.abs(vp) ** 2).sum(axis=0))
    return bool(np.all(diff <= tol * (1.0 + norm)))


def symmetry_defect(data: WeierstrassData, probes, tol: float = 1e-10):
    """S(X) = X(z) + X(-z) averaged over probes, plus the max spread.

    For square-symmetric data S is constant; the spread diagnoses how
    far the numerics (or non-symmetric data) deviate from constancy.
    Returns (mean S as 3-vector, max deviation from the mean).
    """
    pts = np.atleast_1d(np.asarray(probes, dtype=complex))
    vals = []
    for z in pts:
        xp = immerse(data, complex(z), tol)
        xm = immerse(data, complex(-z), tol)
        vals.append(xp + xm)
    vals = np.asarray(vals)
    mean = vals.mean(axis=0)
    spread = float(np.max(np.linalg.norm(vals - mean, axis=1))) if len(vals) else 0.0
    return mean, spread


def period_defect(phi: PhiTriple, loop: PolylinePath, tol: float = 1e-10):
    """Re of the loop integral of phi (must vanish for valid data).

    The loop must be closed and wind exactly once around the origin.
    Returns (real part, imaginary part) as two 3-vectors; the imaginary
    part is a diagnostic (residue content).
    """
    if not loop.is_closed():
        raise ValueError("period loop must be closed")
    w = loop.winding_number(0j)
    if abs(abs(w) - 1.0) > 1e-9:
        raise ValueError(f"loop must wind once around 0 (got {w:.3g})")
    integral = path_integral(lambda pts: phi.eval(pts).T, loop, tol)
    return np.real(integral), np.imag(integral)


def square_loop(radius: float) -> PolylinePath:
    r = float(radius)
    return PolylinePath([r, r * 1j, -r, -r * 1j, r])


def symmetric_polar_grid(r_in: float, r_out: float, n_r: int = 64,
                         n_theta: int = 64) -> np.ndarray:
    """Polar probe grid on an annulus, closed under z -> -z (even n_theta)."""
    if n_theta % 2:
        raise ValueError("n_theta must be even for a symmetric grid")
    radii = np.linspace(r_in, r_out, n_r)
    angles = np.arange(n_theta) * (2 * np.pi / n_theta)
    grid = radii[:, None] * np.exp(1j * angles)[None, :]
    return grid.ravel()
