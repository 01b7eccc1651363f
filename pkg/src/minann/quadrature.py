"""Polyline paths and adaptive Gauss-Legendre quadrature along them.

Integrands are holomorphic away from the origin, so fixed-order
Gauss-Legendre per segment converges fast; the error estimate is the
disagreement between the order-8 and order-16 rules, and segments are
split dyadically until the estimates agree to the requested tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import QuadratureError

__all__ = ["PolylinePath", "path_integral", "line_integral_real"]

# nodes/weights on [-1, 1]
_GL8 = np.polynomial.legendre.leggauss(8)
_GL16 = np.polynomial.legendre.leggauss(16)

_MAX_DEPTH = 24
_MAX_PANELS = 200_000


class PolylinePath:
    """Ordered complex vertices; each segment must avoid the origin.

    The segment-through-origin check is exact up to floating point: it
    rejects segments whose minimal distance to 0 vanishes.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = [complex(v) for v in vertices]
        if len(vs) < 2:
            raise ValueError("path needs at least 2 vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("consecutive path vertices must be distinct")
            if _segment_min_dist_to_origin(a, b) == 0.0:
                raise ValueError("path segment passes through the origin")
        self.vertices = vs

    def length(self) -> float:
        return float(sum(abs(b - a) for a, b in zip(self.vertices, self.vertices[1:])))

    def reversed(self) -> "PolylinePath":
        return PolylinePath(list(reversed(self.vertices)))

    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def winding_number(self, p: complex = 0j) -> float:
        """Winding of the (closed) path around p."""
        total = 0.0
        for a, b in zip(self.vertices, self.vertices[1:]):
            total += np.angle((b - p) / (a - p))
        return total / (2 * np.pi)

    @staticmethod
    def line(a, b) -> "PolylinePath":
        return PolylinePath([a, b])

    def __repr__(self):
        return f"PolylinePath({len(self.vertices)} vertices, length {self.length():.4g})"


def _segment_min_dist_to_origin(a: complex, b: complex) -> float:
    d = b - a
    t = -(a.real * d.real + a.imag * d.imag) / (abs(d) ** 2)
    t = min(1.0, max(0.0, t))
    return abs(a + t * d)


def _gl_segment(fn, a: complex, b: complex, rule):
    """Integral of fn over the straight segment a -> b with one GL panel.

    fn maps an ndarray of points to an (n, m) array (m components).
    """
    x, w = rule
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    pts = mid + half * x.astype(complex)
    vals = np.asarray(fn(pts))
    if vals.ndim == 1:
        vals = vals[:, None]
    return half * (w[:, None] * vals).sum(axis=0)


def path_integral(fn, path: PolylinePath, tol: float = 1e-10):
    """Adaptive integral of a complex-vector-valued fn along a polyline.

    Returns an ndarray with one complex entry per component of fn.
    Error control: per-panel disagreement between GL8 and GL16 must drop
    below a share of  tol * (1 + |result|);  panels are split dyadically
    otherwise.  Raises QuadratureError carrying the best estimate when
    the panel budget is exhausted.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    segs = list(zip(path.vertices, path.vertices[1:]))
    total = None
    total_err = 0.0
    panels = 0
    # first pass for the magnitude scale
    scale_probe = sum(_gl_segment(fn, a, b, _GL16) for a, b in segs)
    scale = 1.0 + float(np.max(np.abs(scale_probe)))
    budget_tol = tol * scale

    for a0, b0 in segs:
        stack = [(a0, b0, 0)]
        seg_len = abs(b0 - a0)
        while stack:
            a, b, depth = stack.pop()
            panels += 1
            if panels > _MAX_PANELS:
                raise QuadratureError(
                    "quadrature panel budget exhausted",
                    best=total, error=total_err)
            coarse = _gl_segment(fn, a, b, _GL8)
            fine = _gl_segment(fn, a, b, _GL16)
            err = float(np.max(np.abs(fine - coarse)))
            local_tol = budget_tol * max(abs(b - a) / seg_len, 1e-3) \
                / max(len(segs), 1)
            if err <= local_tol or depth >= _MAX_DEPTH:
                if depth >= _MAX_DEPTH and err > local_tol:
                    raise QuadratureError(
                        f"quadrature failed to converge (err ~ {err:.3g})",
                        best=total, error=err)
                total = fine if total is None else total + fine
                total_err += err
            else:
                m = 0.5 * (a + b)
                stack.append((a, m, depth + 1))
                stack.append((m, b, depth + 1))
    return total


def line_integral_real(fn_real, path: PolylinePath, tol: float = 1e-10) -> float:
    """Adaptive integral of a real scalar field against arclength |dz|.

    Used for metric curve lengths: integral of fn_real(z) |dz|.
    """
    def wrapped(pts):
        return np.asarray(fn_real(pts), dtype=complex)[:, None]

    total = 0.0
    for a, b in zip(path.vertices, path.vertices[1:]):
        # reparametrize so dz -> |dz|: integrate fn * |b-a|/(b-a) over segment
        unit = abs(b - a) / (b - a)
        val = path_integral(lambda p: wrapped(p) * unit, PolylinePath([a, b]), tol)
        total += float(np.real(val[0]))
    return total
