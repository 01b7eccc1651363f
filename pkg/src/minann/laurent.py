"""Laurent polynomials and least-squares fitting on complex sample sets.

A Laurent polynomial is a finite sum  p(z) = sum_k c_k z^k  with integer
exponents of either sign.  Negative exponents make z = 0 a pole, so
evaluation there is rejected.  These are the workhorse objects for all
holomorphic data in the engine: multiplier exponents, fitted
approximants, and test integrands.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, IllConditionedFitError

__all__ = ["LaurentPolynomial", "laurent_fit", "FitResult"]


class LaurentPolynomial:
    """Finite Laurent polynomial sum_k c_k z^k, k_min <= k <= k_max.

    Immutable after construction.  Evaluation splits into the
    nonnegative part (Horner in z) and the negative part (Horner in 1/z)
    so both halves are numerically stable on annuli.
    """

    __slots__ = ("_coeffs", "k_min", "k_max")

    def __init__(self, coefficients):
        coeffs = {int(k): complex(c) for k, c in dict(coefficients).items()
                  if c != 0}
        if not coeffs:
            coeffs = {0: 0j}
        self._coeffs = coeffs
        self.k_min = min(coeffs)
        self.k_max = max(coeffs)

    @property
    def coefficients(self):
        return dict(self._coeffs)

    def coefficient(self, k: int) -> complex:
        return self._coeffs.get(int(k), 0j)

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self._coeffs == other._coeffs)

    def __repr__(self):
        terms = ", ".join(f"{k}: {c:.6g}" for k, c in sorted(self._coeffs.items()))
        return f"LaurentPolynomial({{{terms}}})"

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial({0: other})
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0j) + c
        return LaurentPolynomial(out)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial({k: c * other for k, c in self._coeffs.items()})
        out = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0j) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial({0: other})
        return self + (-other)

    def compose_square(self) -> "LaurentPolynomial":
        """Return q with q(z) = p(z^2); exponents double."""
        return LaurentPolynomial({2 * k: c for k, c in self._coeffs.items()})

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial({k - 1: k * c for k, c in self._coeffs.items()
                                  if k != 0})

    def __call__(self, z):
        return self.eval(z)

    def _stride(self) -> int:
        """gcd of the nonzero exponents; lets p(z) = q(z^g) evaluate in z^g."""
        g = 0
        for k in self._coeffs:
            g = np.gcd(g, abs(k))
            if g == 1:
                return 1
        return max(int(g), 1)

    def eval(self, z):
        """Evaluate at a complex scalar or ndarray.

        Raises DomainError when z = 0 occurs and negative exponents are
        present.  Polynomials whose exponents share a common stride g are
        evaluated in z^g; for g = 2 this makes p(z) == p(-z) bit-exact.
        """
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        zf = np.atleast_1d(z).ravel()
        if self.k_min < 0 and np.any(zf == 0):
            raise DomainError("Laurent polynomial with negative exponents "
                              "evaluated at z = 0")
        g = self._stride()
        if g == 2:
            base = zf * zf
        elif g > 1:
            base = zf ** g
        else:
            base = zf
        coeffs = {k // g: c for k, c in self._coeffs.items()}
        kmin, kmax = min(coeffs), max(coeffs)
        out = np.zeros_like(base)
        if kmax >= 0:
            cs = np.zeros(kmax + 1, dtype=complex)
            for k, c in coeffs.items():
                if k >= 0:
                    cs[k] = c
            acc = np.full_like(base, cs[kmax])
            for k in range(kmax - 1, -1, -1):
                acc *= base
                if cs[k] != 0:
                    acc += cs[k]
            out += acc
        if kmin < 0:
            w = 1.0 / base
            cs = np.zeros(-kmin + 1, dtype=complex)
            for k, c in coeffs.items():
                if k < 0:
                    cs[-k] = c
            acc = np.full_like(base, cs[-kmin])
            for j in range(-kmin - 1, 0, -1):
                acc *= w
                if cs[j] != 0:
                    acc += cs[j]
            acc *= w
            out += acc
        return complex(out[0]) if scalar else out.reshape(z.shape)


def laurent_eval(p: LaurentPolynomial, z):
    """Functional alias for ``p.eval(z)``."""
    return p.eval(z)


class FitResult:
    """Outcome of a Laurent least-squares fit."""

    __slots__ = ("polynomial", "residual", "sup_residual", "condition")

    def __init__(self, polynomial, residual, sup_residual, condition):
        self.polynomial = polynomial
        self.residual = residual
        self.sup_residual = sup_residual
        self.condition = condition


def _design_matrix(points, k_min, k_max):
    """Column-scaled Vandermonde matrix for exponents k_min..k_max.

    Each column z^k is scaled by 1/max|z^k| over the samples so the
    normal equations stay tractable on annuli; scales are returned so
    coefficients can be unscaled.
    """
    ks = np.arange(k_min, k_max + 1)
    logs = np.log(np.abs(points))
    # |z^k| = exp(k*log|z|); build via exponent arithmetic to avoid overflow
    log_mag = np.outer(logs, ks)
    phase = np.exp(1j * np.outer(np.angle(points), ks))
    col_log_max = log_mag.max(axis=0)
    A = np.exp(log_mag - col_log_max[None, :]) * phase
    return A, ks, col_log_max


def laurent_fit(samples, k_min: int, k_max: int,
                weights=None, cond_threshold: float = 1e8) -> FitResult:
    """Least-squares Laurent fit over the basis {z^k : k_min <= k <= k_max}.

    ``samples`` is a sequence of (point, target) pairs with nonzero,
    pairwise-distinct points; the number of samples must be at least the
    number of basis exponents.  Solves the diagonally scaled normal
    equations, escalating to an SVD-based rank-revealing solve when the
    condition estimate exceeds ``cond_threshold``.  Raises
    IllConditionedFitError when even the escalated solve is untrustable.
    """
    pts = np.asarray([s[0] for s in samples], dtype=complex)
    tgt = np.asarray([s[1] for s in samples], dtype=complex)
    if np.any(pts == 0):
        raise DomainError("fit sample at z = 0")
    n_basis = k_max - k_min + 1
    if len(pts) < n_basis:
        raise ValueError(f"need >= {n_basis} samples, got {len(pts)}")
    if len(np.unique(pts)) != len(pts):
        raise ValueError("fit sample points must be pairwise distinct")

    A, ks, col_log_max = _design_matrix(pts, k_min, k_max)
    if weights is not None:
        w = np.sqrt(np.asarray(weights, dtype=float))
        Aw = A * w[:, None]
        tw = tgt * w
    else:
        Aw, tw = A, tgt

    G = Aw.conj().T @ Aw
    d = np.sqrt(np.abs(np.diag(G)))
    d[d == 0] = 1.0
    Gs = G / np.outer(d, d)
    cond = float(np.linalg.cond(Gs))
    if cond <= cond_threshold:
        rhs = (Aw.conj().T @ tw) / d
        try:
            ys = np.linalg.solve(Gs, rhs)
        except np.linalg.LinAlgError as exc:
            raise IllConditionedFitError(
                f"normal equations singular (cond ~ {cond:.3g})",
                condition=cond) from exc
        coeffs_scaled = ys / d
    else:
        # rank-revealing escalation
        coeffs_scaled, _, rank, sv = np.linalg.lstsq(Aw, tw, rcond=None)
        if rank < n_basis or not np.all(np.isfinite(coeffs_scaled)):
            raise IllConditionedFitError(
                f"rank-deficient fit: rank {rank} < {n_basis} basis "
                f"functions (cond ~ {cond:.3g})", condition=cond)

    resid_vec = A @ coeffs_scaled - tgt
    coeffs = coeffs_scaled * np.exp(-col_log_max)
    poly = LaurentPolynomial({int(k): c for k, c in zip(ks, coeffs)})
    residual = float(np.linalg.norm(resid_vec))
    sup_residual = float(np.max(np.abs(resid_vec))) if len(resid_vec) else 0.0
    return FitResult(poly, residual, sup_residual, cond)
