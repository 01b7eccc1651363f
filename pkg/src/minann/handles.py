"""Closed algebra of complex function handles on the punctured disk.

Deformation steps multiply the Weierstrass data by exponentials of
Laurent polynomials and re-express it in rotated frames.  Keeping every
intermediate as an expression tree (constants, Laurent polynomials,
linear combinations, products, quotients, exponentials) avoids any
re-fitting drift across steps: evaluation is exact composition.

All nodes evaluate vectorized on complex ndarrays.  A small per-batch
cache lets repeated sweeps over the same point set (metric fields,
immersion fields, verification sweeps) reuse subtree values.
"""

from __future__ import annotations

import itertools

import numpy as np

from .laurent import LaurentPolynomial

__all__ = ["Fn", "ConstFn", "LaurentFn", "SumFn", "ProdFn", "QuotFn",
           "ExpFn", "as_fn", "EvalBatch"]

_node_ids = itertools.count()


class EvalBatch:
    """Evaluation context memoizing subtree values for one point set."""

    def __init__(self, points):
        self.points = np.asarray(points, dtype=complex)
        self._cache = {}

    def eval(self, fn: "Fn"):
        hit = self._cache.get(fn._id)
        if hit is None:
            hit = fn._eval(self)
            self._cache[fn._id] = hit
        return hit


class Fn:
    """Base node.  Subclasses implement _eval(batch) -> ndarray."""

    __slots__ = ("_id",)

    def __init__(self):
        self._id = next(_node_ids)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        batch = EvalBatch(np.atleast_1d(z).ravel())
        out = batch.eval(self)
        return complex(out[0]) if scalar else out.reshape(z.shape)

    def _eval(self, batch):
        raise NotImplementedError

    # -- algebra ---------------------------------------------------------
    def __add__(self, other):
        return SumFn([(1.0, self), (1.0, as_fn(other))])

    def __sub__(self, other):
        return SumFn([(1.0, self), (-1.0, as_fn(other))])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return SumFn([(complex(other), self)])
        return ProdFn(self, as_fn(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return QuotFn(self, as_fn(other))

    def __neg__(self):
        return SumFn([(-1.0, self)])


class ConstFn(Fn):
    __slots__ = ("value",)

    def __init__(self, value):
        super().__init__()
        self.value = complex(value)

    def _eval(self, batch):
        return np.full(batch.points.shape, self.value, dtype=complex)


class LaurentFn(Fn):
    __slots__ = ("poly",)

    def __init__(self, poly: LaurentPolynomial):
        super().__init__()
        self.poly = poly

    def _eval(self, batch):
        return self.poly.eval(batch.points)


class SumFn(Fn):
    """Complex-linear combination sum_i a_i f_i; nested sums flatten."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        super().__init__()
        flat = []
        for a, f in terms:
            a = complex(a)
            if isinstance(f, SumFn):
                flat.extend((a * b, g) for b, g in f.terms)
            else:
                flat.append((a, f))
        self.terms = flat

    def _eval(self, batch):
        out = np.zeros(batch.points.shape, dtype=complex)
        for a, f in self.terms:
            out += a * batch.eval(f)
        return out


class ProdFn(Fn):
    __slots__ = ("left", "right")

    def __init__(self, left: Fn, right: Fn):
        super().__init__()
        self.left = left
        self.right = right

    def _eval(self, batch):
        return batch.eval(self.left) * batch.eval(self.right)


class QuotFn(Fn):
    __slots__ = ("num", "den")

    def __init__(self, num: Fn, den: Fn):
        super().__init__()
        self.num = num
        self.den = den

    def _eval(self, batch):
        return batch.eval(self.num) / batch.eval(self.den)


class ExpFn(Fn):
    __slots__ = ("inner",)

    def __init__(self, inner: Fn):
        super().__init__()
        self.inner = inner

    def _eval(self, batch):
        return np.exp(batch.eval(self.inner))


def as_fn(obj) -> Fn:
    if isinstance(obj, Fn):
        return obj
    if isinstance(obj, LaurentPolynomial):
        return LaurentFn(obj)
    if isinstance(obj, (int, float, complex)):
        return ConstFn(obj)
    raise TypeError(f"cannot lift {type(obj).__name__} to a function handle")
