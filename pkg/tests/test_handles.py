import numpy as np

from minann.handles import ConstFn, EvalBatch, ExpFn, LaurentFn, SumFn, as_fn
from minann.laurent import LaurentPolynomial


def test_algebra_matches_pointwise():
    rng = np.random.default_rng(11)
    z = 0.4 + rng.random(20) * 0.5 + 1j * (rng.random(20) - 0.5)
    p = LaurentPolynomial({-1: 1j, 2: 0.5})
    q = LaurentPolynomial({0: 2, 1: -1})
    f = (LaurentFn(p) * LaurentFn(q) + ConstFn(3)) / LaurentFn(q) - 2j * LaurentFn(p)
    direct = (p(z) * q(z) + 3) / q(z) - 2j * p(z)
    assert np.max(np.abs(f(z) - direct)) < 1e-12 * np.max(1 + np.abs(direct))


def test_exp_of_even_laurent_is_sign_exact():
    mu = LaurentPolynomial({-2: 0.3j, 0: 1.0, 4: -0.2})
    h = ExpFn(LaurentFn(mu))
    z = np.exp(1j * np.linspace(0.1, 3.0, 50)) * 0.7
    assert np.array_equal(h(z), h(-z))


def test_sum_flattening():
    a = ConstFn(1.0)
    b = ConstFn(2.0)
    s = SumFn([(2.0, SumFn([(3.0, a), (1.0, b)])), (1.0, b)])
    assert len(s.terms) == 3
    assert abs(s(0.5) - 12.0) < 1e-15  # 2*(3*1 + 2) + 2


def test_batch_caching_counts_evaluations():
    calls = {"n": 0}

    class Counting(ConstFn):
        def _eval(self, batch):
            calls["n"] += 1
            return super()._eval(batch)

    base = Counting(2.0)
    expr = base * base + base
    batch = EvalBatch(np.array([1.0 + 0j, 2.0]))
    batch.eval(as_fn(expr))
    assert calls["n"] == 1  # shared subtree evaluated once per batch


def test_scalar_call():
    f = LaurentFn(LaurentPolynomial({1: 1})) * 2.0
    out = f(0.5j)
    assert isinstance(out, complex)
    assert abs(out - 1j) < 1e-15
