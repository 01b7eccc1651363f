import numpy as np
import pytest

from minann.laurent import LaurentPolynomial
from minann.quadrature import PolylinePath, line_integral_real, path_integral


def vec(fn1):
    """Lift a scalar integrand to a 3-component one in the first slot."""
    def fn(pts):
        out = np.zeros((len(pts), 3), dtype=complex)
        out[:, 0] = fn1(pts)
        return out
    return fn


def test_path_validation():
    with pytest.raises(ValueError):
        PolylinePath([1.0])
    with pytest.raises(ValueError):
        PolylinePath([1.0, 1.0])
    with pytest.raises(ValueError):
        PolylinePath([-1.0, 1.0])  # through the origin


def test_length_and_reverse():
    p = PolylinePath([0.5, 0.5 + 1j, 1.5 + 1j])
    assert abs(p.length() - 2.0) < 1e-15
    assert p.reversed().vertices == list(reversed(p.vertices))


def test_constant_integrand():
    path = PolylinePath([0.5, 0.7])
    out = path_integral(vec(lambda p: np.ones(len(p))), path, 1e-12)
    assert np.allclose(out, [0.2, 0, 0], atol=1e-13)


def test_residue_loop():
    # integral of dz/z around a square loop enclosing 0 is 2 pi i
    sq = PolylinePath([0.5, 0.5j, -0.5, -0.5j, 0.5])
    out = path_integral(vec(lambda p: 1.0 / p), sq, 1e-11)
    assert abs(out[0] - 2j * np.pi) < 1e-9
    assert abs(out[1]) < 1e-13 and abs(out[2]) < 1e-13


def test_antiderivative():
    path = PolylinePath([0.5, 0.5j])
    out = path_integral(vec(lambda p: p), path, 1e-12)
    assert abs(out[0] - (-0.25)) < 1e-14


def test_linearity_random_laurent():
    rng = np.random.default_rng(3)
    path = PolylinePath([0.5, 0.6 + 0.3j, 0.2 + 0.7j])
    for _ in range(5):
        p = LaurentPolynomial({int(k): complex(c, d) for k, c, d in zip(
            rng.integers(-4, 5, 4), rng.normal(size=4), rng.normal(size=4))})
        q = LaurentPolynomial({int(k): complex(c, d) for k, c, d in zip(
            rng.integers(-4, 5, 4), rng.normal(size=4), rng.normal(size=4))})
        a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        lhs = path_integral(vec(lambda z: a * p(z) + b * q(z)), path, 1e-12)
        rhs = (a * path_integral(vec(p), path, 1e-12)
               + b * path_integral(vec(q), path, 1e-12))
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_concatenation():
    p1 = PolylinePath([0.5, 0.6 + 0.4j])
    p2 = PolylinePath([0.6 + 0.4j, 0.9j])
    joined = PolylinePath([0.5, 0.6 + 0.4j, 0.9j])
    f = vec(LaurentPolynomial({-2: 1j, 1: 2}))
    total = path_integral(f, joined, 1e-12)
    parts = path_integral(f, p1, 1e-12) + path_integral(f, p2, 1e-12)
    assert np.max(np.abs(total - parts)) < 1e-11


def test_winding_number():
    sq = PolylinePath([0.5, 0.5j, -0.5, -0.5j, 0.5])
    assert abs(sq.winding_number() - 1.0) < 1e-12
    assert abs(sq.reversed().winding_number() + 1.0) < 1e-12


def test_line_integral_constant_factor():
    seg = PolylinePath([0.6, 0.6 + 1.0 / 12.0])
    val = line_integral_real(lambda z: np.full(len(z), 2.5), seg, 1e-12)
    assert abs(val - 5.0 / 24.0) < 1e-12


def test_line_integral_reversal():
    path = PolylinePath([0.5, 0.7 + 0.2j, 0.4 + 0.5j])
    lam = lambda z: 1.0 + np.abs(z) ** 2
    fwd = line_integral_real(lam, path, 1e-12)
    bwd = line_integral_real(lam, path.reversed(), 1e-12)
    assert abs(fwd - bwd) < 1e-12 * max(1.0, abs(fwd))
