"""Jet arithmetic against analytic derivatives and algebraic identities."""

import numpy as np
import pytest

from ckdvlab.jets import (
    Jet2,
    jet_constant,
    jet_linear,
    jet_sin_cos,
    jet_sinh_cosh,
    jet_tanh,
)


def poly_jet(coeffs, x, t, kx, kt):
    """Jet of p(x, t) = sum c[i][j] x^i t^j with analytically known partials."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    x, t = np.broadcast_arrays(x, t)
    c = np.zeros((kx + 1, kt + 1) + x.shape)
    ni, nj = coeffs.shape
    for di in range(kx + 1):
        for dj in range(kt + 1):
            acc = np.zeros_like(x)
            for i in range(di, ni):
                for j in range(dj, nj):
                    fi = np.prod(np.arange(i - di + 1, i + 1)) if di else 1
                    fj = np.prod(np.arange(j - dj + 1, j + 1)) if dj else 1
                    acc = acc + coeffs[i, j] * fi * fj * x ** (i - di) * t ** (j - dj)
            c[di, dj] = acc
    return Jet2(c)


def poly_eval(coeffs, x, t):
    out = np.zeros_like(np.asarray(x, dtype=float))
    for i in range(coeffs.shape[0]):
        for j in range(coeffs.shape[1]):
            out = out + coeffs[i, j] * x**i * t**j
    return out


def test_linear_and_constant_builders():
    x = np.array([0.5, -2.0])
    j = jet_linear(3.0 * x + 1.0, 3.0, -7.0, kx=2, kt=1)
    assert np.allclose(j.value, 3.0 * x + 1.0)
    assert np.allclose(j.d(1, 0), 3.0)
    assert np.allclose(j.d(0, 1), -7.0)
    assert np.all(j.d(2, 0) == 0.0)
    c = jet_constant(x, kx=1, kt=1)
    assert np.all(c.d(1, 0) == 0.0) and np.all(c.d(0, 1) == 0.0)


def test_product_rule_on_random_polynomials(rng):
    x = rng.uniform(-2, 2, size=7)
    t = rng.uniform(-2, 2, size=7)
    for _ in range(100):
        a = rng.uniform(-1, 1, size=(3, 2))
        b = rng.uniform(-1, 1, size=(3, 2))
        ja = poly_jet(a, x, t, 4, 1)
        jb = poly_jet(b, x, t, 4, 1)
        prod = ja * jb
        # d_x^2 d_t (fg) by Leibniz from analytic partials
        expect = (
            ja.d(2, 1) * jb.d(0, 0)
            + 2 * ja.d(1, 1) * jb.d(1, 0)
            + ja.d(0, 1) * jb.d(2, 0)
            + ja.d(2, 0) * jb.d(0, 1)
            + 2 * ja.d(1, 0) * jb.d(1, 1)
            + ja.d(0, 0) * jb.d(2, 1)
        )
        assert np.allclose(prod.d(2, 1), expect, rtol=1e-13, atol=1e-13)
        assert np.allclose(prod.value, poly_eval(a, x, t) * poly_eval(b, x, t))


def test_quotient_roundtrip(rng):
    x = rng.uniform(-1, 1, size=9)
    t = rng.uniform(-1, 1, size=9)
    for _ in range(50):
        a = rng.uniform(-1, 1, size=(3, 2))
        b = rng.uniform(-1, 1, size=(3, 2))
        b[0, 0] += 4.0  # keep the denominator away from zero
        ja = poly_jet(a, x, t, 5, 1)
        jb = poly_jet(b, x, t, 5, 1)
        q = ja / jb
        back = q * jb
        assert np.allclose(back.c, ja.c, rtol=1e-12, atol=1e-12)


def test_scalar_reciprocal():
    x = np.array([0.3, 1.7])
    j = jet_linear(x + 2.5, 1.0, 0.0, kx=3, kt=0)
    r = 1.0 / j
    g = x + 2.5
    assert np.allclose(r.value, 1 / g)
    assert np.allclose(r.d(1, 0), -1 / g**2)
    assert np.allclose(r.d(2, 0), 2 / g**3)
    assert np.allclose(r.d(3, 0), -6 / g**4)


def test_composition_matches_analytic_trig():
    a, b = 0.7, -0.3
    x = np.linspace(-2, 2, 11)
    t = np.full_like(x, 0.9)
    theta = jet_linear(a * x + b * t, a, b, kx=4, kt=1)
    s, c = jet_sin_cos(theta)
    arg = a * x + b * t
    assert np.allclose(s.value, np.sin(arg))
    assert np.allclose(s.d(1, 0), a * np.cos(arg))
    assert np.allclose(s.d(2, 0), -(a**2) * np.sin(arg))
    assert np.allclose(s.d(3, 0), -(a**3) * np.cos(arg))
    assert np.allclose(s.d(4, 0), a**4 * np.sin(arg))
    assert np.allclose(s.d(0, 1), b * np.cos(arg))
    assert np.allclose(s.d(2, 1), -(a**2) * b * np.cos(arg), rtol=1e-12)
    assert np.allclose(c.value, np.cos(arg))


def test_hyperbolic_identity_and_tanh():
    x = np.linspace(-3, 3, 13)
    theta = jet_linear(0.4 * x + 0.1, 0.4, -0.064, kx=4, kt=1)
    s, c = jet_sinh_cosh(theta)
    one = c * c - s * s
    assert np.allclose(one.value, 1.0, atol=1e-12)
    for i in range(1, 5):
        assert np.allclose(one.d(i, 0), 0.0, atol=1e-11)
    th = jet_tanh(theta)
    assert np.allclose(th.value, np.tanh(theta.value))
    sech2 = 1 - np.tanh(theta.value) ** 2
    assert np.allclose(th.d(1, 0), 0.4 * sech2, rtol=1e-12)


def test_dx_shift_and_truncation():
    x = np.array([1.0, 2.0])
    theta = jet_linear(x, 1.0, 0.0, kx=3, kt=1)
    s, _ = jet_sinh_cosh(theta)
    ds = s.dx()
    assert ds.kx == 2
    assert np.array_equal(ds.d(0, 0), s.d(1, 0))
    tr = s.truncated(1, 0)
    assert tr.kx == 1 and tr.kt == 0


def test_longdouble_dtype_flows_through():
    x = np.linspace(-1, 1, 5, dtype=np.longdouble)
    theta = jet_linear(0.5 * x, np.longdouble(0.5), np.longdouble(0.0), kx=2, kt=0)
    s, c = jet_sinh_cosh(theta)
    q = s / c
    assert q.c.dtype == np.longdouble


def test_order_mismatch_raises():
    a = jet_constant(np.zeros(3), 2, 1)
    b = jet_constant(np.zeros(3), 3, 1)
    with pytest.raises(ValueError):
        _ = a * b
