"""Truncated-Taylor jet arithmetic in (x, t).

A :class:`Jet2` stores the mixed partials d^i_x d^j_t f for 0 <= i <= kx,
0 <= j <= kt, evaluated at one point or broadcast over an array of points.
Sums, Leibniz products, quotients and compositions with smooth scalar
functions propagate these derivatives exactly, so residuals assembled from
jets carry only floating-point rounding, never discretization error.

Coefficient arrays follow the dtype of their inputs; evaluating with
``np.longdouble`` abscissae yields extended-precision jets throughout.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Sequence

import numpy as np

__all__ = [
    "Jet2",
    "jet_constant",
    "jet_linear",
    "jet_compose",
    "jet_sinh_cosh",
    "jet_sin_cos",
    "jet_tanh",
]


class Jet2:
    """Jet of one scalar field; ``c[i, j]`` is d^i_x d^j_t f at the points."""

    __slots__ = ("c",)

    def __init__(self, coeffs: np.ndarray):
        self.c = coeffs

    @property
    def kx(self) -> int:
        return self.c.shape[0] - 1

    @property
    def kt(self) -> int:
        return self.c.shape[1] - 1

    @property
    def value(self) -> np.ndarray:
        return self.c[0, 0]

    def d(self, i: int, j: int = 0) -> np.ndarray:
        """Mixed partial d^i_x d^j_t of the jetted field."""
        return self.c[i, j]

    def dx(self) -> "Jet2":
        """Jet of the x-derivative; drops one x-order (shared storage)."""
        return Jet2(self.c[1:])

    def truncated(self, kx: int, kt: int | None = None) -> "Jet2":
        kt = self.kt if kt is None else kt
        return Jet2(self.c[: kx + 1, : kt + 1])

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def __neg__(self) -> "Jet2":
        return Jet2(-self.c)

    def __add__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(self.c + other.c)
        out = self.c.copy()
        out[0, 0] = out[0, 0] + other
        return Jet2(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(self.c - other.c)
        out = self.c.copy()
        out[0, 0] = out[0, 0] - other
        return Jet2(out)

    def __rsub__(self, other) -> "Jet2":
        out = -self.c
        out[0, 0] = out[0, 0] + other
        return Jet2(out)

    def __mul__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(_mul_coeffs(self.c, other.c))
        return Jet2(self.c * other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(_div_coeffs(self.c, other.c))
        return Jet2(self.c / other)

    def __rtruediv__(self, other) -> "Jet2":
        num = jet_constant(
            np.broadcast_to(np.asarray(other, dtype=self.c.dtype), self.c.shape[2:]),
            self.kx,
            self.kt,
        )
        return num / self


def _mul_coeffs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise ValueError(f"jet order/shape mismatch: {a.shape} vs {b.shape}")
    kx = a.shape[0] - 1
    kt = a.shape[1] - 1
    out = np.zeros(a.shape, dtype=np.result_type(a, b))
    for i in range(kx + 1):
        for j in range(kt + 1):
            acc = out[i, j]
            for p in range(i + 1):
                bi = comb(i, p)
                for q in range(j + 1):
                    w = bi * comb(j, q)
                    term = a[p, q] * b[i - p, j - q]
                    acc = acc + (term if w == 1 else w * term)
            out[i, j] = acc
    return out


def _div_coeffs(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Solve h*g = f order by order (exact quotient rule)."""
    if f.shape != g.shape:
        raise ValueError(f"jet order/shape mismatch: {f.shape} vs {g.shape}")
    kx = f.shape[0] - 1
    kt = f.shape[1] - 1
    out = np.zeros(f.shape, dtype=np.result_type(f, g))
    g00 = g[0, 0]
    for i in range(kx + 1):
        for j in range(kt + 1):
            s = f[i, j]
            for p in range(i + 1):
                bi = comb(i, p)
                for q in range(j + 1):
                    if p == i and q == j:
                        continue
                    w = bi * comb(j, q)
                    term = out[p, q] * g[i - p, j - q]
                    s = s - (term if w == 1 else w * term)
            out[i, j] = s / g00
    return out


def jet_constant(value, kx: int, kt: int) -> Jet2:
    value = np.asarray(value)
    c = np.zeros((kx + 1, kt + 1) + value.shape, dtype=np.result_type(value, 1.0))
    c[0, 0] = value
    return Jet2(c)


def jet_linear(value, slope_x, slope_t, kx: int, kt: int) -> Jet2:
    """Jet of a field affine in x and t: value with d_x = slope_x, d_t = slope_t."""
    value = np.asarray(value)
    c = np.zeros(
        (kx + 1, kt + 1) + value.shape,
        dtype=np.result_type(value, slope_x, slope_t, 1.0),
    )
    c[0, 0] = value
    if kx >= 1:
        c[1, 0] = slope_x
    if kt >= 1:
        c[0, 1] = slope_t
    return Jet2(c)


def jet_compose(g: Jet2, derivs: Sequence[np.ndarray]) -> Jet2:
    """Jet of f(g) given derivs[m] = f^(m) evaluated at g.value.

    Needs len(derivs) >= g.kx + g.kt + 1 (total-degree truncation).
    """
    kx, kt = g.kx, g.kt
    order = kx + kt
    if len(derivs) < order + 1:
        raise ValueError(f"need {order + 1} outer derivatives, got {len(derivs)}")
    ghat = Jet2(g.c.copy())
    ghat.c[0, 0] = np.zeros_like(ghat.c[0, 0])
    shape = g.c.shape[2:]
    acc = jet_constant(
        np.broadcast_to(np.asarray(derivs[order]) / factorial(order), shape), kx, kt
    )
    for m in range(order - 1, -1, -1):
        acc = acc * ghat + (np.asarray(derivs[m]) / factorial(m))
    return acc


def jet_sinh_cosh(g: Jet2) -> tuple[Jet2, Jet2]:
    s0 = np.sinh(g.value)
    c0 = np.cosh(g.value)
    order = g.kx + g.kt
    ds = [s0 if m % 2 == 0 else c0 for m in range(order + 1)]
    dc = [c0 if m % 2 == 0 else s0 for m in range(order + 1)]
    return jet_compose(g, ds), jet_compose(g, dc)


def jet_sin_cos(g: Jet2) -> tuple[Jet2, Jet2]:
    s0 = np.sin(g.value)
    c0 = np.cos(g.value)
    order = g.kx + g.kt
    cycle = (s0, c0, -s0, -c0)
    ds = [cycle[m % 4] for m in range(order + 1)]
    dc = [cycle[(m + 1) % 4] for m in range(order + 1)]
    return jet_compose(g, ds), jet_compose(g, dc)


def jet_tanh(g: Jet2) -> Jet2:
    s, c = jet_sinh_cosh(g)
    return s / c
