"""Exact solution families of the parametric coupled KdV system.

Each family exposes an :class:`AnalyticPair` that evaluates jets of the
potentials (w, y) and the fields (u, v) = (w_x, y_x) at arbitrary (x, t).
The u/v jets are x-shifts of the w/y jets, so the defining identities hold
exactly rather than through numerical differentiation.

Derived constants (wave number, amplitude normalizers, denominator shifts)
are recomputed at the evaluation dtype, and denominators use cancellation-free
forms, so extended-precision evaluation yields extended-precision residuals
even for near-singular parameter sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import ParameterDomainError
from .jets import Jet2, jet_constant, jet_linear, jet_sin_cos, jet_sinh_cosh, jet_tanh

__all__ = [
    "SolitonParams",
    "PeriodicParams",
    "RationalParams",
    "KdvSolitonParams",
    "PairJets",
    "AnalyticPair",
    "make_soliton",
    "make_periodic",
    "make_rational",
    "make_decoupled",
    "zero_pair",
    "EVAL_MAX_KX",
    "EVAL_MAX_KT",
]

EVAL_MAX_KX = 5
EVAL_MAX_KT = 1

WyJets = Callable[[np.ndarray, np.ndarray, int, int], tuple[Jet2, Jet2]]


def _require_finite(name: str, *values: float) -> None:
    for value in values:
        if not math.isfinite(value):
            raise ParameterDomainError(f"{name} finite")


@dataclass(frozen=True)
class SolitonParams:
    """Solitonic family parameters (dispersion eta > 0, amplitude rho != 0).

    The derived quantities are a = 2*sqrt(eta/6), the normalizer
    A = sqrt((3C/eta)^2 + (6/eta)(rho/12)^2) and the denominator shift
    B = 3C/(eta*A), with |B| < 1 strictly whenever rho != 0, which keeps
    cosh(a x + b) - B bounded away from zero.
    """

    eta: float
    rho: float
    big_c: float = 0.0
    phase0: float = 0.0

    def __post_init__(self):
        _require_finite("soliton parameters", self.eta, self.rho, self.big_c, self.phase0)
        if not self.eta > 0:
            raise ParameterDomainError("eta > 0")
        if self.rho == 0:
            raise ParameterDomainError("rho != 0")

    def derived(self, dtype=np.float64):
        """(a, A, B, 1-B, rho/A) at the requested dtype, cancellation-free."""
        mk = np.dtype(dtype).type
        eta, rho, big_c = mk(self.eta), mk(self.rho), mk(self.big_c)
        a = 2 * np.sqrt(eta / 6)
        eta_a = np.sqrt((3 * big_c) ** 2 + 6 * eta * (rho / 12) ** 2)  # eta*A
        big_a = eta_a / eta
        shift = 3 * big_c / eta_a
        # (1-B)(1+B) = 6*eta*(rho/12)^2 / (eta*A)^2 exactly
        if shift >= 0:
            one_minus_shift = 6 * eta * (rho / 12) ** 2 / (eta_a**2 * (1 + shift))
        else:
            one_minus_shift = 1 - shift
        return a, big_a, shift, one_minus_shift, rho / big_a

    @property
    def a(self) -> float:
        return float(self.derived()[0])

    @property
    def big_a(self) -> float:
        return float(self.derived()[1])

    @property
    def cosh_shift(self) -> float:
        return float(self.derived()[2])


@dataclass(frozen=True)
class PeriodicParams:
    """Periodic family parameters (eta < 0 branch, stored as |eta|).

    Admissibility requires rho != 0, delta = (3/2)C^2/|eta| - (rho/12)^2 > 0
    and C > 0; then Bhat = 3C/(|eta|*Ahat) > 1 with Ahat = sqrt(6*delta/|eta|),
    so the denominator eps*cos(a x + b) + Bhat stays positive.
    """

    eta_abs: float
    rho: float
    big_c: float
    phase0: float = 0.0
    epsilon_sign: int = 1

    def __post_init__(self):
        _require_finite("periodic parameters", self.eta_abs, self.rho, self.big_c, self.phase0)
        if not self.eta_abs > 0:
            raise ParameterDomainError("|eta| > 0")
        if self.rho == 0:
            raise ParameterDomainError("rho != 0")
        if not self.big_c > 0:
            raise ParameterDomainError("C > 0")
        if not self.delta > 0:
            raise ParameterDomainError("delta > 0")
        if self.epsilon_sign not in (-1, 1):
            raise ParameterDomainError("epsilon in {+1, -1}")

    @property
    def delta(self) -> float:
        return 1.5 * self.big_c**2 / self.eta_abs - (self.rho / 12) ** 2

    def derived(self, dtype=np.float64):
        """(a, Ahat, Bhat, Bhat-1, rho/Ahat) at the requested dtype."""
        mk = np.dtype(dtype).type
        eta, rho, big_c = mk(self.eta_abs), mk(self.rho), mk(self.big_c)
        a = 2 * np.sqrt(eta / 6)
        delta = 3 * big_c**2 / (2 * eta) - (rho / 12) ** 2
        a_hat = np.sqrt(6 * delta / eta)
        b_hat = 3 * big_c / (eta * a_hat)
        # (Bhat-1)(Bhat+1) = 6*|eta|*(rho/12)^2 / (|eta|*Ahat)^2 exactly
        b_hat_minus_1 = 6 * eta * (rho / 12) ** 2 / ((eta * a_hat) ** 2 * (b_hat + 1))
        return a, a_hat, b_hat, b_hat_minus_1, rho / a_hat

    @property
    def a_hat(self) -> float:
        return float(self.derived()[1])

    @property
    def cos_shift(self) -> float:
        return float(self.derived()[2])


@dataclass(frozen=True)
class RationalParams:
    """Stationary rational family parameters (C != 0, rho != 0, offset H)."""

    big_c: float
    rho: float
    shift_h: float = 0.0

    def __post_init__(self):
        _require_finite("rational parameters", self.big_c, self.rho, self.shift_h)
        if self.rho == 0:
            raise ParameterDomainError("rho != 0")
        if self.big_c == 0:
            raise ParameterDomainError("C != 0")


@dataclass(frozen=True)
class KdvSolitonParams:
    """Classical single soliton of z_t + z z_x + z_xxx = 0.

    Parameterized by wave number k > 0: amplitude 12 k^2, speed 4 k^2.
    """

    k: float
    phase0: float = 0.0

    def __post_init__(self):
        _require_finite("KdV soliton parameters", self.k, self.phase0)
        if not self.k > 0:
            raise ParameterDomainError("k > 0")


@dataclass(frozen=True)
class PairJets:
    """Jets of the potentials and fields of one pair at common points."""

    w: Jet2
    y: Jet2
    u: Jet2
    v: Jet2


@dataclass(frozen=True)
class AnalyticPair:
    """An exactly evaluable solution pair with jet access.

    ``wy_jets(x, t, kx, kt)`` returns (w, y) jets at the broadcast points;
    evaluators are stateless and safe for concurrent use.
    """

    lam: float
    family: str
    params: Any = None
    wy_jets: WyJets = field(default=None, repr=False, compare=False)

    def eval(self, x, t, kx: int = EVAL_MAX_KX, kt: int = EVAL_MAX_KT) -> PairJets:
        """Jets of (w, y, u, v); u/v are exact x-shifts of the w/y jets."""
        if not 0 <= kx <= EVAL_MAX_KX:
            raise ValueError(f"kx must be in [0, {EVAL_MAX_KX}], got {kx}")
        if not 0 <= kt <= EVAL_MAX_KT:
            raise ValueError(f"kt must be in [0, {EVAL_MAX_KT}], got {kt}")
        return self.eval_unchecked(x, t, kx, kt)

    def eval_unchecked(self, x, t, kx: int, kt: int) -> PairJets:
        w, y = self.wy_jets(x, t, kx + 1, kt)
        return PairJets(w=w.truncated(kx), y=y.truncated(kx), u=w.dx(), v=y.dx())

    def wy_values(self, x, t) -> tuple[np.ndarray, np.ndarray]:
        w, y = self.wy_jets(x, t, 0, 0)
        return w.value, y.value

    def uv_values(self, x, t) -> tuple[np.ndarray, np.ndarray]:
        j = self.eval_unchecked(x, t, 0, 0)
        return j.u.value, j.v.value


def _broadcast_points(x, t) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x)
    t = np.asarray(t)
    dtype = np.result_type(x, t, np.float64)
    x, t = np.broadcast_arrays(x.astype(dtype, copy=False), t.astype(dtype, copy=False))
    return x, t


def make_soliton(p: SolitonParams) -> AnalyticPair:
    """Solitonic pair at lambda = -1; phase b = -a^3 t + phase0.

    w = 6a sinh(theta) / (cosh(theta) - B), y = (rho/A) / (cosh(theta) - B)
    with theta = a x + b; the denominator is evaluated as
    (1 - B) + 2 sinh^2(theta/2), which never cancels.
    """

    def wy(x, t, kx, kt):
        x, t = _broadcast_points(x, t)
        a, _big_a, _shift, one_minus_shift, y_amp = p.derived(x.dtype)
        phase0 = x.dtype.type(p.phase0)
        half = jet_linear(
            (a * x - a**3 * t + phase0) / 2, a / 2, -(a**3) / 2, kx, kt
        )
        sh, ch = jet_sinh_cosh(half)
        den = 2 * (sh * sh) + one_minus_shift
        w = (6 * a * 2) * (sh * ch) / den
        y = jet_constant(np.broadcast_to(y_amp, x.shape), kx, kt) / den
        return w, y

    return AnalyticPair(lam=-1.0, family="soliton", params=p, wy_jets=wy)


def make_periodic(p: PeriodicParams) -> AnalyticPair:
    """Periodic pair at lambda = -1; phase b = +a^3 t + phase0.

    The published phrase "as before b = -a^3 t" does not yield a solution for
    the eta < 0 branch; the sign is fixed by the time equation of the
    transformation and verified by the residual suite.
    """
    eps = p.epsilon_sign

    def wy(x, t, kx, kt):
        x, t = _broadcast_points(x, t)
        a, _a_hat, _b_hat, b_hat_minus_1, y_amp = p.derived(x.dtype)
        phase0 = x.dtype.type(p.phase0)
        half = jet_linear(
            (a * x + a**3 * t + phase0) / 2, a / 2, (a**3) / 2, kx, kt
        )
        sn, cs = jet_sin_cos(half)
        # eps*cos(theta) + Bhat, written without cancellation:
        #   eps=+1: (Bhat-1) + 2 cos^2(theta/2); eps=-1: (Bhat-1) + 2 sin^2(theta/2)
        if eps == 1:
            den = 2 * (cs * cs) + b_hat_minus_1
        else:
            den = 2 * (sn * sn) + b_hat_minus_1
        w = (-eps * 6 * a * 2) * (sn * cs) / den
        y = jet_constant(np.broadcast_to(y_amp, x.shape), kx, kt) / den
        return w, y

    return AnalyticPair(lam=-1.0, family="periodic", params=p, wy_jets=wy)


def make_rational(p: RationalParams) -> AnalyticPair:
    """Stationary rational pair at lambda = -1 (the eta = 0 descendant).

    w = 12 C^2 (x+H) / [(rho/12)^2 + C^2 (x+H)^2], y = C rho / [same];
    the denominator is bounded below by (rho/12)^2 > 0.
    """

    def wy(x, t, kx, kt):
        x, t = _broadcast_points(x, t)
        mk = x.dtype.type
        big_c, rho, shift_h = mk(p.big_c), mk(p.rho), mk(p.shift_h)
        s = jet_linear(x + shift_h, mk(1.0), mk(0.0), kx, kt)
        den = (big_c * big_c) * (s * s) + (rho / 12) ** 2
        w = (12 * big_c * big_c) * s / den
        y = jet_constant(np.broadcast_to(big_c * rho, x.shape), kx, kt) / den
        return w, y

    return AnalyticPair(lam=-1.0, family="rational", params=p, wy_jets=wy)


def make_decoupled(
    left: KdvSolitonParams, right: KdvSolitonParams | None = None
) -> AnalyticPair:
    """Pair at lambda = +1 composed from scalar KdV solitons.

    u = (z1+z2)/2 and v = (z1-z2)/2 where z_i = 12 k_i^2 sech^2(k_i x - 4 k_i^3 t
    + phase_i); potentials are Z_i = 12 k_i tanh(...). ``right=None`` drops the
    second factor (z2 = 0).
    """

    def kdv_potential(q: KdvSolitonParams, x, t, kx, kt) -> Jet2:
        k = x.dtype.type(q.k)
        phase0 = x.dtype.type(q.phase0)
        theta = jet_linear(k * x - 4 * k**3 * t + phase0, k, -4 * k**3, kx, kt)
        return (12 * k) * jet_tanh(theta)

    def wy(x, t, kx, kt):
        x, t = _broadcast_points(x, t)
        z1 = kdv_potential(left, x, t, kx, kt)
        if right is None:
            z2 = jet_constant(np.zeros_like(x), kx, kt)
        else:
            z2 = kdv_potential(right, x, t, kx, kt)
        return 0.5 * (z1 + z2), 0.5 * (z1 - z2)

    return AnalyticPair(lam=1.0, family="decoupled", params=(left, right), wy_jets=wy)


def zero_pair(lam: float = -1.0) -> AnalyticPair:
    """The trivial solution w = y = 0 (germ of Backlund sequences)."""

    def wy(x, t, kx, kt):
        x, _t = _broadcast_points(x, t)
        zero = jet_constant(np.zeros_like(x), kx, kt)
        return zero, Jet2(zero.c.copy())

    return AnalyticPair(lam=lam, family="zero", params=None, wy_jets=wy)
