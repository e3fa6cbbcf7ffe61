"""Backlund transformation residuals, nonlinear superposition, regularity gate.

The transformation relates two solutions (w, y) and (w', y') of the potential
system through four first-order equations with parameters (eta, mu). Two
transformations commute, and the composed solution has the closed form

    w12 = w0 + 24 (eta1 - eta2) (w1 - w2) / D,
    y12 = y0 - 24 (eta1 - eta2) (y1 - y2) / D,
    D   = (w1 - w2)^2 - lambda (y1 - y2)^2,

which is symmetric under interchanging the two branches. At lambda = -1 the
denominator is a sum of squares; the regularity scan quantifies its minimum
over a window, and for two solitonic branches the analytic guarantee is the
parameter condition C1/(eta1 rho1) = C2/(eta2 rho2) with eta1 != eta2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import ParameterDomainError, SingularDenominatorError
from .families import AnalyticPair, _broadcast_points

__all__ = [
    "BacklundParams",
    "BTResiduals",
    "bt_residuals",
    "default_bt_eta",
    "SuperposedPair",
    "superpose",
    "RegularityScan",
    "regularity_scan",
]

REGULAR = "REGULAR"
SINGULAR = "SINGULAR"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class BacklundParams:
    """Transformation parameters: eta of the x-equation, mu of the y-chain."""

    eta: float
    mu: float = 0.0
    lam: float = -1.0


@dataclass(frozen=True)
class BTResiduals:
    """Left-minus-right values of the four transformation equations."""

    r15: np.ndarray
    r16: np.ndarray
    r17: np.ndarray
    r18: np.ndarray

    def max_abs(self) -> tuple[float, float, float, float]:
        return tuple(float(np.max(np.abs(r))) for r in (self.r15, self.r16, self.r17, self.r18))


def bt_residuals(
    candidate: AnalyticPair, base: AnalyticPair, p: BacklundParams, x, t
) -> BTResiduals:
    """Evaluate the four transformation residuals at the broadcast points.

    All four vanish iff (candidate, base) are related by the transformation
    with parameters (eta, mu) at coupling lam. Residuals are reported, never
    judged here.
    """
    x, t = _broadcast_points(x, t)
    w, y = candidate.wy_jets(x, t, 2, 1)
    wp, yp = base.wy_jets(x, t, 2, 1)
    lam = p.lam
    mk = x.dtype.type
    eta, mu = mk(p.eta), mk(p.mu)

    dw = w.value - wp.value
    dy = y.value - yp.value
    r15 = w.d(1, 0) + wp.d(1, 0) - 2 * eta + dw**2 / 12 + lam * dy**2 / 12
    r16 = (
        w.d(0, 1)
        + wp.d(0, 1)
        - dw * (w.d(2, 0) - wp.d(2, 0)) / 6
        - lam * dy * (y.d(2, 0) - yp.d(2, 0)) / 6
        + (w.d(1, 0) ** 2 + wp.d(1, 0) ** 2 + w.d(1, 0) * wp.d(1, 0)) / 3
        + lam * (y.d(1, 0) ** 2 + yp.d(1, 0) ** 2 + y.d(1, 0) * yp.d(1, 0)) / 3
    )
    r17 = y.d(1, 0) + yp.d(1, 0) - 2 * mu + dw * dy / 6
    r18 = (
        y.d(0, 1)
        + yp.d(0, 1)
        - dw * (y.d(2, 0) - yp.d(2, 0)) / 6
        - (w.d(2, 0) - wp.d(2, 0)) * dy / 6
        + (
            2 * w.d(1, 0) * y.d(1, 0)
            + 2 * wp.d(1, 0) * yp.d(1, 0)
            + w.d(1, 0) * yp.d(1, 0)
            + wp.d(1, 0) * y.d(1, 0)
        )
        / 3
    )
    return BTResiduals(r15=r15, r16=r16, r17=r17, r18=r18)


def default_bt_eta(pair: AnalyticPair) -> float:
    """The transformation parameter that generated a family from the zero germ."""
    if pair.family == "soliton":
        return pair.params.eta
    if pair.family == "periodic":
        return -pair.params.eta_abs
    if pair.family == "rational":
        return 0.0
    raise ParameterDomainError(
        "eta given explicitly",
        f"no default Backlund eta for family {pair.family!r}; pass eta explicitly",
    )


@dataclass(frozen=True)
class SuperposedPair:
    """Inputs of the nonlinear superposition: germ, two branches, their etas.

    Etas default to each branch family's generating parameter. All three
    pairs must share the coupling value.
    """

    germ: AnalyticPair
    branch1: AnalyticPair
    branch2: AnalyticPair
    eta1: float | None = None
    eta2: float | None = None
    floor: float = 1e-12

    def __post_init__(self):
        lams = {self.germ.lam, self.branch1.lam, self.branch2.lam}
        if len(lams) != 1:
            raise ParameterDomainError(
                "matching lambda",
                f"germ and branches must share lambda, got {sorted(lams)}",
            )
        if self.eta1 is None:
            object.__setattr__(self, "eta1", default_bt_eta(self.branch1))
        if self.eta2 is None:
            object.__setattr__(self, "eta2", default_bt_eta(self.branch2))
        if not self.floor > 0:
            raise ParameterDomainError("floor > 0")

    @property
    def lam(self) -> float:
        return self.germ.lam


def superpose(s: SuperposedPair) -> AnalyticPair:
    """Compose the two branches over the germ via the permutability formula.

    Jets of w12, y12 come from exact quotient arithmetic over branch jets.
    Raises :class:`SingularDenominatorError` if |D| falls below the floor at
    an evaluation point.
    """
    if s.eta1 == s.eta2:
        raise ParameterDomainError("eta1 != eta2")
    lam = s.lam
    floor = s.floor

    def wy(x, t, kx, kt):
        x, t = _broadcast_points(x, t)
        w0, y0 = s.germ.wy_jets(x, t, kx, kt)
        w1, y1 = s.branch1.wy_jets(x, t, kx, kt)
        w2, y2 = s.branch2.wy_jets(x, t, kx, kt)
        dw = w1 - w2
        dy = y1 - y2
        den = dw * dw - lam * (dy * dy)
        dval = np.abs(den.value)
        if np.any(dval < floor):
            flat = int(np.argmin(dval))
            raise SingularDenominatorError(
                x.flat[flat], t.flat[flat], dval.flat[flat], floor
            )
        coef = x.dtype.type(24.0 * (s.eta1 - s.eta2))
        w12 = w0 + (coef * dw) / den
        y12 = y0 - (coef * dy) / den
        return w12, y12

    family = f"superpose({s.branch1.family}+{s.branch2.family};germ={s.germ.family})"
    return AnalyticPair(lam=lam, family=family, params=s, wy_jets=wy)


@dataclass(frozen=True)
class RegularityScan:
    """Quantitative regularity evidence for a superposition window."""

    min_abs_d: float
    argmin_x: float
    argmin_t: float
    eq_ratio_holds: bool | None
    verdict: str
    window: dict
    threshold: float

    def to_dict(self) -> dict:
        return {
            "min_abs_d": self.min_abs_d,
            "argmin_x": self.argmin_x,
            "argmin_t": self.argmin_t,
            "eq_ratio_holds": self.eq_ratio_holds,
            "verdict": self.verdict,
            "window": self.window,
            "threshold": self.threshold,
        }


def _solitonic_ratio_condition(s: SuperposedPair) -> bool | None:
    """C1/(eta1 rho1) = C2/(eta2 rho2) to 1e-12 relative, for soliton branches."""
    if s.branch1.family != "soliton" or s.branch2.family != "soliton":
        return None
    if s.eta1 == s.eta2:
        return False
    p1, p2 = s.branch1.params, s.branch2.params
    q1 = p1.big_c / (p1.eta * p1.rho)
    q2 = p2.big_c / (p2.eta * p2.rho)
    scale = max(abs(q1), abs(q2), 1e-300)
    return abs(q1 - q2) <= 1e-12 * scale


def regularity_scan(
    s: SuperposedPair,
    x_span: tuple[float, float] = (-60.0, 60.0),
    t_span: tuple[float, float] = (-20.0, 20.0),
    nx: int = 1201,
    nt: int = 401,
    threshold: float | None = None,
    chunk: int = 4_000_000,
) -> RegularityScan:
    """Scan min |D| over the window; a numerical complement, not a proof.

    The analytic guarantee (two solitonic branches with matching parameter
    ratio) is reported in ``eq_ratio_holds``; any other branch combination
    gets scan evidence only.
    """
    threshold = s.floor if threshold is None else threshold
    x = np.linspace(x_span[0], x_span[1], nx)
    t = np.linspace(t_span[0], t_span[1], nt)
    lam = s.lam

    best = np.inf
    best_x = x[0]
    best_t = t[0]
    t_block = max(1, chunk // max(nx, 1))
    for lo in range(0, nt, t_block):
        tb = t[lo : lo + t_block]
        mesh_x = x[:, None]
        mesh_t = tb[None, :]
        w1, y1 = s.branch1.wy_values(mesh_x, mesh_t)
        w2, y2 = s.branch2.wy_values(mesh_x, mesh_t)
        dw = w1 - w2
        dy = y1 - y2
        dval = np.abs(dw * dw - lam * (dy * dy))
        flat = int(np.argmin(dval))
        if dval.flat[flat] < best:
            best = float(dval.flat[flat])
            best_x = float(np.broadcast_to(mesh_x, dval.shape).flat[flat])
            best_t = float(np.broadcast_to(mesh_t, dval.shape).flat[flat])

    if s.eta1 == s.eta2:
        verdict = NOT_APPLICABLE
    elif best > threshold:
        verdict = REGULAR
    else:
        verdict = SINGULAR
    return RegularityScan(
        min_abs_d=best,
        argmin_x=best_x,
        argmin_t=best_t,
        eq_ratio_holds=_solitonic_ratio_condition(s),
        verdict=verdict,
        window={
            "x_span": list(x_span),
            "t_span": list(t_span),
            "nx": nx,
            "nt": nt,
        },
        threshold=float(threshold),
    )
