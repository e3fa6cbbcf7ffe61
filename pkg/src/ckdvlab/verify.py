"""Residual evaluation for the governing equations and symmetry transforms.

Residual lattices default to extended precision (``np.longdouble``): the
governing identities cancel catastrophically near sharp solitons, where
individual terms reach ~1e6, and float64 rounding alone would eat the 1e-9
verification budget. Jets supply exact derivatives; an independent
finite-difference oracle (central stencils + Richardson) is available for
cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError, WrongLambdaError
from .families import AnalyticPair, PairJets
from .jets import Jet2, jet_linear

__all__ = [
    "Lattice",
    "standard_lattice",
    "ResidualReport",
    "system_residual",
    "system_residual_arrays",
    "potential_residual",
    "potential_residual_arrays",
    "complex_reduction",
    "complex_residual_arrays",
    "decoupling_residual",
    "decoupling_residual_arrays",
    "galileo",
    "rescale",
    "fd_x_derivative",
    "fd_t_derivative",
    "fd_system_residual_arrays",
]


@dataclass(frozen=True)
class Lattice:
    """Evaluation lattice: the tensor grid of x and t sample points."""

    x: np.ndarray
    t: np.ndarray
    label: str

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return self.x[:, None], self.t[None, :]


def standard_lattice(
    nx: int = 201,
    x_span: tuple[float, float] = (-40.0, 40.0),
    times: tuple[float, ...] = (-16.0, -8.0, 0.0, 8.0, 16.0),
    dtype=np.longdouble,
) -> Lattice:
    x = np.linspace(x_span[0], x_span[1], nx, dtype=dtype)
    t = np.asarray(times, dtype=dtype)
    label = f"{nx}x{len(times)} x=[{x_span[0]:g},{x_span[1]:g}] t={{{','.join(f'{v:g}' for v in times)}}}"
    return Lattice(x=x, t=t, label=label)


@dataclass(frozen=True)
class ResidualReport:
    """Max/rms magnitude of one equation residual over a lattice."""

    tag: str
    lattice: str
    max_abs: float
    rms: float
    worst_x: float
    worst_t: float

    def __post_init__(self):
        assert self.max_abs >= self.rms >= 0.0

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "lattice": self.lattice,
            "max_abs": self.max_abs,
            "rms": self.rms,
            "worst_x": self.worst_x,
            "worst_t": self.worst_t,
        }


def _report(tag: str, lattice: Lattice, res: np.ndarray) -> ResidualReport:
    mesh_x, mesh_t = np.broadcast_arrays(*lattice.mesh())
    res = np.broadcast_to(res, mesh_x.shape)
    mag = np.abs(res)
    flat = int(np.argmax(mag))
    return ResidualReport(
        tag=tag,
        lattice=lattice.label,
        max_abs=float(mag.flat[flat]),
        rms=float(np.sqrt(np.mean(np.square(mag.astype(np.float64))))),
        worst_x=float(mesh_x.flat[flat]),
        worst_t=float(mesh_t.flat[flat]),
    )


def system_residual_arrays(pair: AnalyticPair, x, t, lam: float | None = None):
    """Pointwise residuals of the two field equations, from jets."""
    lam = pair.lam if lam is None else lam
    j = pair.eval_unchecked(x, t, 3, 1)
    u, v = j.u, j.v
    # grouped as (f_t + quadratic) + f_xxx so that at lam = -1 the two
    # residuals are bitwise the real/imaginary parts of the complex residual
    r1 = u.d(0, 1) + (u.value * u.d(1, 0) + lam * (v.value * v.d(1, 0))) + u.d(3, 0)
    r2 = v.d(0, 1) + (u.value * v.d(1, 0) + v.value * u.d(1, 0)) + v.d(3, 0)
    return r1, r2


def system_residual(
    pair: AnalyticPair, lattice: Lattice | None = None, lam: float | None = None
) -> tuple[ResidualReport, ResidualReport]:
    lattice = lattice or standard_lattice()
    mesh_x, mesh_t = lattice.mesh()
    r1, r2 = system_residual_arrays(pair, mesh_x, mesh_t, lam)
    return _report("Eq1", lattice, r1), _report("Eq2", lattice, r2)


def potential_residual_arrays(pair: AnalyticPair, x, t, lam: float | None = None):
    """Pointwise residuals of the potential system Q1, Q2."""
    lam = pair.lam if lam is None else lam
    j = pair.eval_unchecked(x, t, 3, 1)
    w, y = j.w, j.y
    q1 = w.d(0, 1) + 0.5 * w.d(1, 0) ** 2 + w.d(3, 0) + (0.5 * lam) * y.d(1, 0) ** 2
    q2 = y.d(0, 1) + w.d(1, 0) * y.d(1, 0) + y.d(3, 0)
    return q1, q2


def potential_residual(
    pair: AnalyticPair, lattice: Lattice | None = None, lam: float | None = None
) -> tuple[ResidualReport, ResidualReport]:
    lattice = lattice or standard_lattice()
    mesh_x, mesh_t = lattice.mesh()
    q1, q2 = potential_residual_arrays(pair, mesh_x, mesh_t, lam)
    return _report("Q1", lattice, q1), _report("Q2", lattice, q2)


def complex_residual_arrays(pair: AnalyticPair, x, t) -> np.ndarray:
    """Residual of U_t + U U_x + U_xxx for U = u + i v (lambda = -1 only)."""
    if pair.lam != -1.0:
        raise WrongLambdaError(-1.0, pair.lam, "complex reduction")
    j = pair.eval_unchecked(x, t, 3, 1)
    u, v = j.u, j.v
    big_u = u.value + 1j * v.value
    big_u_x = u.d(1, 0) + 1j * v.d(1, 0)
    return (u.d(0, 1) + 1j * v.d(0, 1)) + big_u * big_u_x + (u.d(3, 0) + 1j * v.d(3, 0))


def complex_reduction(pair: AnalyticPair, lattice: Lattice | None = None) -> ResidualReport:
    lattice = lattice or standard_lattice()
    mesh_x, mesh_t = lattice.mesh()
    res = complex_residual_arrays(pair, mesh_x, mesh_t)
    return _report("ComplexKdV", lattice, res)


def decoupling_residual_arrays(pair: AnalyticPair, x, t):
    """Scalar KdV residuals of z+ = u+v and z- = u-v (lambda = +1 only)."""
    if pair.lam != 1.0:
        raise WrongLambdaError(1.0, pair.lam, "decoupling reduction")
    j = pair.eval_unchecked(x, t, 3, 1)
    u, v = j.u, j.v
    out = []
    for sign in (1.0, -1.0):
        z0 = u.value + sign * v.value
        z1 = u.d(1, 0) + sign * v.d(1, 0)
        zt = u.d(0, 1) + sign * v.d(0, 1)
        z3 = u.d(3, 0) + sign * v.d(3, 0)
        out.append(zt + z0 * z1 + z3)
    return out[0], out[1]


def decoupling_residual(
    pair: AnalyticPair, lattice: Lattice | None = None
) -> tuple[ResidualReport, ResidualReport]:
    lattice = lattice or standard_lattice()
    mesh_x, mesh_t = lattice.mesh()
    rp, rm = decoupling_residual_arrays(pair, mesh_x, mesh_t)
    return _report("KdV+", lattice, rp), _report("KdV-", lattice, rm)


def galileo(pair: AnalyticPair, c: float) -> AnalyticPair:
    """Boosted pair: u -> u + c observed at x + c t; v unchanged.

    On potentials, w(x, t) -> w(x - c t, t) + c x - c^2 t / 2 (the t-quadratic
    counterterm keeps the potential system invariant), y transports unchanged.
    """
    base = pair.wy_jets

    def wy(x, t, kx, kt):
        x = np.asarray(x)
        t = np.asarray(t)
        dtype = np.result_type(x, t, np.float64)
        x, t = np.broadcast_arrays(x.astype(dtype, copy=False), t.astype(dtype, copy=False))
        cc = dtype.type(c)
        extra = 1 if kt >= 1 else 0
        w, y = base(x - cc * t, t, kx + extra, kt)
        wb = _boosted(w, cc, kx, kt)
        yb = _boosted(y, cc, kx, kt)
        wb = wb + jet_linear(cc * x - (cc * cc / 2) * t, cc, -(cc * cc) / 2, kx, kt)
        return wb, yb

    return AnalyticPair(
        lam=pair.lam,
        family=f"galileo({pair.family};c={c:g})",
        params=pair.params,
        wy_jets=wy,
    )


def _boosted(j: Jet2, c, kx: int, kt: int) -> Jet2:
    """Chain rule for f(x - c t, t): d_T picks up -c d_x."""
    out = np.empty((kx + 1, kt + 1) + j.c.shape[2:], dtype=j.c.dtype)
    out[:, 0] = j.c[: kx + 1, 0]
    if kt >= 1:
        for i in range(kx + 1):
            out[i, 1] = j.c[i, 1] - c * j.c[i + 1, 0]
    return Jet2(out)


def rescale(pair: AnalyticPair, b: float) -> AnalyticPair:
    """Anisotropic rescaling x -> b x, t -> b^3 t, fields scaled by b^-2.

    Potentials scale as w(x, t) -> w(x/b, t/b^3) / b, and each derivative
    order contributes the matching power of b.
    """
    if not b > 0:
        raise ParameterDomainError("b > 0")
    base = pair.wy_jets

    def wy(x, t, kx, kt):
        x = np.asarray(x)
        t = np.asarray(t)
        dtype = np.result_type(x, t, np.float64)
        x, t = np.broadcast_arrays(x.astype(dtype, copy=False), t.astype(dtype, copy=False))
        bb = dtype.type(b)
        w, y = base(x / bb, t / (bb**3), kx, kt)
        return _rescaled(w, bb), _rescaled(y, bb)

    return AnalyticPair(
        lam=pair.lam,
        family=f"rescale({pair.family};b={b:g})",
        params=pair.params,
        wy_jets=wy,
    )


def _rescaled(j: Jet2, b) -> Jet2:
    out = j.c.copy()
    for i in range(j.kx + 1):
        for k in range(j.kt + 1):
            out[i, k] = out[i, k] * b ** (-1 - i - 3 * k)
    return Jet2(out)


# ----------------------------------------------------------------------
# finite-difference oracle (independent derivative path)
# ----------------------------------------------------------------------

# near-optimal float64 central-difference steps per derivative order
_FD_STEP = {1: 6e-6, 2: 1.2e-4, 3: 7.4e-4}


def _fd_once(fn, x, t, order: int, h: float):
    if order == 1:
        return (fn(x + h, t) - fn(x - h, t)) / (2 * h)
    if order == 2:
        return (fn(x + h, t) - 2 * fn(x, t) + fn(x - h, t)) / (h * h)
    if order == 3:
        return (
            fn(x + 2 * h, t) - 2 * fn(x + h, t) + 2 * fn(x - h, t) - fn(x - 2 * h, t)
        ) / (2 * h**3)
    raise ValueError(f"unsupported FD order {order}")


def fd_x_derivative(fn, x, t, order: int, step: float | None = None, richardson: bool = True):
    """Central-difference d^order/dx^order of fn(x, t), Richardson-extrapolated."""
    h = _FD_STEP[order] if step is None else step
    coarse = _fd_once(fn, x, t, order, h)
    if not richardson:
        return coarse
    fine = _fd_once(fn, x, t, order, h / 2)
    return (4 * fine - coarse) / 3


def fd_t_derivative(fn, x, t, step: float = 6e-6, richardson: bool = True):
    coarse = (fn(x, t + step) - fn(x, t - step)) / (2 * step)
    if not richardson:
        return coarse
    h = step / 2
    fine = (fn(x, t + h) - fn(x, t - h)) / (2 * h)
    return (4 * fine - coarse) / 3


def fd_system_residual_arrays(pair: AnalyticPair, x, t, lam: float | None = None):
    """System residuals from finite differences of plain values only."""
    lam = pair.lam if lam is None else lam

    def u_of(xx, tt):
        return pair.uv_values(xx, tt)[0]

    def v_of(xx, tt):
        return pair.uv_values(xx, tt)[1]

    u = u_of(x, t)
    v = v_of(x, t)
    r1 = (
        fd_t_derivative(u_of, x, t)
        + u * fd_x_derivative(u_of, x, t, 1)
        + fd_x_derivative(u_of, x, t, 3)
        + lam * v * fd_x_derivative(v_of, x, t, 1)
    )
    r2 = (
        fd_t_derivative(v_of, x, t)
        + fd_x_derivative(u_of, x, t, 1) * v
        + fd_x_derivative(v_of, x, t, 1) * u
        + fd_x_derivative(v_of, x, t, 3)
    )
    return r1, r2
