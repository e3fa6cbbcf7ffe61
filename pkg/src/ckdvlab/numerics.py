"""Periodic-grid sampling, spectral calculus and time evolution.

The evolution integrates the semi-discrete spectral system with the cubic
dispersion handled exactly through the integrating factor exp(i k^3 t) and
the nonlinearity advanced by classical RK4. Nonlinear terms are evaluated
pseudo-spectrally in conservative form, d_x(u^2/2 + lam v^2/2) and d_x(u v),
with 2/3-rule dealiasing on by default. The six ladder invariants are
recorded along the run as telemetry.

The periodic box stands in for the line: box size is chosen so decaying data
has negligible tails at the boundary, and the sampler records the wrap-around
mismatch for algebraically decaying profiles.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .diffpoly import DiffPoly, theorem_densities
from .errors import BlowUpError, ParameterDomainError
from .families import AnalyticPair

__all__ = [
    "Grid",
    "FieldState",
    "EvolveConfig",
    "EvolveResult",
    "InvariantReport",
    "sample",
    "deriv",
    "quadrature",
    "cfl_limit",
    "evolve",
    "write_run",
    "fmt_float",
]


@dataclass(frozen=True)
class Grid:
    """Periodic box [-L/2, L/2) with N equispaced nodes (N a power of two)."""

    length: float
    n: int

    def __post_init__(self):
        if not self.length > 0:
            raise ParameterDomainError("L > 0")
        if self.n < 16 or (self.n & (self.n - 1)) != 0:
            raise ParameterDomainError("N a power of two >= 16")

    @property
    def dx(self) -> float:
        return self.length / self.n

    def x(self) -> np.ndarray:
        return np.linspace(-self.length / 2, self.length / 2, self.n, endpoint=False)

    def wavenumbers(self) -> np.ndarray:
        """Non-negative wavenumbers of the real FFT layout."""
        return 2 * np.pi / self.length * np.arange(self.n // 2 + 1)


@dataclass
class FieldState:
    """Sampled (u, v) on a grid at one time."""

    grid: Grid
    u: np.ndarray
    v: np.ndarray
    t: float
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.float64)
        self.v = np.asarray(self.v, dtype=np.float64)
        if self.u.shape != (self.grid.n,) or self.v.shape != (self.grid.n,):
            raise ParameterDomainError("state length matches grid")
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            raise ParameterDomainError("finite field values")

    def max_amplitude(self) -> float:
        return float(max(np.max(np.abs(self.u)), np.max(np.abs(self.v))))


def sample(pair: AnalyticPair, grid: Grid, t: float = 0.0) -> FieldState:
    """Pointwise evaluation of (u, v) at the grid nodes.

    meta records the wrap-around mismatch |f(-L/2) - f(+L/2)| of the analytic
    profile, the price of placing non-periodic data in a periodic box.
    """
    x = grid.x()
    u, v = pair.uv_values(x, float(t))
    ends = np.array([-grid.length / 2, grid.length / 2])
    u_end, v_end = pair.uv_values(ends, float(t))
    meta = {
        "wrap_mismatch_u": float(abs(u_end[0] - u_end[1])),
        "wrap_mismatch_v": float(abs(v_end[0] - v_end[1])),
    }
    return FieldState(grid=grid, u=u, v=v, t=float(t), meta=meta)


def deriv(values: np.ndarray, grid: Grid, order: int) -> np.ndarray:
    """Fourier-multiplier derivative (i k)^order; exact for band-limited data."""
    if order < 0:
        raise ParameterDomainError("derivative order >= 0")
    if order == 0:
        return np.asarray(values, dtype=np.float64).copy()
    spec = np.fft.rfft(values)
    mult = (1j * grid.wavenumbers()) ** order
    if order % 2 == 1:
        mult[-1] = 0.0  # Nyquist mode carries no sign information
    return np.fft.irfft(spec * mult, grid.n)


def quadrature(state: FieldState, dens: DiffPoly, lam: float) -> float:
    """Integral of the density over the box by the periodic trapezoid rule."""
    values = _factor_values(state, dens)
    pointwise = dens.evaluate(values, lam)
    return float(state.grid.dx * np.sum(pointwise))


def _factor_values(state: FieldState, dens: DiffPoly) -> dict:
    values = {}
    for (fld, order) in dens.needed_factors():
        base = state.u if fld == "u" else state.v
        values[(fld, order)] = deriv(base, state.grid, order)
    return values


@dataclass(frozen=True)
class EvolveConfig:
    """Time-stepping configuration for the integrating-factor RK4 scheme."""

    lam: float
    dt: float
    t_end: float
    record_every: int = 50
    dealias: bool = True
    ceiling: float = 1e6
    cfl_c: float = 2.8

    def __post_init__(self):
        if not self.dt > 0:
            raise ParameterDomainError("dt > 0")
        if self.record_every < 1:
            raise ParameterDomainError("record_every >= 1")
        if not self.ceiling > 0:
            raise ParameterDomainError("ceiling > 0")


def cfl_limit(state: FieldState, c: float = 2.8) -> float:
    """Advective step bound c * dx / max|u| (RK4 imaginary-axis heuristic)."""
    peak = state.max_amplitude()
    if peak == 0.0:
        return float("inf")
    return c * state.grid.dx / peak


@dataclass
class InvariantReport:
    """Time series of the six ladder invariants with drift normalization.

    Relative drift of invariant I is max_t |I(t) - I(0)| / scale with
    scale = max(|I(0)|, L1 norm of the integrand at t=0), so identically
    zero invariants are still measured against the size of their terms.
    """

    names: tuple[str, ...]
    times: list[float]
    values: np.ndarray
    normalizers: np.ndarray

    @property
    def initial(self) -> np.ndarray:
        return self.values[0]

    def max_rel_drift(self) -> np.ndarray:
        drift = np.abs(self.values - self.values[0]).max(axis=0)
        return drift / self.normalizers

    def to_dict(self) -> dict:
        return {
            "names": list(self.names),
            "times": [float(t) for t in self.times],
            "values": [[float(v) for v in row] for row in self.values],
            "normalizers": [float(v) for v in self.normalizers],
            "max_rel_drift": [float(v) for v in self.max_rel_drift()],
        }


@dataclass
class EvolveResult:
    states: list[FieldState]
    report: InvariantReport


def _invariant_row(state: FieldState, lam: float, dens) -> np.ndarray:
    return np.array([quadrature(state, p, lam) for (_n, p) in dens])


def _invariant_normalizers(state: FieldState, lam: float, dens) -> np.ndarray:
    out = []
    for _name, p in dens:
        values = _factor_values(state, p)
        pointwise = np.abs(p.evaluate(values, lam))
        l1 = float(state.grid.dx * np.sum(pointwise))
        i0 = abs(quadrature(state, p, lam))
        out.append(max(i0, l1, 1e-30))
    return np.array(out)


def evolve(initial: FieldState, cfg: EvolveConfig, grid: Grid | None = None) -> EvolveResult:
    """March the system from initial.t to cfg.t_end and audit the invariants.

    Raises :class:`BlowUpError` once max|u| or max|v| crosses cfg.ceiling
    (expected for some focusing data) and :class:`ParameterDomainError` when
    dt violates the advective step bound.
    """
    g = grid if grid is not None else initial.grid
    if g != initial.grid:
        raise ParameterDomainError("grid matches initial state")
    limit = cfl_limit(initial, cfg.cfl_c)
    if cfg.dt > limit:
        raise ParameterDomainError(
            f"dt <= {limit:.6g}",
            f"dt={cfg.dt:g} violates the advective bound {limit:.6g} "
            f"(c={cfg.cfl_c:g}, dx={g.dx:g}, max amplitude {initial.max_amplitude():g})",
        )

    n = g.n
    k = g.wavenumbers()
    ik3 = 1j * k**3  # u_t <- +i k^3 u_hat for the -u_xxx term
    ik_nl = 1j * k
    ik_nl[-1] = 0.0
    mask = np.ones(n // 2 + 1)
    if cfg.dealias:
        mask[np.arange(n // 2 + 1) > n // 3] = 0.0
    lam = cfg.lam
    ceiling = cfg.ceiling

    def nonlin(uh, vh):
        u = np.fft.irfft(uh, n)
        v = np.fft.irfft(vh, n)
        peak = max(np.max(np.abs(u)), np.max(np.abs(v)))
        nu = -ik_nl * mask * np.fft.rfft(0.5 * u * u + (0.5 * lam) * v * v)
        nv = -ik_nl * mask * np.fft.rfft(u * v)
        return nu, nv, peak

    phases: dict[float, tuple] = {}

    def step(uh, vh, h, t_now):
        try:
            e_half, e_half_inv, e_full, e_full_inv = phases[h]
        except KeyError:
            e_half = np.exp(ik3 * (h / 2))
            e_half_inv = np.exp(-ik3 * (h / 2))
            e_full = e_half * e_half
            e_full_inv = e_half_inv * e_half_inv
            phases[h] = (e_half, e_half_inv, e_full, e_full_inv)
        ku1, kv1, peak = nonlin(uh, vh)
        if peak > ceiling:
            raise BlowUpError(t_now, peak, ceiling)
        y_u = e_half * (uh + (h / 2) * ku1)
        y_v = e_half * (vh + (h / 2) * kv1)
        nu, nv, _ = nonlin(y_u, y_v)
        ku2, kv2 = e_half_inv * nu, e_half_inv * nv
        y_u = e_half * (uh + (h / 2) * ku2)
        y_v = e_half * (vh + (h / 2) * kv2)
        nu, nv, _ = nonlin(y_u, y_v)
        ku3, kv3 = e_half_inv * nu, e_half_inv * nv
        y_u = e_full * (uh + h * ku3)
        y_v = e_full * (vh + h * kv3)
        nu, nv, _ = nonlin(y_u, y_v)
        ku4, kv4 = e_full_inv * nu, e_full_inv * nv
        uh = e_full * (uh + (h / 6) * (ku1 + 2 * ku2 + 2 * ku3 + ku4))
        vh = e_full * (vh + (h / 6) * (kv1 + 2 * kv2 + 2 * kv3 + kv4))
        return uh, vh

    dens = theorem_densities()
    t0 = initial.t
    span = cfg.t_end - t0
    direction = 1.0 if span >= 0 else -1.0
    n_steps = int(round(abs(span) / cfg.dt)) if span else 0
    if abs(n_steps * cfg.dt - abs(span)) > 1e-12 * max(1.0, abs(span)):
        n_steps = int(np.ceil(abs(span) / cfg.dt - 1e-12))

    uh = np.fft.rfft(initial.u)
    vh = np.fft.rfft(initial.v)

    states = [
        FieldState(grid=g, u=initial.u.copy(), v=initial.v.copy(), t=t0, meta=dict(initial.meta))
    ]
    normalizers = _invariant_normalizers(states[0], lam, dens)
    rows = [_invariant_row(states[0], lam, dens)]
    times = [t0]

    t_now = t0
    for i_step in range(n_steps):
        remaining = abs(cfg.t_end - t_now)
        h = direction * min(cfg.dt, remaining)
        uh, vh = step(uh, vh, h, t_now)
        t_now = cfg.t_end if i_step == n_steps - 1 else t_now + h
        if (i_step + 1) % cfg.record_every == 0 or i_step == n_steps - 1:
            state = FieldState(
                grid=g, u=np.fft.irfft(uh, n), v=np.fft.irfft(vh, n), t=t_now
            )
            if state.max_amplitude() > ceiling:
                raise BlowUpError(t_now, state.max_amplitude(), ceiling)
            states.append(state)
            rows.append(_invariant_row(state, lam, dens))
            times.append(t_now)

    report = InvariantReport(
        names=tuple(name for name, _p in dens),
        times=times,
        values=np.array(rows),
        normalizers=normalizers,
    )
    return EvolveResult(states=states, report=report)


def fmt_float(value: float) -> str:
    """Shortest round-trip decimal (the CSV/JSON float contract)."""
    return repr(float(value))


def write_run(
    outdir: str | Path,
    runid: str,
    result: EvolveResult,
    cfg: EvolveConfig,
    extra: dict | None = None,
) -> dict:
    """Persist a trajectory: one CSV per snapshot plus a JSON run manifest.

    The manifest is written atomically with sorted keys; repeated runs of the
    same command produce byte-identical files.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = result.states[0].grid
    x = grid.x()
    files = []
    for state in result.states:
        name = f"{runid}_t{fmt_float(state.t)}.csv"
        path = outdir / name
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x,u,v\n")
            for xi, ui, vi in zip(x, state.u, state.v):
                fh.write(f"{fmt_float(xi)},{fmt_float(ui)},{fmt_float(vi)}\n")
        files.append(name)
    drift = result.report.max_rel_drift()
    manifest = {
        "grid": {"length": grid.length, "n": grid.n},
        "config": {
            "lam": cfg.lam,
            "dt": cfg.dt,
            "t_end": cfg.t_end,
            "record_every": cfg.record_every,
            "dealias": cfg.dealias,
            "ceiling": cfg.ceiling,
            "cfl_c": cfg.cfl_c,
        },
        "invariants": result.report.to_dict(),
        "drift_summary": {
            name: float(d) for name, d in zip(result.report.names, drift)
        },
        "outputs": files,
    }
    if extra:
        manifest.update(extra)
    write_manifest(outdir / f"{runid}_manifest.json", manifest)
    manifest["outputs"] = files + [f"{runid}_manifest.json"]
    return manifest


def write_manifest(path: str | Path, manifest: dict) -> None:
    """Atomic JSON write with stable key order."""
    path = Path(path)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    os.replace(tmp, path)
