"""Residual reports, reduction identities, and symmetry transforms."""

import numpy as np
import pytest

from ckdvlab import (
    SolitonParams,
    WrongLambdaError,
    make_soliton,
    zero_pair,
)
from ckdvlab.errors import ParameterDomainError
from ckdvlab.verify import (
    complex_reduction,
    complex_residual_arrays,
    decoupling_residual,
    decoupling_residual_arrays,
    galileo,
    potential_residual,
    rescale,
    standard_lattice,
    system_residual,
    system_residual_arrays,
)


def test_zero_pair_reports_exact_zero():
    z = zero_pair(-1.0)
    r1, r2 = system_residual(z)
    q1, q2 = potential_residual(z)
    c = complex_reduction(z)
    for rep in (r1, r2, q1, q2, c):
        assert rep.max_abs == 0.0 and rep.rms == 0.0


def test_report_shape_and_worst_point(mild_soliton):
    r1, _ = system_residual(mild_soliton)
    assert r1.tag == "Eq1"
    assert r1.max_abs >= r1.rms >= 0.0
    assert -40 <= r1.worst_x <= 40
    assert r1.worst_t in (-16.0, -8.0, 0.0, 8.0, 16.0)
    d = r1.to_dict()
    assert set(d) == {"tag", "lattice", "max_abs", "rms", "worst_x", "worst_t"}


def test_deliberate_lambda_mismatch_is_reported_not_raised(fig_soliton):
    # evaluating the lambda = -1 soliton under lambda = +1 must give O(1) residuals
    r1, _r2 = system_residual(fig_soliton, lam=1.0)
    assert r1.max_abs > 1e-3


def test_complex_reduction_requires_focusing_coupling(decoupled_pair):
    with pytest.raises(WrongLambdaError):
        complex_reduction(decoupled_pair)


def test_decoupling_requires_defocusing_coupling(fig_soliton):
    with pytest.raises(WrongLambdaError):
        decoupling_residual(fig_soliton)


def test_complex_components_equal_system_residuals_bitwise(fig_soliton, mild_soliton):
    lat = standard_lattice()
    x, t = lat.mesh()
    for pair in (mild_soliton, fig_soliton):
        r1, r2 = system_residual_arrays(pair, x, t)
        cres = complex_residual_arrays(pair, x, t)
        assert np.array_equal(cres.real, r1)
        assert np.array_equal(cres.imag, r2)


def test_decoupling_components_equal_residual_sum_difference(decoupled_pair):
    lat = standard_lattice()
    x, t = lat.mesh()
    r1, r2 = system_residual_arrays(decoupled_pair, x, t)
    rp, rm = decoupling_residual_arrays(decoupled_pair, x, t)
    j = decoupled_pair.eval_unchecked(x, t, 3, 1)
    scale = (
        1.0
        + np.abs(j.u.d(0, 1))
        + np.abs(j.u.value * j.u.d(1, 0))
        + np.abs(j.u.d(3, 0))
        + np.abs(j.v.d(0, 1))
        + np.abs(j.v.value * j.v.d(1, 0))
        + np.abs(j.v.d(3, 0))
    )
    eps = np.finfo(np.longdouble).eps
    assert np.all(np.abs(rp - (r1 + r2)) <= 8 * eps * scale)
    assert np.all(np.abs(rm - (r1 - r2)) <= 8 * eps * scale)


def test_complex_reduction_magnitude(fig_soliton):
    rep = complex_reduction(fig_soliton)
    assert rep.max_abs < 1e-9


def test_galileo_identity_and_inverse(mild_soliton):
    ident = galileo(mild_soliton, 0.0)
    x = np.linspace(-10, 10, 41)
    u0, v0 = mild_soliton.uv_values(x, 1.5)
    u1, v1 = ident.uv_values(x, 1.5)
    assert np.allclose(u0, u1, atol=1e-15) and np.allclose(v0, v1, atol=1e-15)

    back = galileo(galileo(mild_soliton, 1.0), -1.0)
    u2, v2 = back.uv_values(x, 1.5)
    assert np.max(np.abs(u2 - u0)) < 1e-12
    assert np.max(np.abs(v2 - v0)) < 1e-12


def test_galileo_preserves_residuals(family_representatives):
    for pair in family_representatives:
        for c in (-1.0, 1.0):
            r1, r2 = system_residual(galileo(pair, c))
            q1, q2 = potential_residual(galileo(pair, c))
            for rep in (r1, r2, q1, q2):
                assert rep.max_abs < 1e-9, (pair.family, c, rep.tag)


def test_galileo_shifts_u_by_c(mild_soliton):
    c = 0.75
    boosted = galileo(mild_soliton, c)
    x = np.linspace(-10, 10, 21)
    t = 2.0
    ub, vb = boosted.uv_values(x, t)
    u0, v0 = mild_soliton.uv_values(x - c * t, t)
    assert np.allclose(ub, u0 + c, rtol=0, atol=1e-14)
    assert np.allclose(vb, v0, rtol=0, atol=1e-14)


def test_rescale_identity_and_inverse(mild_soliton):
    ident = rescale(mild_soliton, 1.0)
    x = np.linspace(-10, 10, 41)
    u0, v0 = mild_soliton.uv_values(x, 1.5)
    u1, v1 = ident.uv_values(x, 1.5)
    assert np.array_equal(u0, u1) and np.array_equal(v0, v1)

    back = rescale(rescale(mild_soliton, 2.0), 0.5)
    u2, v2 = back.uv_values(x, 1.5)
    assert np.max(np.abs(u2 - u0)) < 1e-12
    assert np.max(np.abs(v2 - v0)) < 1e-12


def test_rescale_scales_fields(mild_soliton):
    b = 2.0
    scaled = rescale(mild_soliton, b)
    x = np.linspace(-10, 10, 21)
    t = 3.0
    us, vs = scaled.uv_values(x, t)
    u0, v0 = mild_soliton.uv_values(x / b, t / b**3)
    assert np.allclose(us, u0 / b**2, rtol=1e-14)
    assert np.allclose(vs, v0 / b**2, rtol=1e-14)


def test_rescale_preserves_residuals(family_representatives):
    for pair in family_representatives:
        for b in (0.5, 2.0):
            r1, r2 = system_residual(rescale(pair, b))
            for rep in (r1, r2):
                assert rep.max_abs < 1e-9, (pair.family, b, rep.tag)


def test_rescale_rejects_nonpositive_scale(mild_soliton):
    with pytest.raises(ParameterDomainError, match="b > 0"):
        rescale(mild_soliton, 0.0)
    with pytest.raises(ParameterDomainError, match="b > 0"):
        rescale(mild_soliton, -2.0)


def test_transforms_compose_with_residual_checks():
    pair = make_soliton(SolitonParams(eta=0.3, rho=1.0, big_c=-0.5, phase0=0.4))
    r1, r2 = system_residual(galileo(rescale(pair, 2.0), -1.0))
    assert r1.max_abs < 1e-9 and r2.max_abs < 1e-9
