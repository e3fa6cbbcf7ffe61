"""Exact differential-polynomial algebra and the conserved-density ladder."""

from fractions import Fraction

import pytest

from ckdvlab.diffpoly import (
    GARDNER_THEOREM_MATCH,
    DiffPoly,
    LamPoly,
    density,
    equivalent_mod_dx,
    gardner_invert,
    is_conserved,
    normal_form,
    subst_t,
    theorem_densities,
    u_var,
    v_var,
)

F = Fraction


def lam_times(p):
    return p.times_lambda()


# ----------------------------------------------------------------------
# coefficient ring
# ----------------------------------------------------------------------

def test_lampoly_arithmetic():
    a = LamPoly((F(1), F(2)))       # 1 + 2L
    b = LamPoly((F(0), F(0), F(3)))  # 3L^2
    assert (a + b).c == (F(1), F(2), F(3))
    assert (a * b).c == (F(0), F(0), F(3), F(6))
    assert (a - a).is_zero()
    assert a(F(-1)) == F(-1)
    assert a.eval_float(0.5) == 2.0
    assert a.shifted(2).c == (F(0), F(0), F(1), F(2))
    assert LamPoly((F(0), F(0))).is_zero()


# ----------------------------------------------------------------------
# total derivative and Euler operator
# ----------------------------------------------------------------------

def test_dx_on_single_variable():
    assert u_var().dx() == u_var(1)


def test_dx_leibniz():
    p = (u_var() * v_var()).dx()
    assert p == u_var(1) * v_var() + u_var() * v_var(1)


def test_dx_square():
    p = (F(1, 2) * (u_var() * u_var())).dx()
    assert p == u_var() * u_var(1)


def test_euler_on_square():
    assert (u_var() * u_var()).euler("u") == 2 * u_var()


def test_euler_mixed_second_order():
    # E_u(u u_xx) = u_xx + d_x^2 u = 2 u_xx
    assert (u_var() * u_var(2)).euler("u") == 2 * u_var(2)


def test_euler_annihilates_total_derivatives():
    p = (u_var() * u_var() * u_var() + v_var() * v_var(1)).dx()
    assert p.euler("u").is_zero()
    assert p.euler("v").is_zero()


def random_diffpoly(rng, max_degree=4, max_order=4, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        deg = int(rng.integers(1, max_degree + 1))
        mono = []
        for _ in range(deg):
            fld = "u" if rng.random() < 0.5 else "v"
            mono.append((fld, int(rng.integers(0, max_order + 1))))
        coeff = LamPoly(
            tuple(F(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(2))
        )
        key = tuple(sorted(mono, key=lambda fk: (fk[0], fk[1])))
        terms[key] = terms.get(key, LamPoly(())) + coeff
    return DiffPoly(terms)


def test_euler_kills_dx_image_randomized(rng):
    # exact-arithmetic property suite: E o d_x = 0
    for _ in range(100):
        p = random_diffpoly(rng)
        q = p.dx()
        assert q.euler("u").is_zero()
        assert q.euler("v").is_zero()


# ----------------------------------------------------------------------
# time substitution
# ----------------------------------------------------------------------

def test_subst_t_of_u_matches_conservation_form():
    # u_t = -d_x(u^2/2 + u_xx + lam v^2/2)
    expect = -(
        F(1, 2) * (u_var() * u_var()) + u_var(2) + F(1, 2) * lam_times(v_var() * v_var())
    ).dx()
    assert subst_t(u_var()) == expect


def test_subst_t_of_v_matches_conservation_form():
    expect = -(u_var() * v_var() + v_var(2)).dx()
    assert subst_t(v_var()) == expect


def test_quadratic_density_time_derivative_is_exact():
    p = u_var() * u_var() + lam_times(v_var() * v_var())
    q = subst_t(p)
    assert q.euler("u").is_zero() and q.euler("v").is_zero()


# ----------------------------------------------------------------------
# ladder recursion
# ----------------------------------------------------------------------

def test_ladder_base_case():
    series = gardner_invert(0)
    assert series.r[0] == u_var()
    assert series.s[0] == v_var()


def test_ladder_first_order():
    series = gardner_invert(1)
    assert series.r[1] == -u_var(1)
    assert series.s[1] == -v_var(1)


def test_ladder_second_order():
    series = gardner_invert(2)
    expect_r = u_var(2) + F(1, 6) * (u_var() * u_var() + lam_times(v_var() * v_var()))
    expect_s = v_var(2) + F(1, 3) * (u_var() * v_var())
    assert series.r[2] == expect_r
    assert series.s[2] == expect_s


def test_roundtrip_substitution_vanishes_through_order_8():
    series = gardner_invert(8)
    du, dv = series.roundtrip_defects()
    assert all(p.is_zero() for p in du)
    assert all(p.is_zero() for p in dv)


def test_all_ladder_densities_conserved_up_to_order_8():
    for n in range(9):
        for comp in ("r", "s"):
            assert is_conserved(density(n, comp)), (n, comp)


def test_odd_densities_are_exact():
    for n in (1, 3, 5, 7):
        for comp in ("r", "s"):
            assert equivalent_mod_dx(density(n, comp), DiffPoly.zero()), (n, comp)


def test_lambda_degree_bound():
    # construction order n yields coupling-degree <= ceil(n/2)
    series = gardner_invert(8)
    for n in range(9):
        for p in (series.r[n], series.s[n]):
            deg = max((c.degree for c in p.terms.values()), default=0)
            assert deg <= (n + 1) // 2


# ----------------------------------------------------------------------
# conserved-quantity verdicts
# ----------------------------------------------------------------------

def test_is_conserved_examples():
    assert is_conserved(u_var())
    assert is_conserved(u_var() * v_var())
    assert is_conserved(u_var(1))  # trivially exact
    assert not is_conserved(u_var() * u_var() * u_var())


def test_is_conserved_at_specialized_coupling():
    p = u_var() * u_var() + lam_times(v_var() * v_var())
    assert is_conserved(p, F(-1))
    assert is_conserved(p, F(0))
    assert is_conserved(p, F(1))


def test_equivalent_mod_dx_examples():
    p = u_var() * u_var(2)
    q = -(u_var(1) * u_var(1))
    assert equivalent_mod_dx(p, q)
    assert equivalent_mod_dx(p, p)
    assert not equivalent_mod_dx(u_var() * u_var(), u_var() * v_var())


def test_ladder_matches_published_quantities():
    thm = theorem_densities()
    for (n, comp), (idx, const) in GARDNER_THEOREM_MATCH.items():
        assert equivalent_mod_dx(density(n, comp), const * thm[idx][1]), (n, comp)


def test_normal_form_is_canonical_and_equivalent():
    p = u_var() * u_var(2)
    q = -(u_var(1) * u_var(1))
    assert normal_form(p) == normal_form(q)
    assert equivalent_mod_dx(normal_form(p), p)
    # pure total derivatives collapse to zero
    assert normal_form((u_var() * u_var() * v_var()).dx()).is_zero()


def test_normal_form_of_second_density():
    nf = normal_form(density(2, "r"))
    assert nf == F(1, 6) * (u_var() * u_var() + lam_times(v_var() * v_var()))


def test_complex_expansion_matches_scalar_ladder_at_focusing_coupling():
    """At lam = -1 the pair ladder is the real/imaginary split of the scalar
    ladder of the single complexified field; verified symbolically to n = 4."""

    def cmul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    n_max = 4
    g = [(u_var(), v_var())]
    for m in range(1, n_max + 1):
        quad = (DiffPoly.zero(), DiffPoly.zero())
        for i in range(m - 1):
            j = m - 2 - i
            prod = cmul(g[i], g[j])
            quad = (quad[0] + prod[0], quad[1] + prod[1])
        g.append(
            (
                -g[m - 1][0].dx() + F(1, 6) * quad[0],
                -g[m - 1][1].dx() + F(1, 6) * quad[1],
            )
        )
    series = gardner_invert(n_max)
    for n in range(n_max + 1):
        assert g[n][0] == series.r[n].specialize(F(-1)), n
        assert g[n][1] == series.s[n].specialize(F(-1)), n


# ----------------------------------------------------------------------
# presentation
# ----------------------------------------------------------------------

def test_pretty_format_of_second_density():
    assert density(2, "r").pretty() == "1/6*u^2 + 1/6*λ*v^2 + u_{xx}"
    assert density(2, "s").pretty() == "1/3*u*v + v_{xx}"


def test_pretty_negative_and_zero():
    assert density(1, "r").pretty() == "-u_{x}"
    assert DiffPoly.zero().pretty() == "0"


def test_pretty_is_deterministic():
    a = density(4, "r").pretty()
    b = density(4, "r").pretty()
    assert a == b
    # canonical ordering: higher total degree first, then field/order
    assert a.index("u^3") < a.index("u_{xxxx}")


def test_json_terms_roundtrip_structure():
    terms = density(2, "r").json_terms()
    assert {"factors": [["u", 0], ["u", 0]], "coeff": [[0, 1, 6]]} in terms
    assert {"factors": [["v", 0], ["v", 0]], "coeff": [[1, 1, 6]]} in terms
    assert {"factors": [["u", 2]], "coeff": [[0, 1, 1]]} in terms
    assert terms == density(2, "r").json_terms()


def test_evaluate_numeric_path():
    import numpy as np

    p = density(2, "r")  # u_xx + (u^2 + lam v^2)/6
    values = {
        ("u", 0): np.array([1.0, 2.0]),
        ("u", 2): np.array([0.5, -0.5]),
        ("v", 0): np.array([3.0, 1.0]),
    }
    out = p.evaluate(values, lam=-1.0)
    expect = np.array([0.5 + (1 - 9) / 6, -0.5 + (4 - 1) / 6])
    assert np.allclose(out, expect, rtol=1e-15)


def test_var_validation():
    with pytest.raises(ValueError):
        DiffPoly.var("w")
    with pytest.raises(ValueError):
        DiffPoly.var("u", -1)
