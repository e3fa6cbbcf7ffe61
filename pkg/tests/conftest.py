import numpy as np
import pytest

from ckdvlab import (
    KdvSolitonParams,
    PeriodicParams,
    RationalParams,
    SolitonParams,
    make_decoupled,
    make_periodic,
    make_rational,
    make_soliton,
)


@pytest.fixture(scope="session")
def fig_soliton():
    """The published figure parameters; a tall narrow profile (u(0,0) ~ 432)."""
    return make_soliton(SolitonParams(eta=1 / 12, rho=2.0, big_c=1.0))


@pytest.fixture(scope="session")
def mild_soliton():
    """Same dispersion, C = 0: a smooth O(1) profile suited to float64 oracles."""
    return make_soliton(SolitonParams(eta=1 / 12, rho=2.0, big_c=0.0))


@pytest.fixture(scope="session")
def periodic_pair():
    return make_periodic(PeriodicParams(eta_abs=1 / 12, rho=1.0, big_c=1.0))


@pytest.fixture(scope="session")
def rational_pair():
    return make_rational(RationalParams(big_c=-1.0, rho=12.0, shift_h=0.0))


@pytest.fixture(scope="session")
def decoupled_pair():
    return make_decoupled(KdvSolitonParams(k=0.4), KdvSolitonParams(k=0.55, phase0=0.3))


@pytest.fixture(scope="session")
def family_representatives(fig_soliton, periodic_pair, rational_pair, decoupled_pair):
    return [fig_soliton, periodic_pair, rational_pair, decoupled_pair]


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
