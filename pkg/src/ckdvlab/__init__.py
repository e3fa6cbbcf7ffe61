"""Workbench for a parametric coupled KdV system.

Construction of exact solution families, Backlund-transformation residual
checks and nonlinear superposition, mechanized generation and verification of
the ladder of conserved densities, and audited pseudo-spectral evolution.
"""

from .backlund import (
    BacklundParams,
    BTResiduals,
    RegularityScan,
    SuperposedPair,
    bt_residuals,
    default_bt_eta,
    regularity_scan,
    superpose,
)
from .diffpoly import (
    DiffPoly,
    GardnerSeries,
    LamPoly,
    density,
    equivalent_mod_dx,
    gardner_invert,
    is_conserved,
    normal_form,
    theorem_densities,
)
from .errors import (
    BlowUpError,
    CkdvError,
    ParameterDomainError,
    SingularDenominatorError,
    WrongLambdaError,
)
from .families import (
    AnalyticPair,
    KdvSolitonParams,
    PairJets,
    PeriodicParams,
    RationalParams,
    SolitonParams,
    make_decoupled,
    make_periodic,
    make_rational,
    make_soliton,
    zero_pair,
)
from .numerics import (
    EvolveConfig,
    EvolveResult,
    FieldState,
    Grid,
    InvariantReport,
    cfl_limit,
    deriv,
    evolve,
    quadrature,
    sample,
)
from .verify import (
    Lattice,
    ResidualReport,
    complex_reduction,
    decoupling_residual,
    galileo,
    potential_residual,
    rescale,
    standard_lattice,
    system_residual,
)

__version__ = "0.1.0"
