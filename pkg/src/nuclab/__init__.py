"""Numerical toolkit for a tilted sine-Gordon false-vacuum model.

Covers Planck-normalized scale formulas, vacuum location and Bogomol'nyi gap
brackets, slow-roll and negative-pressure diagnostics, thin-wall tunneling
amplitudes and nucleation rates, pure-kinetic k-essence dynamics, and a
published-value deviation report surfaced through the ``nuclab`` CLI.
"""

from .claims import ClaimsLedgerEntry
from .config import RunConfig
from .errors import (
    ConfigError,
    ContractViolationError,
    DomainError,
    NoFalseVacuumError,
    NuclabError,
    NumericError,
    SingularPotentialError,
)
from .kessence import (
    FluidDiagnostics,
    KEssenceModel,
    KEssenceState,
    classify_regime,
    decay_constant,
    epsilon_closed_form,
    evolve_epsilon,
    f_eval,
    field_equation_residual,
    fluid_diagnostics,
)
from .potential import (
    GapBrackets,
    PotentialSpec,
    StationaryPoint,
    TemplatePotentialSpec,
    VacuumPair,
    classify_vacua,
    find_stationary_points,
    gap_brackets,
    v1,
    v1_derivatives,
    v_template,
    v_total,
)
from .report import build_claims_ledger, run_pipeline
from .slowroll import (
    PressureParams,
    SlowRollReport,
    hubble_sq,
    pressure_params,
    slow_roll_check,
)
from .tunneling import (
    ThinWallBasis,
    TunnelingResult,
    WaveFunctional,
    decay_rate_gamma,
    euclidean_action,
    make_wave_functional,
    matrix_element_closed,
    matrix_element_functional,
    normalization_constant,
    particle_density,
    thin_wall_fourier,
)
from .units import (
    ChaoticScales,
    PlanckUnits,
    chaotic_phi_star,
    chaotic_scales,
    chaotic_threshold,
    chaotic_trajectory,
    natural_units,
    string_coupling,
)

__version__ = "0.1.0"
