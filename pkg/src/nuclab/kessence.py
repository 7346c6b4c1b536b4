"""Pure-kinetic k-essence: F(X) expansion, fluid diagnostics, and the decay ODE.

Pressure is p = V F(X) with X the kinetic scalar and F expanded quadratically
about its extremum X0, so F_X(X0) = 0 by construction.  Near the extremum the
offset eps = X - X0 obeys a linear decay law whose rate constant exists in two
variants: the consistent 3H, and the published 8 pi V0 form (dimensionally
H^2-like).  Both are first-class and selected explicitly; nothing is picked
silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SingularPotentialError
from .slowroll import hubble_sq

VARIANT_EXACT = "exact"   # decay constant 3H with H^2 = (8 pi / 3) V0
VARIANT_PAPER = "paper"   # published decay constant 8 pi V0
VARIANTS = (VARIANT_EXACT, VARIANT_PAPER)

REGIME_RADIATION = "radiation-like"
REGIME_DARK_MATTER = "dark-matter-like"
REGIME_DARK_ENERGY = "dark-energy-like"
REGIME_INTERMEDIATE = "intermediate"
REGIME_UNCLASSIFIABLE = "unclassifiable"

# (label, band center in w, band half-width)
DEFAULT_REGIME_BANDS = (
    (REGIME_RADIATION, 1.0 / 3.0, 0.1),
    (REGIME_DARK_MATTER, 0.0, 0.1),
    (REGIME_DARK_ENERGY, -1.0, 0.1),
)


@dataclass(frozen=True)
class KEssenceModel:
    """Quadratic kinetic expansion F = f0 + f2 (X - x0)^2 about x0.

    ``v0`` is the averaged (frozen) potential value driving the decay ODE.
    f2 = 0 degenerates F to a constant (cosmological-constant behavior) and is
    accepted.
    """

    f0: float = -1.0
    f2: float = 2.0
    x0: float = 0.5
    v0: float = 0.775

    def __post_init__(self):
        for name in ("f0", "f2", "x0", "v0"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not self.x0 > 0.0:
            raise DomainError(f"kinetic scale x0 must be positive, got {self.x0}")
        if not self.v0 > 0.0:
            raise DomainError(f"averaged potential v0 must be positive, got {self.v0}")


@dataclass(frozen=True)
class KEssenceState:
    """One trajectory sample; x = x0 + eps identically."""

    t: float
    x: float
    eps: float


def f_eval(model: KEssenceModel, x: float) -> tuple[float, float, float]:
    """Closed-form (F, F_X, F_XX) of the quadratic expansion at x."""
    d = x - model.x0
    return (model.f0 + model.f2 * d * d, 2.0 * model.f2 * d, 2.0 * model.f2)


@dataclass(frozen=True)
class FluidDiagnostics:
    """Pressure, density, equation of state, and both sound-speed readings.

    ``w`` and ``cs2_exact`` are nan when their denominators vanish (flagged
    through the ``*_defined`` properties rather than raised).  ``cs2_approx``
    is the published approximate closed form evaluated with the instantaneous
    offset; ``cs2_exact`` is authoritative.
    """

    p: float
    rho: float
    w: float
    cs2_exact: float
    cs2_approx: float

    @property
    def w_defined(self) -> bool:
        return math.isfinite(self.w)

    @property
    def cs2_defined(self) -> bool:
        return math.isfinite(self.cs2_exact)

    @property
    def cs2_causal(self) -> bool:
        """True when cs2_exact lies in [0, 1]; a breach flags instability."""
        return self.cs2_defined and 0.0 <= self.cs2_exact <= 1.0


def cs2_approx_printed(x0: float, eps_ref: float) -> float:
    """Published approximate sound speed 1 / (1 + 4 x0 (1 + x0 / (2 eps_ref))).

    eps_ref = 0 returns the one-sided limit 0.0.
    """
    if eps_ref == 0.0:
        return 0.0
    denom = 1.0 + 4.0 * x0 * (1.0 + x0 / (2.0 * eps_ref))
    return 1.0 / denom if denom != 0.0 else math.nan


def fluid_diagnostics(model: KEssenceModel, x: float, v: float) -> FluidDiagnostics:
    """p = v F, rho = v (2 x F_X - F), w = F/(2 x F_X - F), and sound speeds.

    The potential factor v cancels out of w exactly; w is computed from the
    cancelled form so the invariance is literal.
    """
    if not v > 0.0:
        raise DomainError(f"potential factor v must be positive, got {v}")
    F, F_X, F_XX = f_eval(model, x)
    rho_factor = 2.0 * x * F_X - F
    cs_denom = F_X + 2.0 * x * F_XX
    return FluidDiagnostics(
        p=v * F,
        rho=v * rho_factor,
        w=F / rho_factor if rho_factor != 0.0 else math.nan,
        cs2_exact=F_X / cs_denom if cs_denom != 0.0 else math.nan,
        cs2_approx=cs2_approx_printed(model.x0, x - model.x0),
    )


def decay_constant(model: KEssenceModel, variant: str = VARIANT_EXACT) -> float:
    """Rate constant k of eps' = -k eps for the chosen exponent variant."""
    if variant == VARIANT_EXACT:
        return 3.0 * math.sqrt(hubble_sq(model.v0))
    if variant == VARIANT_PAPER:
        return 8.0 * math.pi * model.v0
    raise DomainError(f"unknown exponent variant {variant!r}; use one of {VARIANTS}")


def epsilon_closed_form(
    model: KEssenceModel, eps0: float, t: float, variant: str = VARIANT_EXACT
) -> float:
    """Exact solution eps0 exp(-k t) of the linear decay law."""
    return eps0 * math.exp(-decay_constant(model, variant) * t)


def evolve_epsilon(
    model: KEssenceModel,
    eps0: float,
    t_end: float,
    steps: int = 256,
    exponent_variant: str = VARIANT_EXACT,
) -> list[KEssenceState]:
    """Integrate eps' = -k eps with classical fixed-step RK4.

    Returns steps + 1 samples including t = 0.  Fixed-step (not adaptive): the
    ODE is linear and stiffness-free at these scales, and determinism keeps
    regression values stable.
    """
    if not math.isfinite(eps0):
        raise DomainError(f"eps0 must be finite, got {eps0}")
    if not t_end > 0.0:
        raise DomainError(f"t_end must be positive, got {t_end}")
    if steps < 16:
        raise DomainError(f"steps must be at least 16, got {steps}")
    k = decay_constant(model, exponent_variant)
    h = t_end / steps
    states = [KEssenceState(t=0.0, x=model.x0 + eps0, eps=eps0)]
    y = eps0
    for n in range(1, steps + 1):
        k1 = -k * y
        k2 = -k * (y + 0.5 * h * k1)
        k3 = -k * (y + 0.5 * h * k2)
        k4 = -k * (y + h * k3)
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states.append(KEssenceState(t=n * h, x=model.x0 + y, eps=y))
    return states


def field_equation_residual(
    model: KEssenceModel,
    phi_ddot: float,
    phi_dot: float,
    h: float,
    v: float,
    v_phi: float,
) -> float:
    """Residual of the k-essence field equation with X = phi_dot^2 / 2.

    (F_X + 2 X F_XX) phi_ddot + 3 H F_X phi_dot + (2 X F_X - F) V_phi / V;
    v_phi = 0 drops the gradient term entirely (the frozen-potential form).
    """
    x = 0.5 * phi_dot * phi_dot
    F, F_X, F_XX = f_eval(model, x)
    if v_phi == 0.0:
        grad_term = 0.0
    else:
        if v == 0.0:
            raise SingularPotentialError("V = 0 with a nonzero potential gradient")
        grad_term = (2.0 * x * F_X - F) * (v_phi / v)
    return (F_X + 2.0 * x * F_XX) * phi_ddot + 3.0 * h * F_X * phi_dot + grad_term


def classify_regime(diag: FluidDiagnostics, bands=DEFAULT_REGIME_BANDS) -> str:
    """Label the equation of state by its nearest regime band."""
    if not math.isfinite(diag.w):
        return REGIME_UNCLASSIFIABLE
    for label, center, half_width in bands:
        if abs(diag.w - center) < half_width:
            return label
    return REGIME_INTERMEDIATE
