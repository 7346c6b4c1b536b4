"""Thin-wall basis, Gaussian wave functionals, and tunneling rates/amplitudes.

The nucleated bubble is modeled as a soliton-antisoliton pair a distance L
apart; its field profile is a box whose transform is sqrt(2/pi) sin(kL/2)/k.
Initial and final states are Gaussian functionals of a single collective mode
amplitude (the quasi-one-dimensional reduction), normalized over the mode
amplitude range [0, upper_limit].  The tunneling matrix element comes in a
closed form and as the reduced Wronskian-type integral of the two functionals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ContractViolationError, DomainError, NumericError
from .potential import GapBrackets
from .units import natural_units

BOX_HEIGHT_DEFAULT = 2.0 * math.pi
UPPER_LIMIT_DEFAULT = 2.0 * math.pi

K_SINGULARITY_EPS = 1e-12   # |k| below this takes the analytic k -> 0 limit
QUAD_REL_TOL = 1e-10
QUAD_ABS_TOL = 1e-14
QUAD_LIMIT = 200

_EXP_ARG_MAX = 700.0        # beyond these, evaluation switches to log space
_LOG_OVERFLOW = 709.0
_LOG_UNDERFLOW = -745.0

GROUPING_EXPONENT = "exponent"    # trailing bracket multiplies the exponent
GROUPING_PREFACTOR = "prefactor"  # trailing bracket scales the prefactor


def _quad(f, a, b):
    # QUADPACK adaptive Gauss-Kronrod; anything but a clean return is an error.
    out = integrate.quad(
        f, a, b, epsabs=QUAD_ABS_TOL, epsrel=QUAD_REL_TOL, limit=QUAD_LIMIT, full_output=1
    )
    if len(out) > 3:
        raise NumericError(f"quadrature failed on [{a}, {b}]: {out[3]}")
    return out[0]


def thin_wall_fourier(k, L: float):
    """Box-profile transform sqrt(2/pi) sin(k L/2) / k.

    The removable singularity at k = 0 is handled analytically: |k| < 1e-12
    returns the limit sqrt(2/pi) L/2.  Accepts scalars or arrays in k.
    """
    if not L > 0.0:
        raise DomainError(f"separation L must be positive, got {L}")
    k_arr = np.asarray(k, dtype=float)
    small = np.abs(k_arr) < K_SINGULARITY_EPS
    safe = np.where(small, 1.0, k_arr)
    out = np.where(
        small,
        math.sqrt(2.0 / math.pi) * L / 2.0,
        np.sqrt(2.0 / np.pi) * np.sin(safe * L / 2.0) / safe,
    )
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ThinWallBasis:
    """Thin-wall box profile of width L; ``height`` scales the reconstruction.

    The transform itself is that of a unit-height box, so reconstructing the
    position-space profile multiplies by ``height`` (default 2 pi).
    """

    L: float
    height: float = BOX_HEIGHT_DEFAULT

    def __post_init__(self):
        if not self.L > 0.0:
            raise DomainError(f"separation L must be positive, got {self.L}")

    def amplitude(self, k):
        return thin_wall_fourier(k, self.L)

    def box_profile(self, x):
        """Ideal position-space profile: ``height`` inside |x| < L/2, else 0."""
        return np.where(np.abs(x) < self.L / 2.0, self.height, 0.0)

    def reconstruct(self, x, k_max: float, n_k: int = 200_001):
        """Inverse-transform the amplitude over a symmetric truncated k grid.

        Trapezoid sum of height/sqrt(2 pi) * amplitude(k) cos(k x); interior
        points converge to ``height`` as k_max grows (Gibbs ringing remains
        near |x| = L/2).
        """
        ks = np.linspace(-k_max, k_max, n_k)
        amp = thin_wall_fourier(ks, self.L)
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        scale = self.height / math.sqrt(2.0 * math.pi)
        vals = np.array([scale * np.trapezoid(amp * np.cos(ks * xi), ks) for xi in xs])
        return float(vals[0]) if np.ndim(x) == 0 else vals


def euclidean_action(phi_0: float, phi_C: float, brackets: GapBrackets) -> float:
    """Saturated Bogomol'nyi bound (1/2)(phi_0 - phi_C)^2 * bracket_total, Q = 0."""
    d = phi_0 - phi_C
    return 0.5 * d * d * brackets.bracket_total


def initial_energy_density(m: float) -> float:
    """Non-super-Planckian energy density bound 60 m^2 / (4 pi), taken as equality."""
    return 60.0 / (4.0 * math.pi) * m * m


def initial_state_action(m: float) -> float:
    """S_i = -(3/8) of the initial energy density."""
    return -0.375 * initial_energy_density(m)


def decay_rate_gamma(s_b: float, m: float, prefactor_A: float = 1.0) -> float:
    """Bubble nucleation rate A exp(-S_b + S_i).

    Saturates to inf instead of raising when the exponent overflows.
    """
    if not prefactor_A > 0.0:
        raise DomainError(f"prefactor A must be positive, got {prefactor_A}")
    exponent = -s_b + initial_state_action(m)
    if exponent > _LOG_OVERFLOW:
        return math.inf
    return prefactor_A * math.exp(exponent)


def particle_density(
    mass_M: float, e_field: float, h: float, s_e: float, charge: float = 1.0
) -> float:
    """Pair density per Planck length (1/2 pi) sqrt(M^2 + e E0^2/H^2) exp(-S_E).

    The applied field is down-played by default (e_field = 0 upstream), which
    reduces this to (M / 2 pi) exp(-S_E).
    """
    if not 0.0 < mass_M <= 1.0:
        raise DomainError(f"mass M must lie in (0, 1] in Planck units, got {mass_M}")
    if e_field != 0.0 and h == 0.0:
        raise DomainError("H = 0 with a nonzero applied field divides by zero")
    field_term = 0.0 if e_field == 0.0 else charge * e_field * e_field / (h * h)
    return math.sqrt(mass_M * mass_M + field_term) / (2.0 * math.pi) * math.exp(-s_e)


def normalization_constant(brackets_coeff: float, upper_limit: float) -> float:
    """1 / sqrt(integral_0^U exp(-2 a phi^2) dphi) by adaptive quadrature.

    ``upper_limit`` may be inf, in which case the half-Gaussian value applies.
    """
    if not brackets_coeff > 0.0:
        raise DomainError(f"bracket coefficient must be positive, got {brackets_coeff}")
    if not upper_limit > 0.0:
        raise DomainError(f"upper limit must be positive, got {upper_limit}")
    a2 = 2.0 * brackets_coeff
    val = _quad(lambda p: math.exp(-a2 * p * p), 0.0, upper_limit)
    return 1.0 / math.sqrt(val)


def _gaussian_norm_integral(a: float, upper: float) -> float:
    # Closed erf form of integral_0^U exp(-2 a phi^2) dphi, used as the
    # normalization guard; construction goes through quadrature instead.
    half = 0.5 * math.sqrt(math.pi / (2.0 * a))
    if math.isinf(upper):
        return half
    return half * math.erf(math.sqrt(2.0 * a) * upper)


@dataclass(frozen=True)
class WaveFunctional:
    """Normalized Gaussian mode functional c exp(-alpha (phi - center)^2).

    The normalization lives in the mode amplitude centered at zero:
    c^2 * integral_0^upper_limit exp(-2 alpha phi^2) dphi = 1.
    """

    center: float
    alpha: float
    c_norm: float
    kind: str  # "initial" or "final"
    upper_limit: float = UPPER_LIMIT_DEFAULT

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise DomainError(f"stiffness alpha must be positive, got {self.alpha}")
        if not (self.c_norm > 0.0 and math.isfinite(self.c_norm)):
            raise DomainError(f"normalization constant must be positive and finite, got {self.c_norm}")
        if self.kind not in ("initial", "final"):
            raise DomainError(f"kind must be 'initial' or 'final', got {self.kind!r}")

    def value(self, phi):
        d = phi - self.center
        return self.c_norm * np.exp(-self.alpha * d * d)

    def second_derivative(self, phi):
        d = phi - self.center
        a = self.alpha
        return self.c_norm * np.exp(-a * d * d) * (4.0 * a * a * d * d - 2.0 * a)


def make_wave_functional(
    center: float, alpha: float, kind: str, upper_limit: float = UPPER_LIMIT_DEFAULT
) -> WaveFunctional:
    """Construct a functional with its normalization fixed by quadrature."""
    return WaveFunctional(
        center=center,
        alpha=alpha,
        c_norm=normalization_constant(alpha, upper_limit),
        kind=kind,
        upper_limit=upper_limit,
    )


def _check_normalized(wf: WaveFunctional, tol: float = 1e-6):
    residual = wf.c_norm ** 2 * _gaussian_norm_integral(wf.alpha, wf.upper_limit) - 1.0
    if abs(residual) > tol:
        raise ContractViolationError(
            f"{wf.kind} functional is not normalized over [0, {wf.upper_limit}]: "
            f"residual {residual:.3e}"
        )


def matrix_element_functional(
    initial: WaveFunctional,
    final: WaveFunctional,
    phi_0: float,
    upper: float,
    m_star: float | None = None,
) -> float:
    """Reduced tunneling matrix element between two normalized functionals.

    (1 / 2 m*) * integral over [0, upper] of
    (Psi_i Psi_f'' - Psi_f Psi_i'') theta(phi - phi_0) dphi,
    all derivatives taken in the single collective mode amplitude.  The form is
    antisymmetric under swapping the two states.
    """
    if m_star is None:
        m_star = natural_units().m_star
    if not upper > phi_0:
        raise DomainError(f"upper={upper} must exceed phi_0={phi_0}")
    _check_normalized(initial)
    _check_normalized(final)
    lo = max(0.0, phi_0)
    if lo >= upper:
        return 0.0

    def integrand(p):
        return float(
            initial.value(p) * final.second_derivative(p)
            - final.value(p) * initial.second_derivative(p)
        )

    return _quad(integrand, lo, upper) / (2.0 * m_star)


def matrix_element_closed(
    c1: float,
    c2: float,
    m_star: float,
    x: float,
    L: float,
    alpha: float,
    exponent_grouping: str = GROUPING_EXPONENT,
) -> float:
    """Closed-form amplitude (c1 c2 / m*) cosh(2 sqrt(x/2L) - sqrt(L/2x)) e^{-alpha L [L/2x]}.

    The trailing bracket of the printed source formula is ambiguous.  The
    default reading multiplies it into the exponent, exp(-alpha L * L/(2x));
    ``exponent_grouping="prefactor"`` instead applies exp(-alpha L) * L/(2x).
    (An alternative cosh grouping, cosh(2(sqrt(x/2L) - sqrt(L/2x))), is noted
    but not implemented.)  Underflow returns exactly 0.0 and overflow saturates
    to inf; neither raises.
    """
    if not x > 0.0:
        raise DomainError(f"mode energy x must be positive, got {x}")
    if not L > 0.0:
        raise DomainError(f"separation L must be positive, got {L}")
    if not m_star > 0.0:
        raise DomainError(f"pair mass m* must be positive, got {m_star}")
    if c1 < 0.0 or c2 < 0.0:
        raise DomainError("normalization constants must be non-negative")
    if exponent_grouping not in (GROUPING_EXPONENT, GROUPING_PREFACTOR):
        raise DomainError(f"unknown exponent grouping {exponent_grouping!r}")
    if c1 == 0.0 or c2 == 0.0:
        return 0.0

    ratio = L / (2.0 * x)
    arg = 2.0 * math.sqrt(x / (2.0 * L)) - math.sqrt(ratio)
    if exponent_grouping == GROUPING_EXPONENT:
        expo, scale = -alpha * L * ratio, 1.0
    else:
        expo, scale = -alpha * L, ratio

    prefactor = c1 * c2 / m_star
    if abs(arg) <= _EXP_ARG_MAX and expo <= _EXP_ARG_MAX:
        return prefactor * scale * math.cosh(arg) * math.exp(expo)

    # Extreme regime: combine everything in log space to dodge intermediate
    # overflow of cosh/exp, then saturate.
    log_cosh = abs(arg) + math.log1p(math.exp(-2.0 * abs(arg))) - math.log(2.0)
    log_total = math.log(prefactor) + math.log(scale) + log_cosh + expo
    if log_total >= _LOG_OVERFLOW:
        return math.inf
    if log_total <= _LOG_UNDERFLOW:
        return 0.0
    return math.exp(log_total)


@dataclass(frozen=True)
class TunnelingResult:
    """Summary bundle: action, rate, density, and both matrix-element forms."""

    s_e: float
    gamma: float
    n_density: float
    t_closed: float
    t_functional: float
