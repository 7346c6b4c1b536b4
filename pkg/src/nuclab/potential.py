"""Tilted sine-Gordon potential: evaluation, vacuum location, and gap brackets.

The potential family is V(phi) = amplitude (1 - cos phi) + (m^2/2)(phi - phi*)^2
plus a constant energy-density offset.  A periodic well tilted by the quadratic
term gives (for the default parameters) a double well whose minima are located
here by a grid scan plus safeguarded Newton polish, then classified into a
false/true vacuum pair by potential-value ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NoFalseVacuumError, NumericError
from .units import PHI_STAR_TIPPING

TWO_PI = 2.0 * math.pi

MINIMUM = "minimum"
MAXIMUM = "maximum"
INFLECTION = "inflection"

ROOT_TOL = 1e-12        # |V'| required of a polished root
DEDUP_SPACING = 1e-8    # roots closer than this collapse to one
INFLECTION_TOL = 1e-10  # |V''| below this is called an inflection

DEFAULT_SEARCH_RANGE = (0.0, TWO_PI)


def _require_finite(name, value):
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class PotentialSpec:
    """Parameters of the tilted sine-Gordon potential.

    ``amplitude`` scales the periodic term, ``m`` the quadratic tilt centered
    on ``phi_star``; ``offset`` is a constant initial energy density.  Zero
    amplitude or mass is accepted for degenerate diagnostics; the canonical
    physical spec has both strictly positive.
    """

    amplitude: float = 0.5989
    m: float = 0.441
    phi_star: float = PHI_STAR_TIPPING
    offset: float = 0.0

    def __post_init__(self):
        for name in ("amplitude", "m", "phi_star", "offset"):
            _require_finite(name, getattr(self, name))
        if self.amplitude < 0.0:
            raise DomainError(f"amplitude must be non-negative, got {self.amplitude}")
        if self.m < 0.0:
            raise DomainError(f"m must be non-negative, got {self.m}")


@dataclass(frozen=True)
class TemplatePotentialSpec:
    """Coefficients of the quartic extended sine-Gordon template potential."""

    c1: float
    c2: float
    phi_0: float

    def __post_init__(self):
        for name in ("c1", "c2", "phi_0"):
            _require_finite(name, getattr(self, name))


def v1(spec: PotentialSpec, phi):
    """Potential without the constant offset.  Accepts scalars or arrays."""
    d = phi - spec.phi_star
    return spec.amplitude * (1.0 - np.cos(phi)) + 0.5 * spec.m ** 2 * d * d


def v1_derivatives(spec: PotentialSpec, phi):
    """Closed-form (V', V'').  Accepts scalars or arrays."""
    m2 = spec.m ** 2
    d1 = spec.amplitude * np.sin(phi) + m2 * (phi - spec.phi_star)
    d2 = spec.amplitude * np.cos(phi) + m2
    return d1, d2


def v_total(spec: PotentialSpec, phi):
    """Offset plus v1: the full energy density."""
    return spec.offset + v1(spec, phi)


def v_template(tspec: TemplatePotentialSpec, phi):
    """C1 (phi-phi0)^2 - 4 C2 phi phi0 (phi-phi0)^2 + C2 (phi^2-phi0^2)^2."""
    d = phi - tspec.phi_0
    return (
        tspec.c1 * d * d
        - 4.0 * tspec.c2 * phi * tspec.phi_0 * d * d
        + tspec.c2 * (phi * phi - tspec.phi_0 ** 2) ** 2
    )


class StationaryPoint(NamedTuple):
    phi: float
    kind: str


def _polish_root(spec, a, b, fa, fb):
    # Safeguarded Newton on V': the bracket [a, b] always straddles the sign
    # change, and any Newton step leaving it falls back to bisection.  The
    # tolerance is on |V'| itself, not on the abscissa.
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    x = 0.5 * (a + b)
    for _ in range(200):
        f, fp = v1_derivatives(spec, x)
        f, fp = float(f), float(fp)
        if abs(f) < ROOT_TOL:
            return x
        if (f < 0.0) == (fa < 0.0):
            a, fa = x, f
        else:
            b, fb = x, f
        x_newton = x - f / fp if fp != 0.0 else x
        x = x_newton if a < x_newton < b else 0.5 * (a + b)
    raise NumericError(f"root polish stalled near phi={x!r} with |V'|={abs(f):.3e}")


def find_stationary_points(
    spec: PotentialSpec,
    search_range: tuple[float, float] = DEFAULT_SEARCH_RANGE,
    grid_n: int = 4096,
) -> list[StationaryPoint]:
    """Locate and classify the stationary points of v1 inside ``search_range``.

    Scans V' on a uniform grid for sign changes, polishes each bracket to
    |V'| < 1e-12, classifies by the sign of V'', deduplicates at 1e-8 spacing,
    and returns the points sorted by phi.  No sign change means an empty list.
    """
    lo, hi = search_range
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise DomainError(f"search range must be a finite non-degenerate interval, got {search_range}")
    if grid_n < 16:
        raise DomainError(f"grid_n must be at least 16, got {grid_n}")

    grid = np.linspace(lo, hi, grid_n + 1)
    deriv, _ = v1_derivatives(spec, grid)
    if not np.all(np.isfinite(deriv)):
        raise NumericError("non-finite V' encountered on the scan grid")

    roots = [float(grid[i]) for i in np.nonzero(deriv == 0.0)[0]]
    for i in np.nonzero(deriv[:-1] * deriv[1:] < 0.0)[0]:
        roots.append(
            _polish_root(spec, float(grid[i]), float(grid[i + 1]),
                         float(deriv[i]), float(deriv[i + 1]))
        )

    roots.sort()
    deduped = []
    for r in roots:
        if not deduped or r - deduped[-1] > DEDUP_SPACING:
            deduped.append(r)

    points = []
    for r in deduped:
        _, curvature = v1_derivatives(spec, r)
        curvature = float(curvature)
        if abs(curvature) < INFLECTION_TOL:
            kind = INFLECTION
        elif curvature > 0.0:
            kind = MINIMUM
        else:
            kind = MAXIMUM
        points.append(StationaryPoint(phi=r, kind=kind))
    return points


@dataclass(frozen=True)
class VacuumPair:
    """Located false/true vacua with values, curvatures, and their gap.

    ``phi_T`` is the global minimum of the potential, ``phi_F`` the lowest of
    the remaining minima; ``gap = V_F - V_T >= 0`` by construction.  Which
    minimum ends up false is decided by value ordering, not position, so a
    parameter set that flips the tilt is handled correctly.
    """

    phi_F: float
    phi_T: float
    V_F: float
    V_T: float
    curvature_F: float
    curvature_T: float
    gap: float


def classify_vacua(spec: PotentialSpec, stationary: list[StationaryPoint]) -> VacuumPair:
    """Split the minima among ``stationary`` into a false/true vacuum pair."""
    minima = [p.phi for p in stationary if p.kind == MINIMUM]
    if len(minima) < 2:
        raise NoFalseVacuumError(
            f"potential is not double-welled: found {len(minima)} minimum/minima"
        )
    values = [float(v_total(spec, p)) for p in minima]
    i_true = min(range(len(minima)), key=values.__getitem__)
    i_false = min((i for i in range(len(minima)) if i != i_true), key=values.__getitem__)

    def curvature(p):
        return float(v1_derivatives(spec, p)[1])

    return VacuumPair(
        phi_F=minima[i_false],
        phi_T=minima[i_true],
        V_F=values[i_false],
        V_T=values[i_true],
        curvature_F=curvature(minima[i_false]),
        curvature_T=curvature(minima[i_true]),
        gap=values[i_false] - values[i_true],
    )


@dataclass(frozen=True)
class GapBrackets:
    """Bracket coefficients of the Bogomol'nyi energy-gap decomposition.

    ``bracket_total = bracket_A - bracket_B = 2 delta_E_gap`` holds exactly by
    construction.  ``L`` is the implied separation 1/delta_E_gap, or None when
    delta_E_gap <= 0 (the "no Bogomol'nyi length" condition, reported rather
    than raised).
    """

    bracket_A: float
    bracket_B: float
    bracket_total: float
    delta_E_gap: float
    L: float | None


def gap_brackets(spec: PotentialSpec, pair: VacuumPair) -> GapBrackets:
    """Bracket decomposition (m^-2 + 1)/(2 m^-2) - phi_T phi_F / 6 with M_p = 1."""
    if not spec.m > 0.0:
        raise DomainError("gap brackets need a strictly positive mass m")
    m2 = spec.m ** 2
    bracket_a = (1.0 / m2 + 1.0) / (2.0 / m2)
    bracket_b = pair.phi_T * pair.phi_F / 6.0
    total = bracket_a - bracket_b
    delta_e = 0.5 * total
    return GapBrackets(
        bracket_A=bracket_a,
        bracket_B=bracket_b,
        bracket_total=total,
        delta_E_gap=delta_e,
        L=1.0 / delta_e if delta_e > 0.0 else None,
    )
