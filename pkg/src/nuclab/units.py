"""Planck-normalized units and chaotic-inflation scale formulas.

Everything downstream works in the normalization hbar = c = G = M_p = t_p =
l_p = 1; the only dimensionful survivors are the electron mass and the pair
mass m* = 2 m_e expressed as fractions of the Planck mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError

M_ELECTRON = 4.338e-20        # electron mass in Planck-mass units
M_STAR = 2.0 * M_ELECTRON     # soliton-antisoliton pair mass, exactly 2 m_e

#: Adopted tipping-point field value, 0.99 pi.  This is a configured input:
#: the closure formula ``chaotic_phi_star`` does not reproduce it (see the
#: deviation report), so the two are never silently substituted.
PHI_STAR_TIPPING = 0.99 * math.pi

WEAK_COUPLING_THRESHOLD = -1.0


@dataclass(frozen=True)
class PlanckUnits:
    """The normalized unit set; all base constants are identically 1."""

    hbar: float = 1.0
    c: float = 1.0
    G: float = 1.0
    M_p: float = 1.0
    t_p: float = 1.0
    l_p: float = 1.0
    m_e: float = M_ELECTRON
    m_star: float = M_STAR


_UNITS = PlanckUnits()


def natural_units() -> PlanckUnits:
    """Return the normalized unit set (the same instance every call)."""
    return _UNITS


@dataclass(frozen=True)
class ChaoticScales:
    """Field scales of the quadratic chaotic-inflation model for a given mass."""

    m: float
    phi_0_threshold: float
    phi_star_formula: float
    phi_star_used: float


def chaotic_threshold() -> float:
    """Threshold field value sqrt(60 / 2 pi) for the inflationary regime."""
    return math.sqrt(60.0 / (2.0 * math.pi))


def chaotic_phi_star(m: float) -> float:
    """Field value (3/16 pi)^(1/4) / sqrt(m) where classical and quantum
    fluctuations are comparable, with M_p = 1."""
    if not (math.isfinite(m) and m > 0.0):
        raise DomainError(f"inflaton mass must be positive and finite, got {m}")
    return (3.0 / (16.0 * math.pi)) ** 0.25 / math.sqrt(m)


def chaotic_scales(m: float, phi_star_used: float = PHI_STAR_TIPPING) -> ChaoticScales:
    """Bundle the threshold, the closure-formula phi*, and the adopted phi*."""
    return ChaoticScales(
        m=m,
        phi_0_threshold=chaotic_threshold(),
        phi_star_formula=chaotic_phi_star(m),
        phi_star_used=phi_star_used,
    )


def chaotic_trajectory(phi_0: float, m: float, t: float) -> float:
    """Linear slow-roll trajectory phi(t) = phi_0 - m t / sqrt(12 pi), G = 1."""
    if not (math.isfinite(m) and m > 0.0):
        raise DomainError(f"inflaton mass must be positive and finite, got {m}")
    return phi_0 - m / math.sqrt(12.0 * math.pi) * t


class StringCouplingReport(NamedTuple):
    value: float
    weak: bool


def string_coupling(phi: float) -> StringCouplingReport:
    """Gauge-coupling scale exp(phi), flagged weak for phi < -1 (strict)."""
    return StringCouplingReport(value=math.exp(phi), weak=phi < WEAK_COUPLING_THRESHOLD)
