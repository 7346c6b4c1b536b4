"""Hubble rate and pointwise slow-roll / negative-pressure diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SingularPotentialError
from .potential import PotentialSpec, v1, v1_derivatives, v_total

HUBBLE_FACTOR = 8.0 * math.pi / 3.0
M_TILDE_SQ = 1.0 / (8.0 * math.pi)   # reduced Planck mass squared, M_p^2 / 8 pi
PASS_THRESHOLD = 0.15                # operationalizes "much less than" for the ratio


def hubble_sq(v: float) -> float:
    """H^2 = (8 pi / 3) V with G = 1; negative energy density is rejected."""
    if v < 0.0:
        raise DomainError(f"negative energy density v={v} has no real Hubble rate")
    return HUBBLE_FACTOR * v


@dataclass(frozen=True)
class SlowRollReport:
    """|V''| versus H^2 at one field point; ``passes`` is ratio < threshold."""

    phi: float
    v: float
    v_pp: float
    h_sq: float
    lhs: float
    rhs: float
    ratio: float
    passes: bool


def slow_roll_check(
    spec: PotentialSpec,
    phi: float,
    use_v1_only: bool = True,
    pass_threshold: float = PASS_THRESHOLD,
) -> SlowRollReport:
    """Evaluate the flatness inequality |V''| << H^2 at ``phi``.

    ``use_v1_only`` selects the offset-free potential for H^2 (the default
    identification); otherwise the full energy density is used.
    """
    value = float(v1(spec, phi)) if use_v1_only else float(v_total(spec, phi))
    _, v_pp = v1_derivatives(spec, phi)
    v_pp = float(v_pp)
    h_sq = hubble_sq(value)
    lhs = abs(v_pp)
    ratio = lhs / h_sq if h_sq > 0.0 else math.inf
    return SlowRollReport(
        phi=phi,
        v=value,
        v_pp=v_pp,
        h_sq=h_sq,
        lhs=lhs,
        rhs=h_sq,
        ratio=ratio,
        passes=ratio < pass_threshold,
    )


@dataclass(frozen=True)
class PressureParams:
    """Negative-pressure smallness parameters at one field point."""

    phi: float
    epsilon: float
    eta: float
    m_tilde_sq: float = M_TILDE_SQ


def pressure_params(spec: PotentialSpec, phi: float, use_v1_only: bool = True) -> PressureParams:
    """epsilon = (M~^2/2)(V'/V)^2 and eta = M~^2 (V''/V) with M~^2 = 1/(8 pi)."""
    value = float(v1(spec, phi)) if use_v1_only else float(v_total(spec, phi))
    if value == 0.0:
        raise SingularPotentialError(f"V({phi}) = 0: epsilon and eta are undefined")
    v_p, v_pp = v1_derivatives(spec, phi)
    ratio_p = float(v_p) / value
    return PressureParams(
        phi=phi,
        epsilon=0.5 * M_TILDE_SQ * ratio_p * ratio_p,
        eta=M_TILDE_SQ * float(v_pp) / value,
    )
