"""Analysis pipeline: staged computation, CSV artifacts, and the deviation report.

Stages run sequentially (vacua, gap brackets, slow-roll points, tunneling
lanes, k-essence sweep); every file is rendered from collected results and
written once at the end, so a failing stage leaves no partial artifacts.
Tunneling quantities are computed twice: once from the published anchor
parameters and once from the recomputed vacua, so the report can compare
loudly instead of asserting quietly.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from . import claims, kessence, potential, slowroll, tunneling, units
from .claims import ClaimsLedgerEntry
from .config import RunConfig, resolve_out_dir
from .errors import ConfigError, NoFalseVacuumError, NuclabError, NumericError

log = logging.getLogger("nuclab")

POTENTIAL_CURVE_CSV = "potential_curve.csv"
SLOWROLL_CSV = "slowroll.csv"
TUNNELING_CSV = "tunneling.csv"
KESSENCE_CSV = "kessence_trajectory.csv"
REPORT_TXT = "deviation_report.txt"
REPORT_CSV = "deviation_report.csv"

COMMANDS = ("all", "potential", "slowroll", "tunneling", "kessence")

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_CONFIG = 2


class _StageFailure(Exception):
    def __init__(self, op: str, cause: Exception):
        super().__init__(f"{op}: {cause}")
        self.op = op
        self.cause = cause


def _stage(op: str, fn):
    try:
        return fn()
    except NuclabError as exc:
        raise _StageFailure(op, exc) from exc


def _fmt(x) -> str:
    if x is None:
        return ""
    return "%.17g" % float(x)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# stages

def _vacuum_stage(spec, config):
    stationary = _stage(
        "find_stationary_points",
        lambda: potential.find_stationary_points(spec, config.search_range(), config.grid_n),
    )
    pair = _stage("classify_vacua", lambda: potential.classify_vacua(spec, stationary))
    brackets = _stage("gap_brackets", lambda: potential.gap_brackets(spec, pair))
    return stationary, pair, brackets


def published_vacuum_pair(spec) -> potential.VacuumPair:
    """The published vacua positions evaluated under ``spec``.

    Used for anchor-side bracket arithmetic; the published orientation is kept
    as stated, so the gap may come out negative under recomputation.
    """
    v_f = float(potential.v_total(spec, claims.PUB_PHI_FALSE))
    v_t = float(potential.v_total(spec, claims.PUB_PHI_TRUE))
    return potential.VacuumPair(
        phi_F=claims.PUB_PHI_FALSE,
        phi_T=claims.PUB_PHI_TRUE,
        V_F=v_f,
        V_T=v_t,
        curvature_F=float(potential.v1_derivatives(spec, claims.PUB_PHI_FALSE)[1]),
        curvature_T=float(potential.v1_derivatives(spec, claims.PUB_PHI_TRUE)[1]),
        gap=v_f - v_t,
    )


def _slowroll_stage(spec, pair):
    reports = {
        "phi_F": _stage("slow_roll_check", lambda: slowroll.slow_roll_check(spec, pair.phi_F)),
        "phi_T": _stage("slow_roll_check", lambda: slowroll.slow_roll_check(spec, pair.phi_T)),
        "phi_star": _stage("slow_roll_check", lambda: slowroll.slow_roll_check(spec, spec.phi_star)),
    }
    pressure = {
        label: _stage("pressure_params", lambda p=report.phi: slowroll.pressure_params(spec, p))
        for label, report in reports.items()
    }
    return reports, pressure


@dataclass(frozen=True)
class TunnelingLane:
    """One complete tunneling evaluation for a named parameter basis."""

    label: str
    phi_false: float
    phi_true: float
    alpha: float
    L: float
    x: float
    c_norm: float
    brackets: potential.GapBrackets
    result: tunneling.TunnelingResult
    note: str = ""


def _make_lane(label, spec, config, phi_false, phi_true, alpha, L, x, brackets, note=""):
    m_star = units.natural_units().m_star
    c_norm = tunneling.normalization_constant(alpha, config.upper_limit)
    phi_0 = phi_false + config.epsilon_plus
    s_e = tunneling.euclidean_action(phi_0, phi_true, brackets)
    gamma = tunneling.decay_rate_gamma(s_e, spec.m, config.prefactor_a)
    n_density = tunneling.particle_density(1.0, 0.0, 1.0, s_e)
    t_closed = tunneling.matrix_element_closed(
        c_norm, c_norm, m_star, x, L, alpha, config.exponent_grouping
    )
    initial = tunneling.make_wave_functional(phi_false, alpha, "initial", config.upper_limit)
    final = tunneling.make_wave_functional(phi_true, alpha, "final", config.upper_limit)
    t_functional = tunneling.matrix_element_functional(initial, final, phi_0, config.upper_limit)
    result = tunneling.TunnelingResult(
        s_e=s_e, gamma=gamma, n_density=n_density, t_closed=t_closed, t_functional=t_functional
    )
    return TunnelingLane(
        label=label,
        phi_false=phi_false,
        phi_true=phi_true,
        alpha=alpha,
        L=L,
        x=x,
        c_norm=c_norm,
        brackets=brackets,
        result=result,
        note=note,
    )


def _tunneling_stage(spec, config, pair, brackets_recomputed):
    brackets_published = _stage(
        "gap_brackets", lambda: potential.gap_brackets(spec, published_vacuum_pair(spec))
    )
    lane_published = _stage(
        "tunneling(published anchors)",
        lambda: _make_lane(
            "published",
            spec,
            config,
            claims.PUB_PHI_FALSE,
            claims.PUB_PHI_TRUE,
            claims.PUB_ALPHA_STIFFNESS,
            claims.PUB_SEPARATION_L,
            claims.PUB_X_FALSE_ENERGY,
            brackets_published,
            note="published anchor parameter set",
        ),
    )

    def build_recomputed():
        if not pair.gap > 0.0:
            raise NumericError("degenerate vacuum gap; no tunneling scale")
        note = "alpha = vacuum gap; L = 1/gap; x = V(phi_F)"
        if brackets_recomputed.delta_E_gap <= 0.0:
            note += "; bracket gap <= 0 (no Bogomol'nyi length)"
        return _make_lane(
            "recomputed",
            spec,
            config,
            pair.phi_F,
            pair.phi_T,
            pair.gap,
            1.0 / pair.gap,
            pair.V_F,
            brackets_recomputed,
            note=note,
        )

    lane_recomputed = _stage("tunneling(recomputed)", build_recomputed)
    return lane_published, lane_recomputed


def _kessence_stage(config):
    model = config.kessence_model()
    trajectory = _stage(
        "evolve_epsilon",
        lambda: kessence.evolve_epsilon(
            model, config.eps0, config.t_end, config.steps, config.exponent_variant
        ),
    )
    diagnostics = [
        _stage("fluid_diagnostics", lambda s=state: kessence.fluid_diagnostics(model, s.x, model.v0))
        for state in trajectory
    ]
    return model, trajectory, diagnostics


# ---------------------------------------------------------------------------
# artifact rendering

def _potential_curve_csv(spec, config) -> str:
    n_samples = max(config.grid_n, 1000) + 1
    phis = np.linspace(config.range_lo, config.range_hi, n_samples)
    values = potential.v_total(spec, phis)
    d1, d2 = potential.v1_derivatives(spec, phis)
    rows = [[p, v, a, b] for p, v, a, b in zip(phis, values, d1, d2)]
    return _csv(
        ["phi [planck]", "V [planck]", "dV_dphi [planck]", "d2V_dphi2 [planck]"], rows
    )


def _slowroll_csv(reports, pressure) -> str:
    rows = []
    for label in ("phi_F", "phi_T", "phi_star"):
        rep = reports[label]
        pres = pressure[label]
        rows.append(
            [
                label,
                rep.phi,
                rep.v,
                rep.v_pp,
                rep.h_sq,
                rep.ratio,
                "true" if rep.passes else "false",
                pres.epsilon,
                pres.eta,
            ]
        )
    return _csv(
        [
            "point",
            "phi [planck]",
            "V [planck]",
            "d2V_dphi2 [planck]",
            "H_sq [planck]",
            "ratio [1]",
            "passes",
            "epsilon [1]",
            "eta [1]",
        ],
        rows,
    )


def _tunneling_csv(lane_pub: TunnelingLane, lane_rec: TunnelingLane) -> str:
    def row(name, a, b, note=""):
        return [name, a, b, note]

    rows = [
        row("phi_false", lane_pub.phi_false, lane_rec.phi_false),
        row("phi_true", lane_pub.phi_true, lane_rec.phi_true),
        row("alpha_stiffness", lane_pub.alpha, lane_rec.alpha),
        row("separation_L", lane_pub.L, lane_rec.L),
        row("mode_energy_x", lane_pub.x, lane_rec.x),
        row("norm_constant", lane_pub.c_norm, lane_rec.c_norm),
        row("bracket_total", lane_pub.brackets.bracket_total, lane_rec.brackets.bracket_total),
        row(
            "delta_E_brackets",
            lane_pub.brackets.delta_E_gap,
            lane_rec.brackets.delta_E_gap,
            lane_rec.note,
        ),
        row("euclidean_action", lane_pub.result.s_e, lane_rec.result.s_e),
        row("decay_rate", lane_pub.result.gamma, lane_rec.result.gamma),
        row("particle_density", lane_pub.result.n_density, lane_rec.result.n_density),
        row("matrix_element_closed", lane_pub.result.t_closed, lane_rec.result.t_closed),
        row("matrix_element_functional", lane_pub.result.t_functional, lane_rec.result.t_functional),
    ]
    return _csv(["quantity", "published_anchor", "recomputed", "note"], rows)


def _kessence_csv(trajectory, diagnostics) -> str:
    rows = [
        [state.t, state.eps, diag.w, diag.cs2_exact, diag.cs2_approx]
        for state, diag in zip(trajectory, diagnostics)
    ]
    return _csv(
        ["t [planck]", "eps [planck]", "w [1]", "cs2_exact [1]", "cs2_approx [1]"], rows
    )


# ---------------------------------------------------------------------------
# claims ledger

def _paired_minima(stationary):
    """Minima paired to the published positions by proximity, not by label."""
    minima = [p.phi for p in stationary if p.kind == potential.MINIMUM]
    if not minima:
        raise NoFalseVacuumError("no minima available for pairing")
    near_false = min(minima, key=lambda p: abs(p - claims.PUB_PHI_FALSE))
    near_true = min(minima, key=lambda p: abs(p - claims.PUB_PHI_TRUE))
    return near_false, near_true


def build_claims_ledger(
    config: RunConfig,
    spec,
    stationary,
    pair,
    brackets_published,
    lane_published: TunnelingLane,
) -> list[ClaimsLedgerEntry]:
    """One entry per published claim, sorted by claim id.

    A claim whose recomputation fails is still emitted, marked not-computed.
    """
    model = config.kessence_model()
    near_false, near_true = _paired_minima(stationary)

    flipped = abs(pair.phi_F - claims.PUB_PHI_FALSE) > abs(pair.phi_T - claims.PUB_PHI_FALSE)
    orientation_note = (
        "value ordering puts the true vacuum at the smaller field value; "
        "published orientation is flipped" if flipped else ""
    )

    def paper_variant_suppression():
        states = kessence.evolve_epsilon(
            model, config.eps0, config.t_end, config.steps, kessence.VARIANT_PAPER
        )
        return states[-1].eps / config.eps0

    def eps_end():
        states = kessence.evolve_epsilon(
            model, config.eps0, config.t_end, config.steps, config.exponent_variant
        )
        return states[-1].eps

    def cs2_exact_at_end():
        return kessence.fluid_diagnostics(model, model.x0 + eps_end(), model.v0).cs2_exact

    entries: list[ClaimsLedgerEntry] = []

    def add(claim_id, source, published, recompute, note=""):
        try:
            published_value = published() if callable(published) else float(published)
        except Exception:
            published_value = math.nan
        try:
            recomputed = float(recompute())
        except Exception as exc:
            entries.append(
                ClaimsLedgerEntry(
                    claim_id, source, published_value, None, note=f"not computed: {exc}"
                )
            )
            return
        entries.append(ClaimsLedgerEntry(claim_id, source, published_value, recomputed, note=note))

    add("eq01_phi0_threshold", "Eq. 1", claims.PUB_PHI0_THRESHOLD, units.chaotic_threshold)
    add(
        "eq03_phi_star_formula",
        "Eq. 3 vs Eq. 12",
        claims.PUB_PHI_STAR,
        lambda: units.chaotic_phi_star(spec.m),
        note="closure formula does not reproduce the adopted phi*; both are exposed",
    )
    add("eq10_phi_false", "Eq. 10", claims.PUB_PHI_FALSE, lambda: near_false, note=orientation_note)
    add("eq11_phi_true", "Eq. 11", claims.PUB_PHI_TRUE, lambda: near_true, note=orientation_note)
    add("eq12_phi_star", "Eq. 12", claims.PUB_PHI_STAR, lambda: spec.phi_star, note="input echo")
    add("eq13_vacuum_gap", "Eq. 13", claims.PUB_VACUUM_GAP, lambda: pair.gap)
    add(
        "eq16_bracket_gap",
        "Eq. 16",
        claims.PUB_VACUUM_GAP,
        lambda: brackets_published.delta_E_gap,
        note="bracket formulas evaluated at the published vacua",
    )
    add("eq26_m_star", "Eq. 26", claims.PUB_M_STAR, lambda: units.natural_units().m_star)
    add(
        "eq28_x_false_energy",
        "Eq. 28",
        claims.PUB_X_FALSE_ENERGY,
        lambda: potential.v_total(spec, near_false),
    )
    for claim_id, source, (pub_lhs, pub_rhs), point in (
        ("eq30", "Eq. 30", claims.PUB_SLOWROLL_TRUE, near_true),
        ("eq31", "Eq. 31", claims.PUB_SLOWROLL_FALSE, near_false),
        ("eq32", "Eq. 32", claims.PUB_SLOWROLL_STAR, spec.phi_star),
    ):
        add(
            f"{claim_id}_curvature",
            source,
            pub_lhs,
            lambda p=point: abs(float(potential.v1_derivatives(spec, p)[1])),
        )
        add(
            f"{claim_id}_hubble_sq",
            source,
            pub_rhs,
            lambda p=point: slowroll.hubble_sq(float(potential.v1(spec, p))),
        )
    add(
        "eq48_decay_constant",
        "Eq. 48 vs Eq. 49",
        lambda: kessence.decay_constant(model, kessence.VARIANT_PAPER),
        lambda: kessence.decay_constant(model, kessence.VARIANT_EXACT),
        note="printed exponent 8 pi V0 is dimensionally H^2-like; consistent 3H differs",
    )
    add(
        "eq49_suppression",
        "Eq. 49",
        lambda: math.exp(-8.0 * math.pi * config.v0 * config.t_end),
        paper_variant_suppression,
        note="suppression factor eps/eps0 at t_end; published bound eps < eps0",
    )
    add(
        "eq50_cs2_initial",
        "Eq. 50",
        lambda: kessence.cs2_approx_printed(model.x0, config.eps0),
        cs2_exact_at_end,
        note="printed form read with the initial offset; exact value is authoritative",
    )
    add(
        "eq50_cs2_instantaneous",
        "Eq. 50",
        lambda: kessence.cs2_approx_printed(model.x0, eps_end()),
        cs2_exact_at_end,
        note="printed form read with the instantaneous offset; exact value is authoritative",
    )
    add(
        "sec2_rate_comparison",
        "Sec. II",
        lambda: lane_published.result.n_density,
        lambda: lane_published.result.t_closed,
        note="order-of-magnitude speculation; normalization constants unfixed; not asserted",
    )
    add("sec2_separation_L", "Sec. II", claims.PUB_SEPARATION_L, lambda: 1.0 / pair.gap)

    entries.sort(key=lambda e: e.claim_id)
    return entries


def render_ledger_csv(entries: list[ClaimsLedgerEntry]) -> str:
    rows = [
        [
            e.claim_id,
            e.source,
            e.published_value,
            e.recomputed_value,
            e.abs_deviation,
            e.rel_deviation,
            e.status,
            e.note,
        ]
        for e in entries
    ]
    return _csv(
        [
            "claim_id",
            "source",
            "published_value",
            "recomputed_value",
            "abs_deviation",
            "rel_deviation",
            "status",
            "note",
        ],
        rows,
    )


def render_ledger_text(entries: list[ClaimsLedgerEntry]) -> str:
    header = ["claim_id", "source", "published", "recomputed", "rel_dev", "status", "note"]

    def short(x):
        return "" if x is None else "%.9g" % x

    table = [header]
    for e in entries:
        table.append(
            [
                e.claim_id,
                e.source,
                short(e.published_value),
                short(e.recomputed_value),
                short(e.rel_deviation),
                e.status,
                e.note,
            ]
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = [
        "published-value deviation report",
        "status bands on relative deviation: match < 2% | near 2-20% | mismatch > 20%",
        "recomputed values are ground truth; statuses are reported, never asserted",
        "",
    ]
    for row in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    lines.append("")
    return "\n".join(lines)


def emit_claims_ledger(entries: list[ClaimsLedgerEntry], report_format: str):
    """Render the ledger in the configured format(s) as (filename, text) pairs."""
    artifacts = []
    if report_format in ("text", "both"):
        artifacts.append((REPORT_TXT, render_ledger_text(entries)))
    if report_format in ("csv", "both"):
        artifacts.append((REPORT_CSV, render_ledger_csv(entries)))
    return artifacts


# ---------------------------------------------------------------------------
# entry point

def _write_all(out_dir: str, artifacts: list[tuple[str, str]]):
    os.makedirs(out_dir, exist_ok=True)
    for name, content in artifacts:
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)


def run_pipeline(config: RunConfig, command: str = "all") -> int:
    """Run the requested stages and write their artifacts.

    Returns 0 on success, 1 on a numeric/module error (logged with the failing
    operation's name), 2 on a configuration error.  Nothing is written unless
    every requested stage succeeds.
    """
    try:
        config.validate()
        if command not in COMMANDS:
            raise ConfigError(f"unknown command {command!r}; expected one of {COMMANDS}")
    except ConfigError as exc:
        log.error("config: %s", exc)
        return EXIT_CONFIG

    out_dir = resolve_out_dir(config.out_dir)
    artifacts: list[tuple[str, str]] = []
    summary: list[str] = []
    try:
        spec = config.potential_spec()
        needs_vacua = command in ("all", "potential", "slowroll", "tunneling")
        if needs_vacua:
            stationary, pair, brackets_rec = _vacuum_stage(spec, config)
            summary.append(
                "vacua: phi_T=%.6g (V=%.6g)  phi_F=%.6g (V=%.6g)  gap=%.6g"
                % (pair.phi_T, pair.V_T, pair.phi_F, pair.V_F, pair.gap)
            )
        if command in ("all", "potential"):
            artifacts.append((POTENTIAL_CURVE_CSV, _potential_curve_csv(spec, config)))
        if command in ("all", "slowroll"):
            reports, pressure = _slowroll_stage(spec, pair)
            summary.append(
                "slow-roll ratios: phi_F=%.4g phi_T=%.4g phi*=%.4g (threshold %.2g)"
                % (
                    reports["phi_F"].ratio,
                    reports["phi_T"].ratio,
                    reports["phi_star"].ratio,
                    slowroll.PASS_THRESHOLD,
                )
            )
            if command == "slowroll":
                artifacts.append((SLOWROLL_CSV, _slowroll_csv(reports, pressure)))
        if command in ("all", "tunneling"):
            lane_pub, lane_rec = _tunneling_stage(spec, config, pair, brackets_rec)
            artifacts.append((TUNNELING_CSV, _tunneling_csv(lane_pub, lane_rec)))
        if command in ("all", "kessence"):
            model, trajectory, diagnostics = _kessence_stage(config)
            artifacts.append((KESSENCE_CSV, _kessence_csv(trajectory, diagnostics)))
            summary.append(
                "k-essence: eps %.6g -> %.6g over t=%.6g (%s variant), final regime %s"
                % (
                    config.eps0,
                    trajectory[-1].eps,
                    config.t_end,
                    config.exponent_variant,
                    kessence.classify_regime(diagnostics[-1]),
                )
            )
        if command == "all":
            ledger = _stage(
                "emit_claims_ledger",
                lambda: build_claims_ledger(config, spec, stationary, pair,
                                            lane_pub.brackets, lane_pub),
            )
            artifacts.extend(emit_claims_ledger(ledger, config.report_format))
            statuses = [e.status for e in ledger]
            summary.append(
                "claims ledger: %d entries (%d match, %d near, %d mismatch)"
                % (
                    len(ledger),
                    statuses.count(claims.STATUS_MATCH),
                    statuses.count(claims.STATUS_NEAR),
                    statuses.count(claims.STATUS_MISMATCH),
                )
            )
    except _StageFailure as exc:
        log.error("%s: %s", exc.op, exc.cause)
        return EXIT_NUMERIC

    _write_all(out_dir, artifacts)
    for line in summary:
        print(line)
    print("wrote %d file(s) to %s" % (len(artifacts), out_dir))
    return EXIT_OK
