"""Run configuration: defaults, flat key=value config files, and overrides.

An empty configuration reproduces the canonical run.  Config files are flat
``key = value`` text (``#`` comments and blank lines allowed); command-line
``--key=value`` overrides win over the file, and dedicated flags win over both.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace

from .errors import ConfigError
from .kessence import KEssenceModel, VARIANTS
from .potential import PotentialSpec, TWO_PI
from .tunneling import GROUPING_EXPONENT, GROUPING_PREFACTOR
from .units import PHI_STAR_TIPPING

OUT_DIR_ENV = "NUCLAB_OUT"
OUT_DIR_FALLBACK = "nuclab_out"

REPORT_FORMATS = ("both", "text", "csv")


@dataclass(frozen=True)
class RunConfig:
    # potential
    amplitude: float = 0.5989
    m: float = 0.441
    phi_star: float = PHI_STAR_TIPPING
    offset: float = 0.0
    # vacuum search
    range_lo: float = 0.0
    range_hi: float = TWO_PI
    grid_n: int = 4096
    # tunneling
    epsilon_plus: float = 1e-3
    upper_limit: float = TWO_PI
    prefactor_a: float = 1.0
    exponent_grouping: str = GROUPING_EXPONENT
    # k-essence
    f0: float = -1.0
    f2: float = 2.0
    x0: float = 0.5
    v0: float = 0.775
    eps0: float = 0.01
    t_end: float = 1.0
    steps: int = 256
    exponent_variant: str = "exact"
    # output
    out_dir: str = ""
    report_format: str = "both"

    def potential_spec(self) -> PotentialSpec:
        return PotentialSpec(
            amplitude=self.amplitude, m=self.m, phi_star=self.phi_star, offset=self.offset
        )

    def kessence_model(self) -> KEssenceModel:
        return KEssenceModel(f0=self.f0, f2=self.f2, x0=self.x0, v0=self.v0)

    def search_range(self) -> tuple[float, float]:
        return (self.range_lo, self.range_hi)

    def validate(self):
        """Reject unusable configurations before anything runs or writes."""
        def positive(name):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ConfigError(f"{name} must be positive and finite, got {value}")

        for name in ("amplitude", "m", "epsilon_plus", "prefactor_a", "x0", "v0", "t_end"):
            positive(name)
        for name in ("phi_star", "offset", "range_lo", "range_hi", "f0", "f2", "eps0"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite, got {getattr(self, name)}")
        if not self.upper_limit > 0.0:   # inf is allowed here
            raise ConfigError(f"upper_limit must be positive, got {self.upper_limit}")
        if not self.range_hi > self.range_lo:
            raise ConfigError(
                f"search range is degenerate: [{self.range_lo}, {self.range_hi}]"
            )
        if self.grid_n < 16:
            raise ConfigError(f"grid_n must be at least 16, got {self.grid_n}")
        if self.steps < 16:
            raise ConfigError(f"steps must be at least 16, got {self.steps}")
        if self.exponent_grouping not in (GROUPING_EXPONENT, GROUPING_PREFACTOR):
            raise ConfigError(f"unknown exponent_grouping {self.exponent_grouping!r}")
        if self.exponent_variant not in VARIANTS:
            raise ConfigError(f"unknown exponent_variant {self.exponent_variant!r}")
        if self.report_format not in REPORT_FORMATS:
            raise ConfigError(f"unknown report_format {self.report_format!r}")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown configuration key {key!r}")
    target = _FIELD_TYPES[key]
    text = raw.strip()
    try:
        if target == "int":
            return int(text)
        if target == "float":
            return float(text)
        return text
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc


def apply_overrides(config: RunConfig, overrides: dict[str, str]) -> RunConfig:
    """Apply string-valued overrides (config-file or command-line) in order."""
    coerced = {key: _coerce(key, value) for key, value in overrides.items()}
    return replace(config, **coerced)


def load_config_file(path: str) -> RunConfig:
    """Parse a flat key = value file into a RunConfig."""
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    overrides: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {stripped!r}")
            key, _, value = stripped.partition("=")
            overrides[key.strip()] = value.strip()
    return apply_overrides(RunConfig(), overrides)


def resolve_out_dir(configured: str) -> str:
    """Configured directory, else the NUCLAB_OUT environment fallback."""
    if configured:
        return configured
    return os.environ.get(OUT_DIR_ENV) or OUT_DIR_FALLBACK
