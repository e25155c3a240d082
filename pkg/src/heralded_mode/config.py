"""Plain ``key = value`` configuration files.

One assignment per line, ``#`` starts a comment, keys are dotted names from
a fixed vocabulary.  Unknown keys are rejected with their line number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .errors import ConfigError

KNOWN_KEYS = {
    "pump.tau_fund_ps": "fundamental pulse intensity FWHM (ps)",
    "pump.beam_fwhm_mm": "pump beam intensity FWHM diameter (mm)",
    "pump.lambda_nm": "trigger / fundamental wavelength (nm)",
    "filter.fwhm_nm": "spectral filter transmission FWHM (nm)",
    "filter.pinhole_diameter_um": "pinhole diameter 2*rho (um)",
    "filter.focal_mm": "focal length of the lens in front of the pinhole (mm)",
    "trigger.mu_t": "filter width / pump width",
    "trigger.kappa_ratio": "Gaussian spatial filter width / pump width, kappa_t / kappa_p",
    "align.mu_A": "alignment width / pump width",
    "align.optimize": "search the best alignment width (true/false)",
    "grid.n": "points per grid axis",
    "grid.rule": "gauss_legendre or trapezoid",
    "chain.visibility": "measured DFG / LO fringe visibility",
    "chain.tau_convention": "pump_is_fund_over_sqrt2 or pump_is_fund",
    "chain.p_temp_override": "use this temporal purity instead of computing it",
    "chain.p_sp_override": "use this spatial purity instead of computing it",
}

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass
class Config:
    values: dict[str, str] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)
    source: str = "<config>"

    def __contains__(self, key: str) -> bool:
        return key in self.values

    def has_all(self, keys: Iterable[str]) -> bool:
        return all(k in self.values for k in keys)

    def require(self, *keys: str) -> None:
        missing = [k for k in keys if k not in self.values]
        if missing:
            raise ConfigError(f"{self.source}: missing required key(s): {', '.join(missing)}")

    def _where(self, key: str) -> str:
        line = self.lines.get(key)
        return f"{self.source}:{line}" if line else self.source

    def get_str(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.values.get(key, default)

    def get_float(self, key: str, default: Optional[float] = None) -> Optional[float]:
        if key not in self.values:
            return default
        raw = self.values[key]
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{self._where(key)}: {key} expects a number, got {raw!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"{self._where(key)}: {key} must be finite")
        return value

    def get_int(self, key: str, default: Optional[int] = None) -> Optional[int]:
        if key not in self.values:
            return default
        raw = self.values[key]
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{self._where(key)}: {key} expects an integer, got {raw!r}") from None

    def get_bool(self, key: str, default: bool = False) -> bool:
        if key not in self.values:
            return default
        raw = self.values[key].lower()
        if raw in _TRUE:
            return True
        if raw in _FALSE:
            return False
        raise ConfigError(f"{self._where(key)}: {key} expects true/false, got {raw!r}")

    def set(self, key: str, value) -> None:
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        self.values[key] = str(value)


def parse_config(text: str, source: str = "<config>") -> Config:
    cfg = Config(source=source)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"{source}:{lineno}: empty value for {key}")
        if key in cfg.values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} "
                              f"(first set on line {cfg.lines[key]})")
        cfg.values[key] = value
        cfg.lines[key] = lineno
    return cfg


def load_config(path) -> Config:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))
