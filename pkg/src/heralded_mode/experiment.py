"""From lab parameters of a pulsed homodyne single-photon experiment to the
expected overall mode matching between local oscillator and heralded photon.

The chain::

    P_temp  small-mu_t purity from pump duration and filter bandwidth
    P_sp    tight-pinhole spatial purity
    sqrt_p  = sqrt(P_temp * P_sp), the best achievable overlap
    M_exp   = visibility**2 of the DFG / LO interference
    M_cl    = M_exp * f(sqrt 2) / f(sqrt 3)   (narrowband-alignment correction)
    M       = sqrt_p * M_cl
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from . import analytic
from .errors import DomainError
from .units import bandwidth_nm_to_omega

# DFG of the second harmonic with the fundamental is sqrt(3) broader than the
# fundamental; the narrow-filter heralded mode mimics the pump at sqrt(2).
DFG_BROADENING = math.sqrt(3.0)
PUMP_BROADENING = math.sqrt(2.0)

CSV_HEADER = "p_temp,p_sp,sqrt_p,m_exp,correction,m_cl,m_total"


class TauConvention(str, enum.Enum):
    """How the quoted fundamental pulse width maps to the pump width."""

    PUMP_IS_FUND_OVER_SQRT2 = "pump_is_fund_over_sqrt2"
    PUMP_IS_FUND = "pump_is_fund"


@dataclass(frozen=True)
class LabParams:
    lambda_nm: float
    tau_fund_ps: float
    filter_fwhm_nm: float
    pinhole_diameter_um: float
    focal_mm: float
    pump_fwhm_mm: float
    visibility: float
    tau_convention: TauConvention = TauConvention.PUMP_IS_FUND_OVER_SQRT2

    def __post_init__(self):
        for name in ("lambda_nm", "tau_fund_ps", "filter_fwhm_nm", "pinhole_diameter_um",
                     "focal_mm", "pump_fwhm_mm"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive, got {v!r}")
        if not (0.0 <= self.visibility <= 1.0):
            raise DomainError(f"visibility must lie in [0, 1], got {self.visibility!r}")
        object.__setattr__(self, "tau_convention", TauConvention(self.tau_convention))

    @property
    def tau_p(self) -> float:
        """Pump intensity FWHM in seconds."""
        tau = self.tau_fund_ps * 1e-12
        if self.tau_convention is TauConvention.PUMP_IS_FUND_OVER_SQRT2:
            return tau / math.sqrt(2.0)
        return tau

    @property
    def w_t(self) -> float:
        """Filter transmission FWHM in rad/s."""
        return bandwidth_nm_to_omega(self.filter_fwhm_nm * 1e-9, self.lambda_nm * 1e-9)

    @classmethod
    def reference_setup(cls, **overrides) -> "LabParams":
        """Parameters of the 790 nm pulsed single-photon tomography setup."""
        values = dict(lambda_nm=790.0, tau_fund_ps=1.6, filter_fwhm_nm=0.4,
                      pinhole_diameter_um=50.0, focal_mm=80.0, pump_fwhm_mm=0.34,
                      visibility=0.83)
        values.update(overrides)
        return cls(**values)


@dataclass(frozen=True)
class ChainReport:
    p_temp: float
    p_sp: float
    sqrt_p: float
    m_exp: float
    linewidth_correction: float
    m_cl: float
    m_total: float
    warnings: tuple[str, ...] = field(default=())

    def csv_row(self) -> str:
        vals = (self.p_temp, self.p_sp, self.sqrt_p, self.m_exp, self.linewidth_correction,
                self.m_cl, self.m_total)
        return ",".join(format(v, ".6g") for v in vals)

    def to_text(self) -> str:
        rows = [
            ("temporal purity P_temp", self.p_temp),
            ("spatial purity P_sp", self.p_sp),
            ("purity bound sqrt(P)", self.sqrt_p),
            ("measured M_exp = V^2", self.m_exp),
            ("linewidth correction", self.linewidth_correction),
            ("classical M_cl", self.m_cl),
            ("overall M", self.m_total),
        ]
        width = max(len(label) for label, _ in rows)
        lines = [f"{label:<{width}}  {value:.6f}" for label, value in rows]
        lines.extend(f"warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def _check_override(name: str, value: Optional[float]) -> None:
    if value is not None and not (0.0 < value <= 1.0):
        raise DomainError(f"{name} override must lie in (0, 1], got {value!r}")


def run_chain_with_overrides(p: LabParams, p_temp_override: Optional[float] = None,
                             p_sp_override: Optional[float] = None) -> ChainReport:
    """Run the chain, optionally substituting quoted purities for the computed ones."""
    _check_override("p_temp", p_temp_override)
    _check_override("p_sp", p_sp_override)
    if p_temp_override is None:
        p_temp = analytic.p_temp_fwhm(p.w_t, p.tau_p)
    else:
        p_temp = float(p_temp_override)
    if p_sp_override is None:
        p_sp = analytic.p_sp_pinhole(0.5 * p.pinhole_diameter_um * 1e-6, p.pump_fwhm_mm * 1e-3,
                                     p.lambda_nm * 1e-9, p.focal_mm * 1e-3)
    else:
        p_sp = float(p_sp_override)

    sqrt_p = math.sqrt(p_temp * p_sp)
    m_exp = p.visibility**2
    correction = analytic.f_alpha(PUMP_BROADENING) / analytic.f_alpha(DFG_BROADENING)
    m_cl = m_exp * correction
    m_total = sqrt_p * m_cl

    warnings = []
    if m_cl > 1.0:
        warnings.append(f"corrected classical match {m_cl:.4f} exceeds 1; the linewidth "
                        "correction only applies to sub-unity measured matching")
    if m_total > 1.0:
        warnings.append(f"overall match {m_total:.4f} exceeds the physical bound 1")
    return ChainReport(p_temp, p_sp, sqrt_p, m_exp, correction, m_cl, m_total, tuple(warnings))


def run_chain(p: LabParams) -> ChainReport:
    return run_chain_with_overrides(p)
