"""Field/filter parameter records and FWHM <-> Gaussian-width conversions.

Widths follow the field-amplitude convention used throughout the package::

    E(k, w) = E0 * exp(-k_perp**2 / kappa**2 - (w - w0)**2 / sigma**2)
    T(k, w) = T0 * exp(-k_perp**2 / kappa_t**2 - (w - w_t)**2 / sigma_t**2)

so a pulse of intensity FWHM ``tau`` has ``sigma = 2 sqrt(2 ln 2) / tau`` while
a filter whose *transmission* has FWHM ``w`` has ``sigma_t = w / (2 sqrt(ln 2))``.
Internal units are rad/s, seconds and metres.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DomainError

LN2 = math.log(2.0)
SPEED_OF_LIGHT = 299_792_458.0  # m/s

_PULSE_CONST = 2.0 * math.sqrt(2.0 * LN2)  # intensity FWHM * sigma for exp(-x^2/s^2) amplitude
_FILTER_CONST = 2.0 * math.sqrt(LN2)       # transmission FWHM / sigma


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _non_negative(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise DomainError(f"{name} must be non-negative and finite, got {value!r}")
    return value


# --- conversions -----------------------------------------------------------

def tau_p_to_sigma_p(tau_fwhm: float) -> float:
    """Pump pulse intensity FWHM (s) -> spectral amplitude width sigma_p (rad/s)."""
    return _PULSE_CONST / _positive("tau_fwhm", tau_fwhm)


def sigma_p_to_tau_p(sigma_p: float) -> float:
    return _PULSE_CONST / _positive("sigma_p", sigma_p)


def wt_to_sigma_t(w_fwhm: float) -> float:
    """Filter transmission FWHM (rad/s) -> sigma_t (rad/s)."""
    return _positive("w_fwhm", w_fwhm) / _FILTER_CONST


def sigma_t_to_wt(sigma_t: float) -> float:
    return _positive("sigma_t", sigma_t) * _FILTER_CONST


def dp_to_kappa_p(d_fwhm: float) -> float:
    """Pump beam intensity FWHM diameter (m) -> momentum width kappa_p (1/m)."""
    return _PULSE_CONST / _positive("d_fwhm", d_fwhm)


def kappa_p_to_dp(kappa_p: float) -> float:
    return _PULSE_CONST / _positive("kappa_p", kappa_p)


def pinhole_to_kappa_t(rho: float, F: float, lambda_t: float) -> float:
    """Equivalent Gaussian momentum width of a pinhole of radius ``rho``.

    Matches the curvature of the pinhole's jinc coherence function at the
    origin: ``kappa_t = k_t rho / (F sqrt 2)`` with ``k_t = 2 pi / lambda_t``.
    """
    rho = _positive("rho", rho)
    F = _positive("F", F)
    k_t = 2.0 * math.pi / _positive("lambda_t", lambda_t)
    return k_t * rho / (F * math.sqrt(2.0))


def kappa_t_to_pinhole_radius(kappa_t: float, F: float, lambda_t: float) -> float:
    k_t = 2.0 * math.pi / _positive("lambda_t", lambda_t)
    return _positive("kappa_t", kappa_t) * _positive("F", F) * math.sqrt(2.0) / k_t


def bandwidth_nm_to_omega(delta_lambda: float, wavelength: float) -> float:
    """Wavelength FWHM (m) at centre ``wavelength`` (m) -> angular-frequency FWHM (rad/s)."""
    delta_lambda = _positive("delta_lambda", delta_lambda)
    wavelength = _positive("wavelength", wavelength)
    return 2.0 * math.pi * SPEED_OF_LIGHT * delta_lambda / wavelength**2


def wavelength_to_omega(wavelength: float) -> float:
    return 2.0 * math.pi * SPEED_OF_LIGHT / _positive("wavelength", wavelength)


# --- parameter records -----------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Gaussian pump or alignment field.

    ``sigma_omega == 0`` is accepted and means a monochromatic (plane) wave in
    frequency; ``kappa == 0`` likewise means a transverse plane wave.
    """

    center_omega: float
    sigma_omega: float
    kappa: float = 0.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.center_omega):
            raise DomainError("center_omega must be finite")
        _non_negative("sigma_omega", self.sigma_omega)
        _non_negative("kappa", self.kappa)
        _positive("amplitude", self.amplitude)


@dataclass(frozen=True)
class GaussianSpectral:
    sigma_t: float

    def __post_init__(self):
        # sigma_t == 0 is the ideal monochromatic-filter limit
        _non_negative("sigma_t", self.sigma_t)


@dataclass(frozen=True)
class GaussianSpatial:
    kappa_t: float

    def __post_init__(self):
        _positive("kappa_t", self.kappa_t)


@dataclass(frozen=True)
class Pinhole:
    radius_rho: float
    focal_F: float
    lambda_t: float

    def __post_init__(self):
        _positive("radius_rho", self.radius_rho)
        _positive("focal_F", self.focal_F)
        _positive("lambda_t", self.lambda_t)

    @property
    def k_t(self) -> float:
        return 2.0 * math.pi / self.lambda_t

    @property
    def equivalent_kappa_t(self) -> float:
        return pinhole_to_kappa_t(self.radius_rho, self.focal_F, self.lambda_t)


FilterKind = Union[GaussianSpectral, GaussianSpatial, Pinhole]


@dataclass(frozen=True)
class FilterSpec:
    kind: FilterKind
    center_omega: Optional[float] = None
    peak_T0: float = 1.0

    def __post_init__(self):
        if not isinstance(self.kind, (GaussianSpectral, GaussianSpatial, Pinhole)):
            raise DomainError(f"unknown filter kind {self.kind!r}")
        _positive("peak_T0", self.peak_T0)
        if isinstance(self.kind, GaussianSpectral):
            if self.center_omega is None or not math.isfinite(self.center_omega):
                raise DomainError("spectral filters need a finite center_omega")

    @property
    def is_spectral(self) -> bool:
        return isinstance(self.kind, GaussianSpectral)

    @classmethod
    def spectral(cls, center_omega: float, sigma_t: float, peak_T0: float = 1.0) -> "FilterSpec":
        return cls(GaussianSpectral(sigma_t), center_omega=center_omega, peak_T0=peak_T0)

    @classmethod
    def gaussian_spatial(cls, kappa_t: float) -> "FilterSpec":
        return cls(GaussianSpatial(kappa_t))

    @classmethod
    def pinhole(cls, radius_rho: float, focal_F: float, lambda_t: float) -> "FilterSpec":
        return cls(Pinhole(radius_rho, focal_F, lambda_t))


@dataclass(frozen=True)
class MuRatios:
    """Filter and alignment spectral widths in units of the pump width."""

    mu_t: float
    mu_A: float = field(default=0.0)

    def __post_init__(self):
        _non_negative("mu_t", self.mu_t)
        _non_negative("mu_A", self.mu_A)

    @classmethod
    def from_widths(cls, sigma_p: float, sigma_t: float, sigma_A: float = 0.0) -> "MuRatios":
        sigma_p = _positive("sigma_p", sigma_p)
        return cls(sigma_t / sigma_p, sigma_A / sigma_p)

    @classmethod
    def from_fwhm(cls, tau_p: float, w_t: float) -> "MuRatios":
        """mu_t from lab FWHMs: ``w_t tau_p / (4 sqrt(2) ln 2)``."""
        return cls(wt_to_sigma_t(w_t) / tau_p_to_sigma_p(tau_p))
