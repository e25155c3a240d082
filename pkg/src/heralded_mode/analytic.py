"""Closed-form purity and mode-matching formulas, plus the Bessel J1 needed by
the pinhole coherence function.

Everything here is scalar and cheap; the kernel module reproduces the same
numbers by quadrature, and the two are compared in the test suite.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, OutOfRegimeError

LN2 = math.log(2.0)


def _check_non_negative(name, x):
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"{name} must be non-negative, got {x!r}")
    return x


def p_temp(mu_t: float) -> float:
    """Temporal purity of the heralded mode, ``1 / sqrt(1 + 2 mu_t^2)``."""
    mu_t = _check_non_negative("mu_t", mu_t)
    return 1.0 / math.sqrt(1.0 + 2.0 * mu_t**2)


def p_temp_fwhm(w_t: float, tau_p: float) -> float:
    """Small-``mu_t`` purity from lab FWHMs: ``1 - w_t^2 tau_p^2 / (32 ln^2 2)``.

    Raises :class:`OutOfRegimeError` when the approximation drops to zero or below.
    """
    w_t = _check_non_negative("w_t", w_t)
    tau_p = _check_non_negative("tau_p", tau_p)
    value = 1.0 - (w_t * tau_p) ** 2 / (32.0 * LN2**2)
    if value <= 0:
        raise OutOfRegimeError(
            f"w_t*tau_p = {w_t * tau_p:.4g} is outside the narrow-filter regime (P <= 0)")
    return value


def m_temp(mu_t: float, mu_A: float) -> float:
    """Temporal overlap between the heralded mode and the DFG wave of a
    Gaussian alignment pulse of relative width ``mu_A``."""
    mu_t = _check_non_negative("mu_t", mu_t)
    mu_A = _check_non_negative("mu_A", mu_A)
    a2 = mu_A**2
    return math.sqrt((1.0 + a2) / ((1.0 + a2 / 2.0 + mu_t**2) * (1.0 + a2 / 2.0)))


def mu_A_max(mu_t: float) -> float:
    """Alignment width maximizing :func:`m_temp` at fixed ``mu_t``."""
    mu_t = _check_non_negative("mu_t", mu_t)
    # sqrt(1 + 2m^2) - 1 written to avoid cancellation at small mu_t
    inner = 2.0 * mu_t**2 / (math.sqrt(1.0 + 2.0 * mu_t**2) + 1.0)
    return math.sqrt(inner)


def p_sp_gaussian(kappa_t: float, kappa_p: float) -> float:
    """Spatial (two-dimensional) purity for a Gaussian spatial filter."""
    kappa_t = _check_non_negative("kappa_t", kappa_t)
    kappa_p = float(kappa_p)
    if not (kappa_p > 0 and math.isfinite(kappa_p)):
        raise DomainError(f"kappa_p must be positive, got {kappa_p!r}")
    return 1.0 / (1.0 + 2.0 * (kappa_t / kappa_p) ** 2)


def p_sp_pinhole(rho: float, d_p: float, lambda_t: float, F: float) -> float:
    """Tight-filtering spatial purity for a pinhole of radius ``rho`` behind a
    lens of focal length ``F``, pump beam FWHM diameter ``d_p``."""
    for name, v in (("rho", rho), ("d_p", d_p), ("lambda_t", lambda_t), ("F", F)):
        if not (float(v) > 0 and math.isfinite(float(v))):
            raise DomainError(f"{name} must be positive, got {v!r}")
    x = math.pi * rho * d_p / (math.sqrt(2.0 * LN2) * lambda_t * F)
    value = 1.0 - x * x
    if value <= 0:
        raise OutOfRegimeError("pinhole too wide for the tight-filtering approximation (P <= 0)")
    return value


def f_alpha(alpha: float) -> float:
    """Overlap of two transform-limited Gaussian pulses whose widths differ by ``alpha``."""
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return 2.0 * alpha / (alpha * alpha + 1.0)


# --- Bessel J1 ------------------------------------------------------------
#
# |x| <= 12: ascending series, 40 terms (last term < 1e-25 at x = 12).
# |x| > 12: Hankel asymptotic expansion truncated after 24 terms, which is the
# smallest-term cutoff at x = 12 and only gets better further out.
# Both branches stay below 1e-12 absolute error.

_SERIES_LIMIT = 12.0
_SERIES_TERMS = 40
_ASYM_TERMS = 24

# (-1)^k / (k! (k+1)!) for the ascending series
_SERIES_COEF = np.array(
    [(-1.0) ** k / (math.factorial(k) * math.factorial(k + 1)) for k in range(_SERIES_TERMS)]
)
# a_k(1) * 8^k = prod_{j<=k} (4 - (2j-1)^2) / k!
_ASYM_COEF = np.array(
    [math.prod(4 - (2 * j - 1) ** 2 for j in range(1, k + 1)) / math.factorial(k) / 8.0**k
     for k in range(_ASYM_TERMS)]
)


def _jinc_series(x: np.ndarray) -> np.ndarray:
    # 2 J1(x)/x = sum_k c_k (x/2)^(2k), Horner in (x/2)^2
    q = (0.5 * x) ** 2
    acc = np.zeros_like(x)
    for c in _SERIES_COEF[::-1]:
        acc = acc * q + c
    return acc


def _j1_asymptotic(ax: np.ndarray) -> np.ndarray:
    # J1 = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - 3 pi / 4
    inv = 1.0 / ax
    power = np.ones_like(ax)
    P = np.zeros_like(ax)
    Q = np.zeros_like(ax)
    for k in range(_ASYM_TERMS):
        term = (-1.0) ** (k // 2) * _ASYM_COEF[k] * power
        if k % 2 == 0:
            P += term
        else:
            Q += term
        power = power * inv
    chi = ax - 0.75 * np.pi
    return np.sqrt(2.0 / (np.pi * ax)) * (P * np.cos(chi) - Q * np.sin(chi))


def _as_finite_array(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Bessel functions need finite arguments")
    return arr


def bessel_j1(x):
    """Bessel function of the first kind, order one (scalar or array)."""
    arr = _as_finite_array(x)
    ax = np.abs(arr)
    out = np.empty_like(ax)
    small = ax <= _SERIES_LIMIT
    out[small] = 0.5 * ax[small] * _jinc_series(ax[small])
    if np.any(~small):
        out[~small] = _j1_asymptotic(ax[~small])
    out = np.sign(arr) * out
    return float(out) if out.ndim == 0 else out


def jinc(x):
    """``2 J1(x) / x`` with the removable singularity filled in (value 1 at 0)."""
    arr = _as_finite_array(x)
    ax = np.abs(arr)
    out = np.empty_like(ax)
    small = ax <= _SERIES_LIMIT
    out[small] = _jinc_series(ax[small])
    if np.any(~small):
        out[~small] = 2.0 * _j1_asymptotic(ax[~small]) / ax[~small]
    return float(out) if out.ndim == 0 else out
