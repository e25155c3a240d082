"""Correlation kernels of the heralded photon and of its classical models.

Temporal kernels live on a frequency grid around the signal centre
``w_s0 = w_p0 - w_t0``; spatial kernels live on a transverse-position grid in
the crystal plane.  Under the large-crystal approximation (perfect
phase matching, ``K(dk) -> delta(dk)``) the heralded density matrix is

    Phi(w, w') = int dw_t T(w_t) E_p*(w + w_t) E_p(w' + w_t)

and the DFG field of an alignment wave with correlation ``Gamma_A`` is

    Gamma_DFG(w, w') = int dw_A dw_A' E_p*(w + w_A) E_p(w' + w_A') Gamma_A*(w_A, w_A').

A fully incoherent ``Gamma_A = T(w_A) delta(w_A - w_A')`` (the Klyshko
advanced wave) turns the second expression into the first.

All builders return trace-normalized :class:`CorrMatrix` objects; overall
constants cancel in purity and mode matching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic import jinc
from .corrstate import CorrMatrix
from .errors import DomainError, ShapeError, TruncationError
from .grid import Grid1D, Grid2D, auto_span, make_composite_grid, make_grid, make_grid2d
from .units import FieldSpec, FilterSpec, GaussianSpatial, GaussianSpectral, Pinhole

# relative diagonal value tolerated at the outermost grid node
TEMPORAL_EDGE_TOL = 1e-9
SPATIAL_EDGE_TOL = 1e-6

_INNER_CHUNK = 2048
# Filter or alignment widths below this fraction of the pump width change the
# kernels by O(ratio^2), under double rounding: they take the delta-limit path.
DELTA_LIMIT_RATIO = 1e-8


# --- scenarios -------------------------------------------------------------

@dataclass(frozen=True)
class TemporalScenario:
    pump: FieldSpec
    filter: FilterSpec
    alignment: Optional[FieldSpec] = None

    def __post_init__(self):
        if not isinstance(self.filter.kind, GaussianSpectral):
            raise DomainError("a temporal scenario needs a GaussianSpectral filter")
        if self.pump.sigma_omega <= 0:
            raise DomainError("pump spectral width must be positive")
        if self.omega_s0 <= 0:
            raise DomainError(
                f"signal centre w_p0 - w_t0 = {self.omega_s0:.6g} must be positive")

    @property
    def omega_s0(self) -> float:
        return self.pump.center_omega - self.filter.center_omega

    @property
    def sigma_p(self) -> float:
        return self.pump.sigma_omega

    @property
    def sigma_t(self) -> float:
        return self.filter.kind.sigma_t

    @property
    def sigma_A(self) -> float:
        if self.alignment is None:
            raise DomainError("scenario has no alignment field")
        return self.alignment.sigma_omega

    @property
    def mu_t(self) -> float:
        return self.sigma_t / self.sigma_p

    @property
    def mu_A(self) -> float:
        return self.sigma_A / self.sigma_p

    def with_alignment_width(self, sigma_A: float) -> "TemporalScenario":
        center = self.alignment.center_omega if self.alignment else self.filter.center_omega
        return TemporalScenario(self.pump, self.filter, FieldSpec(center, sigma_A))

    @classmethod
    def from_ratios(cls, mu_t: float, mu_A: Optional[float] = None, sigma_p: float = 1.0,
                    omega_p0: float = 200.0, omega_t0: float = 100.0) -> "TemporalScenario":
        """Scenario with the alignment centred on the filter, widths given in units of ``sigma_p``."""
        if mu_t < 0 or (mu_A is not None and mu_A < 0):
            raise DomainError("width ratios must be non-negative")
        pump = FieldSpec(omega_p0, sigma_p)
        filt = FilterSpec.spectral(omega_t0, mu_t * sigma_p)
        align = None if mu_A is None else FieldSpec(omega_t0, mu_A * sigma_p)
        return cls(pump, filt, align)

    def default_grid(self, n: int = 96, rule: str = "gauss_legendre") -> Grid1D:
        widths = [self.sigma_p, self.sigma_t]
        if self.alignment is not None:
            widths.append(self.alignment.sigma_omega)
        return make_grid(self.omega_s0, auto_span(widths), n, rule)


@dataclass(frozen=True)
class SpatialScenario:
    pump: FieldSpec
    filter: FilterSpec

    def __post_init__(self):
        if not isinstance(self.filter.kind, (GaussianSpatial, Pinhole)):
            raise DomainError("a spatial scenario needs a GaussianSpatial or Pinhole filter")
        if self.pump.kappa <= 0:
            raise DomainError("pump transverse width kappa must be positive")

    @property
    def kappa_p(self) -> float:
        return self.pump.kappa

    @property
    def kappa_t(self) -> float:
        """Filter width in momentum space; for a pinhole the equivalent Gaussian width."""
        kind = self.filter.kind
        return kind.kappa_t if isinstance(kind, GaussianSpatial) else kind.equivalent_kappa_t

    @classmethod
    def gaussian(cls, kappa_t: float, kappa_p: float = 1.0) -> "SpatialScenario":
        return cls(FieldSpec(0.0, 1.0, kappa=kappa_p), FilterSpec.gaussian_spatial(kappa_t))

    def default_grid(self, n: int = 48, rule: str = "trapezoid") -> Grid2D:
        # the signal kernel is confined by the pump envelope |E_p(r)|^2 = exp(-kappa_p^2 r^2 / 2)
        return make_grid2d(auto_span([1.0 / self.kappa_p]), n, rule)


# --- field profiles --------------------------------------------------------

def spectral_amplitude(field: FieldSpec, omega) -> np.ndarray:
    """``E(w) = E0 exp(-(w - w0)^2 / sigma^2)``."""
    omega = np.asarray(omega, dtype=float)
    return field.amplitude * np.exp(-((omega - field.center_omega) / field.sigma_omega) ** 2)


def transmission(filt: FilterSpec, omega) -> np.ndarray:
    sigma_t = filt.kind.sigma_t
    omega = np.asarray(omega, dtype=float)
    return filt.peak_T0 * np.exp(-((omega - filt.center_omega) / sigma_t) ** 2)


def transverse_amplitude(field: FieldSpec, r2) -> np.ndarray:
    """Crystal-plane amplitude ``exp(-(kappa |r| / 2)^2)`` as a function of ``|r|^2``."""
    return field.amplitude * np.exp(-0.25 * field.kappa**2 * np.asarray(r2, dtype=float))


def _check_edges(diag: np.ndarray, edge_index, tol: float, what: str) -> None:
    peak = np.max(np.abs(diag))
    edge = np.max(np.abs(diag[edge_index]))
    if edge > tol * peak:
        raise TruncationError(
            f"{what}: kernel at the grid edge is {edge / peak:.2e} of its peak "
            f"(limit {tol:.0e}); widen the grid")


def _finish(grid, values: np.ndarray, label: str, check=True, edge_tol=TEMPORAL_EDGE_TOL) -> CorrMatrix:
    if check:
        if isinstance(grid, Grid2D):
            nx, ny = len(grid.x), len(grid.y)
            ix, iy = np.unravel_index(np.arange(nx * ny), (nx, ny))
            edge = (ix == 0) | (ix == nx - 1) | (iy == 0) | (iy == ny - 1)
        else:
            edge = np.array([0, len(grid) - 1])
        _check_edges(values.diagonal().real, edge, edge_tol, label)
    G = CorrMatrix(grid, values, label)
    return G.normalized()


def _gauss(offset, sigma) -> np.ndarray:
    return np.exp(-((offset / sigma) ** 2))


def _inner_grid(half_span: float, resolution: float) -> Grid1D:
    # offsets from the centre of the integrated field; absolute frequencies
    # would lose very narrow widths to rounding
    return make_composite_grid(0.0, half_span, resolution)


# --- temporal ----------------------------------------------------------------

def build_cpp_temporal_numeric(s: TemporalScenario, grid: Grid1D,
                               inner: Optional[Grid1D] = None) -> CorrMatrix:
    """Heralded-photon density matrix by quadrature over the trigger frequency.

    ``inner`` overrides the trigger-frequency quadrature grid (absolute
    frequencies); by default it covers six filter widths around the filter
    centre and resolves the narrower of pump and filter.
    """
    # E_p(w + w_t) = E0 exp(-((w - w_s0) + (w_t - w_t0))^2 / sigma_p^2)
    x = grid.points - s.omega_s0
    E0 = s.pump.amplitude
    if s.sigma_t <= DELTA_LIMIT_RATIO * s.sigma_p:
        # monochromatic filter: trigger frequency pinned at its centre
        amp = E0 * _gauss(x, s.sigma_p)
        return _finish(grid, np.outer(amp.conj(), amp), "cpp_numeric")
    if inner is None:
        inner = _inner_grid(auto_span([s.sigma_t]), min(s.sigma_p, s.sigma_t))
        u = inner.points
    else:
        u = inner.points - s.filter.center_omega
    wT = inner.weights * s.filter.peak_T0 * _gauss(u, s.sigma_t)
    n = len(grid)
    values = np.zeros((n, n), dtype=complex)
    for start in range(0, u.size, _INNER_CHUNK):
        sl = slice(start, start + _INNER_CHUNK)
        E = E0 * _gauss(u[sl, None] + x[None, :], s.sigma_p)
        values += (E.conj() * wT[sl, None]).T @ E
    return _finish(grid, values, "cpp_numeric")


def build_cpp_temporal_analytic(s: TemporalScenario, grid: Grid1D) -> CorrMatrix:
    """Heralded-photon density matrix sampled from its closed Gaussian form."""
    sp2, st2 = s.sigma_p**2, s.sigma_t**2
    x = grid.points - s.omega_s0
    X, Xp = x[:, None], x[None, :]
    expo = -(X**2 + Xp**2) / (sp2 + 2 * st2) - st2 * (X - Xp) ** 2 / (sp2 * (sp2 + 2 * st2))
    return _finish(grid, np.exp(expo).astype(complex), "cpp_analytic")


def dfg_amplitude(pump: FieldSpec, alignment: FieldSpec, omega) -> np.ndarray:
    """Signal-frequency amplitude of the DFG wave from a coherent alignment pulse,
    ``g(w) = int dw_A E_A*(w_A) E_p(w + w_A)``."""
    # offset of w + w_A0 from the pump centre
    x = np.asarray(omega, dtype=float) - (pump.center_omega - alignment.center_omega)
    sigma_A = alignment.sigma_omega
    E0 = pump.amplitude * alignment.amplitude
    if sigma_A <= DELTA_LIMIT_RATIO * pump.sigma_omega:
        # plane-wave alignment: delta function at its centre
        return E0 * _gauss(x, pump.sigma_omega)
    inner = _inner_grid(auto_span([sigma_A]), min(sigma_A, pump.sigma_omega))
    u = inner.points
    wA = inner.weights * _gauss(u, sigma_A)
    return E0 * (wA @ _gauss(u[:, None] + x[None, :], pump.sigma_omega))


def build_dfg_temporal(s: TemporalScenario, grid: Grid1D, check_edges: bool = True) -> CorrMatrix:
    """Coherent DFG mode (rank one) generated by the scenario's alignment pulse."""
    if s.alignment is None:
        raise DomainError("build_dfg_temporal needs an alignment field")
    g = dfg_amplitude(s.pump, s.alignment, grid.points)
    return _finish(grid, np.outer(g.conj(), g), "dfg", check=check_edges)


def coherent_correlation(field: FieldSpec, grid: Grid1D) -> CorrMatrix:
    """``Gamma(w, w') = E*(w) E(w')`` of a coherent Gaussian pulse."""
    E = spectral_amplitude(field, grid.points).astype(complex)
    return CorrMatrix(grid, np.outer(E.conj(), E), "coherent")


def advanced_wave_temporal(filt: FilterSpec, grid: Grid1D) -> CorrMatrix:
    """Incoherent light passed through the spectral filter: ``T(w) delta(w - w')``.

    The delta function is discretized as ``delta_kl / w_k`` so that
    integrating it against the grid weights returns the sampled function.
    """
    T = transmission(filt, grid.points)
    return CorrMatrix(grid, np.diag(T / grid.weights).astype(complex), "advanced_wave")


def build_dfg_from_alignment_correlation(pump: FieldSpec, gamma_A: CorrMatrix,
                                         grid: Grid1D) -> CorrMatrix:
    """DFG mode for a partially coherent alignment wave of correlation ``gamma_A``.

    ``gamma_A`` lives on its own frequency grid around the alignment centre;
    the double integral is carried out on that grid.
    """
    if not isinstance(gamma_A.grid, Grid1D):
        raise ShapeError("alignment correlation must live on a 1-D frequency grid")
    a = gamma_A.grid.points
    w = gamma_A.grid.weights
    B = spectral_amplitude(pump, a[:, None] + grid.points[None, :]) * w[:, None]
    values = B.conj().T @ gamma_A.values.conj() @ B
    return _finish(grid, values, "dfg_partial")


# --- spatial -------------------------------------------------------------------

def _pair_distances(grid2d: Grid2D, rows: slice = slice(None)) -> np.ndarray:
    X, Y = grid2d.flat_points()
    dx = X[rows, None] - X[None, :]
    dy = Y[rows, None] - Y[None, :]
    return np.hypot(dx, dy)


def advanced_wave_coherence(f: FilterSpec, distance) -> np.ndarray:
    """Transverse coherence of the advanced wave in the crystal plane as a
    function of separation ``|r - r'|``."""
    d = np.asarray(distance, dtype=float)
    kind = f.kind
    if isinstance(kind, GaussianSpatial):
        return np.exp(-((0.5 * kind.kappa_t * d) ** 2))
    if isinstance(kind, Pinhole):
        return jinc(kind.k_t * kind.radius_rho * d / kind.focal_F)
    raise DomainError("advanced-wave coherence needs a spatial filter")


def build_advanced_wave_spatial(f: FilterSpec, grid2d: Grid2D) -> CorrMatrix:
    """Advanced-wave correlation ``Gamma_t(r, r')`` on a flattened 2-D grid.

    Unlike the other builders this one is not trace-normalized: its diagonal
    is exactly one, the advanced wave being stationary across the crystal.
    """
    values = advanced_wave_coherence(f, _pair_distances(grid2d))
    return CorrMatrix(grid2d, values.astype(complex), "advanced_wave_spatial")


def _signal_rows(s: SpatialScenario, grid2d: Grid2D, rows: slice,
                 X: np.ndarray, Y: np.ndarray, Ep: np.ndarray) -> np.ndarray:
    d = np.hypot(X[rows, None] - X[None, :], Y[rows, None] - Y[None, :])
    gamma_t = advanced_wave_coherence(s.filter, d)
    return Ep[rows, None].conj() * Ep[None, :] * gamma_t.conj()


def build_signal_spatial(s: SpatialScenario, grid2d: Grid2D) -> CorrMatrix:
    """Transverse correlation of the heralded (DFG) mode,
    ``Gamma_s(r, r') = E_p*(r) E_p(r') Gamma_t*(r, r')``."""
    X, Y = grid2d.flat_points()
    Ep = transverse_amplitude(s.pump, X**2 + Y**2)
    values = _signal_rows(s, grid2d, slice(None), X, Y, Ep).astype(complex)
    return _finish(grid2d, values, "signal_spatial", edge_tol=SPATIAL_EDGE_TOL)


def signal_spatial_purity(s: SpatialScenario, grid2d: Grid2D, block_rows: int = 256) -> float:
    """Purity of the spatial signal mode, streamed over row blocks so the
    full kernel is never held in memory (needed for grids beyond ~64 x 64)."""
    X, Y = grid2d.flat_points()
    Ep = transverse_amplitude(s.pump, X**2 + Y**2)
    w = grid2d.flat_weights
    diag = np.abs(Ep) ** 2
    nx, ny = len(grid2d.x), len(grid2d.y)
    ix, iy = np.unravel_index(np.arange(nx * ny), (nx, ny))
    _check_edges(diag, (ix == 0) | (ix == nx - 1) | (iy == 0) | (iy == ny - 1),
                 SPATIAL_EDGE_TOL, "signal_spatial")
    tr = np.dot(w, diag)
    total = 0.0
    for start in range(0, X.size, block_rows):
        rows = slice(start, start + block_rows)
        block = _signal_rows(s, grid2d, rows, X, Y, Ep)
        total += np.dot(w[rows], (np.abs(block) ** 2) @ w)
    return float(total / tr**2)
