"""Mode-matching evaluation and alignment-width optimization."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from . import analytic
from .corrstate import mode_match, purity
from .errors import DomainError, NumericError
from .grid import Grid1D, Grid2D, auto_span, make_grid
from .kernels import (
    SpatialScenario,
    TemporalScenario,
    build_cpp_temporal_numeric,
    build_dfg_temporal,
    signal_spatial_purity,
)
from .units import Pinhole, kappa_p_to_dp

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
OPTIMIZER_GRID_N = 192


@dataclass(frozen=True)
class MatchResult:
    purity_cpp: float
    purity_classical: float
    match: float
    bound: float
    mu_A_used: float

    def __post_init__(self):
        if self.match > self.bound + 1e-9:
            raise NumericError(f"match {self.match} exceeds the purity bound {self.bound}")


def evaluate_match(s: TemporalScenario, grid: Optional[Grid1D] = None) -> MatchResult:
    """Purities of the heralded and DFG modes and their overlap, by quadrature."""
    if s.alignment is None:
        raise DomainError("evaluate_match needs an alignment field")
    grid = grid if grid is not None else s.default_grid()
    cpp = build_cpp_temporal_numeric(s, grid)
    dfg = build_dfg_temporal(s, grid)
    p_cpp = purity(cpp)
    return MatchResult(
        purity_cpp=p_cpp,
        purity_classical=purity(dfg),
        match=mode_match(cpp, dfg),
        bound=math.sqrt(p_cpp),
        mu_A_used=s.mu_A,
    )


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-6) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]`` until the bracket is narrower than ``tol``.

    Returns ``(x, f(x))`` for the best point seen, end points included.
    """
    fa, fb = f(a), f(b)
    lo, hi = a, b
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    if max(fc, fd) < min(fa, fb):
        raise NumericError("objective is not unimodal on the bracket (interior below both ends)")
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    for xe, fe in ((a, fa), (b, fb)):
        if fe > fx:
            x, fx = xe, fe
    return x, fx


def optimize_alignment(s: TemporalScenario, grid: Optional[Grid1D] = None,
                       tol: float = 1e-6) -> tuple[float, float]:
    """Alignment width ``mu_A`` (units of the pump width) maximizing the
    numerically evaluated overlap with the heralded mode.

    The search runs over ``[0, 3 (1 + mu_t)]``; the closed-form optimum is not
    used, so it remains an independent check.  The default grid spans the
    widest DFG mode in the bracket.  Edge checks are skipped for the DFG
    modes: a grid that clips the far end of the bracket only perturbs values
    well below the maximum.
    """
    upper = 3.0 * (1.0 + s.mu_t)
    sigma_p = s.sigma_p
    if grid is None:
        grid = make_grid(s.omega_s0, auto_span([sigma_p, s.sigma_t, upper * sigma_p]),
                         OPTIMIZER_GRID_N)
    cpp = build_cpp_temporal_numeric(s, grid)

    def objective(mu_A: float) -> float:
        dfg = build_dfg_temporal(s.with_alignment_width(mu_A * sigma_p), grid, check_edges=False)
        return mode_match(cpp, dfg)

    return golden_section_max(objective, 0.0, upper, tol)


class SpatialPurity(NamedTuple):
    purity_numeric: float
    purity_gaussian_formula: float
    purity_pinhole_formula: Optional[float]


def spatial_purity_report(s: SpatialScenario, grid2d: Optional[Grid2D] = None) -> SpatialPurity:
    """Numeric spatial purity next to the applicable closed forms.

    For a pinhole the Gaussian formula is evaluated at the equivalent
    ``kappa_t``, and the tight-filtering pinhole formula is added.
    """
    grid2d = grid2d if grid2d is not None else s.default_grid()
    numeric = signal_spatial_purity(s, grid2d)
    gaussian = analytic.p_sp_gaussian(s.kappa_t, s.kappa_p)
    pinhole = None
    kind = s.filter.kind
    if isinstance(kind, Pinhole):
        pinhole = analytic.p_sp_pinhole(kind.radius_rho, kappa_p_to_dp(s.kappa_p),
                                        kind.lambda_t, kind.focal_F)
    return SpatialPurity(numeric, gaussian, pinhole)
