"""Optical-mode density matrix, purity and mode matching of heralded PDC photons."""

from .analytic import (
    bessel_j1,
    f_alpha,
    jinc,
    m_temp,
    mu_A_max,
    p_sp_gaussian,
    p_sp_pinhole,
    p_temp,
    p_temp_fwhm,
)
from .corrstate import CorrMatrix, min_eigenvalue, mode_match, purity, trace
from .errors import (
    ConfigError,
    DomainError,
    InvariantError,
    NumericError,
    OutOfRegimeError,
    ShapeError,
    TruncationError,
)
from .experiment import ChainReport, LabParams, run_chain, run_chain_with_overrides
from .grid import Grid1D, Grid2D, auto_span, make_grid, make_grid2d
from .kernels import (
    SpatialScenario,
    TemporalScenario,
    build_advanced_wave_spatial,
    build_cpp_temporal_analytic,
    build_cpp_temporal_numeric,
    build_dfg_from_alignment_correlation,
    build_dfg_temporal,
    build_signal_spatial,
)
from .matcher import MatchResult, evaluate_match, optimize_alignment, spatial_purity_report
from .units import (
    FieldSpec,
    FilterSpec,
    MuRatios,
    dp_to_kappa_p,
    pinhole_to_kappa_t,
    tau_p_to_sigma_p,
    wt_to_sigma_t,
)

__version__ = "0.1.0"
