"""Command-line front end.

    heralded-mode purity --config setup.cfg
    heralded-mode match  --config setup.cfg [--csv]
    heralded-mode sweep  --config setup.cfg --axis mu_t --from 0 --to 2 --steps 9
    heralded-mode report --config setup.cfg [--csv]
    heralded-mode dump   --config setup.cfg --kernel cpp [--out kernel.csv]

Exit codes: 0 success, 2 configuration error, 3 numeric error.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import analytic
from .config import KNOWN_KEYS, Config, load_config, parse_config
from .corrstate import purity
from .errors import ConfigError, DomainError, ModeError, NumericError, OutOfRegimeError
from .experiment import CSV_HEADER, LabParams, TauConvention, run_chain_with_overrides
from .kernels import (
    SpatialScenario,
    TemporalScenario,
    build_cpp_temporal_numeric,
    build_dfg_temporal,
    build_signal_spatial,
)
from .matcher import evaluate_match, optimize_alignment, spatial_purity_report
from .units import FieldSpec, FilterSpec, MuRatios, dp_to_kappa_p

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

LAB_TEMPORAL_KEYS = ("pump.tau_fund_ps", "filter.fwhm_nm", "pump.lambda_nm")
LAB_SPATIAL_KEYS = ("filter.pinhole_diameter_um", "filter.focal_mm", "pump.beam_fwhm_mm",
                    "pump.lambda_nm")
CHAIN_KEYS = ("pump.lambda_nm", "pump.tau_fund_ps", "filter.fwhm_nm",
              "filter.pinhole_diameter_um", "filter.focal_mm", "pump.beam_fwhm_mm",
              "chain.visibility")
SWEEP_AXES = ("mu_t", "trigger.mu_t")


def _fmt(x: float) -> str:
    # locale-independent, 6 significant digits
    return format(x, ".6g")


def _emit_table(rows, csv: bool, out) -> None:
    if csv:
        out.write("quantity,value\n")
        for name, value in rows:
            out.write(f"{name},{_fmt(value)}\n")
        return
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        out.write(f"{name:<{width}}  {value:.6f}\n")


# --- config -> domain objects ------------------------------------------------

def _non_negative(cfg: Config, key: str) -> float:
    v = cfg.get_float(key)
    if v < 0:
        raise ConfigError(f"{key} must be non-negative, got {v}")
    return v


def _grid_n(cfg: Config, default: int) -> int:
    n = cfg.get_int("grid.n", default)
    if n < 8:
        raise ConfigError(f"grid.n must be at least 8, got {n}")
    return n


def _grid_rule(cfg: Config, default: str) -> str:
    rule = cfg.get_str("grid.rule", default)
    if rule not in ("gauss_legendre", "trapezoid"):
        raise ConfigError(f"grid.rule must be gauss_legendre or trapezoid, got {rule!r}")
    return rule


def _tau_convention(cfg: Config) -> TauConvention:
    raw = cfg.get_str("chain.tau_convention", TauConvention.PUMP_IS_FUND_OVER_SQRT2.value)
    try:
        return TauConvention(raw)
    except ValueError:
        choices = ", ".join(c.value for c in TauConvention)
        raise ConfigError(f"chain.tau_convention must be one of {choices}, got {raw!r}") from None


def _lab_mu_t(cfg: Config) -> tuple[float, float, float]:
    """(mu_t, w_t, tau_p) from lab-unit keys."""
    lab = LabParams(
        lambda_nm=cfg.get_float("pump.lambda_nm"),
        tau_fund_ps=cfg.get_float("pump.tau_fund_ps"),
        filter_fwhm_nm=cfg.get_float("filter.fwhm_nm"),
        pinhole_diameter_um=1.0, focal_mm=1.0, pump_fwhm_mm=1.0, visibility=1.0,
        tau_convention=_tau_convention(cfg),
    )
    return MuRatios.from_fwhm(lab.tau_p, lab.w_t).mu_t, lab.w_t, lab.tau_p


def _pinhole_scenario(cfg: Config) -> SpatialScenario:
    kappa_p = dp_to_kappa_p(cfg.get_float("pump.beam_fwhm_mm") * 1e-3)
    filt = FilterSpec.pinhole(0.5 * cfg.get_float("filter.pinhole_diameter_um") * 1e-6,
                              cfg.get_float("filter.focal_mm") * 1e-3,
                              cfg.get_float("pump.lambda_nm") * 1e-9)
    return SpatialScenario(FieldSpec(0.0, 1.0, kappa=kappa_p), filt)


def _lab_params(cfg: Config) -> LabParams:
    cfg.require(*CHAIN_KEYS)
    vis = cfg.get_float("chain.visibility")
    if not 0.0 <= vis <= 1.0:
        raise ConfigError(f"chain.visibility must lie in [0, 1], got {vis}")
    return LabParams(
        lambda_nm=cfg.get_float("pump.lambda_nm"),
        tau_fund_ps=cfg.get_float("pump.tau_fund_ps"),
        filter_fwhm_nm=cfg.get_float("filter.fwhm_nm"),
        pinhole_diameter_um=cfg.get_float("filter.pinhole_diameter_um"),
        focal_mm=cfg.get_float("filter.focal_mm"),
        pump_fwhm_mm=cfg.get_float("pump.beam_fwhm_mm"),
        visibility=vis,
        tau_convention=_tau_convention(cfg),
    )


# --- subcommands ---------------------------------------------------------------

def cmd_purity(cfg: Config, args, out) -> int:
    temporal = "trigger.mu_t" in cfg or cfg.has_all(LAB_TEMPORAL_KEYS)
    gaussian_sp = "trigger.kappa_ratio" in cfg
    pinhole_sp = cfg.has_all(LAB_SPATIAL_KEYS)
    if not (temporal or gaussian_sp or pinhole_sp):
        raise ConfigError(
            "missing required key: trigger.mu_t (or " + ", ".join(LAB_TEMPORAL_KEYS)
            + "), trigger.kappa_ratio, or the pinhole keys " + ", ".join(LAB_SPATIAL_KEYS))
    n_t = _grid_n(cfg, 96) if args.grid_n is None else args.grid_n
    n_s = _grid_n(cfg, 48) if args.grid_n is None else args.grid_n
    rows = []
    if temporal:
        if "trigger.mu_t" in cfg:
            mu_t = _non_negative(cfg, "trigger.mu_t")
            w_t = tau_p = None
        else:
            mu_t, w_t, tau_p = _lab_mu_t(cfg)
        s = TemporalScenario.from_ratios(mu_t)
        numeric = purity(build_cpp_temporal_numeric(s, s.default_grid(n_t, _grid_rule(cfg, "gauss_legendre"))))
        exact = analytic.p_temp(mu_t)
        rows += [("mu_t", mu_t), ("p_temp_analytic", exact), ("p_temp_numeric", numeric),
                 ("p_temp_abs_diff", abs(numeric - exact))]
        if w_t is not None:
            rows.append(("p_temp_fwhm_approx", analytic.p_temp_fwhm(w_t, tau_p)))
    if gaussian_sp:
        ratio = _non_negative(cfg, "trigger.kappa_ratio")
        if ratio == 0:
            raise ConfigError("trigger.kappa_ratio must be positive")
        s = SpatialScenario.gaussian(ratio)
        rep = spatial_purity_report(s, s.default_grid(n_s, _grid_rule(cfg, "trapezoid")))
        rows += [("p_sp_numeric", rep.purity_numeric),
                 ("p_sp_gaussian", rep.purity_gaussian_formula),
                 ("p_sp_abs_diff", abs(rep.purity_numeric - rep.purity_gaussian_formula))]
    if pinhole_sp:
        s = _pinhole_scenario(cfg)
        rep = spatial_purity_report(s, s.default_grid(n_s, _grid_rule(cfg, "trapezoid")))
        rows += [("p_sp_pinhole_numeric", rep.purity_numeric),
                 ("p_sp_gaussian_equiv", rep.purity_gaussian_formula),
                 ("p_sp_pinhole_approx", rep.purity_pinhole_formula)]
    _emit_table(rows, args.csv, out)
    return EXIT_OK


def cmd_match(cfg: Config, args, out) -> int:
    cfg.require("trigger.mu_t")
    optimize = cfg.get_bool("align.optimize", False)
    if "align.mu_A" not in cfg and not optimize:
        raise ConfigError("missing required key: align.mu_A (or set align.optimize = true)")
    mu_t = _non_negative(cfg, "trigger.mu_t")
    n = _grid_n(cfg, 96) if args.grid_n is None else args.grid_n
    rule = _grid_rule(cfg, "gauss_legendre")
    rows = [("mu_t", mu_t)]
    if "align.mu_A" in cfg:
        mu_A = _non_negative(cfg, "align.mu_A")
        s = TemporalScenario.from_ratios(mu_t, mu_A)
        res = evaluate_match(s, s.default_grid(n, rule))
        rows += [("mu_A", res.mu_A_used), ("purity_cpp", res.purity_cpp),
                 ("purity_classical", res.purity_classical), ("match", res.match),
                 ("bound", res.bound), ("match_analytic", analytic.m_temp(mu_t, mu_A))]
    if optimize:
        s = TemporalScenario.from_ratios(mu_t)
        mu_opt, m_opt = optimize_alignment(s)
        rows += [("mu_A_opt", mu_opt), ("mu_A_max_analytic", analytic.mu_A_max(mu_t)),
                 ("match_opt", m_opt), ("bound", math.sqrt(analytic.p_temp(mu_t)))]
    _emit_table(rows, args.csv, out)
    return EXIT_OK


def _sweep_row(mu_t: float, numeric: bool, n: int) -> tuple[float, float, float, float]:
    sqrt_p = math.sqrt(analytic.p_temp(mu_t))
    if not numeric:
        return (mu_t, sqrt_p, analytic.m_temp(mu_t, analytic.mu_A_max(mu_t)),
                analytic.m_temp(mu_t, 0.0))
    s_opt = TemporalScenario.from_ratios(mu_t, analytic.mu_A_max(mu_t))
    s_plane = TemporalScenario.from_ratios(mu_t, 0.0)
    m_opt = evaluate_match(s_opt, s_opt.default_grid(n))
    m_plane = evaluate_match(s_plane, s_plane.default_grid(n))
    return (mu_t, math.sqrt(m_opt.purity_cpp), m_opt.match, m_plane.match)


def _sweep_row_star(job):
    return _sweep_row(*job)


def cmd_sweep(cfg: Config, args, out) -> int:
    if args.axis not in SWEEP_AXES:
        raise ConfigError(f"--axis must be one of {', '.join(SWEEP_AXES)}, got {args.axis!r}")
    if args.steps < 2:
        raise ConfigError("--steps must be at least 2")
    if args.start < 0 or args.stop < 0:
        raise ConfigError("mu_t sweep bounds must be non-negative")
    n = _grid_n(cfg, 96) if args.grid_n is None else args.grid_n
    step = (args.stop - args.start) / (args.steps - 1)
    jobs = [(args.start + i * step, args.numeric, n) for i in range(args.steps)]
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            rows = list(pool.map(_sweep_row_star, jobs))
    else:
        rows = [_sweep_row_star(job) for job in jobs]
    out.write("mu_t,sqrt_p_temp,m_opt,m_plane\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")
    return EXIT_OK


def cmd_report(cfg: Config, args, out) -> int:
    lab = _lab_params(cfg)
    rep = run_chain_with_overrides(lab, cfg.get_float("chain.p_temp_override"),
                                   cfg.get_float("chain.p_sp_override"))
    if args.csv:
        out.write(CSV_HEADER + "\n" + rep.csv_row() + "\n")
        return EXIT_OK
    out.write(rep.to_text() + "\n\n")
    out.write(CSV_HEADER + "\n" + rep.csv_row() + "\n")
    return EXIT_OK


def cmd_dump(cfg: Config, args, out) -> int:
    kernel = args.kernel
    if kernel in ("cpp", "dfg"):
        cfg.require("trigger.mu_t")
        mu_t = _non_negative(cfg, "trigger.mu_t")
        n = _grid_n(cfg, 96) if args.grid_n is None else args.grid_n
        rule = _grid_rule(cfg, "gauss_legendre")
        if kernel == "cpp":
            s = TemporalScenario.from_ratios(mu_t)
            G = build_cpp_temporal_numeric(s, s.default_grid(n, rule))
        else:
            cfg.require("align.mu_A")
            s = TemporalScenario.from_ratios(mu_t, _non_negative(cfg, "align.mu_A"))
            G = build_dfg_temporal(s, s.default_grid(n, rule))
    else:
        n = _grid_n(cfg, 24) if args.grid_n is None else args.grid_n
        rule = _grid_rule(cfg, "trapezoid")
        if "trigger.kappa_ratio" in cfg:
            s = SpatialScenario.gaussian(cfg.get_float("trigger.kappa_ratio"))
        else:
            cfg.require(*LAB_SPATIAL_KEYS)
            s = _pinhole_scenario(cfg)
        G = build_signal_spatial(s, s.default_grid(n, rule))
    text = G.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {"purity": cmd_purity, "match": cmd_match, "sweep": cmd_sweep,
            "report": cmd_report, "dump": cmd_dump}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--csv", action="store_true", help="machine-readable CSV only")
    common.add_argument("--grid-n", type=int, default=None, help="override grid.n")

    ap = argparse.ArgumentParser(prog="heralded-mode", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("purity", parents=[common], help="analytic vs numeric purity")
    sub.add_parser("match", parents=[common], help="mode matching with the DFG wave")
    sw = sub.add_parser("sweep", parents=[common], help="purity / matching curves as CSV")
    sw.add_argument("--axis", default="mu_t")
    sw.add_argument("--from", dest="start", type=float, default=0.0)
    sw.add_argument("--to", dest="stop", type=float, default=2.0)
    sw.add_argument("--steps", type=int, default=21)
    sw.add_argument("--numeric", action="store_true", help="evaluate curves by quadrature")
    sw.add_argument("--parallel", action="store_true", help="evaluate rows in worker processes")
    sub.add_parser("report", parents=[common], help="experimental mode-matching chain")
    dp = sub.add_parser("dump", parents=[common], help="export a kernel as CSV")
    dp.add_argument("--kernel", choices=("cpp", "dfg", "spatial"), default="cpp")
    dp.add_argument("--out", default=None)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config) if args.config else parse_config("", "<empty>")
        if args.grid_n is not None and args.grid_n < 8:
            raise ConfigError(f"--grid-n must be at least 8, got {args.grid_n}")
        return COMMANDS[args.command](cfg, args, out)
    except ConfigError as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except (OutOfRegimeError, NumericError) as exc:
        err.write(f"numeric error: {exc}\n")
        return EXIT_NUMERIC
    except DomainError as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except ModeError as exc:
        err.write(f"numeric error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
