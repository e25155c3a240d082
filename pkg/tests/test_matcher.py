import math

import numpy as np
import pytest

from heralded_mode import (
    DomainError,
    FilterSpec,
    NumericError,
    SpatialScenario,
    TemporalScenario,
    evaluate_match,
    m_temp,
    mu_A_max,
    optimize_alignment,
    p_sp_gaussian,
    p_temp,
    spatial_purity_report,
)
from heralded_mode.kernels import signal_spatial_purity
from heralded_mode.matcher import MatchResult, golden_section_max


def test_identical_modes():
    r = evaluate_match(TemporalScenario.from_ratios(0.0, 0.0))
    assert r.match == pytest.approx(1.0, abs=1e-12)
    assert r.bound == pytest.approx(1.0, abs=1e-12)


def test_optimal_alignment_closed_form():
    mu_A = mu_A_max(0.5)
    r = evaluate_match(TemporalScenario.from_ratios(0.5, mu_A))
    assert abs(r.match - m_temp(0.5, mu_A)) < 1e-5
    assert r.bound == pytest.approx(math.sqrt(p_temp(0.5)), abs=1e-9)
    assert r.mu_A_used == pytest.approx(mu_A, rel=1e-15)


def test_randomized_scenarios_respect_bounds():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = TemporalScenario.from_ratios(rng.uniform(0, 2), rng.uniform(0, 3),
                                         sigma_p=rng.uniform(0.3, 3))
        r = evaluate_match(s)
        assert r.match <= r.bound + 1e-9
        assert r.match**2 <= r.purity_cpp * r.purity_classical + 1e-9
        assert 0 < r.purity_classical <= 1 + 1e-9
        assert abs(r.match - m_temp(s.mu_t, s.mu_A)) < 1e-5


def test_match_result_rejects_bound_violation():
    with pytest.raises(NumericError):
        MatchResult(0.5, 1.0, 0.9, math.sqrt(0.5), 0.0)


def test_evaluate_needs_alignment():
    with pytest.raises(DomainError):
        evaluate_match(TemporalScenario.from_ratios(0.5))


@pytest.mark.parametrize("mu_t", [0.0, 0.25, 0.5, 1.0])
def test_optimizer_finds_analytic_optimum(mu_t):
    s = TemporalScenario.from_ratios(mu_t, 0.0)
    mu_opt, m_opt = optimize_alignment(s)
    assert abs(mu_opt - mu_A_max(mu_t)) < 1e-3
    assert abs(m_opt - m_temp(mu_t, mu_A_max(mu_t))) <= 1e-5


def test_optimizer_beats_bracket_ends():
    s = TemporalScenario.from_ratios(1.0, 0.0)
    _, m_opt = optimize_alignment(s)
    assert m_opt >= evaluate_match(s).match
    assert m_opt >= m_temp(1.0, 6.0)


def test_optimizer_deterministic():
    s = TemporalScenario.from_ratios(0.7, 0.0)
    assert optimize_alignment(s) == optimize_alignment(s)


def test_golden_section_quadratic():
    x, fx = golden_section_max(lambda x: -(x - 1.3) ** 2, 0.0, 4.0)
    assert abs(x - 1.3) < 1e-6
    assert fx <= 0


def test_golden_section_monotone_returns_end():
    x, _ = golden_section_max(lambda x: x, 0.0, 2.0)
    assert x == 2.0


def test_golden_section_detects_non_unimodal():
    with pytest.raises(NumericError):
        golden_section_max(lambda x: math.cos(2 * math.pi * x / 3.0), 0.0, 3.0)


def test_spatial_report_gaussian():
    r = spatial_purity_report(SpatialScenario.gaussian(0.5))
    assert abs(r.purity_numeric - 2 / 3) < 1e-3
    assert r.purity_gaussian_formula == 2 / 3
    assert r.purity_pinhole_formula is None


def test_spatial_report_coherent_limit():
    r = spatial_purity_report(SpatialScenario.gaussian(1e-6))
    assert r.purity_numeric == pytest.approx(1.0, abs=1e-6)
    assert r.purity_gaussian_formula == pytest.approx(1.0, abs=1e-6)


def test_spatial_report_pinhole(pinhole_scenario):
    r = spatial_purity_report(pinhole_scenario)
    assert 0.86 <= r.purity_numeric <= 0.90
    assert r.purity_pinhole_formula == pytest.approx(0.87, abs=0.01)
    assert r.purity_gaussian_formula == pytest.approx(0.886, abs=1e-3)


def test_spatial_tiny_pinhole_all_near_one(pinhole_scenario):
    s = SpatialScenario(pinhole_scenario.pump, FilterSpec.pinhole(1e-9, 0.08, 790e-9))
    r = spatial_purity_report(s)
    assert min(r) == pytest.approx(1.0, abs=1e-6)


def test_spatial_purity_converges_with_grid():
    s = SpatialScenario.gaussian(0.25)
    target = p_sp_gaussian(0.25, 1.0)
    err48 = abs(signal_spatial_purity(s, s.default_grid(48)) - target)
    err96 = abs(signal_spatial_purity(s, s.default_grid(96)) - target)
    assert err96 <= err48
