import math

import numpy as np
import pytest

from heralded_mode import DomainError, auto_span, make_grid
from heralded_mode.grid import Grid1D, make_composite_grid, make_grid2d


@pytest.mark.parametrize("rule", ["trapezoid", "gauss_legendre"])
def test_constant_integrates_to_span(rule):
    g = make_grid(0.0, 1.0, 16, rule)
    assert g.integrate(np.ones(16)) == pytest.approx(2.0, abs=1e-14)
    assert np.sum(g.weights) == pytest.approx(2.0, rel=1e-12)


def test_gaussian_integral():
    g = make_grid(0.0, 6.0, 64, "gauss_legendre")
    assert abs(g.integrate(np.exp(-g.points**2)) - math.sqrt(math.pi)) < 1e-10


@pytest.mark.parametrize("rule", ["trapezoid", "gauss_legendre"])
def test_odd_integrand_vanishes(rule):
    g = make_grid(0.0, 3.0, 33, rule)
    assert abs(g.integrate(g.points)) < 1e-14


@pytest.mark.parametrize("n,half", [(7, 1.0), (16, 0.0), (16, -1.0)])
def test_make_grid_rejects(n, half):
    with pytest.raises(DomainError):
        make_grid(0.0, half, n)


def test_unknown_rule():
    with pytest.raises(DomainError):
        make_grid(0.0, 1.0, 16, "simpson")


def test_grid_invariants():
    with pytest.raises(DomainError):
        Grid1D(np.arange(10.0)[::-1], np.ones(10), 0.0, 1.0)
    with pytest.raises(DomainError):
        Grid1D(np.arange(10.0), -np.ones(10), 0.0, 1.0)


def test_auto_span():
    assert auto_span([1.0]) == 6.0
    assert auto_span([1.0, 2.0]) == 12.0
    for bad in ([], [0.0], [-1.0]):
        with pytest.raises(DomainError):
            auto_span(bad)


def test_six_sigma_mass_deficit():
    # exp(-x^2/(2 s^2)) truncated at 6 s loses erfc(6/sqrt 2) of its mass
    s = 1.0
    g = make_grid(0.0, auto_span([s]), 96)
    mass = g.integrate(np.exp(-g.points**2 / (2 * s**2)))
    deficit = 1 - mass / (s * math.sqrt(2 * math.pi))
    assert 0 < deficit < 2e-9
    assert deficit == pytest.approx(math.erfc(6 / math.sqrt(2)), rel=1e-6)


@pytest.mark.parametrize("ratio", [1.0, 1.5, 3.0, 10.0])
@pytest.mark.parametrize("n", [64, 96, 128])
def test_wide_gaussians_gauss_legendre(ratio, n):
    # sigma >= half_span / 6, compared with the exact integral over the interval
    half = 6.0
    s = ratio * half / 6
    g = make_grid(0.0, half, n)
    exact = s * math.sqrt(2 * math.pi) * math.erf(half / (s * math.sqrt(2)))
    assert g.integrate(np.exp(-g.points**2 / (2 * s**2))) == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("rule", ["trapezoid", "gauss_legendre"])
@pytest.mark.parametrize("f,exact", [
    (lambda x: np.exp(-x**2), math.sqrt(math.pi) * math.erf(4.0)),
    (lambda x: np.cos(x) ** 2, 4.0 + math.sin(8.0) / 2),
    (lambda x: 1 / (1 + x**2), 2 * math.atan(4.0)),
])
def test_refinement_does_not_hurt(rule, f, exact):
    errs = []
    for n in (16, 32, 64, 128, 256):
        g = make_grid(0.0, 4.0, n, rule)
        errs.append(abs(g.integrate(f(g.points)) - exact))
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= coarse + 1e-14


def test_composite_grid_resolves_narrow_feature():
    g = make_composite_grid(0.0, 600.0, 1.0)
    assert len(g) > 96
    assert np.all(np.diff(g.points) > 0)
    assert np.sum(g.weights) == pytest.approx(1200.0, rel=1e-12)
    assert g.integrate(np.exp(-(g.points - 3.3) ** 2)) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_grid2d_flattening_is_row_major():
    g = make_grid2d(1.0, 8)
    X, Y = g.flat_points()
    assert X[1] == X[0] and Y[1] > Y[0]
    assert len(g) == 64
    assert g.integrate(np.ones(64)) == pytest.approx(4.0)
