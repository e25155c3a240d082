import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heralded_mode import (
    CorrMatrix,
    DomainError,
    InvariantError,
    NumericError,
    ShapeError,
    TemporalScenario,
    build_cpp_temporal_analytic,
    build_cpp_temporal_numeric,
    build_dfg_temporal,
    make_grid,
    min_eigenvalue,
    mode_match,
    purity,
    trace,
)
from heralded_mode.corrstate import _jacobi_eigvalsh
from heralded_mode.grid import Grid1D


def unit_grid(n):
    return Grid1D(np.arange(float(n)), np.ones(n), (n - 1) / 2, (n - 1) / 2)


def rank_one(grid, g):
    g = np.asarray(g, dtype=complex)
    return CorrMatrix(grid, np.outer(g.conj(), g))


# shared grid wide enough for every Gaussian-family kernel with mu <= 2
SHARED = make_grid(100.0, 12.0, 128)


def test_trace_identity():
    assert trace(CorrMatrix(unit_grid(10), np.eye(10))) == pytest.approx(10.0)


def test_trace_gaussian_diagonal():
    g = make_grid(0.0, 6.0, 96)
    x = g.points
    G = CorrMatrix(g, np.exp(-(x[:, None] ** 2 + x[None, :] ** 2) / 2))
    assert abs(trace(G) - math.sqrt(math.pi)) < 1e-9
    # exp(-(x^2 + x'^2)) has diagonal exp(-2 x^2), of integral sqrt(pi / 2)
    H = CorrMatrix(g, np.exp(-(x[:, None] ** 2 + x[None, :] ** 2)))
    assert abs(trace(H) - math.sqrt(math.pi / 2)) < 1e-9


def test_trace_is_linear():
    g = make_grid(0.0, 6.0, 32)
    G = rank_one(g, np.exp(-g.points**2))
    assert trace(G.scaled(3.5)) == pytest.approx(3.5 * trace(G), rel=1e-14)


def test_purity_pure_state():
    g = make_grid(0.0, 6.0, 64)
    amp = np.exp(-g.points**2 / 2) * np.exp(1j * 0.7 * g.points)
    assert purity(rank_one(g, amp)) == pytest.approx(1.0, abs=1e-9)


def test_purity_cpp_kernel():
    s = TemporalScenario.from_ratios(0.5)
    G = build_cpp_temporal_analytic(s, s.default_grid())
    assert abs(purity(G) - 1 / math.sqrt(1.5)) < 1e-6


def test_purity_maximally_mixed():
    assert purity(CorrMatrix(unit_grid(12), np.eye(12))) == pytest.approx(1 / 12)


def test_mode_match_self_is_purity():
    s = TemporalScenario.from_ratios(0.7)
    G = build_cpp_temporal_numeric(s, s.default_grid())
    assert mode_match(G, G) == pytest.approx(purity(G), rel=1e-13)


@pytest.mark.parametrize("alpha", [1.0, math.sqrt(2), math.sqrt(3), 0.5, 2.5])
def test_mode_match_mismatched_widths(alpha):
    # two transform-limited pulses of intensity widths s and alpha*s
    g = make_grid(0.0, 6.0 * max(1, alpha), 128)
    a = rank_one(g, np.exp(-g.points**2))
    b = rank_one(g, np.exp(-(g.points / alpha) ** 2))
    assert mode_match(a, b) == pytest.approx(2 * alpha / (alpha**2 + 1), abs=1e-9)


def test_mode_match_scale_invariance_and_symmetry():
    s = TemporalScenario.from_ratios(0.4, 0.3)
    g = s.default_grid()
    a, b = build_cpp_temporal_numeric(s, g), build_dfg_temporal(s, g)
    assert mode_match(a, b) == mode_match(b, a)
    assert mode_match(a.scaled(7.0), b.scaled(0.01)) == pytest.approx(mode_match(a, b), rel=1e-13)


def test_mode_match_grid_mismatch():
    a = rank_one(make_grid(0.0, 6.0, 32), np.ones(32))
    b = rank_one(make_grid(0.0, 6.0, 33), np.ones(33))
    with pytest.raises(ShapeError):
        mode_match(a, b)


def test_invariants_enforced():
    g = unit_grid(8)
    with pytest.raises(InvariantError):
        CorrMatrix(g, np.triu(np.ones((8, 8))))
    with pytest.raises(InvariantError):
        CorrMatrix(g, -np.eye(8))
    with pytest.raises(InvariantError):
        CorrMatrix(g, np.zeros((8, 8)))
    with pytest.raises(ShapeError):
        CorrMatrix(g, np.eye(7))


def test_rounding_noise_is_symmetrized():
    g = unit_grid(8)
    A = np.eye(8, dtype=complex) + 0.1
    A[0, 1] += 1e-15
    G = CorrMatrix(g, A)
    assert np.array_equal(G.values, G.values.conj().T)


def test_min_eigenvalue_examples():
    assert min_eigenvalue(CorrMatrix(unit_grid(10), np.eye(10))) == pytest.approx(1.0)
    g = make_grid(0.0, 6.0, 48)
    assert abs(min_eigenvalue(rank_one(g, np.exp(-g.points**2)))) < 1e-10


@pytest.mark.parametrize("mu_t", [0.0, 0.3, 1.0, 2.0])
def test_cpp_kernel_is_psd(mu_t):
    s = TemporalScenario.from_ratios(mu_t)
    G = build_cpp_temporal_numeric(s, s.default_grid())
    assert min_eigenvalue(G) >= -1e-10 * trace(G)


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24))
    A = A + A.conj().T
    np.testing.assert_allclose(_jacobi_eigvalsh(A), np.linalg.eigvalsh(A), atol=1e-10)


def test_jacobi_on_kernel():
    s = TemporalScenario.from_ratios(0.5)
    G = build_cpp_temporal_numeric(s, s.default_grid(n=32))
    assert min_eigenvalue(G, "jacobi") == pytest.approx(min_eigenvalue(G), abs=1e-12)


def test_jacobi_non_convergence():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(20, 20))
    with pytest.raises(NumericError):
        _jacobi_eigvalsh(A + A.T, max_sweeps=1)


def test_csv_export():
    G = rank_one(unit_grid(8), np.arange(1, 9) * (1 + 1j))
    lines = G.to_csv().split("\n")
    assert lines[0].split(",")[:2] == ["0", "1"]
    first = [float(v) for v in lines[1].split(",")]
    assert len(first) == 16
    assert complex(first[2], first[3]) == pytest.approx(G.values[0, 1])


mu = st.floats(0.0, 2.0)


@settings(max_examples=40, deadline=None)
@given(mu, mu, mu)
def test_cauchy_schwarz(mu_t1, mu_t2, mu_A):
    a = build_cpp_temporal_numeric(TemporalScenario.from_ratios(mu_t1), SHARED)
    b = build_cpp_temporal_numeric(TemporalScenario.from_ratios(mu_t2), SHARED)
    c = build_dfg_temporal(TemporalScenario.from_ratios(mu_t1, mu_A), SHARED)
    assert mode_match(a, b) ** 2 <= purity(a) * purity(b) + 1e-9
    # coherent partner: bounded by the square root of the heralded purity
    assert mode_match(a, c) <= math.sqrt(purity(a)) + 1e-9


@pytest.mark.parametrize("mu_t", [0.0, 0.5, 1.5])
def test_grid_refinement(mu_t):
    s = TemporalScenario.from_ratios(mu_t, 0.4)
    vals = []
    for n in (96, 192):
        g = s.default_grid(n)
        a, b = build_cpp_temporal_numeric(s, g), build_dfg_temporal(s, g)
        vals.append((purity(a), mode_match(a, b)))
    assert abs(vals[0][0] - vals[1][0]) < 1e-7
    assert abs(vals[0][1] - vals[1][1]) < 1e-7


def test_zero_trace_rejected():
    g = unit_grid(8)
    # Hermitian with vanishing diagonal: trace 0 is an invariant violation
    A = np.zeros((8, 8))
    A[0, 1] = A[1, 0] = 1.0
    with pytest.raises((InvariantError, DomainError)):
        purity(CorrMatrix(g, A))
