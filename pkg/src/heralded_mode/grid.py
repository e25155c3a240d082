"""Quadrature grids for frequency and transverse-position axes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError

MIN_POINTS = 8
SPAN_IN_SIGMAS = 6.0
RULES = ("trapezoid", "gauss_legendre")


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Sample points with quadrature weights on ``[center - half_span, center + half_span]``."""

    points: np.ndarray
    weights: np.ndarray
    center: float
    half_span: float
    rule: str = "gauss_legendre"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        if pts.ndim != 1 or pts.shape != wts.shape:
            raise DomainError("points and weights must be 1-D arrays of equal length")
        if pts.size < MIN_POINTS:
            raise DomainError(f"a grid needs at least {MIN_POINTS} points, got {pts.size}")
        if np.any(np.diff(pts) <= 0):
            raise DomainError("grid points must be strictly increasing")
        if np.any(wts <= 0):
            raise DomainError("quadrature weights must be positive")
        pts.setflags(write=False)
        wts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    def __len__(self) -> int:
        return self.points.size

    @property
    def ndim(self) -> int:
        return 1

    @property
    def flat_weights(self) -> np.ndarray:
        return self.weights

    def integrate(self, values) -> float:
        return np.dot(self.weights, np.asarray(values))

    def same_as(self, other) -> bool:
        return (
            isinstance(other, Grid1D)
            and len(self) == len(other)
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Cartesian product of two axes, flattened row-major over (x, y)."""

    x: Grid1D
    y: Grid1D

    def __len__(self) -> int:
        return len(self.x) * len(self.y)

    @property
    def ndim(self) -> int:
        return 2

    @property
    def flat_weights(self) -> np.ndarray:
        return np.outer(self.x.weights, self.y.weights).ravel()

    def flat_points(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates ``(X, Y)`` of every flattened sample; index = ix * ny + iy."""
        X, Y = np.meshgrid(self.x.points, self.y.points, indexing="ij")
        return X.ravel(), Y.ravel()

    def integrate(self, values) -> float:
        return np.dot(self.flat_weights, np.asarray(values).ravel())

    def same_as(self, other) -> bool:
        return isinstance(other, Grid2D) and self.x.same_as(other.x) and self.y.same_as(other.y)


def make_grid(center: float, half_span: float, n: int = 96, rule: str = "gauss_legendre") -> Grid1D:
    """Build a quadrature grid over ``[center - half_span, center + half_span]``.

    ``rule`` is ``"gauss_legendre"`` (exact for polynomials of degree < 2n) or
    ``"trapezoid"`` (uniform, end points included).
    """
    if not math.isfinite(center):
        raise DomainError("grid center must be finite")
    if not (half_span > 0 and math.isfinite(half_span)):
        raise DomainError(f"half_span must be positive, got {half_span!r}")
    n = int(n)
    if n < MIN_POINTS:
        raise DomainError(f"n must be at least {MIN_POINTS}, got {n}")
    if rule == "gauss_legendre":
        nodes, w = leggauss(n)
        points = center + half_span * nodes
        weights = half_span * w
    elif rule == "trapezoid":
        points = np.linspace(center - half_span, center + half_span, n)
        h = 2.0 * half_span / (n - 1)
        weights = np.full(n, h)
        weights[0] = weights[-1] = 0.5 * h
    else:
        raise DomainError(f"unknown quadrature rule {rule!r}; expected one of {RULES}")
    return Grid1D(points, weights, float(center), float(half_span), rule)


def make_grid2d(half_span: float, n: int = 48, rule: str = "trapezoid",
                center: tuple[float, float] = (0.0, 0.0)) -> Grid2D:
    """Square n x n product grid."""
    return Grid2D(make_grid(center[0], half_span, n, rule), make_grid(center[1], half_span, n, rule))


def auto_span(sigma_list: Iterable[float]) -> float:
    """Half-span that truncates Gaussians of the given widths at six widths."""
    widths = [float(s) for s in sigma_list]
    if not widths or any((not math.isfinite(s)) or s < 0 for s in widths) or max(widths) <= 0:
        raise DomainError(f"auto_span needs at least one positive width, got {widths!r}")
    return SPAN_IN_SIGMAS * max(widths)


def make_composite_grid(center: float, half_span: float, resolution: float,
                        n_per_panel: int = 16, min_points: int = 96) -> Grid1D:
    """Gauss-Legendre grid resolving features of width ``resolution``.

    Falls back to a single ``min_points`` rule when that is already fine
    enough; otherwise tiles the span with panels no wider than
    ``2 * resolution``, each carrying ``n_per_panel`` nodes.
    """
    if not (resolution > 0 and math.isfinite(resolution)):
        raise DomainError(f"resolution must be positive, got {resolution!r}")
    panels = int(math.ceil(half_span / resolution))
    if panels * n_per_panel <= min_points:
        return make_grid(center, half_span, min_points, "gauss_legendre")
    nodes, w = leggauss(n_per_panel)
    edges = np.linspace(center - half_span, center + half_span, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    points = (mids[:, None] + half[:, None] * nodes[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return Grid1D(points, weights, float(center), float(half_span), "composite_gauss_legendre")
