"""Discretized two-point correlation functions and their functionals.

A :class:`CorrMatrix` stores raw samples ``G[i, j] = Gamma(x_i, x_j)`` of a
correlation function on a quadrature grid.  Weights are applied inside the
functionals, so the same kernel is valid under any quadrature rule.  For a
single-photon field the correlation function is the density matrix, hence
``purity`` is ``Tr(rho^2)`` and ``mode_match`` is the normalized overlap.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, InvariantError, NumericError, ShapeError
from .grid import Grid1D, Grid2D

Grid = Union[Grid1D, Grid2D]

HERMITIAN_RTOL = 1e-12
_BLOCK_ROWS = 512


@dataclass(frozen=True, eq=False)
class CorrMatrix:
    grid: Grid
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        G = np.array(self.values, dtype=complex)
        n = len(self.grid)
        if G.shape != (n, n):
            raise ShapeError(f"values must be {n}x{n} for this grid, got {G.shape}")
        if not np.all(np.isfinite(G)):
            raise InvariantError("correlation matrix has non-finite entries")
        scale = np.max(np.abs(G))
        if scale == 0:
            raise InvariantError("correlation matrix is identically zero")
        asym = np.max(np.abs(G - G.conj().T))
        if asym > HERMITIAN_RTOL * scale:
            raise InvariantError(f"not Hermitian: max |G - G^H| = {asym:.3e} (scale {scale:.3e})")
        if asym > 0:
            G = 0.5 * (G + G.conj().T)
        diag = G.diagonal().real
        if np.min(diag) < -HERMITIAN_RTOL * np.max(diag):
            raise InvariantError("negative intensity on the diagonal")
        G.setflags(write=False)
        object.__setattr__(self, "values", G)
        if trace(self) <= 0:
            raise InvariantError("trace must be positive")

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def weights(self) -> np.ndarray:
        return self.grid.flat_weights

    def scaled(self, c: float) -> "CorrMatrix":
        return CorrMatrix(self.grid, c * self.values, self.label)

    def normalized(self) -> "CorrMatrix":
        """Copy rescaled to unit trace."""
        # bring the peak to one first so 1/trace cannot overflow
        unit = self.scaled(1.0 / np.max(np.abs(self.values)))
        return unit.scaled(1.0 / trace(unit))

    def to_csv(self) -> str:
        """Header of grid coordinates (``x;y`` for 2D grids), then one row per
        ``i`` holding ``re,im`` pairs for every ``j``."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if isinstance(self.grid, Grid2D):
            X, Y = self.grid.flat_points()
            writer.writerow([f"{x:.17g};{y:.17g}" for x, y in zip(X, Y)])
        else:
            writer.writerow([f"{x:.17g}" for x in self.grid.points])
        for row in self.values:
            cells = []
            for z in row:
                cells.append(f"{z.real:.17g}")
                cells.append(f"{z.imag:.17g}")
            writer.writerow(cells)
        return buf.getvalue()


def trace(G: CorrMatrix) -> float:
    """Weighted diagonal sum: the total intensity of the mode."""
    t = np.dot(G.weights, G.values.diagonal())
    if abs(t.imag) > HERMITIAN_RTOL * max(abs(t.real), 1e-300):
        raise InvariantError(f"trace has imaginary residue {t.imag:.3e}")
    return float(t.real)


def _weighted_overlap(A: np.ndarray, B: np.ndarray, w: np.ndarray) -> complex:
    # sum_ij w_i w_j A_ij conj(B_ij), accumulated over fixed row blocks
    total = 0.0 + 0.0j
    for start in range(0, A.shape[0], _BLOCK_ROWS):
        stop = start + _BLOCK_ROWS
        block = (A[start:stop] * B[start:stop].conj()) @ w
        total += np.dot(w[start:stop], block)
    return total


def purity(G: CorrMatrix) -> float:
    """Purity of the mode, 1 for a coherent (rank-1) kernel."""
    t = trace(G)
    if t <= 0:
        raise DomainError("purity of a zero-trace kernel is undefined")
    w = G.weights
    s = _weighted_overlap(G.values, G.values, w).real
    return float(s / t**2)


def mode_match(G1: CorrMatrix, G2: CorrMatrix) -> float:
    """Normalized overlap between two modes sampled on the same grid."""
    if not G1.grid.same_as(G2.grid):
        raise ShapeError("mode_match requires both kernels on the identical grid")
    t1, t2 = trace(G1), trace(G2)
    if t1 <= 0 or t2 <= 0:
        raise DomainError("mode matching with a zero-trace kernel is undefined")
    s = _weighted_overlap(G1.values, G2.values, G1.weights)
    return float(abs(s) / (t1 * t2))


def _jacobi_eigvalsh(A: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations."""
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    off0 = np.sqrt(np.sum(np.abs(A) ** 2) - np.sum(np.abs(A.diagonal()) ** 2))
    if off0 == 0:
        return np.sort(A.diagonal().real)
    for _ in range(max_sweeps):
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                app, aqq = A[p, p].real, A[q, q].real
                phase = apq / mag
                theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                # rotation acting on columns p, q
                colp = A[:, p].copy()
                colq = A[:, q]
                A[:, p] = c * colp - s * np.conj(phase) * colq
                A[:, q] = s * phase * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :]
                A[p, :] = c * rowp - s * phase * rowq
                A[q, :] = s * np.conj(phase) * rowp + c * rowq
                A[p, q] = A[q, p] = 0.0
        off = np.sqrt(np.sum(np.abs(A) ** 2) - np.sum(np.abs(A.diagonal()) ** 2))
        if off < tol * off0:
            return np.sort(A.diagonal().real)
    raise NumericError(f"Jacobi eigenvalue iteration did not converge in {max_sweeps} sweeps")


def min_eigenvalue(G: CorrMatrix, method: str = "lapack") -> float:
    """Smallest eigenvalue of the weighted kernel ``W^1/2 G W^1/2``.

    ``method="jacobi"`` runs cyclic Jacobi rotations (practical up to a few
    hundred points); ``"lapack"`` uses :func:`numpy.linalg.eigvalsh`.
    """
    sw = np.sqrt(G.weights)
    K = sw[:, None] * G.values * sw[None, :]
    if method == "lapack":
        return float(np.linalg.eigvalsh(K)[0])
    if method == "jacobi":
        return float(_jacobi_eigvalsh(K)[0])
    raise DomainError(f"unknown eigenvalue method {method!r}")
