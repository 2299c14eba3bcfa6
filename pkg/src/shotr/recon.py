"""Per-cell polynomial reconstruction by constrained least squares.

Each cell of the staggered mesh gets a degree-N polynomial written in a
normalized Taylor basis about the cell barycenter,

    p_i(t) = sum_l  s_hat[l] * (t - t_i)^l / (l! * dt_i^l),

fitted in the least-squares sense to the samples of a stencil spanning
2(N+1) cells, subject to exact interpolation of the cell's own two
interface samples. The equality-constrained normal equations are solved as
a small KKT block system; the inverse action is precomputed per cell as a
matrix that maps stencil samples straight to coefficients, so the three
spatial axes (which share the mesh) reuse the same factorization.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularSystem, UnsupportedDegree
from .mesh import StaggeredMesh, build_mesh, locate_cells
from .trajdata import AxisSeries, TrackSeries, split_axes

logger = logging.getLogger(__name__)

MAX_DEGREE = 9  # the width normalization keeps conditioning acceptable up to here

_FACT = np.array([math.factorial(k) for k in range(MAX_DEGREE + 2)], dtype=float)


@dataclass
class TaylorBasis:
    """Normalized Taylor basis about a cell barycenter."""

    degree: int
    center: float
    width: float

    def design_row(self, t: float) -> np.ndarray:
        """Values of all basis functions at time t."""
        u = (t - self.center) / self.width
        powers = u ** np.arange(self.degree + 1)
        return powers / _FACT[: self.degree + 1]


@dataclass
class Stencil:
    """Interface sample indices feeding one cell's least-squares fit."""

    cell: int
    interface_indices: np.ndarray

    @property
    def size(self) -> int:
        return len(self.interface_indices)

    def constraint_rows(self) -> tuple[int, int]:
        """Positions of the cell's own interfaces within the stencil."""
        idx = self.interface_indices
        left = int(np.nonzero(idx == self.cell)[0][0])
        right = int(np.nonzero(idx == self.cell + 1)[0][0])
        return left, right


@dataclass
class CellPoly:
    """Polynomial of one cell: coefficients in its Taylor basis."""

    coeffs: np.ndarray
    basis: TaylorBasis

    def value(self, t):
        u = (np.asarray(t, dtype=float) - self.basis.center) / self.basis.width
        n = len(self.coeffs)
        return np.polynomial.polynomial.polyval(u, self.coeffs / _FACT[:n])

    def derivative(self, t):
        u = (np.asarray(t, dtype=float) - self.basis.center) / self.basis.width
        n = len(self.coeffs)
        if n < 2:
            return np.zeros_like(u)
        c = self.coeffs[1:] / _FACT[: n - 1]
        return np.polynomial.polynomial.polyval(u, c) / self.basis.width

    def second_derivative(self, t):
        u = (np.asarray(t, dtype=float) - self.basis.center) / self.basis.width
        n = len(self.coeffs)
        if n < 3:
            return np.zeros_like(u)
        c = self.coeffs[2:] / _FACT[: n - 2]
        return np.polynomial.polynomial.polyval(u, c) / self.basis.width**2


@dataclass
class PiecewisePoly:
    """Per-cell reconstruction of one axis over a staggered mesh."""

    mesh: StaggeredMesh
    cells: list[CellPoly]
    degree: int
    _coeff_matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self._coeff_matrix = np.array([c.coeffs for c in self.cells])

    def _local(self, t):
        t = np.asarray(t, dtype=float)
        idx = locate_cells(self.mesh, t)
        u = (t - self.mesh.barycenters[idx]) / self.mesh.widths[idx]
        return idx, u

    def value(self, t):
        idx, u = self._local(t)
        n = self.degree + 1
        acc = self._coeff_matrix[idx, n - 1] / _FACT[n - 1]
        for l in range(n - 2, -1, -1):
            acc = acc * u + self._coeff_matrix[idx, l] / _FACT[l]
        return acc

    def derivative(self, t):
        idx, u = self._local(t)
        n = self.degree + 1
        if n < 2:
            return np.zeros_like(u)
        acc = self._coeff_matrix[idx, n - 1] / _FACT[n - 2]
        for l in range(n - 2, 0, -1):
            acc = acc * u + self._coeff_matrix[idx, l] / _FACT[l - 1]
        return acc / self.mesh.widths[idx]

    def second_derivative(self, t):
        idx, u = self._local(t)
        n = self.degree + 1
        if n < 3:
            return np.zeros_like(u)
        acc = self._coeff_matrix[idx, n - 1] / _FACT[n - 3]
        for l in range(n - 2, 1, -1):
            acc = acc * u + self._coeff_matrix[idx, l] / _FACT[l - 2]
        return acc / self.mesh.widths[idx] ** 2

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "cells": [
                {
                    "center": c.basis.center,
                    "width": c.basis.width,
                    "coeffs": [float(v) for v in c.coeffs],
                }
                for c in self.cells
            ],
        }


def effective_degree(n_points: int, degree: int) -> int:
    """Degree actually used for a track of n_points samples.

    Short tracks cannot feed the full stencil, so the degree drops to
    n_points - 1 (pure interpolation when the system turns square), with
    floor 1.
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise UnsupportedDegree(f"degree must be in [1, {MAX_DEGREE}], got {degree}")
    return max(1, min(degree, n_points - 1))


def build_stencil(mesh: StaggeredMesh, cell: int, degree: int) -> Stencil:
    """Stencil of 2(N+1) cells: the 2N+3 interfaces centered on the cell's
    left interface, shifted one-sided near the track ends.

    Always contains the cell's own interfaces ``cell`` and ``cell + 1``.
    With fewer samples in the whole track the stencil is simply every
    interface.
    """
    n_if = len(mesh.interfaces)
    size = min(2 * degree + 3, n_if)
    lo = min(max(cell - (degree + 1), 0), n_if - size)
    return Stencil(cell, np.arange(lo, lo + size))


def assemble_clsq(
    series: AxisSeries,
    mesh: StaggeredMesh,
    stencil: Stencil,
    basis: TaylorBasis,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Assemble the least-squares system (M, B) and constraints (C, d)."""
    times = series.times[stencil.interface_indices]
    M = np.array([basis.design_row(t) for t in times])
    B = series.values[stencil.interface_indices].copy()
    r0, r1 = stencil.constraint_rows()
    C = M[[r0, r1], :].copy()
    d = B[[r0, r1]].copy()
    return M, B, C, d


def _kkt_matrix(M: np.ndarray, C: np.ndarray) -> np.ndarray:
    n = M.shape[1]
    m = C.shape[0]
    K = np.zeros((n + m, n + m))
    K[:n, :n] = 2.0 * M.T @ M
    K[:n, n:] = -C.T
    K[n:, :n] = C
    return K


def solve_clsq(
    M: np.ndarray, B: np.ndarray, C: np.ndarray, d: np.ndarray
) -> np.ndarray:
    """Minimize ||M s - B|| subject to C s = d.

    Solves the KKT block system with dense partial-pivoting elimination and
    discards the Lagrange multipliers.
    """
    n = M.shape[1]
    rhs = np.concatenate([2.0 * M.T @ B, d])
    try:
        sol = np.linalg.solve(_kkt_matrix(M, C), rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    return sol[:n]


def reconstruction_matrix(M: np.ndarray, stencil: Stencil) -> np.ndarray:
    """Matrix mapping stencil samples directly to cell coefficients.

    This is the coefficient block of the inverted KKT operator; applying it
    to a sample vector is one matrix-vector product, and the same matrix
    serves every axis sharing the mesh.
    """
    n = M.shape[1]
    r0, r1 = stencil.constraint_rows()
    C = M[[r0, r1], :]
    D = np.zeros((2, stencil.size))
    D[0, r0] = 1.0
    D[1, r1] = 1.0
    rhs = np.vstack([2.0 * M.T, D])
    try:
        sol = np.linalg.solve(_kkt_matrix(M, C), rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    return sol[:n]


@dataclass
class CellOperator:
    """Precomputed geometry-only reconstruction operator of one cell."""

    stencil: Stencil
    basis: TaylorBasis
    matrix: np.ndarray


def _cell_operator(mesh: StaggeredMesh, i: int, degree: int) -> CellOperator:
    center = float(mesh.barycenters[i])
    width = float(mesh.widths[i])
    for deg in range(degree, 0, -1):
        basis = TaylorBasis(deg, center, width)
        stencil = build_stencil(mesh, i, deg)
        times = mesh.interfaces[stencil.interface_indices]
        M = np.array([basis.design_row(t) for t in times])
        try:
            R = reconstruction_matrix(M, stencil)
        except SingularSystem as exc:
            if deg == 1:
                raise SingularSystem(f"cell {i}: {exc}") from exc
            logger.warning("cell %d: singular at degree %d, retrying at %d", i, deg, deg - 1)
            continue
        if deg < degree:
            # zero high-order coefficients keep the per-axis coeff length uniform
            R = np.vstack([R, np.zeros((degree - deg, stencil.size))])
        return CellOperator(stencil, TaylorBasis(degree, center, width), R)
    raise SingularSystem(f"cell {i}: no solvable degree")  # pragma: no cover


def reconstruction_operators(mesh: StaggeredMesh, degree: int) -> list[CellOperator]:
    """Build the per-cell sample-to-coefficients operators for a mesh."""
    return [_cell_operator(mesh, i, degree) for i in range(mesh.n_cells)]


def _apply_operators(
    ops: list[CellOperator], series: AxisSeries, mesh: StaggeredMesh
) -> PiecewisePoly:
    cells = [
        CellPoly(op.matrix @ series.values[op.stencil.interface_indices], op.basis)
        for op in ops
    ]
    return PiecewisePoly(mesh, cells, ops[0].basis.degree)


def reconstruct_axis(
    series: AxisSeries,
    degree: int,
    limiter: str = "none",
    cweno_config=None,
    _operators: list[CellOperator] | None = None,
) -> PiecewisePoly:
    """Reconstruct one axis as a piecewise polynomial of the given degree.

    limiter="cweno" replaces each cell's coefficients with the nonlinear
    blend against the one-sided linear candidates; "none" keeps the
    unlimited constrained least-squares polynomials.
    """
    if limiter not in ("none", "cweno"):
        raise ValueError(f"unknown limiter {limiter!r}")
    n_eff = effective_degree(len(series), degree)
    mesh = build_mesh(series.times)
    ops = _operators if _operators is not None else reconstruction_operators(mesh, n_eff)
    poly = _apply_operators(ops, series, mesh)
    if limiter == "cweno":
        from .cweno import CwenoConfig, limit_piecewise

        poly = limit_piecewise(poly, series, cweno_config or CwenoConfig())
    return poly


def reconstruct_track(
    track: TrackSeries,
    degree: int,
    limiter: str = "none",
    cweno_config=None,
) -> list[PiecewisePoly]:
    """Reconstruct every axis of a track, one PiecewisePoly per dimension.

    The per-cell operators are computed once and shared across axes, since
    all axes sample the same times.
    """
    n_eff = effective_degree(len(track), degree)
    if n_eff < degree:
        logger.warning(
            "track %r: degree reduced from %d to %d (%d samples)",
            track.track_id, degree, n_eff, len(track),
        )
    mesh = build_mesh(track.times)
    ops = reconstruction_operators(mesh, n_eff)
    return [
        reconstruct_axis(s, n_eff, limiter, cweno_config, _operators=ops)
        for s in split_axes(track)
    ]
