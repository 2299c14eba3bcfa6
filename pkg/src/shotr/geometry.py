"""Curvilinear trajectory length via isoparametric cell mappings.

Each cell of the reconstructed curve is mapped to the reference interval
[0, 1] by a Lagrange nodal basis of degree up to 3, with nodal positions
taken from the reconstruction polynomials at equispaced node times. The
cell length is the Gauss-quadrature integral of the Jacobian magnitude
sqrt(sum_axes (ds/dxi)^2); for degree 1 this collapses to the straight
chord, i.e. summing cells reproduces the classical polyline length.
"""

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDegree
from .quadrature import gauss_points
from .recon import PiecewisePoly

MAX_GEOMETRY_DEGREE = 3

# Lagrange bases on equispaced nodes m/N of [0, 1], as monomial coefficients
# (rows: basis functions, columns: powers of xi).
_NODAL_COEFFS = {
    1: np.array([
        [1.0, -1.0],
        [0.0, 1.0],
    ]),
    2: np.array([
        [1.0, -3.0, 2.0],
        [0.0, 4.0, -4.0],
        [0.0, -1.0, 2.0],
    ]),
    3: np.array([
        [1.0, -11.0 / 2.0, 9.0, -9.0 / 2.0],
        [0.0, 9.0, -45.0 / 2.0, 27.0 / 2.0],
        [0.0, -9.0 / 2.0, 18.0, -27.0 / 2.0],
        [0.0, 1.0, -9.0 / 2.0, 9.0 / 2.0],
    ]),
}


@dataclass(frozen=True)
class NodalBasis:
    """Lagrange nodal basis of the reference cell [0, 1]."""

    degree: int

    def __post_init__(self):
        if self.degree not in _NODAL_COEFFS:
            raise UnsupportedDegree(
                f"nodal basis degree must be in {sorted(_NODAL_COEFFS)}, got {self.degree}"
            )

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.degree + 1) / self.degree

    def values(self, xi) -> np.ndarray:
        """Basis values at xi; shape (degree + 1,) + shape(xi)."""
        xi = np.asarray(xi, dtype=float)
        return np.array(
            [np.polynomial.polynomial.polyval(xi, c) for c in _NODAL_COEFFS[self.degree]]
        )

    def derivatives(self, xi) -> np.ndarray:
        """Exact basis derivatives at xi; shape (degree + 1,) + shape(xi)."""
        xi = np.asarray(xi, dtype=float)
        return np.array(
            [
                np.polynomial.polynomial.polyval(
                    xi, np.polynomial.polynomial.polyder(c)
                )
                for c in _NODAL_COEFFS[self.degree]
            ]
        )


def nodal_basis_derivatives(degree: int, xi) -> np.ndarray:
    """Derivatives of all nodal basis functions at reference coordinate xi."""
    return NodalBasis(degree).derivatives(xi)


def _clamped_geometry_degree(geom_degree: int) -> int:
    if geom_degree < 1:
        raise UnsupportedDegree(f"geometry degree must be >= 1, got {geom_degree}")
    return min(geom_degree, MAX_GEOMETRY_DEGREE)


@dataclass(frozen=True)
class CellGeometry:
    """Isoparametric description of one cell of the reconstructed curve."""

    basis: NodalBasis
    node_times: np.ndarray     # equispaced node times within the cell
    nodal_values: np.ndarray   # (n_axes, degree + 1) positions at the nodes

    def tangent(self, xi) -> np.ndarray:
        """ds/dxi per axis at reference coordinates xi."""
        return self.nodal_values @ self.basis.derivatives(xi)


def cell_geometry(
    axis_polys: list[PiecewisePoly], cell: int, geom_degree: int = 3
) -> CellGeometry:
    """Nodal curve positions of one cell, taken from the reconstruction."""
    basis = NodalBasis(_clamped_geometry_degree(geom_degree))
    mesh = axis_polys[0].mesh
    node_times = mesh.interfaces[cell] + basis.nodes * mesh.widths[cell]
    nodal = np.array([p.cells[cell].value(node_times) for p in axis_polys])
    return CellGeometry(basis, node_times, nodal)


def cell_length(
    axis_polys: list[PiecewisePoly], cell: int, geom_degree: int = 3
) -> float:
    """Arc length of one cell of the reconstructed curve.

    Degrees above 3 fall back to the cubic geometry (the highest basis
    available); the quadrature uses max(degree + 1, 3) Gauss points.
    """
    geom = cell_geometry(axis_polys, cell, geom_degree)
    n_g = geom.basis.degree
    xi_q, w_q = gauss_points(0.0, 1.0, max(n_g + 1, 3))
    jac = np.sqrt(np.sum(geom.tangent(xi_q) ** 2, axis=0))
    return float(np.dot(w_q, jac))


def trajectory_length(axis_polys: list[PiecewisePoly], geom_degree: int = 3) -> float:
    """Total curve length: the cells' lengths summed in cell order."""
    return sum(
        cell_length(axis_polys, i, geom_degree)
        for i in range(axis_polys[0].mesh.n_cells)
    )
