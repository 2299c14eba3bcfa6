"""Nonlinear CWENO limiting of the reconstruction polynomials.

High-degree polynomials through rough data oscillate. Each cell's optimal
(unlimited) polynomial is therefore blended with two linear candidates
anchored at the cell's left interface sample: the backward line to the
previous sample and the forward line to the next one (the latter is the
cell's own linear-linking segment). Data-dependent weights built from
oscillation indicators pick the smooth candidates, recovering the optimal
polynomial on smooth data and collapsing to the flatter line across a jump.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MissingNeighbor
from .quadrature import gauss_points
from .recon import CellPoly, PiecewisePoly, TaylorBasis, _FACT
from .trajdata import AxisSeries

__all__ = [
    "CwenoConfig",
    "CandidateSet",
    "one_sided_p1",
    "central_poly",
    "oscillation_indicator",
    "nonlinear_weights",
    "blend",
    "make_candidates",
    "limit_piecewise",
]


@dataclass(frozen=True)
class CwenoConfig:
    lambda_central: float = 200.0 / 202.0
    lambda_side: float = 1.0 / 202.0
    epsilon: float = 1e-14
    exponent: int = 4

    def __post_init__(self):
        total = self.lambda_central + 2.0 * self.lambda_side
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"linear weights must sum to 1, got {total!r}")

    @classmethod
    def with_central_weight(cls, lambda_central: float, **kwargs) -> "CwenoConfig":
        """Config with a custom central weight; the sides split the rest."""
        return cls(
            lambda_central=lambda_central,
            lambda_side=0.5 * (1.0 - lambda_central),
            **kwargs,
        )


@dataclass
class CandidateSet:
    """The three blend candidates of one cell, in a shared basis."""

    central: CellPoly
    left: CellPoly
    right: CellPoly
    sigmas: np.ndarray

    def __post_init__(self):
        if not (
            len(self.central.coeffs) == len(self.left.coeffs) == len(self.right.coeffs)
        ):
            raise ValueError("candidates must share one basis")


def _line_as_cell_poly(
    ta: float, sa: float, tb: float, sb: float, basis: TaylorBasis
) -> CellPoly:
    """Express the line through (ta, sa), (tb, sb) in a cell's Taylor basis."""
    slope = (sb - sa) / (tb - ta)
    coeffs = np.zeros(basis.degree + 1)
    coeffs[0] = sa + slope * (basis.center - ta)
    coeffs[1] = slope * basis.width
    return CellPoly(coeffs, basis)


def one_sided_p1(
    series: AxisSeries, cell: int, side: str, basis: TaylorBasis
) -> CellPoly:
    """One-sided linear candidate of a cell, anchored at its left interface.

    side="left" joins the left interface sample to its predecessor and is
    missing on the first cell; side="right" joins the cell's own interface
    pair (the linear-linking segment), which every cell has.
    """
    t, s = series.times, series.values
    if side == "left":
        if cell == 0:
            raise MissingNeighbor("first cell has no sample left of the cell")
        return _line_as_cell_poly(t[cell - 1], s[cell - 1], t[cell], s[cell], basis)
    if side == "right":
        return _line_as_cell_poly(t[cell], s[cell], t[cell + 1], s[cell + 1], basis)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def central_poly(
    optimal: CellPoly, left: CellPoly, right: CellPoly, cfg: CwenoConfig
) -> CellPoly:
    """Central candidate: remove the side candidates' linear-weight share."""
    coeffs = (
        optimal.coeffs
        - cfg.lambda_side * left.coeffs
        - cfg.lambda_side * right.coeffs
    ) / cfg.lambda_central
    return CellPoly(coeffs, optimal.basis)


def _nth_derivative(poly: CellPoly, t: np.ndarray, order: int) -> np.ndarray:
    n = len(poly.coeffs)
    if order >= n:
        return np.zeros_like(np.asarray(t, dtype=float))
    u = (np.asarray(t, dtype=float) - poly.basis.center) / poly.basis.width
    c = poly.coeffs[order:] / _FACT[: n - order]
    return np.polynomial.polynomial.polyval(u, c) / poly.basis.width**order


def oscillation_indicator(poly: CellPoly, cell_interval: tuple[float, float]) -> float:
    """Sum over derivative orders of the integral of the squared derivative.

    Each integrand is a polynomial of degree <= 2(N - order), so the
    (N+1)-point Gauss rule integrates it exactly.
    """
    a, b = cell_interval
    degree = len(poly.coeffs) - 1
    nodes, weights = gauss_points(a, b, degree + 1)
    sigma = 0.0
    for order in range(1, degree + 1):
        d = _nth_derivative(poly, nodes, order)
        sigma += float(np.dot(weights, d * d))
    return sigma


def nonlinear_weights(sigmas: np.ndarray, cfg: CwenoConfig) -> np.ndarray:
    """Data-dependent weights (central, left, right); they sum to one."""
    lam = np.array([cfg.lambda_central, cfg.lambda_side, cfg.lambda_side])
    raw = lam / (np.asarray(sigmas, dtype=float) + cfg.epsilon) ** cfg.exponent
    return raw / raw.sum()


def blend(candidates: CandidateSet, cfg: CwenoConfig) -> CellPoly:
    """Weighted combination of the candidates; overwrites the cell polynomial."""
    omega = nonlinear_weights(candidates.sigmas, cfg)
    coeffs = (
        omega[0] * candidates.central.coeffs
        + omega[1] * candidates.left.coeffs
        + omega[2] * candidates.right.coeffs
    )
    return CellPoly(coeffs, candidates.central.basis)


def make_candidates(
    optimal: CellPoly,
    series: AxisSeries,
    cell: int,
    cfg: CwenoConfig,
) -> CandidateSet:
    """Assemble the candidate set of one cell, with boundary substitution.

    A missing side candidate (first cell's left) is replaced by the cell's
    own interpolating line so that every cell blends three candidates.
    """
    basis = optimal.basis
    right = one_sided_p1(series, cell, "right", basis)
    try:
        left = one_sided_p1(series, cell, "left", basis)
    except MissingNeighbor:
        left = right
    p0 = central_poly(optimal, left, right, cfg)
    interval = (float(series.times[cell]), float(series.times[cell + 1]))
    sigmas = np.array(
        [oscillation_indicator(p, interval) for p in (p0, left, right)]
    )
    return CandidateSet(p0, left, right, sigmas)


def limit_piecewise(
    poly: PiecewisePoly, series: AxisSeries, cfg: CwenoConfig | None = None
) -> PiecewisePoly:
    """Apply the limiter cell by cell to an unlimited reconstruction."""
    cfg = cfg or CwenoConfig()
    limited = [
        blend(make_candidates(cell_poly, series, i, cfg), cfg)
        for i, cell_poly in enumerate(poly.cells)
    ]
    return PiecewisePoly(poly.mesh, limited, poly.degree)
