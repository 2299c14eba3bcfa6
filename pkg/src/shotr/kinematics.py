"""Instantaneous and summary kinematics of reconstructed trajectories.

Position, velocity, and acceleration at any time come straight from the
piecewise polynomial and its analytic derivatives on the cell containing
the query time. Dense output samples the N+1 Gauss points of every cell.
Summary velocities: average speed along the curvilinear path, net
displacement over duration, and the mean of per-cell finite-difference
velocities.
"""

from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain
from .geometry import MAX_GEOMETRY_DEGREE, trajectory_length
from .quadrature import gauss_points
from .recon import PiecewisePoly
from .trajdata import AxisSeries


@dataclass
class KinematicSample:
    """State of the particle at one time."""

    t: float
    position: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray

    @property
    def speed(self) -> float:
        """Euclidean magnitude of the velocity vector."""
        return float(np.linalg.norm(self.velocity))


@dataclass
class VelocitySummary:
    v_l: float            # path length / duration
    v_d: np.ndarray       # per-axis displacement / duration
    v_m: np.ndarray       # per-axis mean of per-cell finite differences
    length: float
    duration: float


def _check_domain(axis_polys: list[PiecewisePoly], t) -> None:
    lo, hi = axis_polys[0].mesh.span
    t = np.asarray(t, dtype=float)
    if np.any(t < lo) or np.any(t > hi):
        raise OutOfDomain(f"t outside [{lo!r}, {hi!r}]")


def eval_at(axis_polys: list[PiecewisePoly], t: float) -> KinematicSample:
    """Kinematic state at time t (t must lie within the track's span)."""
    _check_domain(axis_polys, t)
    return KinematicSample(
        t=float(t),
        position=np.array([float(p.value(t)) for p in axis_polys]),
        velocity=np.array([float(p.derivative(t)) for p in axis_polys]),
        acceleration=np.array([float(p.second_derivative(t)) for p in axis_polys]),
    )


def dense_times(axis_polys: list[PiecewisePoly]) -> np.ndarray:
    """The N+1 Gauss abscissae of every cell, in increasing time order."""
    mesh = axis_polys[0].mesh
    n = axis_polys[0].degree + 1
    return np.concatenate(
        [
            gauss_points(mesh.interfaces[i], mesh.interfaces[i + 1], n)[0]
            for i in range(mesh.n_cells)
        ]
    )


def sample_dense(
    axis_polys: list[PiecewisePoly], points: str = "gauss"
) -> list[KinematicSample]:
    """Dense kinematic output at the Gauss points of every cell."""
    if points != "gauss":
        raise ValueError(f"unknown sampling rule {points!r}")
    times = dense_times(axis_polys)
    pos = np.array([p.value(times) for p in axis_polys])
    vel = np.array([p.derivative(times) for p in axis_polys])
    acc = np.array([p.second_derivative(times) for p in axis_polys])
    return [
        KinematicSample(float(times[j]), pos[:, j], vel[:, j], acc[:, j])
        for j in range(len(times))
    ]


def summarize(
    axis_polys: list[PiecewisePoly],
    series: list[AxisSeries],
    geom_degree: int | None = None,
) -> VelocitySummary:
    """Summary velocities of one track."""
    times = series[0].times
    duration = float(times[-1] - times[0])
    if geom_degree is None:
        geom_degree = min(axis_polys[0].degree, MAX_GEOMETRY_DEGREE)
    length = trajectory_length(axis_polys, geom_degree)
    v_d = np.array([(s.values[-1] - s.values[0]) / duration for s in series])
    v_m = np.array([np.mean(np.diff(s.values) / np.diff(s.times)) for s in series])
    return VelocitySummary(
        v_l=length / duration,
        v_d=v_d,
        v_m=v_m,
        length=length,
        duration=duration,
    )
