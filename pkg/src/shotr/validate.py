"""Validation harness: error norms, convergence and comparison studies,
and backward-in-time integration of reconstructed velocities.

The built-in synthetic cases have closed-form position and velocity, so
reconstruction errors can be measured exactly. ``run_convergence``
reproduces the published accuracy benchmark (degree-N reconstruction
converging at order N+1), ``compare_spt`` scores high-order reconstruction
against plain linear linking, and ``backtrace`` integrates the recovered
velocity field backward from the last sample: the closer the returned path
to the recorded trajectory, the more accurate the velocity.
"""

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ShotrError
from .mesh import StaggeredMesh, build_mesh
from .quadrature import gauss_points
from .recon import PiecewisePoly, effective_degree, reconstruct_track
from .trajdata import TrackSeries

AXES = "xyz"


@dataclass
class ErrorNorms:
    l1: float
    l2: float
    linf: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.l1, self.l2, self.linf)


def error_norms(
    reference: Callable[[np.ndarray], np.ndarray],
    candidate: Callable[[np.ndarray], np.ndarray],
    window: tuple[float, float],
    quad_points_per_cell: int,
    mesh: StaggeredMesh,
) -> ErrorNorms:
    """Integral L1/L2 and discrete Linf distance between two functions.

    Integrals use per-cell Gauss quadrature on the mesh cells clipped to
    the window; the max is taken over all quadrature nodes and the clipped
    cell interfaces.
    """
    a, b = window
    l1 = 0.0
    l2_sq = 0.0
    linf = 0.0
    for i in range(mesh.n_cells):
        lo = max(float(mesh.interfaces[i]), a)
        hi = min(float(mesh.interfaces[i + 1]), b)
        if hi <= lo:
            continue
        nodes, weights = gauss_points(lo, hi, quad_points_per_cell)
        pts = np.concatenate([nodes, [lo, hi]])
        err = np.abs(np.asarray(reference(pts)) - np.asarray(candidate(pts)))
        l1 += float(np.dot(weights, err[:-2]))
        l2_sq += float(np.dot(weights, err[:-2] ** 2))
        linf = max(linf, float(err.max()))
    return ErrorNorms(l1, math.sqrt(l2_sq), linf)


# ---------------------------------------------------------------------------
# synthetic cases
# ---------------------------------------------------------------------------

@dataclass
class SyntheticCase:
    """Analytic trajectory with its exact velocity, for validation runs."""

    name: str
    position_fns: tuple[Callable, ...]
    velocity_fns: tuple[Callable, ...]
    domain: tuple[float, float]

    @property
    def dim(self) -> int:
        return len(self.position_fns)

    def sample(self, n_points: int, track_id: str | None = None) -> TrackSeries:
        """Equidistant samples over the domain, endpoints included."""
        t = np.linspace(self.domain[0], self.domain[1], n_points)
        coords = np.column_stack([f(t) for f in self.position_fns])
        return TrackSeries(track_id or self.name, t, coords, self.dim)


def _conv3d() -> SyntheticCase:
    pi = np.pi
    return SyntheticCase(
        name="conv3d",
        position_fns=(
            lambda t: np.sin(pi * t) * np.cos(2 * pi * t),
            lambda t: 3 * np.cos(2 * pi * t) - 2 * np.sin(pi * t),
            lambda t: -6 * np.sin(pi * t) + 2 * np.cos(3 * pi * t),
        ),
        velocity_fns=(
            lambda t: pi * np.cos(pi * t) * np.cos(2 * pi * t)
            - 2 * pi * np.sin(pi * t) * np.sin(2 * pi * t),
            lambda t: -6 * pi * np.sin(2 * pi * t) - 2 * pi * np.cos(pi * t),
            lambda t: -6 * pi * np.cos(pi * t) - 6 * pi * np.sin(3 * pi * t),
        ),
        domain=(-1.0, 1.0),
    )


def _tanhcos2d() -> SyntheticCase:
    pi = np.pi
    return SyntheticCase(
        name="tanhcos2d",
        position_fns=(
            lambda t: 2 * t - np.log(np.tanh(5 * (t - 1)) + 1) / 5,
            lambda t: np.sin(2 * pi * t),
        ),
        velocity_fns=(
            lambda t: 1 + np.tanh(5 * (t - 1)),
            lambda t: 2 * pi * np.cos(2 * pi * t),
        ),
        domain=(0.0, 2.0),
    )


CASES: dict[str, Callable[[], SyntheticCase]] = {
    "conv3d": _conv3d,
    "tanhcos2d": _tanhcos2d,
}


def get_case(name: str) -> SyntheticCase:
    try:
        return CASES[name]()
    except KeyError:
        raise ShotrError(
            f"unknown case {name!r}; available: {sorted(CASES)}"
        ) from None


# ---------------------------------------------------------------------------
# convergence study
# ---------------------------------------------------------------------------

REFERENCE_MESH_CELLS = (100, 200, 400, 800)

# Published per-axis position errors (l1, l2, linf) of the 3-D convergence
# benchmark, keyed by (degree, refinement level, axis). Level k has
# REFERENCE_MESH_CELLS[k] cells over the case domain.
REFERENCE_POSITION_ERRORS: dict[tuple[int, int, str], tuple[float, float, float]] = {
    (1, 0, 'x'): (1.89e-03, 1.49e-03, 1.64e-03),
    (1, 0, 'y'): (5.06e-03, 4.00e-03, 4.60e-03),
    (1, 0, 'z'): (7.74e-03, 6.24e-03, 7.62e-03),
    (1, 1, 'x'): (4.73e-04, 3.72e-04, 4.11e-04),
    (1, 1, 'y'): (1.27e-03, 1.00e-03, 1.15e-03),
    (1, 1, 'z'): (1.94e-03, 1.56e-03, 1.91e-03),
    (1, 2, 'x'): (1.18e-04, 9.31e-05, 1.03e-04),
    (1, 2, 'y'): (3.16e-04, 2.50e-04, 2.88e-04),
    (1, 2, 'z'): (4.84e-04, 3.90e-04, 4.77e-04),
    (1, 3, 'x'): (2.95e-05, 2.33e-05, 2.57e-05),
    (1, 3, 'y'): (7.91e-05, 6.25e-05, 7.20e-05),
    (1, 3, 'z'): (1.21e-04, 9.75e-05, 1.19e-04),
    (2, 0, 'x'): (2.80e-04, 2.49e-04, 6.16e-04),
    (2, 0, 'y'): (4.86e-04, 4.14e-04, 5.91e-04),
    (2, 0, 'z'): (1.11e-03, 9.49e-04, 1.38e-03),
    (2, 1, 'x'): (3.43e-05, 3.02e-05, 8.16e-05),
    (2, 1, 'y'): (5.96e-05, 5.13e-05, 7.39e-05),
    (2, 1, 'z'): (1.35e-04, 1.16e-04, 1.72e-04),
    (2, 2, 'x'): (4.23e-06, 3.69e-06, 1.03e-05),
    (2, 2, 'y'): (7.42e-06, 6.41e-06, 9.24e-06),
    (2, 2, 'z'): (1.68e-05, 1.45e-05, 2.15e-05),
    (2, 3, 'x'): (5.25e-07, 4.55e-07, 1.30e-06),
    (2, 3, 'y'): (9.27e-07, 8.01e-07, 1.15e-06),
    (2, 3, 'z'): (2.09e-06, 1.81e-06, 2.69e-06),
    (3, 0, 'x'): (7.66e-05, 6.60e-05, 1.04e-04),
    (3, 0, 'y'): (9.05e-05, 8.24e-05, 2.27e-04),
    (3, 0, 'z'): (2.99e-04, 2.69e-04, 6.88e-04),
    (3, 1, 'x'): (4.68e-06, 4.01e-06, 4.94e-06),
    (3, 1, 'y'): (5.61e-06, 5.00e-06, 1.50e-05),
    (3, 1, 'z'): (1.88e-05, 1.68e-05, 4.94e-05),
    (3, 2, 'x'): (2.90e-07, 2.50e-07, 3.10e-07),
    (3, 2, 'y'): (3.47e-07, 3.05e-07, 9.51e-07),
    (3, 2, 'z'): (1.17e-06, 1.03e-06, 3.19e-06),
    (3, 3, 'x'): (1.81e-08, 1.56e-08, 1.94e-08),
    (3, 3, 'y'): (2.16e-08, 1.88e-08, 5.96e-08),
    (3, 3, 'z'): (7.29e-08, 6.34e-08, 2.01e-07),
    (4, 0, 'x'): (1.18e-05, 1.17e-05, 4.77e-05),
    (4, 0, 'y'): (9.72e-06, 8.65e-06, 2.74e-05),
    (4, 0, 'z'): (5.11e-05, 4.89e-05, 1.88e-04),
    (4, 1, 'x'): (3.68e-07, 3.67e-07, 1.98e-06),
    (4, 1, 'y'): (2.76e-07, 2.36e-07, 4.66e-07),
    (4, 1, 'z'): (1.42e-06, 1.23e-06, 3.31e-06),
    (4, 2, 'x'): (1.11e-08, 1.06e-08, 6.60e-08),
    (4, 2, 'y'): (8.40e-09, 7.21e-09, 9.98e-09),
    (4, 2, 'z'): (4.27e-08, 3.66e-08, 5.48e-08),
    (4, 3, 'x'): (3.38e-10, 3.09e-10, 2.09e-09),
    (4, 3, 'y'): (2.61e-10, 2.25e-10, 3.12e-10),
    (4, 3, 'z'): (1.32e-09, 1.14e-09, 1.57e-09),
    (5, 0, 'x'): (3.90e-06, 3.91e-06, 1.71e-05),
    (5, 0, 'y'): (1.92e-06, 1.98e-06, 9.03e-06),
    (5, 0, 'z'): (1.35e-05, 1.29e-05, 4.73e-05),
    (5, 1, 'x'): (5.63e-08, 4.93e-08, 1.57e-07),
    (5, 1, 'y'): (2.99e-08, 2.99e-08, 1.70e-07),
    (5, 1, 'z'): (2.24e-07, 2.20e-07, 1.19e-06),
    (5, 2, 'x'): (8.54e-10, 7.33e-10, 1.27e-09),
    (5, 2, 'y'): (4.58e-10, 4.32e-10, 2.77e-09),
    (5, 2, 'z'): (3.47e-09, 3.26e-09, 2.07e-08),
    (5, 3, 'x'): (1.32e-11, 1.14e-11, 1.49e-11),
    (5, 3, 'y'): (7.05e-12, 6.39e-12, 4.39e-11),
    (5, 3, 'z'): (5.36e-11, 4.85e-11, 3.31e-10),
}


@dataclass
class ConvergenceRow:
    """Errors of one (degree, mesh) pair, with orders vs the previous mesh."""

    case: str
    degree: int
    n_cells: int
    dt: float
    errors: dict[str, ErrorNorms]
    orders: dict[str, tuple[float, float, float]] | None


def _reconstruct_case(
    case: SyntheticCase, n_points: int, degree: int, limiter: str = "none"
) -> tuple[list[PiecewisePoly], StaggeredMesh]:
    track = case.sample(n_points)
    polys = reconstruct_track(track, degree, limiter)
    return polys, polys[0].mesh


def run_convergence(
    case: SyntheticCase,
    degrees: Sequence[int],
    mesh_cells: Sequence[int] = REFERENCE_MESH_CELLS,
    limiter: str = "none",
) -> list[ConvergenceRow]:
    """Position errors and empirical orders over a mesh-refinement sequence."""
    rows: list[ConvergenceRow] = []
    a, b = case.domain
    axes = AXES[: case.dim]
    for degree in degrees:
        prev: ConvergenceRow | None = None
        for cells in mesh_cells:
            polys, mesh = _reconstruct_case(case, cells + 1, degree, limiter)
            quad = effective_degree(cells + 1, degree) + 1
            errors = {
                ax: error_norms(case.position_fns[d], polys[d].value, (a, b), quad, mesh)
                for d, ax in enumerate(axes)
            }
            dt = (b - a) / cells
            orders = None
            if prev is not None:
                ratio = math.log(dt / prev.dt)
                orders = {
                    ax: tuple(
                        math.log(errors[ax].as_tuple()[k] / prev.errors[ax].as_tuple()[k])
                        / ratio
                        for k in range(3)
                    )
                    for ax in axes
                }
            row = ConvergenceRow(case.name, degree, cells, dt, errors, orders)
            rows.append(row)
            prev = row
    return rows


def check_convergence(
    rows: list[ConvergenceRow],
    rel_tol: float = 0.05,
    order_tol: float = 0.25,
) -> list[str]:
    """Violations of the convergence gates; empty when everything passes.

    Gates: per-axis errors match the published reference within rel_tol
    where a reference entry exists, and L1/L2 empirical orders on the two
    finest refinements stay within order_tol of degree + 1.
    """
    violations: list[str] = []
    level_of = {cells: lvl for lvl, cells in enumerate(REFERENCE_MESH_CELLS)}
    by_degree: dict[int, list[ConvergenceRow]] = {}
    for row in rows:
        by_degree.setdefault(row.degree, []).append(row)

    for row in rows:
        lvl = level_of.get(row.n_cells)
        if lvl is None or row.case != "conv3d":
            continue
        for ax, norms in row.errors.items():
            ref = REFERENCE_POSITION_ERRORS.get((row.degree, lvl, ax))
            if ref is None:
                continue
            for k, name in enumerate(("L1", "L2", "Linf")):
                got = norms.as_tuple()[k]
                if abs(got - ref[k]) > rel_tol * ref[k]:
                    violations.append(
                        f"N={row.degree} cells={row.n_cells} axis={ax} {name}: "
                        f"{got:.3e} vs reference {ref[k]:.3e} (>±{rel_tol:.0%})"
                    )

    for degree, drows in by_degree.items():
        expected = degree + 1
        for row in drows[-2:]:
            if row.orders is None:
                continue
            for ax, orders in row.orders.items():
                for k, name in enumerate(("L1", "L2")):
                    if abs(orders[k] - expected) > order_tol:
                        violations.append(
                            f"N={degree} cells={row.n_cells} axis={ax} order({name})="
                            f"{orders[k]:.2f} outside {expected}±{order_tol}"
                        )
    return violations


# ---------------------------------------------------------------------------
# comparison against linear linking
# ---------------------------------------------------------------------------

COMPARISON_MESH_POINTS = (21, 41, 81)
COMPARISON_DEGREES = (1, 3)


@dataclass
class ComparisonRow:
    """Position and velocity errors of one (method, mesh, axis) triple."""

    case: str
    method: str
    degree: int
    n_points: int
    axis: str
    position: ErrorNorms
    velocity: ErrorNorms


def compare_spt(
    case: SyntheticCase,
    mesh_points: Sequence[int] = COMPARISON_MESH_POINTS,
    quad_points_per_cell: int = 4,
) -> list[ComparisonRow]:
    """Score linear linking (P1) against cubic reconstruction (P3).

    Both methods share one quadrature so their norms are comparable.
    """
    rows: list[ComparisonRow] = []
    a, b = case.domain
    axes = AXES[: case.dim]
    for n_points in mesh_points:
        for degree in COMPARISON_DEGREES:
            polys, mesh = _reconstruct_case(case, n_points, degree)
            method = f"P{degree}"
            for d, ax in enumerate(axes):
                rows.append(
                    ComparisonRow(
                        case=case.name,
                        method=method,
                        degree=degree,
                        n_points=n_points,
                        axis=ax,
                        position=error_norms(
                            case.position_fns[d], polys[d].value,
                            (a, b), quad_points_per_cell, mesh,
                        ),
                        velocity=error_norms(
                            case.velocity_fns[d], polys[d].derivative,
                            (a, b), quad_points_per_cell, mesh,
                        ),
                    )
                )
    return rows


def check_comparison(rows: list[ComparisonRow], min_ratio: float = 10.0) -> list[str]:
    """Violations of the comparison gates; empty when everything passes.

    Gates: P3 velocity L2 error at least min_ratio times below P1 on every
    mesh and axis, and both methods' position and velocity errors strictly
    decreasing under refinement.
    """
    violations: list[str] = []
    index = {(r.method, r.n_points, r.axis): r for r in rows}
    meshes = sorted({r.n_points for r in rows})
    axes = sorted({r.axis for r in rows})

    for n_points in meshes:
        for ax in axes:
            p1 = index.get(("P1", n_points, ax))
            p3 = index.get(("P3", n_points, ax))
            if p1 is None or p3 is None:
                continue
            if p3.velocity.l2 * min_ratio > p1.velocity.l2:
                violations.append(
                    f"points={n_points} axis={ax}: velocity L2 ratio "
                    f"{p1.velocity.l2 / p3.velocity.l2:.1f} < {min_ratio}"
                )

    for method in ("P1", "P3"):
        for ax in axes:
            seq = [index[(method, m, ax)] for m in meshes if (method, m, ax) in index]
            for prev, cur in zip(seq, seq[1:]):
                for qty in ("position", "velocity"):
                    for k, name in enumerate(("L1", "L2", "Linf")):
                        before = getattr(prev, qty).as_tuple()[k]
                        after = getattr(cur, qty).as_tuple()[k]
                        if not after < before:
                            violations.append(
                                f"{method} axis={ax} {qty} {name} not decreasing: "
                                f"{before:.3e} -> {after:.3e} "
                                f"({prev.n_points} -> {cur.n_points} points)"
                            )
    return violations


# ---------------------------------------------------------------------------
# backward integration
# ---------------------------------------------------------------------------

def rk_step(
    state: np.ndarray,
    tau: float,
    dtau: float,
    velocity_field: Callable[[np.ndarray, float], np.ndarray],
    order: str = "rk4",
) -> np.ndarray:
    """One explicit Runge-Kutta step of dx/dtau = -v(x, tau)."""
    x = np.asarray(state, dtype=float)
    if order == "rk2":
        k1 = -velocity_field(x, tau)
        k2 = -velocity_field(x + 0.5 * dtau * k1, tau + 0.5 * dtau)
        return x + dtau * k2
    if order == "rk4":
        k1 = -velocity_field(x, tau)
        k2 = -velocity_field(x + 0.5 * dtau * k1, tau + 0.5 * dtau)
        k3 = -velocity_field(x + 0.5 * dtau * k2, tau + 0.5 * dtau)
        k4 = -velocity_field(x + dtau * k3, tau + dtau)
        return x + dtau / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    raise ValueError(f"order must be 'rk2' or 'rk4', got {order!r}")


@dataclass
class BacktraceResult:
    endpoint: np.ndarray
    endpoint_error: float          # distance to the first recorded sample
    taus: np.ndarray               # local integration times, 0 .. duration
    path: np.ndarray               # (len(taus), dim)
    per_axis: list[ErrorNorms]     # path vs reference, per axis
    combined: ErrorNorms           # same, on the deviation magnitude


def _path_norms(taus: np.ndarray, deviation: np.ndarray) -> ErrorNorms:
    return ErrorNorms(
        l1=float(np.trapezoid(np.abs(deviation), taus)),
        l2=float(math.sqrt(np.trapezoid(deviation**2, taus))),
        linf=float(np.max(np.abs(deviation))),
    )


def backtrace(
    track: TrackSeries,
    degree: int,
    dtau: float,
    order: str | None = None,
    limiter: str = "none",
    reference: Callable[[np.ndarray], np.ndarray] | None = None,
) -> BacktraceResult:
    """Integrate the reconstructed velocity backward from the last sample.

    The ODE runs over a local time 0 .. duration while physical time runs
    from the last acquisition back to the first; velocity lookups clamp to
    the track's time span (stages may step slightly outside). RK2 pairs
    with degree-1 reconstruction, RK4 with higher degrees. The path is
    scored at the RK step times against ``reference`` (physical time ->
    positions), which defaults to the cubic reconstruction of the track.
    """
    if dtau <= 0:
        raise ValueError(f"dtau must be positive, got {dtau!r}")
    polys = reconstruct_track(track, degree, limiter)
    t0, t1 = polys[0].mesh.span
    duration = t1 - t0
    if order is None:
        order = "rk2" if effective_degree(len(track), degree) == 1 else "rk4"

    def field(x: np.ndarray, tau: float) -> np.ndarray:
        t_phys = min(max(t1 - tau, t0), t1)
        return np.array([float(p.derivative(t_phys)) for p in polys])

    n_full = int(math.floor(duration / dtau + 1e-12))
    steps = [dtau] * n_full
    rest = duration - n_full * dtau
    if rest > 1e-12 * max(duration, 1.0):
        steps.append(rest)

    taus = [0.0]
    path = [track.coords[-1].astype(float)]
    for h in steps:
        path.append(rk_step(path[-1], taus[-1], h, field, order))
        taus.append(taus[-1] + h)
    taus_arr = np.array(taus)
    path_arr = np.array(path)

    if reference is None:
        ref_polys = polys if degree == 3 and limiter == "none" else reconstruct_track(track, 3)
        reference = lambda t: np.column_stack([p.value(t) for p in ref_polys])
    t_phys = np.clip(t1 - taus_arr, t0, t1)
    deviation = path_arr - np.asarray(reference(t_phys), dtype=float)

    per_axis = [_path_norms(taus_arr, deviation[:, d]) for d in range(track.dim)]
    combined = _path_norms(taus_arr, np.linalg.norm(deviation, axis=1))
    return BacktraceResult(
        endpoint=path_arr[-1],
        endpoint_error=float(np.linalg.norm(path_arr[-1] - track.coords[0])),
        taus=taus_arr,
        path=path_arr,
        per_axis=per_axis,
        combined=combined,
    )


def check_backtrace(low: BacktraceResult, high: BacktraceResult) -> list[str]:
    """Violations of the ordering gate: the high-order pairing must beat
    the low-order one in every norm."""
    violations = []
    for k, name in enumerate(("L1", "L2", "Linf")):
        lo = low.combined.as_tuple()[k]
        hi = high.combined.as_tuple()[k]
        if not hi < lo:
            violations.append(
                f"backtrace {name}: high-order {hi:.3e} not below low-order {lo:.3e}"
            )
    return violations
