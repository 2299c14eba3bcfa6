import numpy as np
import pytest

from shotr.errors import UnsupportedDegree
from shotr.geometry import (
    NodalBasis,
    cell_geometry,
    cell_length,
    nodal_basis_derivatives,
    trajectory_length,
)
from shotr.recon import reconstruct_track
from shotr.trajdata import TrackSeries

from .conftest import random_track


def track_from_fn(fns, times, track_id="t"):
    coords = np.column_stack([f(times) for f in fns])
    return TrackSeries(track_id, times, coords, len(fns))


def test_linear_basis_derivatives_constant():
    d = nodal_basis_derivatives(1, 0.37)
    np.testing.assert_allclose(d.ravel(), [-1.0, 1.0])


def test_quadratic_basis_derivatives_at_zero():
    d = nodal_basis_derivatives(2, 0.0)
    np.testing.assert_allclose(d.ravel(), [-3.0, 4.0, -1.0])


def test_basis_interpolation_condition():
    for degree in (1, 2, 3):
        basis = NodalBasis(degree)
        vals = basis.values(basis.nodes)  # (n_basis, n_nodes)
        np.testing.assert_allclose(vals, np.eye(degree + 1), atol=1e-13)


def test_partition_of_unity_and_derivative_sum(rng):
    xi = rng.uniform(0, 1, 20)
    for degree in (1, 2, 3):
        basis = NodalBasis(degree)
        np.testing.assert_allclose(basis.values(xi).sum(axis=0), 1.0, atol=1e-13)
        np.testing.assert_allclose(basis.derivatives(xi).sum(axis=0), 0.0, atol=1e-12)


def test_unsupported_degree_raises():
    with pytest.raises(UnsupportedDegree):
        nodal_basis_derivatives(4, 0.5)
    with pytest.raises(UnsupportedDegree):
        NodalBasis(0)


def test_straight_segment_length_is_five():
    track = TrackSeries("seg", [0.0, 1.0], [[0.0, 0.0], [3.0, 4.0]], 2)
    polys = reconstruct_track(track, 1)
    for geom_degree in (1, 2, 3):
        assert cell_length(polys, 0, geom_degree) == pytest.approx(5.0, abs=1e-12)


def test_1d_monotone_cell_collapses_to_displacement():
    track = TrackSeries("m", [0.0, 1.0, 2.0], [[0.0], [2.0], [3.0]], 1)
    polys = reconstruct_track(track, 1)
    assert cell_length(polys, 0, 3) == pytest.approx(2.0, abs=1e-12)
    assert cell_length(polys, 1, 3) == pytest.approx(1.0, abs=1e-12)


def test_polyline_length_linear_geometry():
    track = TrackSeries("p", [0.0, 1.0, 2.0], [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]], 2)
    polys = reconstruct_track(track, 1)
    assert trajectory_length(polys, 1) == pytest.approx(2.0, abs=1e-13)


def test_linear_geometry_reduces_to_chord_sum(rng):
    for _ in range(20):
        track = random_track(rng, int(rng.integers(2, 15)), dim=int(rng.integers(1, 4)))
        polys = reconstruct_track(track, 3)
        chords = np.linalg.norm(np.diff(track.coords, axis=0), axis=1).sum()
        assert trajectory_length(polys, 1) == pytest.approx(chords, rel=1e-12, abs=1e-12)


def test_length_bounds_displacement(rng):
    for _ in range(50):
        track = random_track(rng, int(rng.integers(2, 20)), dim=2)
        polys = reconstruct_track(track, 3)
        chord = np.linalg.norm(track.coords[-1] - track.coords[0])
        assert trajectory_length(polys, 3) >= chord - 1e-12


def test_quarter_circle_high_order_convergence():
    errs = []
    for n in (32, 64, 128):
        th = np.linspace(0, np.pi / 2, n + 1)
        track = track_from_fn((np.cos, np.sin), th, "qc")
        polys = reconstruct_track(track, 3)
        errs.append(abs(trajectory_length(polys, 3) - np.pi / 2))
    orders = [np.log2(errs[i - 1] / errs[i]) for i in range(1, len(errs))]
    assert errs[-1] < 1e-8
    assert orders[-1] >= 3.5


def test_helix_length_matches_analytic():
    # (cos t, sin t, t/2): speed sqrt(1 + 1/4) everywhere
    t_end = 4.0
    exact = np.sqrt(1.25) * t_end
    errs = []
    for n in (40, 80):
        ts = np.linspace(0, t_end, n + 1)
        track = track_from_fn((np.cos, np.sin, lambda t: 0.5 * t), ts, "hx")
        polys = reconstruct_track(track, 3)
        errs.append(abs(trajectory_length(polys, 3) - exact))
    assert errs[0] / exact < 1e-5
    assert errs[0] / errs[1] > 10  # about 4th-order decay


def test_rigid_rotation_invariance(rng):
    track = random_track(rng, 12, dim=3)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    rotated = TrackSeries("r", track.times, track.coords @ q.T, 3)
    base = trajectory_length(reconstruct_track(track, 3), 3)
    rot = trajectory_length(reconstruct_track(rotated, 3), 3)
    assert rot == pytest.approx(base, rel=1e-10)


def test_cell_geometry_end_nodes_hit_interface_samples(rng):
    # unlimited reconstruction interpolates the samples, so the first and
    # last curve nodes of every cell are the recorded positions
    track = random_track(rng, 10, dim=2)
    polys = reconstruct_track(track, 3)
    for cell in range(polys[0].mesh.n_cells):
        geom = cell_geometry(polys, cell, 3)
        np.testing.assert_allclose(geom.nodal_values[:, 0], track.coords[cell], atol=1e-10)
        np.testing.assert_allclose(geom.nodal_values[:, -1], track.coords[cell + 1], atol=1e-10)
        assert geom.node_times[0] == pytest.approx(track.times[cell])
        assert geom.node_times[-1] == pytest.approx(track.times[cell + 1])


def test_geometry_degree_above_three_falls_back():
    track = track_from_fn((np.cos, np.sin), np.linspace(0, 1.5, 30), "qc")
    polys = reconstruct_track(track, 5)
    assert trajectory_length(polys, 7) == pytest.approx(trajectory_length(polys, 3), abs=1e-15)
