import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shotr.errors import NonMonotoneTimes, OutOfDomain
from shotr.mesh import build_mesh, locate_cell


def test_uniform_mesh_arithmetic():
    mesh = build_mesh(np.array([0.0, 1.0, 2.0]))
    np.testing.assert_array_equal(mesh.widths, [1.0, 1.0])
    np.testing.assert_array_equal(mesh.barycenters, [0.5, 1.5])
    np.testing.assert_array_equal(mesh.interfaces, [0.0, 1.0, 2.0])
    assert mesh.n_cells == 2


def test_acquisition_frame_widths():
    # 0.144 s is a typical live-imaging frame interval; gaps just widen cells
    mesh = build_mesh(np.array([0.0, 0.144, 0.720]))
    np.testing.assert_allclose(mesh.widths, [0.144, 0.576])


def test_non_monotone_times_rejected():
    with pytest.raises(NonMonotoneTimes):
        build_mesh(np.array([0.0, 1.0, 1.0]))
    with pytest.raises(NonMonotoneTimes):
        build_mesh(np.array([0.0]))


def test_locate_cell_examples():
    mesh = build_mesh(np.array([0.0, 1.0, 2.0]))
    assert locate_cell(mesh, 0.3) == 0
    assert locate_cell(mesh, 1.0) == 0   # interior interface -> left cell
    assert locate_cell(mesh, 0.0) == 0
    assert locate_cell(mesh, 2.0) == 1
    with pytest.raises(OutOfDomain):
        locate_cell(mesh, 2.5)
    with pytest.raises(OutOfDomain):
        locate_cell(mesh, -0.1)


@st.composite
def strictly_increasing_times(draw):
    n = draw(st.integers(2, 40))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    start = rng.uniform(-10, 10)
    return start + np.concatenate([[0.0], np.cumsum(rng.uniform(1e-3, 2.0, n - 1))])


@settings(max_examples=60, deadline=None)
@given(times=strictly_increasing_times())
def test_widths_telescope(times):
    mesh = build_mesh(times)
    assert mesh.widths.sum() == pytest.approx(times[-1] - times[0], rel=0, abs=1e-12)
    assert np.all(mesh.widths > 0)
    np.testing.assert_allclose(
        mesh.barycenters, 0.5 * (times[:-1] + times[1:]), rtol=0, atol=0
    )


def _locate_linear(mesh, t):
    """Reference linear scan with the same left-cell tie-break."""
    for i in range(mesh.n_cells):
        if mesh.interfaces[i] <= t <= mesh.interfaces[i + 1]:
            return i
    raise AssertionError("t out of domain")


@settings(max_examples=60, deadline=None)
@given(times=strictly_increasing_times(), u=st.floats(0.0, 1.0), seed=st.integers(0, 999))
def test_locate_cell_matches_linear_scan(times, u, seed):
    mesh = build_mesh(times)
    t = min(times[0] + u * (times[-1] - times[0]), times[-1])
    assert locate_cell(mesh, t) == _locate_linear(mesh, t)
    # interface hits must resolve to the left cell
    if len(times) > 2:
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, len(times) - 1))
        assert locate_cell(mesh, times[k]) == k - 1
