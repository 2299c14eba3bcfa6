import numpy as np
import pytest

from shotr.errors import ShotrError
from shotr.mesh import build_mesh
from shotr.recon import reconstruct_track
from shotr.trajdata import TrackSeries
from shotr.validate import (
    CASES,
    backtrace,
    check_backtrace,
    check_comparison,
    check_convergence,
    compare_spt,
    error_norms,
    get_case,
    rk_step,
    run_convergence,
)

from .conftest import random_track


# ---------------------------------------------------------------------------
# error norms
# ---------------------------------------------------------------------------

def test_identical_functions_have_zero_norms():
    mesh = build_mesh(np.linspace(0, 2, 11))
    f = lambda t: np.sin(t)
    en = error_norms(f, f, (0, 2), 4, mesh)
    assert en.as_tuple() == (0.0, 0.0, 0.0)


def test_constant_error_analytic():
    mesh = build_mesh(np.linspace(0, 2, 21))
    en = error_norms(lambda t: np.ones_like(t), lambda t: np.zeros_like(t), (0, 2), 4, mesh)
    assert en.l1 == pytest.approx(2.0, abs=1e-13)
    assert en.l2 == pytest.approx(np.sqrt(2.0), abs=1e-13)
    assert en.linf == pytest.approx(1.0, abs=1e-15)


def test_linear_error_analytic():
    mesh = build_mesh(np.linspace(0, 1, 9))
    en = error_norms(lambda t: t, lambda t: np.zeros_like(t), (0, 1), 4, mesh)
    assert en.l1 == pytest.approx(0.5, abs=1e-12)
    assert en.l2 == pytest.approx(1 / np.sqrt(3), abs=1e-12)
    assert en.linf == pytest.approx(1.0, abs=1e-15)


def test_norm_dominance_inequalities(rng):
    for _ in range(10):
        times = np.sort(rng.uniform(0, 3, 12))
        times[0], times[-1] = 0.0, 3.0
        mesh = build_mesh(np.unique(times))
        c = rng.normal(size=4)
        f = lambda t: np.polynomial.polynomial.polyval(t, c)
        g = lambda t: np.sin(3 * t)
        en = error_norms(f, g, (0, 3), 5, mesh)
        T = 3.0
        assert en.l1 <= T * en.linf + 1e-12
        assert en.l2**2 <= T * en.linf**2 + 1e-12


def test_window_clips_cells():
    mesh = build_mesh(np.linspace(0, 2, 21))
    en = error_norms(lambda t: np.ones_like(t), lambda t: np.zeros_like(t), (0.5, 1.5), 4, mesh)
    assert en.l1 == pytest.approx(1.0, abs=1e-13)


# ---------------------------------------------------------------------------
# synthetic cases
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CASES))
def test_case_velocity_is_position_derivative(name):
    case = get_case(name)
    a, b = case.domain
    t = np.linspace(a + 0.01, b - 0.01, 57)
    h = 1e-6
    for pos, vel in zip(case.position_fns, case.velocity_fns):
        fd = (pos(t + h) - pos(t - h)) / (2 * h)
        np.testing.assert_allclose(vel(t), fd, rtol=1e-6, atol=1e-6)


def test_case_sampling_endpoints_inclusive():
    case = get_case("tanhcos2d")
    track = case.sample(41)
    assert len(track) == 41
    assert track.times[0] == case.domain[0]
    assert track.times[-1] == case.domain[1]
    assert track.dim == 2


def test_unknown_case_raises():
    with pytest.raises(ShotrError):
        get_case("nope")


# ---------------------------------------------------------------------------
# convergence study
# ---------------------------------------------------------------------------

def test_convergence_published_anchor_values():
    case = get_case("conv3d")
    rows = run_convergence(case, degrees=[1], mesh_cells=[100, 200])
    first = rows[0].errors["x"]
    assert first.l1 == pytest.approx(1.89e-3, rel=0.02)
    second = rows[1]
    assert second.errors["x"].l1 == pytest.approx(4.73e-4, rel=0.02)
    assert second.orders["x"][0] == pytest.approx(2.0, abs=0.02)


def test_convergence_cubic_anchor():
    case = get_case("conv3d")
    rows = run_convergence(case, degrees=[3], mesh_cells=[400, 800])
    assert rows[1].errors["x"].l1 == pytest.approx(1.81e-8, rel=0.03)
    assert rows[1].orders["x"][0] == pytest.approx(4.0, abs=0.05)


def test_polynomial_case_is_exact():
    from shotr.validate import SyntheticCase

    case = SyntheticCase(
        name="cubic",
        position_fns=(lambda t: t**3 - t, lambda t: 2 * t**2 + 1),
        velocity_fns=(lambda t: 3 * t**2 - 1, lambda t: 4 * t),
        domain=(0.0, 1.0),
    )
    rows = run_convergence(case, degrees=[3], mesh_cells=[20, 40])
    for row in rows:
        for en in row.errors.values():
            assert en.linf < 1e-12


def test_check_convergence_flags_bad_rows():
    case = get_case("conv3d")
    rows = run_convergence(case, degrees=[1], mesh_cells=[100, 200, 400, 800])
    assert check_convergence(rows) == []
    rows[0].errors["x"].l1 *= 2.0
    violations = check_convergence(rows)
    assert any("L1" in v and "cells=100" in v for v in violations)


# ---------------------------------------------------------------------------
# comparison study
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def comparison_rows():
    return compare_spt(get_case("tanhcos2d"))


def test_comparison_mid_mesh_p3_beats_p1_everywhere(comparison_rows):
    for axis in "xy":
        p1 = next(r for r in comparison_rows if r.method == "P1" and r.n_points == 41 and r.axis == axis)
        p3 = next(r for r in comparison_rows if r.method == "P3" and r.n_points == 41 and r.axis == axis)
        for k in range(3):
            assert p3.position.as_tuple()[k] < p1.position.as_tuple()[k]
            assert p3.velocity.as_tuple()[k] < p1.velocity.as_tuple()[k]


def test_comparison_errors_decrease_with_refinement(comparison_rows):
    for method in ("P1", "P3"):
        for axis in "xy":
            seq = [r for r in comparison_rows if r.method == method and r.axis == axis]
            seq.sort(key=lambda r: r.n_points)
            for prev, cur in zip(seq, seq[1:]):
                assert cur.position.l2 < prev.position.l2
                assert cur.velocity.l2 < prev.velocity.l2


def test_p1_velocity_is_secant_slope():
    case = get_case("tanhcos2d")
    track = case.sample(21)
    polys = reconstruct_track(track, 1)
    secants = np.diff(track.coords[:, 0]) / np.diff(track.times)
    mids = 0.5 * (track.times[:-1] + track.times[1:])
    np.testing.assert_allclose(polys[0].derivative(mids), secants, atol=1e-12)


def test_check_comparison_reports_ratio_violations(comparison_rows):
    violations = check_comparison(comparison_rows, min_ratio=1.0)
    assert violations == []  # P3 always beats P1 outright
    violations = check_comparison(comparison_rows, min_ratio=1e9)
    assert violations  # absurd gate must trip


# ---------------------------------------------------------------------------
# Runge-Kutta steps and backtracing
# ---------------------------------------------------------------------------

def test_rk_step_zero_field_fixed_point():
    v = lambda x, t: np.zeros_like(x)
    state = np.array([1.0, -2.0])
    for order in ("rk2", "rk4"):
        np.testing.assert_array_equal(rk_step(state, 0.0, 0.3, v, order), state)


def test_rk_step_constant_field_exact():
    c = np.array([2.0, -1.0])
    v = lambda x, t: c
    for order in ("rk2", "rk4"):
        got = rk_step(np.zeros(2), 0.0, 0.25, v, order)
        np.testing.assert_allclose(got, -0.25 * c, atol=1e-15)


def test_rk4_exact_for_cubic_time_field():
    # dx/dtau = -tau  =>  x(1) = x0 - 1/2, reproduced exactly by rk4
    v = lambda x, t: np.array([t])
    x = np.array([0.0])
    tau = 0.0
    for _ in range(4):
        x = rk_step(x, tau, 0.25, v, "rk4")
        tau += 0.25
    assert x[0] == pytest.approx(-0.5, abs=1e-12)
    with pytest.raises(ValueError):
        rk_step(x, 0.0, 0.1, v, "rk3")


def _integrate_analytic_field(order, dtau):
    # dx/dtau = -v(x, tau) with v = x cos(tau): exact x(tau) = x0 exp(-sin tau)
    x = np.array([1.0])
    tau = 0.0
    for _ in range(round(2.0 / dtau)):
        x = rk_step(x, tau, dtau, lambda s, t: s * np.cos(t), order)
        tau += dtau
    return abs(x[0] - np.exp(-np.sin(2.0)))


def test_rk_orders_under_step_halving():
    e_rk2 = [_integrate_analytic_field("rk2", h) for h in (0.1, 0.05)]
    e_rk4 = [_integrate_analytic_field("rk4", h) for h in (0.1, 0.05)]
    assert e_rk2[0] / e_rk2[1] >= 2**1.8
    assert e_rk4[0] / e_rk4[1] >= 2**3.5


def test_backtrace_straight_line_returns_to_start():
    times = np.linspace(0, 3, 13)
    coords = np.column_stack([2.0 * times, -1.0 * times])
    track = TrackSeries("line", times, coords, 2)
    for degree, order in ((1, "rk2"), (3, "rk4")):
        res = backtrace(track, degree, 0.5, order=order)
        np.testing.assert_allclose(res.endpoint, coords[0], atol=1e-10)
        assert res.endpoint_error < 1e-10


def test_backtrace_high_order_beats_linear():
    case = get_case("tanhcos2d")
    track = case.sample(41)
    ref = lambda t: np.column_stack([f(t) for f in case.position_fns])
    low = backtrace(track, 1, 0.5, order="rk2", reference=ref)
    high = backtrace(track, 3, 0.5, order="rk4", reference=ref)
    for k in range(3):
        assert high.combined.as_tuple()[k] < low.combined.as_tuple()[k]
    assert check_backtrace(low, high) == []
    assert check_backtrace(high, low)  # reversed ordering must be flagged


def test_backtrace_large_step_stays_bounded():
    # dtau = 0.5 spans ~3.5 acquisition frames of 0.144 s; the high-order
    # velocity field keeps large steps nearly as accurate as small ones
    fx = lambda t: np.sin(t) + 0.5 * t
    fy = lambda t: np.cos(1.3 * t)
    times = np.arange(0.0, 2.0 + 1e-9, 0.144)
    track = TrackSeries("frames", times, np.column_stack([fx(times), fy(times)]), 2)
    ref = lambda t: np.column_stack([fx(t), fy(t)])
    coarse = backtrace(track, 3, 0.5, order="rk4", reference=ref)
    fine = backtrace(track, 3, 0.144, order="rk4", reference=ref)
    assert coarse.combined.linf < 1e-3
    assert coarse.combined.linf < 2 * fine.combined.linf
    assert len(coarse.taus) == len(coarse.path)
    # linear linking with the same large step loses more than an order
    linear = backtrace(track, 1, 0.5, order="rk2", reference=ref)
    assert linear.combined.linf > 10 * coarse.combined.linf


def test_backtrace_default_reference_is_cubic_reconstruction(rng):
    track = random_track(rng, 15, dim=2)
    res = backtrace(track, 1, 0.1)
    assert len(res.per_axis) == 2
    assert res.combined.l1 >= 0.0


def test_backtrace_partial_final_step():
    times = np.linspace(0, 1.3, 14)  # duration not a multiple of dtau
    track = TrackSeries("p", times, np.column_stack([times, times**2]), 2)
    res = backtrace(track, 3, 0.5)
    assert res.taus[-1] == pytest.approx(1.3, abs=1e-12)
