import numpy as np
import pytest
from hypothesis import given, strategies as st

from bkm.errors import IllConditionedError
from bkm.gsr import (KINDS, ConstrainedFit, constrained_interpolate,
                     evaluate_constrained, make_gsr, timespace_distance)

coord = st.floats(min_value=-20.0, max_value=20.0,
                  allow_nan=False, allow_infinity=False)


def safe_log(r):
    """log r with the removable singularity at 0 filled by its r^2m limit."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    np.log(r, out=out, where=r > 0)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Kernel constructors
# ---------------------------------------------------------------------------

def test_simple_kind_is_thin_plate_spline():
    tps = make_gsr("simple", g=np.log, m=1)
    for r in np.linspace(0.01, 10.0, 200):
        assert tps(r) == pytest.approx(r * r * np.log(r), abs=1e-12 * max(1, r * r))


def test_prewavelet_simple_form_and_origin_value():
    k = make_gsr("simple", g=np.log, m=1, prewavelet_c=0.5)
    for r in (0.3, 1.0, 4.2):
        expected = r * r * np.log(np.sqrt(r * r + 0.25))
        assert k(r) == pytest.approx(expected, rel=1e-14)
    assert k(0.0) == 0.0   # the r^2 factor wins against log c


@pytest.mark.parametrize("kind", ["simple", "interior", "dirichlet", "neumann"])
def test_prewavelet_reduces_to_plain_at_zero_dilation(kind):
    kwargs = dict(g=safe_log, m=1)
    if kind == "interior":
        kwargs.update(forcing=lambda x: 1.0 + x[0], rho_of_g=lambda r: 0.1 * r)
    if kind == "dirichlet":
        kwargs.update(dirichlet=lambda x: 2.0 - x[1], g_dr=lambda r: 1.0 / r)
    if kind == "neumann":
        kwargs.update(neumann=lambda x: x[0] * x[1])
    plain = make_gsr(kind, **kwargs)
    wavelet = make_gsr(kind, prewavelet_c=0.0, **kwargs)
    src = np.array([0.4, -0.2])
    for r in np.linspace(0.05, 8.0, 50):
        assert wavelet(r, src) == plain(r, src)


def test_interior_kind_formula():
    f = lambda x: 2.0 + x[0]
    rho = lambda r: 0.5 * r
    k = make_gsr("interior", g=safe_log, m=1, forcing=f, rho_of_g=rho)
    src = np.array([1.0, 0.0])
    r = 2.0
    assert k(r, src) == pytest.approx((3.0 + 1.0) * r**2 * np.log(r))


def test_interior_kind_zero_data_is_zero():
    k = make_gsr("interior", g=safe_log, m=1, forcing=lambda x: 0.0,
                 rho_of_g=None)
    assert k(1.7, np.array([0.3, 0.3])) == 0.0


def test_interior_rho_term_can_be_dropped():
    f = lambda x: 1.0
    rho = lambda r: 10.0 * r
    keep = make_gsr("interior", g=safe_log, m=1, forcing=f, rho_of_g=rho)
    drop = make_gsr("interior", g=safe_log, m=1, forcing=f, rho_of_g=rho,
                    keep_rho=False)
    src = np.zeros(2)
    assert keep(2.0, src) == pytest.approx((1.0 + 20.0) * 4.0 * np.log(2.0))
    assert drop(2.0, src) == pytest.approx(4.0 * np.log(2.0))


def test_dirichlet_kind_uses_radial_derivative():
    d = lambda x: 3.0
    k = make_gsr("dirichlet", g=safe_log, m=1, dirichlet=d, g_dr=lambda r: 1.0 / r)
    assert k(2.0, np.zeros(2)) == pytest.approx(3.0 * 4.0 * 0.5)


def test_neumann_kind_weights_value():
    k = make_gsr("neumann", g=safe_log, m=2, neumann=lambda x: -2.0)
    assert k(2.0, np.zeros(2)) == pytest.approx(-2.0 * 16.0 * np.log(2.0))


def test_smoothing_power_can_be_dropped():
    k = make_gsr("simple", g=safe_log, m=3, keep_smoothing=False)
    assert k(2.0) == pytest.approx(np.log(2.0))


def test_wave_kind_formula():
    f = lambda node: node[0] + node[-1]     # f(x, t) on the space-time node
    k = make_gsr("wave", g=np.cos, m=1, forcing=f)
    node = np.array([0.5, 2.0])
    assert k(1.2, node) == pytest.approx(1.2**2 * np.cos(1.2) * 2.5)


def test_extended_helmholtz_literal_form():
    h = np.cos
    h_tt = lambda r: -np.cos(r)
    f = lambda node: 0.25
    k = make_gsr("extended_helmholtz", g=h, g_tt=h_tt, forcing=f, wave_speed=2.0)
    r = 0.8
    bracket = 0.25 + np.cos(r) + (1.0 + 0.25) * (-np.cos(r))
    assert k(r, np.zeros(3)) == pytest.approx(np.cos(r) * bracket)


def test_transient_kind_formula():
    g = lambda r, t: np.exp(-r * r / (1.0 + t))
    f = lambda node: 2.0
    k = make_gsr("transient", g=g, m=1, forcing=f)
    node = np.array([0.0, 0.5])            # (x, t)
    assert k(1.0, node) == pytest.approx(0.25 * np.exp(-1.0 / 1.5) * 2.0)


def test_make_gsr_validation():
    with pytest.raises(ValueError):
        make_gsr("simple", g=np.log, m=-1)
    with pytest.raises(ValueError):
        make_gsr("nonsense", g=np.log)
    with pytest.raises(ValueError):
        make_gsr("wave", g=np.cos, forcing=lambda n: 1.0, prewavelet_c=1.0)
    with pytest.raises(ValueError):
        make_gsr("dirichlet", g=np.log)    # missing data and derivative
    with pytest.raises(ValueError):
        make_gsr("extended_helmholtz", g=np.cos, forcing=lambda n: 1.0,
                 g_tt=lambda r: r, wave_speed=0.0)
    assert set(KINDS) >= {"simple", "wave", "transient"}


# ---------------------------------------------------------------------------
# Time-space distance
# ---------------------------------------------------------------------------

def test_timespace_distance_basics():
    assert timespace_distance([0.0, 0.0], [0.0, 0.0]) == 0.0
    assert timespace_distance([0.0, 0.0], [3.0, 4.0]) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        timespace_distance([0.0, 0.0], [1.0, 2.0, 3.0])


@given(ax=coord, at=coord, bx=coord, bt=coord, cx=coord, ct=coord)
def test_timespace_distance_metric_axioms(ax, at, bx, bt, cx, ct):
    a, b, c = [ax, at], [bx, bt], [cx, ct]
    assert timespace_distance(a, b) == pytest.approx(timespace_distance(b, a),
                                                     abs=1e-12)
    assert timespace_distance(a, a) == 0.0
    assert timespace_distance(a, c) <= (timespace_distance(a, b) +
                                        timespace_distance(b, c) + 1e-12)


# ---------------------------------------------------------------------------
# Constrained interpolation
# ---------------------------------------------------------------------------

def tps_kernel():
    return make_gsr("simple", g=safe_log, m=1)


def test_constraint_absorbs_psi_samples():
    rng = np.random.default_rng(0)
    nodes = rng.uniform(-1, 1, size=(8, 2))
    psi = lambda x: 1.0 + 2.0 * x[0] - x[1]
    values = np.array([psi(x) for x in nodes])
    fit = constrained_interpolate(nodes, tps_kernel(), psi, values)
    np.testing.assert_allclose(fit.beta[:-1], 0.0, atol=1e-9)
    assert fit.beta[-1] == pytest.approx(1.0, abs=1e-9)


def test_zero_values_give_zero_coefficients():
    rng = np.random.default_rng(1)
    nodes = rng.uniform(-1, 1, size=(6, 2))
    fit = constrained_interpolate(nodes, tps_kernel(), lambda x: 1.0, np.zeros(6))
    np.testing.assert_allclose(fit.beta, 0.0, atol=1e-12)


def test_random_fit_interpolates_and_satisfies_side_condition():
    rng = np.random.default_rng(2)
    nodes = rng.uniform(-1, 1, size=(10, 2))
    values = rng.standard_normal(10)
    fit = constrained_interpolate(nodes, tps_kernel(), lambda x: 1.0, values)
    reproduced = np.array([evaluate_constrained(fit, x) for x in nodes])
    scale = np.max(np.abs(values))
    assert np.max(np.abs(reproduced - values)) <= 1e-9 * scale
    assert abs(fit.side_condition) <= 1e-10
    assert abs(np.sum(fit.beta[:-1])) <= 1e-10   # psi = 1 makes these equal


def test_constrained_fit_with_nonconstant_psi():
    rng = np.random.default_rng(3)
    nodes = rng.uniform(-2, 2, size=(12, 2))
    psi = lambda x: x[0]
    values = np.sin(nodes[:, 0]) + nodes[:, 1]
    fit = constrained_interpolate(nodes, tps_kernel(), psi, values)
    reproduced = np.array([evaluate_constrained(fit, x) for x in nodes])
    np.testing.assert_allclose(reproduced, values, atol=1e-9)
    assert abs(fit.side_condition) <= 1e-10


def test_constrained_interpolate_validation():
    with pytest.raises(ValueError):
        constrained_interpolate(np.empty((0, 2)), tps_kernel(), lambda x: 1.0, [])
    nodes = np.array([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        constrained_interpolate(nodes, tps_kernel(), lambda x: 1.0, [1.0])


def test_constrained_interpolate_singular_system():
    # identical psi = 0 column makes the bordered system singular
    nodes = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    with pytest.raises((IllConditionedError, np.linalg.LinAlgError)):
        constrained_interpolate(nodes, tps_kernel(), lambda x: 0.0,
                                np.array([1.0, 2.0, 3.0]))


def test_timespace_nodes_with_wave_kernel():
    # nodes carry (x, t); the kernel sees time-space radii
    nodes = np.array([[0.0, 0.0], [1.0, 0.5], [0.3, 1.5], [-0.7, 2.0]])
    kernel = make_gsr("wave", g=lambda r: np.exp(-r), m=1,
                      forcing=lambda node: 1.0 + 0.1 * node[-1])
    values = np.array([0.5, -1.0, 2.0, 0.25])
    fit = constrained_interpolate(nodes, kernel, lambda x: 1.0, values)
    reproduced = np.array([evaluate_constrained(fit, x) for x in nodes])
    np.testing.assert_allclose(reproduced, values, atol=1e-9)
