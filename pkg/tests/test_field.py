import json

import numpy as np
import pytest
from scipy.integrate import quad

from nls5.errors import DomainTooSmallError, GridError
from nls5.field import (
    DiagnosticsReport,
    FieldFrame,
    Grid1D,
    Verdict,
    auto_grid,
    derivative_jet,
    edge_taper,
    mass,
    momentum,
    pde_residual,
    sample_field,
    spectral_derivative,
    spectral_derivative_array,
)
from nls5.soliton import SolitonEvaluator, one_soliton_closed_form
from nls5.spectral_data import ModelCoefficients, make_set


def test_grid_invariants():
    g = Grid1D(-40, 40, 1024)
    assert g.dx == pytest.approx(80 / 1024)
    assert g.x[0] == -40 and g.x[-1] == pytest.approx(40 - g.dx)
    assert g.to_dict() == {"xmin": -40, "xmax": 40, "nx": 1024}
    for bad in [(-1, 1, 1000), (1, -1, 64), (-1, 1, 8), (-np.inf, 1, 64)]:
        with pytest.raises(GridError):
            Grid1D(*bad)


def test_frame_is_immutable(grid_40):
    f = FieldFrame(grid_40, 0.0, np.zeros(grid_40.n))
    with pytest.raises(ValueError):
        f.values[0] = 1
    with pytest.raises(GridError):
        FieldFrame(grid_40, 0.0, np.zeros(10))


def test_sample_figure1(fig1_set, grid_40):
    frame = sample_field(SolitonEvaluator(fig1_set), grid_40, 0.0)
    i = np.argmax(np.abs(frame.values))
    assert abs(frame.values[i]) == pytest.approx(0.6, abs=1e-12)
    assert frame.x[i] == pytest.approx(0.0, abs=grid_40.dx)


def test_decay_check(fig1_set):
    with pytest.raises(DomainTooSmallError) as err:
        sample_field(SolitonEvaluator(fig1_set), Grid1D(-10, 10, 256), 0.0)
    assert err.value.boundary_abs[0] > 1e-10


def test_auto_grid_covers_motion(fig1_set):
    g = auto_grid(fig1_set, [0.0, 10.0, 40.0], n=2048)
    for t in (0.0, 10.0, 40.0):
        sample_field(SolitonEvaluator(fig1_set), g, t)


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_spectral_derivative_of_on_grid_mode(order):
    g = Grid1D(0, 2 * np.pi, 64)
    v = np.exp(3j * g.x)
    d = spectral_derivative(FieldFrame(g, 0.0, v), order)
    # rounding noise in every mode is amplified by up to k_max^order
    assert np.max(np.abs(d.values - (3j) ** order * v)) < 1e-14 * (g.n / 2) ** order


def test_sech_second_derivative_oracle():
    """(sech)'' = sech - 2 sech^3."""
    g = Grid1D(-30, 30, 512)
    s = 1 / np.cosh(g.x)
    d2 = spectral_derivative_array(s, g.span, 2)
    assert np.max(np.abs(d2 - (s - 2 * s**3))) < 1e-11


def test_nyquist_zeroed_for_odd_orders():
    g = Grid1D(0, 2 * np.pi, 16)
    nyq = np.cos(8 * g.x)
    assert np.max(np.abs(spectral_derivative_array(nyq, g.span, 1))) < 1e-12
    assert np.max(np.abs(spectral_derivative_array(nyq, g.span, 2) + 64 * nyq)) < 1e-10


def test_non_power_of_two_rejected():
    with pytest.raises(GridError):
        spectral_derivative_array(np.ones(100), 1.0, 1)


def test_jet_matches_single_derivatives(grid_40, fig1_set):
    q = SolitonEvaluator(fig1_set)(grid_40.x, 0.0)
    jet = derivative_jet(q, grid_40, 5)
    for o in range(1, 6):
        assert np.allclose(jet[o], spectral_derivative_array(q, grid_40.span, o), atol=1e-13)


def test_taper_shape(grid_40):
    w = edge_taper(grid_40)
    assert w[grid_40.n // 2] == pytest.approx(1.0, abs=1e-15)
    assert w[0] < 1e-12
    # ramps occupy about 6 widths (1.6 each) inward of x_min + 8 and x_max - 8
    interior = np.abs(grid_40.x) < 20
    assert np.all(np.abs(w[interior] - 1) < 1e-14)


def test_figure1_residual(fig1_set, grid_40):
    rep = pde_residual(SolitonEvaluator(fig1_set), grid_40, 0.0, tolerance=1e-6)
    assert rep.residual_inf < 1e-6
    assert rep.passed


@pytest.mark.parametrize("c", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
def test_reduction_residuals(c):
    s = make_set([0.2 + 0.3j], coeffs=ModelCoefficients(*c))
    g = auto_grid(s, [0.0], n=2048)
    assert pde_residual(SolitonEvaluator(s), g, 0.0).residual_inf < 1e-6


def test_residual_has_teeth(fig1_set, grid_40):
    """The exact field of one equation fails the residual of another."""
    ev = SolitonEvaluator(fig1_set)
    wrong = ModelCoefficients(1.0, 1.0, 1.01)
    assert pde_residual(ev, grid_40, 0.0, coeffs=wrong).residual_inf > 1e-4
    bumped = lambda x, t: ev(x, t) * (1 + 1e-3)
    assert pde_residual(bumped, grid_40, 0.0, coeffs=fig1_set.coeffs).residual_inf > 1e-5


def test_zero_field_residual(grid_40):
    rep = pde_residual(lambda x, t: np.zeros_like(x, dtype=complex), grid_40, 0.0,
                       coeffs=ModelCoefficients(1, 1, 1))
    assert rep.residual_inf == 0.0


def test_mass_quadrature_oracle(fig1_set, grid_40):
    d = fig1_set.data[0]
    q = lambda x: abs(one_soliton_closed_form(d, fig1_set.coeffs, x, 0.0)) ** 2
    ref, _ = quad(q, -40, 40, limit=200, epsabs=1e-14)
    frame = sample_field(SolitonEvaluator(fig1_set), grid_40, 3.0)
    assert mass(frame) == pytest.approx(1.2, abs=1e-12)
    assert ref == pytest.approx(1.2, abs=1e-10)


def test_momentum(grid_40):
    # momentum = -2a * mass for a single soliton
    s = make_set([0.2 + 0.3j], coeffs=ModelCoefficients(1, 1, 1))
    frame = sample_field(SolitonEvaluator(s), grid_40, 0.0)
    assert momentum(frame) == pytest.approx(-0.4 * 1.2, abs=1e-12)
    s0 = make_set([0.3j])
    assert momentum(sample_field(SolitonEvaluator(s0), grid_40, 0.0)) == pytest.approx(0.0, abs=1e-14)


def test_report_json():
    rep = DiagnosticsReport(1e-8, 2e-8, 1.2, 0.0, [Verdict.below("residual_inf", 1e-8, 1e-6)],
                            {"zero_curvature": []})
    doc = json.loads(rep.to_json())
    assert doc["verdicts"][0] == {"name": "residual_inf", "value": 1e-8, "tolerance": 1e-6, "pass": True}
    assert "zero_curvature" in doc
    assert Verdict.within("order", 3.9, 4.0, 0.3).passed
    assert not Verdict.within("order", 4.4, 4.0, 0.3).passed
