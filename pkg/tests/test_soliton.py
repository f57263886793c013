import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import UNIT, random_one_soliton_sets
from mp_oracle import q_mp, residual_mp
from nls5.errors import ContractError, KernelOverflowError, NumericalDegeneracyError, SpectralDataError
from nls5.soliton import (
    SolitonEvaluator,
    kernel_matrix,
    measured_peak,
    one_soliton_closed_form,
    peak_amplitude,
    rebalanced_system,
    soliton_center,
    soliton_velocity,
    two_soliton_closed_form,
    velocity_bracket,
)
from nls5.spectral_data import ModelCoefficients, SpectralDatum, make_set


def test_figure1_value_at_origin(fig1_set):
    ev = SolitonEvaluator(fig1_set)
    assert ev(0.0, 0.0) == pytest.approx(-0.6j, abs=1e-15)
    assert one_soliton_closed_form(fig1_set.data[0], UNIT, 0.0, 0.0) == pytest.approx(-0.6j, abs=1e-15)


def test_velocity_value():
    d = SpectralDatum(0.2 + 0.3j)
    # 12a^2 - 4b^2 - 2a + 32a^3 - 32ab^2 - 80a^4 + 160a^2b^2 - 16b^4 at a=0.2, b=0.3
    assert soliton_velocity(d, UNIT) == pytest.approx(-0.2816, abs=1e-14)
    assert velocity_bracket(0.2, 0.3, UNIT) == pytest.approx(0.2816, abs=1e-14)
    assert soliton_velocity(d, ModelCoefficients()) == pytest.approx(-0.4)


def test_engine_matches_high_precision_oracle(fig4_set):
    x = np.array([-3.0, -0.5, 0.0, 1.7, 4.0])
    for t in (-2.0, 0.0, 1.5):
        got = SolitonEvaluator(fig4_set)(x, t)
        ref = [complex(q_mp(list(fig4_set.zetas), [1, 1], [1, 1], (1, 1, 1), xx, t)) for xx in x]
        assert np.max(np.abs(got - ref)) < 1e-13


@pytest.mark.parametrize("c", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0.3, -0.7, 0.4)])
def test_one_soliton_solves_equation_high_precision(c):
    for x, t in [(0.3, 0.0), (-1.1, 0.7), (2.0, -0.4)]:
        r, q = residual_mp([0.2 + 0.3j], [1.3 - 0.4j], [1], c, x, t)
        assert q > 1e-3
        assert r < 1e-25


def test_two_soliton_solves_equation_high_precision():
    for x, t in [(0.2, 0.1), (-1.5, 0.5)]:
        r, q = residual_mp([0.2 + 0.3j, -0.15 + 0.25j], [1, 1], [1, 1], (1, 1, 1), x, t)
        assert q > 1e-3
        assert r < 1e-22


@pytest.mark.parametrize("sset", random_one_soliton_sets(8, seed=3))
def test_closed_form_matches_engine_random(sset):
    x = np.linspace(-40, 40, 1024, endpoint=False)
    ev = SolitonEvaluator(sset)
    for t in (0.0, 1.0, 5.0):
        diff = ev(x, t) - one_soliton_closed_form(sset.data[0], sset.coeffs, x, t)
        assert np.max(np.abs(diff)) < 1e-11


def test_norming_vector_scale_invariance(fig1_set):
    x = np.linspace(-10, 10, 101)
    base = SolitonEvaluator(fig1_set)(x, 0.7)
    scaled = make_set([0.2 + 0.3j], [3 - 1j], [3 - 1j], UNIT)
    assert np.max(np.abs(SolitonEvaluator(scaled)(x, 0.7) - base)) < 1e-14
    gauge = make_set([0.2 + 0.3j], [2j], [0.5], UNIT)
    fixed = gauge.gauge_fixed()
    d = fixed.data[0]
    assert np.max(np.abs(SolitonEvaluator(gauge)(x, 0.7)
                         - one_soliton_closed_form(d, UNIT, x, 0.7))) < 1e-14


def test_closed_forms_enforce_gauge(fig4_set):
    with pytest.raises(ContractError):
        one_soliton_closed_form(SpectralDatum(0.2 + 0.3j, 1, 2), UNIT, 0.0, 0.0)
    with pytest.raises(ContractError):
        two_soliton_closed_form(make_set([0.2 + 0.3j, 0.1 + 0.2j], [1, 2], [1, 1], UNIT), 0.0, 0.0)
    with pytest.raises(ContractError):
        two_soliton_closed_form(make_set([0.2 + 0.3j]), 0.0, 0.0)


def test_two_soliton_closed_form_matches_engine(fig4_set):
    x = np.linspace(-64, 64, 2048, endpoint=False)
    ev = SolitonEvaluator(fig4_set)
    for t in (-5.0, 0.0, 5.0):
        assert np.max(np.abs(ev(x, t) - two_soliton_closed_form(fig4_set, x, t))) < 1e-10


def test_far_field_no_overflow(fig1_set):
    ev = SolitonEvaluator(fig1_set)
    x = np.array([-2000.0, -600.0, 600.0, 2000.0])
    q = ev(x, 0.0)
    assert np.all(np.isfinite(q))
    assert np.all(np.abs(q) < 1e-100)
    with pytest.raises(KernelOverflowError) as err:
        kernel_matrix(fig1_set, 2000.0, 0.0)
    assert err.value.index == 0


def test_rebalanced_entries_are_order_one(fig4_set):
    f, g, m = rebalanced_system(fig4_set, np.linspace(-500, 500, 11), 3.0)
    assert np.all(np.maximum(np.abs(f), np.abs(g)) == pytest.approx(1.0))
    assert np.all(np.isfinite(m))


def test_kernel_numerator_is_hermitian(fig4_set):
    """(zeta_j - conj(zeta_k)) m_kj = conj(f_k) f_j + conj(g_k) g_j is Hermitian."""
    m = kernel_matrix(fig4_set, 0.4, 0.2)
    d = fig4_set.zetas[None, :] - np.conj(fig4_set.zetas)[:, None]
    h = m * d
    assert np.allclose(h, h.conj().T, atol=1e-14)


def test_condition_guard():
    # nearly coincident eigenvalues make the kernel nearly singular
    s = make_set([0.2 + 0.3j, 0.2 + 0.3j + 1e-11], coeffs=UNIT)
    with pytest.raises(NumericalDegeneracyError) as err:
        SolitonEvaluator(s)(np.array([0.0, 1.0]), 0.0)
    assert err.value.x == 0.0


def test_evaluator_rejects_bad_input(fig1_set):
    with pytest.raises(SpectralDataError):
        SolitonEvaluator(make_set([0.2 - 0.3j]))
    with pytest.raises(SpectralDataError):
        SolitonEvaluator(fig1_set)(np.nan, 0.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.1, 0.8), st.floats(-2.0, 2.0), st.floats(0, 2 * math.pi))
def test_peak_amplitude_is_2b(a, b, logmod, phase):
    d = SpectralDatum(complex(a, b), math.exp(logmod) * complex(math.cos(phase), math.sin(phase)))
    assert peak_amplitude(d) == pytest.approx(2 * b, rel=1e-14)
    ev = SolitonEvaluator(make_set([d.zeta], [d.alpha_k], coeffs=UNIT))
    xc = soliton_center(d, UNIT, 0.0)
    w = 4.0 / b
    x, amp = measured_peak(ev, 0.0, xc - w, xc + w)
    assert amp == pytest.approx(2 * b, abs=1e-9)
    assert x == pytest.approx(xc, abs=1e-4)


def test_center_moves_with_velocity(fig1_set):
    ev = SolitonEvaluator(fig1_set)
    x, _ = measured_peak(ev, 10.0, -10, 10)
    assert x == pytest.approx(-2.816, abs=1e-5)
