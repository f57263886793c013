import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nls5.field import Grid1D, auto_grid
from nls5.lax import (
    assemble_U,
    assemble_V,
    curvature_field,
    lax_coefficients,
    zero_curvature_residual,
    zero_curvature_verdicts,
)
from nls5 import lax as lax_mod
from nls5.soliton import SolitonEvaluator
from nls5.spectral_data import ModelCoefficients, make_set

SIGMA = np.diag([1.0, -1.0]).astype(complex)
coef = st.floats(-2, 2, allow_nan=False)


def random_jet(rng, n=7):
    return [rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(5)]


def test_U_example():
    u = assemble_U(-0.6j, 0.2 + 0.3j)
    ref = np.array([[-0.3 + 0.2j, -0.6], [0.6, 0.3 - 0.2j]])
    assert np.allclose(u, ref, atol=1e-15)
    assert np.allclose(assemble_U(0.0, 1.0), np.diag([1j, -1j]))


@settings(max_examples=50)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_U_trace_and_symmetry(q, z):
    u = assemble_U(q, z)
    assert np.trace(u) == 0
    assert np.allclose(assemble_U(q, np.conj(z)).conj().T + u, 0, atol=1e-14)


@settings(max_examples=30)
@given(coef, coef, coef, st.integers(0, 2**31))
def test_V_traceless_and_A_real(c3, c4, c5, seed):
    rng = np.random.default_rng(seed)
    jet = random_jet(rng)
    c = ModelCoefficients(c3, c4, c5)
    v = assemble_V(jet, 0.3 - 0.8j, c)
    assert np.max(np.abs(np.trace(v, axis1=-2, axis2=-1))) < 1e-12
    A, _ = lax_coefficients(jet, c)
    for a in A:
        assert np.max(np.abs(np.imag(a))) < 1e-11 * (1 + np.max(np.abs(a)))


def test_vacuum_V_is_dispersion_matrix():
    zero = [np.zeros(3, complex)] * 5
    z = 0.4 + 0.2j
    c = ModelCoefficients(1.0, 1.0, 1.0)
    disp = 16j * z**5 - 8j * z**4 - 4j * z**3 + 1j * z**2
    assert np.allclose(assemble_V(zero, z, c), disp * SIGMA, atol=1e-14)


@settings(max_examples=30)
@given(coef, coef, coef, st.integers(0, 2**31),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_equivalent_form_cross_check(c3, c4, c5, seed, z):
    """V equals (dispersion) sigma + Q~ of the equivalent Lax form."""
    rng = np.random.default_rng(seed)
    jet = random_jet(rng)
    q, q1 = jet[0], jet[1]
    c = ModelCoefficients(c3, c4, c5)
    A, B = lax_coefficients(jet, c)
    a = np.abs(q) ** 2

    def block(Ac, Bc):
        m = np.zeros(q.shape + (2, 2), complex)
        m[..., 0, 0], m[..., 1, 1] = Ac, -Ac
        m[..., 0, 1], m[..., 1, 0] = np.conj(Bc), Bc
        return m

    disp = 16j * c5 * z**5 - 8j * c4 * z**4 - 4j * c3 * z**3 + 1j * z**2
    qt = 1j * block(A[0], B[0]) + 1j * z * block(A[1], B[1])
    for p in range(2, 6):
        qt = qt + 1j * z**p * block(np.zeros_like(a), B[p])
    extra = (1j * z**2 * (4 * c4 * a + 4j * c4 * (np.conj(q1) * q - q1 * np.conj(q)))
             - 8j * z**3 * c5 * a)
    ref = disp * SIGMA + qt + extra[..., None, None] * SIGMA
    scale = 1 + np.max(np.abs(ref))
    assert np.max(np.abs(assemble_V(jet, z, c) - ref)) < 1e-12 * scale


def test_nls_reduction_V():
    """c = 0 gives the focusing NLS pair: V = i zeta^2 sigma + i zeta Q - (i/2)|q|^2 sigma + (1/2)[[0, q_x*], [-q_x, 0]]."""
    rng = np.random.default_rng(1)
    jet = random_jet(rng)
    q, q1 = jet[0], jet[1]
    z = 0.3 + 0.7j
    v = assemble_V(jet, z, ModelCoefficients())
    a = np.abs(q) ** 2
    ref = np.zeros(q.shape + (2, 2), complex)
    ref[..., 0, 0] = 1j * z**2 - 0.5j * a
    ref[..., 1, 1] = -ref[..., 0, 0]
    ref[..., 0, 1] = 1j * z * np.conj(q) + 0.5 * np.conj(q1)
    ref[..., 1, 0] = 1j * z * q - 0.5 * q1
    assert np.allclose(v, ref, atol=1e-13)


def test_zero_curvature_figure1():
    s = make_set([0.2 + 0.3j], coeffs=ModelCoefficients(1, 1, 1))
    g = Grid1D(-64, 64, 2048)
    assert zero_curvature_residual(SolitonEvaluator(s), g, 0.0, 0.7 + 0.1j) < 1e-5


def test_zero_curvature_two_soliton(fig4_set):
    g = auto_grid(fig4_set, [0.0], n=2048)
    vs = zero_curvature_verdicts(SolitonEvaluator(fig4_set), g, 0.5, [0.7 + 0.1j, -0.9 - 0.3j])
    assert all(v.passed for v in vs)


def test_zero_curvature_vacuum():
    g = Grid1D(-20, 20, 256)
    zero = lambda x, t: np.zeros_like(x, dtype=complex)
    assert zero_curvature_residual(zero, g, 0.0, 0.5 + 0.5j, coeffs=ModelCoefficients(1, 1, 1)) < 1e-13


def test_zero_curvature_has_teeth(fig1_set):
    g = Grid1D(-64, 64, 2048)
    ev = SolitonEvaluator(fig1_set)
    bumped = lambda x, t: ev(x, t) * (1 + 1e-3)
    assert zero_curvature_residual(bumped, g, 0.0, 0.7 + 0.1j, coeffs=fig1_set.coeffs) > 1e-4


@pytest.mark.parametrize("which,index", [("A", 0), ("A", 1), ("A", 2), ("A", 3),
                                         ("B", 0), ("B", 1), ("B", 2), ("B", 3), ("B", 4)])
def test_each_coefficient_is_audited(fig1_set, monkeypatch, which, index):
    """Perturbing any single A_c or B_c breaks zero curvature."""
    original = lax_mod.lax_coefficients

    def corrupted(jet, coeffs):
        A, B = original(jet, coeffs)
        lst = A if which == "A" else B
        lst[index] = lst[index] * 1.01 + (0.01 * jet[0] if which == "B" else 0.01 * np.abs(jet[0]) ** 2)
        return A, B

    monkeypatch.setattr(lax_mod, "lax_coefficients", corrupted)
    g = Grid1D(-64, 64, 2048)
    assert zero_curvature_residual(SolitonEvaluator(fig1_set), g, 0.0, 0.7 + 0.1j) > 1e-4


def test_curvature_field_shape(fig1_set):
    g = Grid1D(-64, 64, 2048)
    r = curvature_field(SolitonEvaluator(fig1_set), g, 0.0, 0.1 + 0.2j)
    assert r.shape == (2048, 2, 2)
