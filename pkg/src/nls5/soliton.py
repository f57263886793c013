"""Exact N-soliton fields from reflectionless spectral data.

The general engine evaluates

    q = -2 * sum_{k,j} conj(alpha_j) beta_k exp(-theta_k + conj(theta_j)) (M^-1)_{kj}

with the kernel matrix

    m_kj = (conj(alpha_k) alpha_j e^{conj(theta_k) + theta_j}
            + conj(beta_k) beta_j e^{-conj(theta_k) - theta_j}) / (zeta_j - conj(zeta_k)).

Writing f_k = alpha_k e^{theta_k} and g_k = beta_k e^{-theta_k} gives
M = (f^H f + g^H g) / (zeta_j - conj(zeta_k)) and q = -2 g^T M^-1 conj(f).
Each index k is rescaled by s_k = max(|f_k|, |g_k|) before solving, which
cancels exactly in q and keeps every entry of order one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, KernelOverflowError, NumericalDegeneracyError, SpectralDataError
from .spectral_data import (
    ModelCoefficients,
    SpectralDatum,
    SpectralSet,
    require_valid,
    theta_phase,
    xi_offset,
)

COND_LIMIT = 1e14
GAUGE_TOL = 1e-12


def _thetas(sset: SpectralSet, x, t) -> np.ndarray:
    """Phases with a trailing soliton axis, shape broadcast(x, t) + (N,)."""
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    return np.stack([np.asarray(theta_phase(d.zeta, sset.coeffs, x, t)) for d in sset.data], axis=-1)


def _denominator(sset: SpectralSet) -> np.ndarray:
    z = sset.zetas
    return z[None, :] - np.conj(z)[:, None]


def kernel_matrix(sset: SpectralSet, x: float, t: float) -> np.ndarray:
    """Unscaled N x N kernel matrix at a single point (x, t)."""
    require_valid(sset)
    th = _thetas(sset, float(x), float(t))
    with np.errstate(over="ignore", invalid="ignore"):
        f = sset.alphas * np.exp(th)
        g = sset.betas * np.exp(-th)
        m = (np.conj(f)[:, None] * f[None, :] + np.conj(g)[:, None] * g[None, :]) / _denominator(sset)
    if not np.all(np.isfinite(m)):
        k = int(np.argmax(np.abs(th.real)))
        raise KernelOverflowError(
            f"kernel matrix overflows at x={x}, t={t}: |Re theta_{k}| = {abs(th[k].real):.6g}",
            index=k,
        )
    return m


def rebalanced_system(sset: SpectralSet, x, t):
    """Return (f, g, M) after per-soliton rescaling.

    Shapes are (..., N), (..., N) and (..., N, N) over the broadcast of x and t.
    """
    th = _thetas(sset, x, t)
    r = th.real
    with np.errstate(divide="ignore"):
        log_a = np.log(np.abs(sset.alphas))
        log_b = np.log(np.abs(sset.betas))
    s = np.maximum(log_a + r, log_b - r)
    f = sset.alphas * np.exp(th - s)
    g = sset.betas * np.exp(-th - s)
    m = (np.conj(f)[..., :, None] * f[..., None, :] + np.conj(g)[..., :, None] * g[..., None, :])
    m = m / _denominator(sset)
    return f, g, m


class SolitonEvaluator:
    """Callable exact N-soliton field ``q(x, t)`` for a validated spectral set."""

    def __init__(self, sset: SpectralSet, check_condition: bool = True):
        require_valid(sset)
        self.sset = sset
        self.check_condition = check_condition

    @property
    def coeffs(self) -> ModelCoefficients:
        return self.sset.coeffs

    @property
    def n(self) -> int:
        return self.sset.n

    def __call__(self, x, t):
        return evaluate_q(self, x, t)

    def __repr__(self):
        return f"SolitonEvaluator(N={self.n}, coeffs={self.coeffs})"


def evaluate_q(ev: SolitonEvaluator, x, t):
    """Evaluate q(x, t); x and t broadcast against each other."""
    x_arr = np.asarray(x, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    if not (np.all(np.isfinite(x_arr)) and np.all(np.isfinite(t_arr))):
        raise SpectralDataError("non-finite (x, t) passed to evaluate_q")
    f, g, m = rebalanced_system(ev.sset, x_arr, t_arr)
    if ev.check_condition and ev.n > 1:
        cond = np.linalg.cond(m)
        bad = ~(cond <= COND_LIMIT)
        if np.any(bad):
            xb, tb = np.broadcast_arrays(x_arr, t_arr)
            idx = np.unravel_index(int(np.argmax(bad)), bad.shape) if bad.ndim else ()
            raise NumericalDegeneracyError(
                f"kernel matrix numerically singular (cond={float(np.asarray(cond)[idx]):.3g}) "
                f"at x={float(xb[idx])}, t={float(tb[idx])}",
                x=float(xb[idx]),
                t=float(tb[idx]),
            )
    # LAPACK gesv: partial-pivot LU followed by two triangular solves.
    y = np.linalg.solve(m, np.conj(f)[..., None])[..., 0]
    q = -2.0 * np.sum(g * y, axis=-1)
    if q.ndim == 0:
        return complex(q)
    return q


# -- closed forms ----------------------------------------------------------

def _require_unit_beta(datum: SpectralDatum) -> None:
    if abs(datum.beta_k - 1.0) > GAUGE_TOL:
        raise ContractError(
            f"closed form needs beta_k = 1 (got {datum.beta_k}); "
            "renormalise with SpectralDatum.gauge_fixed()"
        )
    if datum.alpha_k == 0:
        raise ContractError("closed form needs alpha_k != 0")


def velocity_bracket(a: float, b: float, coeffs: ModelCoefficients) -> float:
    """Bracketed polynomial P in theta + conj(theta) = -2b (x + P t); equals -V."""
    c3, c4, c5 = coeffs.as_tuple()
    return (80 * c5 * a**4 - 160 * c5 * a**2 * b**2 + 16 * c5 * b**4
            - 32 * c4 * a**3 + 32 * c4 * a * b**2
            - 12 * c3 * a**2 + 4 * c3 * b**2 + 2 * a)


def _oscillation_rate(a: float, b: float, coeffs: ModelCoefficients) -> float:
    """Coefficient of i*t in conj(theta) - theta."""
    c3, c4, c5 = coeffs.as_tuple()
    return (-160 * c5 * a * b**4 + 320 * c5 * a**3 * b**2 - 96 * c4 * a**2 * b**2
            - 24 * c3 * a * b**2 + 16 * c4 * a**4 - 32 * c5 * a**5
            + 8 * c3 * a**3 + 16 * c4 * b**4 + 2 * b**2 - 2 * a**2)


def _sech(z):
    z = np.asarray(z)
    if np.iscomplexobj(z):
        return 1.0 / np.cosh(z)
    e = np.exp(-np.abs(z))
    return 2.0 * e / (1.0 + e * e)


def one_soliton_closed_form(datum: SpectralDatum, coeffs: ModelCoefficients, x, t):
    """Bright one-soliton written with expanded real phases (beta_k = 1 gauge)."""
    _require_unit_beta(datum)
    a, b = datum.a, datum.b
    if not b > 0:
        raise SpectralDataError("eigenvalue must lie in the upper half-plane")
    xi = xi_offset(datum.alpha_k)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    sum_phase = -2.0 * b * (x + velocity_bracket(a, b, coeffs) * t)
    diff_phase = -2j * a * x + 1j * _oscillation_rate(a, b, coeffs) * t
    q = (-2j * np.conj(datum.alpha_k) * b * math.exp(-xi)
         * np.exp(diff_phase) * _sech(sum_phase + xi))
    if np.ndim(q) == 0:
        return complex(q)
    return q


def two_soliton_closed_form(sset: SpectralSet, x, t):
    """Two-soliton field in the cosh form valid for beta_1 = beta_2 = 1, alpha_1 = alpha_2."""
    if sset.n != 2:
        raise ContractError(f"two-soliton form needs N = 2, got N = {sset.n}")
    require_valid(sset)
    d1, d2 = sset.data
    _require_unit_beta(d1)
    _require_unit_beta(d2)
    if abs(d1.alpha_k - d2.alpha_k) > GAUGE_TOL * max(1.0, abs(d1.alpha_k)):
        raise ContractError("two-soliton form needs alpha_1 = alpha_2")
    a1, b1, a2, b2 = d1.a, d1.b, d2.a, d2.b
    xi1, xi2 = xi_offset(d1.alpha_k), xi_offset(d2.alpha_k)
    th1 = np.asarray(theta_phase(d1.zeta, sset.coeffs, x, t))
    th2 = np.asarray(theta_phase(d2.zeta, sset.coeffs, x, t))
    c1, c2 = np.conj(th1), np.conj(th2)
    m11 = -1j / b1 * math.exp(xi1) * np.cosh(c1 + th1 + xi1)
    m12 = 2 * math.exp(xi1) / ((a2 - a1) + 1j * (b1 + b2)) * np.cosh(c1 + th2 + xi1)
    m21 = 2 * math.exp(xi2) / ((a1 - a2) + 1j * (b1 + b2)) * np.cosh(c2 + th1 + xi2)
    m22 = -1j / b2 * math.exp(xi2) * np.cosh(c2 + th2 + xi2)
    al1, al2 = np.conj(d1.alpha_k), np.conj(d2.alpha_k)
    num = (al1 * m22 * np.exp(-th1 + c1) - al2 * m12 * np.exp(-th1 + c2)
           - al1 * m21 * np.exp(-th2 + c1) + al2 * m11 * np.exp(-th2 + c2))
    q = -2.0 / (m11 * m22 - m12 * m21) * num
    if np.ndim(q) == 0:
        return complex(q)
    return q


def peak_amplitude(datum: SpectralDatum) -> float:
    """Peak modulus 2|alpha_1| b_1 e^{-xi_1} of a bright soliton (beta_1 = 1)."""
    _require_unit_beta(datum)
    return 2.0 * abs(np.conj(datum.alpha_k)) * datum.b * math.exp(-xi_offset(datum.alpha_k))


def soliton_velocity(datum: SpectralDatum, coeffs: ModelCoefficients) -> float:
    c3, c4, c5 = coeffs.as_tuple()
    a, b = datum.a, datum.b
    return (-80 * c5 * a**4 + 160 * c5 * a**2 * b**2 - 16 * c5 * b**4
            + 32 * c4 * a**3 - 32 * c4 * a * b**2 + 12 * c3 * a**2 - 4 * c3 * b**2 - 2 * a)


def soliton_center(datum: SpectralDatum, coeffs: ModelCoefficients, t: float = 0.0) -> float:
    """Position of the modulus peak of an isolated soliton at time t.

    The hump sits where theta + conj(theta) + xi = 0, i.e. at V*t + xi/(2b),
    with xi = ln|alpha_k / beta_k| so that any gauge is accepted.
    """
    xi = xi_offset(datum.alpha_k / datum.beta_k)
    return soliton_velocity(datum, coeffs) * t + xi / (2.0 * datum.b)


def measured_peak(field, t: float, x_lo: float, x_hi: float, n_scan: int = 2001):
    """Locate max |field(x, t)| on [x_lo, x_hi]: grid scan then bounded Brent refinement.

    Returns (x_peak, |q|_peak).
    """
    from scipy.optimize import minimize_scalar

    xs = np.linspace(x_lo, x_hi, n_scan)
    vals = np.abs(field(xs, t))
    i = int(np.argmax(vals))
    h = xs[1] - xs[0]
    lo, hi = max(x_lo, xs[i] - h), min(x_hi, xs[i] + h)
    res = minimize_scalar(lambda s: -abs(field(s, t)), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    if -res.fun >= vals[i]:
        return float(res.x), float(-res.fun)
    return float(xs[i]), float(vals[i])
