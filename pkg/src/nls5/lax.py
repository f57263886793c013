"""Lax matrices of the fifth-order NLS equation and the zero-curvature audit.

U = i [[zeta, conj(q)], [q, -zeta]]
V = sum_{c=0}^{5} i zeta^c [[A_c, conj(B_c)], [B_c, -A_c]]

The compatibility condition U_t - V_x + [U, V] = 0 holds exactly when q
solves the equation, so its numerical size audits every A_c and B_c.
"""

from __future__ import annotations

import numpy as np

from .field import (
    DECAY_TOL,
    DEFAULT_DT_FD,
    DEFAULT_TAPER,
    Field,
    Grid1D,
    Verdict,
    derivative_jet,
    edge_taper,
    fd_time_derivative,
    spectral_derivative_array,
)
from .spectral_data import ModelCoefficients


def assemble_U(q, zeta: complex) -> np.ndarray:
    q = np.asarray(q, dtype=complex)
    u = np.empty(q.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = 1j * zeta
    u[..., 0, 1] = 1j * np.conj(q)
    u[..., 1, 0] = 1j * q
    u[..., 1, 1] = -1j * zeta
    return u


def lax_coefficients(jet, coeffs: ModelCoefficients):
    """Return ([A_0..A_5], [B_0..B_5]) from the jet (q, q_x, q_xx, q_xxx, q_xxxx)."""
    q, q1, q2, q3, q4 = (np.asarray(v, dtype=complex) for v in jet[:5])
    al, ga, de = coeffs.as_tuple()
    cq, c1, c2, c3 = np.conj(q), np.conj(q1), np.conj(q2), np.conj(q3)
    a = (q * cq).real
    ax = (q1 * c1).real
    w = c1 * q - q1 * cq                      # conj(q_x) q - q_x conj(q)
    s = c2 * q - ax + q2 * cq                 # conj(q_xx) q - |q_x|^2 + q_xx conj(q)
    one = np.ones_like(a)

    A = [
        -0.5 * a - 3 * ga * a**2 - 1j * al * w - ga * s
        - 1j * de * (c3 * q - c2 * q1 + q2 * c1 - q3 * cq) - 6j * de * w * a,
        2 * al * a + 6 * de * a**2 - 2j * ga * w + 2 * de * s,
        1 + 4 * ga * a + 4j * ga * w,
        -4 * al - 8 * de * a,
        -8 * ga * one,
        16 * de * one,
    ]
    B = [
        2 * al * a * q + 6 * de * a**2 * q + 0.5j * q1 + 6j * ga * a * q1 + al * q2
        + 2 * de * c2 * q**2 + 4 * de * ax * q + 6 * de * q1**2 * cq + 8 * de * q2 * a
        + 1j * ga * q3 + de * q4,
        q + 4 * ga * a * q - 2j * al * q1 - 12j * de * a * q1 + 2 * ga * q2 - 2j * de * q3,
        -4 * al * q - 8 * de * a * q - 4j * ga * q1 - 4 * de * q2,
        -8 * ga * q + 8j * de * q1,
        16 * de * q,
        np.zeros_like(q),
    ]
    return A, B


def assemble_V(jet, zeta: complex, coeffs: ModelCoefficients) -> np.ndarray:
    A, B = lax_coefficients(jet, coeffs)
    shape = np.shape(A[0])
    v = np.zeros(shape + (2, 2), dtype=complex)
    for c in range(6):
        f = 1j * zeta**c
        v[..., 0, 0] += f * A[c]
        v[..., 0, 1] += f * np.conj(B[c])
        v[..., 1, 0] += f * B[c]
        v[..., 1, 1] -= f * A[c]
    return v


def curvature_field(field_fn: Field, grid: Grid1D, t: float, zeta: complex,
                    dt_fd: float = DEFAULT_DT_FD, coeffs: ModelCoefficients | None = None,
                    taper: float | None = DEFAULT_TAPER, decay_tol: float = DECAY_TOL) -> np.ndarray:
    """Pointwise U_t - V_x + UV - VU on the grid, shape (n, 2, 2)."""
    if coeffs is None:
        coeffs = field_fn.coeffs
    q, qt = fd_time_derivative(field_fn, grid, t, dt_fd, True, decay_tol)
    w = edge_taper(grid, taper) if taper else np.ones(grid.n)
    jet = derivative_jet(w * q, grid, 4)
    u = assemble_U(jet[0], zeta)
    v = assemble_V(jet, zeta, coeffs)
    ut = np.zeros_like(u)
    ut[:, 0, 1] = 1j * np.conj(w * qt)
    ut[:, 1, 0] = 1j * (w * qt)
    vx = np.empty_like(v)
    for i in range(2):
        for j in range(2):
            vx[:, i, j] = spectral_derivative_array(v[:, i, j], grid.span, 1)
    return ut - vx + u @ v - v @ u


def zero_curvature_residual(field_fn: Field, grid: Grid1D, t: float, zeta: complex,
                            dt_fd: float = DEFAULT_DT_FD, coeffs: ModelCoefficients | None = None,
                            taper: float | None = DEFAULT_TAPER, decay_tol: float = DECAY_TOL) -> float:
    """Max over the grid of the entrywise modulus of U_t - V_x + [U, V]."""
    r = curvature_field(field_fn, grid, t, zeta, dt_fd, coeffs, taper, decay_tol)
    return float(np.max(np.abs(r)))


def zero_curvature_verdicts(field_fn: Field, grid: Grid1D, t: float, zetas,
                            tolerance: float = 1e-5, **kw) -> list[Verdict]:
    out = []
    for z in zetas:
        val = zero_curvature_residual(field_fn, grid, t, complex(z), **kw)
        out.append(Verdict.below(f"zero_curvature[zeta={complex(z)}]", val, tolerance))
    return out
