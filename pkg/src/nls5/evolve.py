"""Pseudo-spectral time integration of the fifth-order NLS equation.

The equation is written q_t = L q + N(q), where L is diagonal in Fourier
space, L(k) = -i*Omega(k), and N collects the nonlinear groups.  Two
exponential integrators are provided; both integrate L exactly:

* ``lawson_rk4``: classical RK4 on the integrating-factor variable
  exp(-L t) q_hat.  The default scheme.
* ``etdrk4``: Cox-Matthews exponential time differencing.  Its error depends
  on how fast N varies in time rather than on |Omega(k)| dt, which makes it
  the scheme of choice for runs through soliton collisions.

Every nonlinear group contains x-derivatives (up to third order in the
fifth-order bracket), so explicit stages are only stable on a band of
wavenumbers.  ``spectral_mask`` builds that band from the 2/3 rule, a
stability bound for the derivative nonlinearities and, for Lawson, a
temporal Nyquist bound |Omega(k)| dt <= 2 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _fft
from .errors import AmbiguousPeakError, BlowUpError
from .field import FieldFrame, Grid1D, check_decay, mass, momentum, nonlinear_terms, spatial_operator, derivative_jet
from .spectral_data import ModelCoefficients

SCHEMES = ("lawson_rk4", "etdrk4")
MAX_DT = 0.1
STABILITY_LIMIT = 2.0
# linear phase per step allowed in convergence studies; beyond it the edge
# modes are outside the asymptotic regime of the Richardson estimate
ASYMPTOTIC_PHASE = 1.0
_ETD_CONTOUR_POINTS = 32


def dispersion_omega(k, coeffs: ModelCoefficients):
    """Linear frequency: plane waves exp(i(kx - Omega t)) solve the linear part."""
    k = np.asarray(k, dtype=float)
    c3, c4, c5 = coeffs.as_tuple()
    out = 0.5 * k**2 + c3 * k**3 - c4 * k**4 - c5 * k**5
    return float(out) if out.ndim == 0 else out


def rhs_eval(frame: FieldFrame, coeffs: ModelCoefficients) -> FieldFrame:
    """dq/dt = i * S(q) with all derivatives spectral."""
    jet = derivative_jet(frame.values, frame.grid, 5)
    return FieldFrame(frame.grid, frame.t, 1j * spatial_operator(jet, coeffs))


# -- wavenumber band -----------------------------------------------------------

def hump_amplitude(values: np.ndarray) -> float:
    """Sum of the heights of the humps of |q| above 1% of its maximum.

    Upper estimate for the modulus reached when the humps collide.
    """
    a = np.abs(values)
    top = float(a.max()) if a.size else 0.0
    if top == 0.0:
        return 0.0
    left, right = np.roll(a, 1), np.roll(a, -1)
    peaks = (a > left) & (a >= right) & (a > 0.01 * top)
    return max(top, float(a[peaks].sum()))


def stiffness(k, coeffs: ModelCoefficients, amplitude: float):
    """Size of the linearised derivative nonlinearities at wavenumber k."""
    c3, c4, c5 = (abs(c) for c in coeffs.as_tuple())
    ak = np.abs(np.asarray(k, dtype=float))
    a2 = amplitude * amplitude
    return a2 * (10 * c5 * ak**3 + 10 * c4 * ak**2 + (6 * c3 + 30 * c5 * a2) * ak)


def spectral_mask(grid: Grid1D, dt: float, coeffs: ModelCoefficients, scheme: str = "lawson_rk4",
                  amplitude: float = 1.0, nonlinear: bool = True, k_cut: float | None = None,
                  max_phase: float = 2.0 * math.pi) -> np.ndarray:
    """0/1 weights of the Fourier modes kept during a nonlinear run.

    ``max_phase`` bounds |Omega(k)| dt for the Lawson scheme.
    """
    k = grid.k
    if not nonlinear:
        return np.ones(grid.n)
    keep = np.abs(k) <= (2.0 / 3.0) * (math.pi / grid.dx)
    if k_cut is not None:
        keep &= np.abs(k) <= k_cut
    else:
        keep &= dt * stiffness(k, coeffs, amplitude) <= STABILITY_LIMIT
        if scheme == "lawson_rk4":
            keep &= np.abs(dispersion_omega(k, coeffs)) * dt <= max_phase
    return keep.astype(float)


# -- steppers ------------------------------------------------------------------

class Stepper:
    """Fourier-space stepper for one grid, coefficient set, dt and scheme."""

    def __init__(self, grid: Grid1D, coeffs: ModelCoefficients, dt: float,
                 scheme: str = "lawson_rk4", mask: np.ndarray | None = None, nonlinear: bool = True):
        if scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")
        self.grid, self.coeffs, self.dt, self.scheme = grid, coeffs, float(dt), scheme
        self.nonlinear = nonlinear
        self.mask = np.ones(grid.n) if mask is None else np.asarray(mask, dtype=float)
        k = grid.k
        lin = -1j * dispersion_omega(k, coeffs)
        self.E = np.exp(lin * dt)
        self.E2 = np.exp(lin * dt / 2)
        c3, c4, c5 = coeffs.as_tuple()
        self._orders = 3 if c5 else 2 if c4 else 1 if c3 else 0
        self._ik = np.stack([(1j * k) ** o for o in range(self._orders + 1)])
        if scheme == "etdrk4":
            self._etd_coefficients(lin * dt)

    def _etd_coefficients(self, z: np.ndarray):
        h = self.dt
        small = np.abs(z) <= 1.0
        Q = np.empty_like(z)
        f1, f2, f3 = np.empty_like(z), np.empty_like(z), np.empty_like(z)
        # contour mean around each small z avoids cancellation in the phi-functions
        r = np.exp(2j * np.pi * (np.arange(1, _ETD_CONTOUR_POINTS + 1) - 0.5) / _ETD_CONTOUR_POINTS)
        zc = z[small][:, None] + r[None, :]
        ez = np.exp(zc)
        Q[small] = h * np.mean((np.exp(zc / 2) - 1) / zc, axis=1)
        f1[small] = h * np.mean((-4 - zc + ez * (4 - 3 * zc + zc**2)) / zc**3, axis=1)
        f2[small] = h * np.mean((2 + zc + ez * (zc - 2)) / zc**3, axis=1)
        f3[small] = h * np.mean((-4 - 3 * zc - zc**2 + ez * (4 - zc)) / zc**3, axis=1)
        zb = z[~small]
        eb = np.exp(zb)
        Q[~small] = h * (np.exp(zb / 2) - 1) / zb
        f1[~small] = h * (-4 - zb + eb * (4 - 3 * zb + zb**2)) / zb**3
        f2[~small] = h * (2 + zb + eb * (zb - 2)) / zb**3
        f3[~small] = h * (-4 - 3 * zb - zb**2 + eb * (4 - zb)) / zb**3
        self.Q, self.f1, self.f2, self.f3 = Q, f1, f2, f3

    def nonlinear_hat(self, qh: np.ndarray) -> np.ndarray:
        if not self.nonlinear:
            return np.zeros_like(qh)
        d = _fft.ifft(self._ik * qh[None, :], axis=-1)
        q = d[0]
        q1 = d[1] if self._orders >= 1 else None
        q2 = d[2] if self._orders >= 2 else None
        q3 = d[3] if self._orders >= 3 else None
        return self.mask * _fft.fft(1j * nonlinear_terms(q, q1, q2, q3, self.coeffs))

    def step(self, qh: np.ndarray) -> np.ndarray:
        N, E, E2, dt = self.nonlinear_hat, self.E, self.E2, self.dt
        if self.scheme == "lawson_rk4":
            k1 = N(qh)
            k2 = N(E2 * (qh + 0.5 * dt * k1))
            k3 = N(E2 * qh + 0.5 * dt * k2)
            k4 = N(E * qh + dt * E2 * k3)
            return E * qh + dt / 6.0 * (E * k1 + 2.0 * E2 * (k2 + k3) + k4)
        nv = N(qh)
        a = E2 * qh + self.Q * nv
        na = N(a)
        b = E2 * qh + self.Q * na
        nb = N(b)
        c = E2 * a + self.Q * (2.0 * nb - nv)
        nc = N(c)
        return E * qh + nv * self.f1 + 2.0 * (na + nb) * self.f2 + nc * self.f3


def lawson_rk4_step(frame: FieldFrame, dt: float, coeffs: ModelCoefficients,
                    nonlinear: bool = True, mask: np.ndarray | None = None) -> FieldFrame:
    """Advance one integrating-factor RK4 step.

    Without an explicit ``mask`` the band of ``spectral_mask`` is used for
    nonlinear steps and every mode is kept for linear ones.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if mask is None:
        mask = spectral_mask(frame.grid, dt, coeffs, "lawson_rk4",
                             hump_amplitude(frame.values), nonlinear)
    st = Stepper(frame.grid, coeffs, dt, "lawson_rk4", mask, nonlinear)
    with np.errstate(over="ignore", invalid="ignore"):
        qh = st.step(st.mask * _fft.fft(frame.values))
    if not np.all(np.isfinite(qh)):
        raise BlowUpError("non-finite values in Lawson RK4 step", step=1, last_frame=frame)
    return FieldFrame(frame.grid, frame.t + dt, _fft.ifft(qh))


# -- runs ------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    t_end: float = 1.0
    scheme: str = "lawson_rk4"
    monitor_stride: int = 100
    nonlinear: bool = True
    k_cut: float | None = None

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.dt > MAX_DT:
            raise ValueError(f"dt = {self.dt} exceeds the sanity bound {MAX_DT}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if int(self.monitor_stride) != self.monitor_stride or self.monitor_stride < 1:
            raise ValueError("monitor_stride must be a positive integer")
        if not math.isfinite(self.t_end):
            raise ValueError("t_end must be finite")

    def to_dict(self) -> dict:
        return {"dt": self.dt, "t_end": self.t_end, "scheme": self.scheme,
                "monitor_stride": self.monitor_stride, "nonlinear": self.nonlinear,
                "k_cut": self.k_cut}


@dataclass
class Trajectory:
    frames: list[FieldFrame]
    diagnostics: list[dict] = field(default_factory=list)
    dt: float = 0.0
    steps: int = 0
    k_band: float = 0.0

    @property
    def times(self) -> np.ndarray:
        return np.array([f.t for f in self.frames])

    @property
    def final(self) -> FieldFrame:
        return self.frames[-1]

    def mass_drift(self) -> float:
        m = np.array([d["mass"] for d in self.diagnostics])
        if m[0] == 0:
            return float(np.max(np.abs(m)))
        return float(np.max(np.abs(m - m[0])) / m[0])


def _record(frame: FieldFrame) -> dict:
    return {"t": frame.t, "mass": mass(frame), "momentum": momentum(frame)}


def run_simulation(initial: FieldFrame, cfg: IntegratorConfig, coeffs: ModelCoefficients,
                   require_decay: bool = True, mask: np.ndarray | None = None) -> Trajectory:
    """Integrate from ``initial.t`` to ``cfg.t_end``.

    The step count is ceil(span/dt); the step actually used (<= cfg.dt) is
    stored on the trajectory.  Frames are kept every ``monitor_stride``
    steps plus the final one.
    """
    if require_decay and np.any(initial.values != 0):
        check_decay(initial)
    span = cfg.t_end - initial.t
    if not span > 0:
        raise ValueError(f"t_end ({cfg.t_end}) must be after the initial time ({initial.t})")
    steps = max(1, math.ceil(span / cfg.dt - 1e-9))
    dt = span / steps
    if mask is None:
        mask = spectral_mask(initial.grid, dt, coeffs, cfg.scheme, hump_amplitude(initial.values),
                             cfg.nonlinear, cfg.k_cut)
    st = Stepper(initial.grid, coeffs, dt, cfg.scheme, mask, cfg.nonlinear)
    kept = initial.grid.k[mask > 0]
    start = FieldFrame(initial.grid, initial.t, _fft.ifft(st.mask * _fft.fft(initial.values)))
    traj = Trajectory([start], [_record(start)], dt=dt, steps=steps,
                      k_band=float(np.abs(kept).max()) if kept.size else 0.0)
    qh = _fft.fft(start.values)
    last = start
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, steps + 1):
            qh = st.step(qh)
            if not np.all(np.isfinite(qh)):
                raise BlowUpError(f"non-finite values at step {i} (t={initial.t + i * dt:.6g})",
                                  step=i, last_frame=last)
            if i % cfg.monitor_stride == 0 or i == steps:
                t = cfg.t_end if i == steps else initial.t + i * dt
                last = FieldFrame(initial.grid, t, _fft.ifft(qh))
                traj.frames.append(last)
                traj.diagnostics.append(_record(last))
    return traj


# -- peaks and velocities -------------------------------------------------------

def locate_peak(frame: FieldFrame) -> float:
    """Position of max |q|: grid argmax refined by a 3-point parabola."""
    a = np.abs(frame.values)
    i = int(np.argmax(a))
    top = a[i]
    ties = np.flatnonzero(a == top)
    n = len(a)
    if len(ties) > 1 and any(min(abs(j - i), n - abs(j - i)) > 1 for j in ties):
        raise AmbiguousPeakError(f"|q| has {len(ties)} equal maxima at t={frame.t}")
    ym, y0, yp = a[(i - 1) % n], top, a[(i + 1) % n]
    den = ym - 2.0 * y0 + yp
    p = 0.5 * (ym - yp) / den if den != 0 else 0.0
    return float(frame.grid.x_min + (i + p) * frame.grid.dx)


def track_peak_velocity(traj: Trajectory) -> float:
    """Least-squares slope of the tracked peak position against time."""
    t = traj.times
    x = np.array([locate_peak(f) for f in traj.frames])
    span = traj.frames[0].grid.span
    x = np.unwrap(x, period=span)
    slope, _ = np.polyfit(t, x, 1)
    return float(slope)


def fourier_interpolant(frame: FieldFrame):
    """Band-limited interpolant x -> q(x) of a periodic frame."""
    g = frame.grid
    qh = _fft.fft(frame.values) / g.n
    k = g.k

    def q_at(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.exp(1j * np.outer(x - g.x_min, k)) @ qh
        return out
    return q_at


def frame_peaks(frame: FieldFrame, min_height: float = 0.05) -> list[tuple[float, float]]:
    """Local maxima of |q| above ``min_height``, refined on the Fourier interpolant.

    Returns [(x, |q|)] sorted by position.
    """
    from scipy.optimize import minimize_scalar

    a = np.abs(frame.values)
    left, right = np.roll(a, 1), np.roll(a, -1)
    idx = np.flatnonzero((a > left) & (a >= right) & (a > min_height))
    interp = fourier_interpolant(frame)
    dx = frame.grid.dx
    out = []
    for i in idx:
        x0 = frame.grid.x[i]
        res = minimize_scalar(lambda s: -abs(interp(s)[0]), bounds=(x0 - dx, x0 + dx),
                              method="bounded", options={"xatol": 1e-11})
        out.append((float(res.x), float(-res.fun)))
    return sorted(out)


@dataclass
class ConvergenceResult:
    order: float
    errors: tuple[float, float]
    dts: tuple[float, float, float]
    skipped: bool = False


def self_convergence_order(initial: FieldFrame, coeffs: ModelCoefficients, t_end: float,
                           dt: float = 4e-3, scheme: str = "lawson_rk4", nonlinear: bool = True,
                           floor: float = 1e-13) -> ConvergenceResult:
    """Observed order log2(e1/e2) from runs with dt, dt/2 and dt/4.

    e1 = |u_dt - u_dt/2|_inf and e2 = |u_dt/2 - u_dt/4|_inf.  All three runs
    share one wavenumber band, chosen so that |Omega(k)| dt <= ASYMPTOTIC_PHASE
    for the largest step as well as the usual stability limits.  If e2 sits
    at the rounding floor the order is NaN and ``skipped`` is set.
    """
    mask = spectral_mask(initial.grid, dt, coeffs, "lawson_rk4", hump_amplitude(initial.values),
                         nonlinear, max_phase=ASYMPTOTIC_PHASE)
    finals = []
    dts = (dt, dt / 2, dt / 4)
    for h in dts:
        cfg = IntegratorConfig(dt=h, t_end=t_end, scheme=scheme,
                               monitor_stride=10**9, nonlinear=nonlinear)
        finals.append(run_simulation(initial, cfg, coeffs, mask=mask).final.values)
    e1 = float(np.max(np.abs(finals[0] - finals[1])))
    e2 = float(np.max(np.abs(finals[1] - finals[2])))
    scale = max(float(np.max(np.abs(finals[2]))), 1e-300)
    if e2 <= floor * scale or e1 <= floor * scale:
        return ConvergenceResult(float("nan"), (e1, e2), dts, skipped=True)
    return ConvergenceResult(math.log2(e1 / e2), (e1, e2), dts)
