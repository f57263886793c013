"""Equation coefficients, reflectionless spectral data and soliton phases.

The equation coefficients are stored as ``c3``, ``c4``, ``c5`` (third-,
fourth- and fifth-order terms).  In the usual notation for this equation
they are written alpha, gamma and delta; the renaming keeps them apart from
the norming constants ``alpha_k`` of the individual solitons.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import SpectralDataError

DUPLICATE_TOL = 1e-12


@dataclass(frozen=True)
class ModelCoefficients:
    c3: float = 0.0
    c4: float = 0.0
    c5: float = 0.0

    def __post_init__(self):
        for name in ("c3", "c4", "c5"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in self.as_tuple())

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c3, self.c4, self.c5)

    def reduced(self, kind: str) -> "ModelCoefficients":
        """Coefficients of one of the named reductions.

        ``nls`` zeroes everything, ``hirota`` keeps only c3, ``fourth`` only
        c4 and ``fifth`` only c5.
        """
        if kind == "nls":
            return ModelCoefficients(0.0, 0.0, 0.0)
        if kind == "hirota":
            return ModelCoefficients(self.c3, 0.0, 0.0)
        if kind == "fourth":
            return ModelCoefficients(0.0, self.c4, 0.0)
        if kind == "fifth":
            return ModelCoefficients(0.0, 0.0, self.c5)
        raise ValueError(f"unknown reduction {kind!r}")


@dataclass(frozen=True)
class SpectralDatum:
    """One discrete eigenvalue with its norming vector (alpha_k, beta_k)."""

    zeta: complex
    alpha_k: complex = 1.0
    beta_k: complex = 1.0

    def __post_init__(self):
        for name in ("zeta", "alpha_k", "beta_k"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def a(self) -> float:
        return self.zeta.real

    @property
    def b(self) -> float:
        return self.zeta.imag

    def gauge_fixed(self) -> "SpectralDatum":
        """Return the equivalent datum with beta_k = 1.

        Scaling (alpha_k, beta_k) by a common nonzero factor leaves the
        N-soliton field unchanged, so (alpha_k/beta_k, 1) describes the same
        solution.
        """
        if self.beta_k == 0:
            raise SpectralDataError("cannot normalise a datum with beta_k = 0")
        return SpectralDatum(self.zeta, self.alpha_k / self.beta_k, 1.0)


@dataclass(frozen=True)
class SpectralSet:
    data: tuple[SpectralDatum, ...]
    coeffs: ModelCoefficients = field(default_factory=ModelCoefficients)

    def __post_init__(self):
        object.__setattr__(self, "data", tuple(self.data))

    @property
    def n(self) -> int:
        return len(self.data)

    @property
    def zetas(self) -> np.ndarray:
        return np.array([d.zeta for d in self.data], dtype=complex)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([d.alpha_k for d in self.data], dtype=complex)

    @property
    def betas(self) -> np.ndarray:
        return np.array([d.beta_k for d in self.data], dtype=complex)

    def with_coeffs(self, coeffs: ModelCoefficients) -> "SpectralSet":
        return SpectralSet(self.data, coeffs)

    def gauge_fixed(self) -> "SpectralSet":
        return SpectralSet(tuple(d.gauge_fixed() for d in self.data), self.coeffs)

    # -- serialisation -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "coeffs": {"c3": self.coeffs.c3, "c4": self.coeffs.c4, "c5": self.coeffs.c5},
            "solitons": [
                {
                    "zeta": _pair(d.zeta),
                    "alpha": _pair(d.alpha_k),
                    "beta": _pair(d.beta_k),
                }
                for d in self.data
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SpectralSet":
        try:
            c = doc.get("coeffs", {})
            coeffs = ModelCoefficients(c.get("c3", 0.0), c.get("c4", 0.0), c.get("c5", 0.0))
            data = []
            for item in doc["solitons"]:
                data.append(
                    SpectralDatum(
                        _unpair(item["zeta"]),
                        _unpair(item.get("alpha", [1.0, 0.0])),
                        _unpair(item.get("beta", [1.0, 0.0])),
                    )
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise SpectralDataError(f"malformed spectral document: {exc}") from exc
        return cls(tuple(data), coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SpectralSet":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpectralDataError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _unpair(p) -> complex:
    if isinstance(p, (int, float)):
        return complex(p)
    re, im = p
    return complex(float(re), float(im))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_spectral_set(sset: SpectralSet) -> ValidationReport:
    """Check the hypotheses the N-soliton formula relies on.

    Violations are returned, never raised.
    """
    problems: list[str] = []
    if not sset.coeffs.is_finite:
        problems.append(f"non-finite equation coefficients {sset.coeffs.as_tuple()}")
    if sset.n == 0:
        problems.append("spectral set is empty (N >= 1 required)")
    for i, d in enumerate(sset.data):
        vals = (d.zeta, d.alpha_k, d.beta_k)
        if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in vals):
            problems.append(f"soliton {i}: non-finite entry")
            continue
        if not d.zeta.imag > 0:
            problems.append(f"soliton {i}: eigenvalue {d.zeta} not in upper half-plane")
        if d.alpha_k == 0 and d.beta_k == 0:
            problems.append(f"soliton {i}: zero norming vector")
    for i in range(sset.n):
        for j in range(i + 1, sset.n):
            if abs(sset.data[i].zeta - sset.data[j].zeta) < DUPLICATE_TOL:
                problems.append(f"solitons {i} and {j}: duplicate eigenvalue {sset.data[i].zeta}")
    return ValidationReport(tuple(problems))


def require_valid(sset: SpectralSet) -> None:
    report = validate_spectral_set(sset)
    if not report.ok:
        raise SpectralDataError("; ".join(report.violations))


def _check_finite(*values) -> None:
    for v in values:
        arr = np.asarray(v)
        if not np.all(np.isfinite(arr)):
            raise SpectralDataError("non-finite input to phase evaluation")


def phase_rate(zeta: complex, coeffs: ModelCoefficients) -> complex:
    """Time slope of the phase: i*zeta^2*(16 c5 zeta^3 - 8 c4 zeta^2 - 4 c3 zeta + 1)."""
    poly = ((16.0 * coeffs.c5 * zeta - 8.0 * coeffs.c4) * zeta - 4.0 * coeffs.c3) * zeta + 1.0
    return 1j * poly * zeta * zeta


def theta_phase(zeta: complex, coeffs: ModelCoefficients, x, t):
    """Phase theta = i*zeta*x + phase_rate(zeta)*t; broadcasts over x and t."""
    _check_finite(zeta, x, t, coeffs.as_tuple())
    zeta = complex(zeta)
    out = 1j * zeta * np.asarray(x, dtype=float) + phase_rate(zeta, coeffs) * np.asarray(t, dtype=float)
    if np.ndim(out) == 0:
        return complex(out)
    return out


def xi_offset(alpha_k: complex) -> float:
    """Return ln|alpha_k|, the position offset carried by the norming constant."""
    alpha_k = complex(alpha_k)
    if alpha_k == 0:
        raise SpectralDataError("xi is undefined for alpha_k = 0")
    return math.log(abs(alpha_k))


def make_set(zetas: Sequence[complex], alphas: Iterable[complex] | None = None,
             betas: Iterable[complex] | None = None,
             coeffs: ModelCoefficients | None = None) -> SpectralSet:
    zetas = list(zetas)
    alphas = [1.0] * len(zetas) if alphas is None else list(alphas)
    betas = [1.0] * len(zetas) if betas is None else list(betas)
    if not (len(zetas) == len(alphas) == len(betas)):
        raise SpectralDataError("zeta, alpha and beta lists differ in length")
    data = tuple(SpectralDatum(z, a, b) for z, a, b in zip(zetas, alphas, betas))
    return SpectralSet(data, coeffs or ModelCoefficients())
