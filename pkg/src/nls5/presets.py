"""Named parameter sets used by the CLI and the test-suite.

``figure1``..``figure3`` share the published one-soliton parameters
(a1 = 0.2, b1 = 0.3, xi1 = 0, c3 = c4 = c5 = alpha_1 = 1).  The two-soliton
figures come without parameters; ``figure4``/``figure5`` use a reconstruction
that shows a clean collision and are labelled as such in every output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Grid1D
from .spectral_data import ModelCoefficients, SpectralSet, make_set

PUBLISHED = "published parameters"
RECONSTRUCTION = "reconstruction parameters"

UNIT = ModelCoefficients(1.0, 1.0, 1.0)


@dataclass(frozen=True)
class Preset:
    name: str
    sset: SpectralSet
    label: str
    grid: Grid1D
    times: tuple[float, ...] = (0.0,)
    # simulate defaults
    sim_grid: Grid1D | None = None
    t_from: float = 0.0
    t_span: float = 1.0
    dt: float = 1e-3
    scheme: str = "lawson_rk4"
    monitor_stride: int = 100


def _one_soliton(name: str) -> Preset:
    return Preset(name, make_set([0.2 + 0.3j], [1.0], [1.0], UNIT), PUBLISHED,
                  Grid1D(-40.0, 40.0, 1024), (0.0,), sim_grid=Grid1D(-60.0, 60.0, 2048))


def _two_soliton(name: str) -> Preset:
    return Preset(name, make_set([0.2 + 0.3j, -0.15 + 0.25j], [1.0, 1.0], [1.0, 1.0], UNIT),
                  RECONSTRUCTION, Grid1D(-64.0, 64.0, 2048), (-20.0, 0.0, 20.0),
                  sim_grid=Grid1D(-80.0, 80.0, 1024), t_from=-30.0, t_span=60.0,
                  dt=2.5e-4, scheme="etdrk4", monitor_stride=4000)


PRESETS: dict[str, Preset] = {
    "figure1": _one_soliton("figure1"),
    "figure2": _one_soliton("figure2"),
    "figure3": _one_soliton("figure3"),
    "figure4": _two_soliton("figure4"),
    "figure5": _two_soliton("figure5"),
    "nls": Preset("nls", make_set([0.3j], coeffs=ModelCoefficients()), "focusing NLS reduction",
                  Grid1D(-40.0, 40.0, 1024), sim_grid=Grid1D(-60.0, 60.0, 2048)),
    "hirota": Preset("hirota", make_set([0.2 + 0.3j], coeffs=ModelCoefficients(1.0, 0.0, 0.0)),
                     "Hirota reduction", Grid1D(-40.0, 40.0, 1024), sim_grid=Grid1D(-60.0, 60.0, 2048)),
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class FigureSpec:
    figure: int
    preset: str
    quantities: tuple[str, ...]
    x_range: tuple[float, float]
    t_range: tuple[float, float]
    nx: int
    nt: int
    slice_times: tuple[float, ...]


# Slice times are not given with the published figures; these are our choices.
FIGURES: dict[int, FigureSpec] = {
    1: FigureSpec(1, "figure1", ("abs",), (-20.0, 20.0), (-10.0, 10.0), 401, 101, (-5.0, 0.0, 5.0)),
    2: FigureSpec(2, "figure2", ("re",), (-20.0, 20.0), (-10.0, 10.0), 401, 101, (-5.0, 0.0, 5.0)),
    3: FigureSpec(3, "figure3", ("im",), (-20.0, 20.0), (-10.0, 10.0), 401, 101, (-5.0, 0.0, 5.0)),
    4: FigureSpec(4, "figure4", ("abs", "re", "im"), (-30.0, 30.0), (-20.0, 20.0), 301, 81, ()),
    5: FigureSpec(5, "figure5", ("abs", "re", "im"), (-30.0, 30.0), (-20.0, 20.0), 301, 81,
                  (-20.0, 0.0, 20.0)),
}
