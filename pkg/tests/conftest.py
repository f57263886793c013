import numpy as np
import pytest

from nls5.field import Grid1D
from nls5.spectral_data import ModelCoefficients, make_set

UNIT = ModelCoefficients(1.0, 1.0, 1.0)


@pytest.fixture
def unit_coeffs():
    return UNIT


@pytest.fixture
def fig1_set():
    return make_set([0.2 + 0.3j], [1.0], [1.0], UNIT)


@pytest.fixture
def fig4_set():
    return make_set([0.2 + 0.3j, -0.15 + 0.25j], [1.0, 1.0], [1.0, 1.0], UNIT)


@pytest.fixture
def grid_40():
    return Grid1D(-40.0, 40.0, 1024)


def random_one_soliton_sets(count, seed=7, b_range=(0.15, 0.6)):
    """Valid one-soliton sets in the beta = 1 gauge with random coefficients."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        zeta = complex(rng.uniform(-0.5, 0.5), rng.uniform(*b_range))
        alpha = np.exp(rng.uniform(-1.0, 1.0)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        c = ModelCoefficients(*rng.uniform(-1.0, 1.0, 3))
        out.append(make_set([zeta], [alpha], [1.0], c))
    return out


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for a criterion and assert on it."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(label, value, tolerance, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        lines.append(f"{status}  {label}: {value:.3e} (tol {tolerance:g}){' ' + detail if detail else ''}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
