"""Exact N-soliton solutions of a fifth-order NLS equation and their validation."""

from .errors import (
    AmbiguousPeakError,
    BlowUpError,
    ContractError,
    DomainTooSmallError,
    GridError,
    KernelOverflowError,
    NLS5Error,
    NumericalDegeneracyError,
    SpectralDataError,
)
from .evolve import (
    IntegratorConfig,
    Trajectory,
    dispersion_omega,
    lawson_rk4_step,
    rhs_eval,
    run_simulation,
    self_convergence_order,
    track_peak_velocity,
)
from .field import (
    DiagnosticsReport,
    FieldFrame,
    Grid1D,
    Verdict,
    mass,
    momentum,
    pde_residual,
    sample_field,
    spectral_derivative,
)
from .lax import assemble_U, assemble_V, zero_curvature_residual
from .soliton import (
    SolitonEvaluator,
    evaluate_q,
    kernel_matrix,
    one_soliton_closed_form,
    peak_amplitude,
    soliton_velocity,
    two_soliton_closed_form,
)
from .spectral_data import (
    ModelCoefficients,
    SpectralDatum,
    SpectralSet,
    make_set,
    theta_phase,
    validate_spectral_set,
    xi_offset,
)

__version__ = "0.1.0"
