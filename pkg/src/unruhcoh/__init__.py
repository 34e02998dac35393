"""Two-level detector response to a single-mode coherent scalar photon.

Closed-form transition probabilities for the eight scenarios (two spacetime
dimensions x accelerated/static atom x mirror/free), their classical-field
and classical-detector limits, and an independent numerical-quadrature
oracle that validates every closed form.
"""

from .closedform import (
    Boundary,
    Dim,
    ExactBranch,
    Motion,
    PhaseSet,
    PhysParams,
    ScenarioSpec,
    TransitionResult,
    all_scenarios,
    phase_set,
    transition,
)
from .errors import AccuracyError, DomainError
from .numkernel import (
    EULER_GAMMA,
    bessel_k_imag_order,
    bessel_k_small_x,
    complex_log_gamma,
    gamma_abs_imag,
    gamma_phase,
)
from .oracle import (
    AmplitudeResult,
    QuadratureConfig,
    amplitude_coherent,
    amplitude_vac,
    bessel_oracle,
    gamma_half_line,
    p_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "AmplitudeResult",
    "Boundary",
    "Dim",
    "DomainError",
    "EULER_GAMMA",
    "ExactBranch",
    "Motion",
    "PhaseSet",
    "PhysParams",
    "QuadratureConfig",
    "ScenarioSpec",
    "TransitionResult",
    "all_scenarios",
    "amplitude_coherent",
    "amplitude_vac",
    "bessel_k_imag_order",
    "bessel_k_small_x",
    "bessel_oracle",
    "complex_log_gamma",
    "gamma_abs_imag",
    "gamma_half_line",
    "gamma_phase",
    "p_numeric",
    "phase_set",
    "transition",
    "__version__",
]
