"""Classical-field and classical-detector reductions.

The classical field limit sends hbar_f -> 0 holding alpha_k^2 hbar_f fixed;
a classical wave of amplitude f corresponds to alpha_k^2 hbar_f =
beta omega f^2 with beta = pi in (1+1)D and 4 pi^3 in (3+1)D (c = 1).  Under
it the vacuum pieces vanish like hbar_f while the coherent pieces are
invariant, so the limit can be evaluated at any finite hbar_f.

The classical detector limit additionally sends hbar_d -> 0 at fixed gap
energy delta_e under the resonance condition omega = Omega = delta_e/hbar_d.
In (1+1)D this makes the accelerated and static responses coincide; the
mirror case retains the non-convergent sin^2(delta_e z0 / hbar_d) factor,
which is reported at the given finite hbar_d (peak_analysis exposes the
envelope study instead of a fabricated limit).  In (3+1)D the closed forms
only hold for delta_e/(hbar_d a) << 1, where the two motions no longer
coincide.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.optimize import brentq

from .closedform import (
    Boundary,
    Dim,
    Motion,
    PhysParams,
    ScenarioSpec,
    TransitionResult,
    transition,
)
from .errors import DomainError
from .numkernel import EULER_GAMMA

__all__ = [
    "ClassicalFieldParams",
    "PeakReport",
    "beta_for_dim",
    "to_classical_field",
    "resonance_params",
    "resonance_transition",
    "resonance_classical_1d",
    "resonance_classical_3d",
    "peak_analysis",
    "gap_for_first_zero",
]

RESONANCE_REGIME_THRESHOLD = 0.1


def beta_for_dim(dim: Dim) -> float:
    """Dimension constant of the classical-amplitude map (c = 1)."""
    return math.pi if dim is Dim.D1 else 4.0 * math.pi**3


@dataclass(frozen=True)
class ClassicalFieldParams:
    """Inputs of the double-classical reductions.

    f: classical mode amplitude; delta_e: fixed atomic gap energy; hbar_d:
    detector action constant (the classical-detector limit drives it down);
    the remaining fields mirror PhysParams.
    """

    f: float
    delta_e: float
    hbar_d: float
    a: float
    z0: float = 0.0
    theta: float = math.pi / 2.0
    kperp_dot_xperp: float = 0.0
    lam: float = 1.0

    def __post_init__(self):
        if self.f < 0.0:
            raise DomainError("classical amplitude f must be non-negative")
        for name in ("delta_e", "hbar_d", "a", "lam"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class PeakReport:
    """Peak and first zero of Y(y) = sin^2(y)/y."""

    y_peak: float
    value_peak: float
    first_zero: float


def to_classical_field(p: PhysParams, f: float, dim: Dim) -> PhysParams:
    """Parameter point carrying the classical wave of amplitude f.

    Enforces alpha_k^2 hbar_f = beta omega f^2 at the hbar_f already in p
    (callers pick how small); the exact rescaling invariance
    P_alpha(hbar_f, alpha) = P_alpha(hbar_f/s, sqrt(s) alpha) makes the
    choice immaterial while P_vac scales away like hbar_f.
    """
    if f < 0.0:
        raise DomainError("classical amplitude f must be non-negative")
    alpha = math.sqrt(beta_for_dim(dim) * p.omega * f * f / p.hbar_f)
    return p.with_(alpha_k=alpha)


def resonance_params(cp: ClassicalFieldParams, dim: Dim) -> PhysParams:
    """Classical-field PhysParams at resonance omega = Omega = delta_e/hbar_d."""
    freq = cp.delta_e / cp.hbar_d
    base = PhysParams(a=cp.a, omega=freq, Omega=freq, z0=cp.z0, theta=cp.theta,
                      kperp_dot_xperp=cp.kperp_dot_xperp, lam=cp.lam,
                      hbar_f=1.0, hbar_d=cp.hbar_d)
    return to_classical_field(base, cp.f, dim)


def resonance_transition(cp: ClassicalFieldParams, scenario: ScenarioSpec) -> TransitionResult:
    """Full closed-form result under classical-field substitution at resonance."""
    return transition(scenario, resonance_params(cp, scenario.dim))


def resonance_classical_1d(cp: ClassicalFieldParams, mirror: bool,
                           motion: Motion) -> float:
    """(1+1)D double-classical coherent probability at finite hbar_d.

    Mirror: (2 lam^2 beta f^2 / (delta_e a)) sin^2(delta_e z0 / hbar_d);
    free:    lam^2 beta f^2 / (2 a delta_e).  Both are independent of the
    atom's state of motion by construction, so ``motion`` only documents
    which scenario is being reduced.
    """
    del motion
    beta = beta_for_dim(Dim.D1)
    if mirror:
        return (2.0 * cp.lam**2 * beta * cp.f**2 / (cp.delta_e * cp.a)
                * math.sin(cp.delta_e * cp.z0 / cp.hbar_d) ** 2)
    return cp.lam**2 * beta * cp.f**2 / (2.0 * cp.a * cp.delta_e)


def _check_resonance_regime(cp: ClassicalFieldParams) -> None:
    ratio = cp.delta_e / (cp.hbar_d * cp.a)
    if ratio > RESONANCE_REGIME_THRESHOLD:
        warnings.warn(
            f"delta_e/(hbar_d a) = {ratio:.3g} exceeds "
            f"{RESONANCE_REGIME_THRESHOLD:g}; the (3+1)D double-classical "
            "forms hold only in the large-acceleration regime", stacklevel=3)


def resonance_classical_3d(cp: ClassicalFieldParams, mirror: bool,
                           motion: Motion) -> float:
    """(3+1)D double-classical coherent probability (large-acceleration regime).

    Valid for delta_e/(hbar_d a) << 1 (warned beyond 0.1).  Unlike (1+1)D
    the accelerated and static reductions differ.  The free static form is
    derived at z0 = 0 and carries no z0 dependence; the mirror forms keep
    their sin^2/cos^2(delta_e z0 .../hbar_d) factors explicitly.
    """
    _check_resonance_regime(cp)
    beta = beta_for_dim(Dim.D3)
    base = cp.lam**2 * beta * cp.f**2 / math.pi**3
    kx2 = math.sin(cp.kperp_dot_xperp) ** 2
    log_term = EULER_GAMMA + math.log(
        cp.delta_e * math.sin(cp.theta) / (2.0 * cp.hbar_d * cp.a))
    if mirror:
        if motion is Motion.ACCELERATED:
            return (4.0 * base / (cp.hbar_d * cp.a**2)
                    * math.sin(cp.delta_e * cp.z0 * math.cos(cp.theta) / cp.hbar_d) ** 2
                    * kx2 * log_term**2)
        return (4.0 * base * cp.hbar_d / cp.delta_e**2
                * math.cos(cp.delta_e * cp.z0 / cp.hbar_d) ** 2 * kx2)
    if motion is Motion.ACCELERATED:
        return (base / (cp.hbar_d * cp.a**2) * log_term**2
                * math.cos(cp.kperp_dot_xperp) ** 2)
    return base * cp.hbar_d / cp.delta_e**2 * kx2


def peak_analysis() -> PeakReport:
    """Peak and first zero of Y(y) = sin^2(y)/y on (0, pi].

    The stationary condition on (0, pi) reduces to tan(y) = 2y (root
    bracketed in [1, 1.5]); the first zero is the first positive root of
    sin(y).
    """
    y_peak = brentq(lambda y: 2.0 * y * math.cos(y) - math.sin(y), 1.0, 1.5,
                    xtol=1e-14)
    first_zero = brentq(math.sin, 2.0, 4.0, xtol=1e-14)
    return PeakReport(y_peak=y_peak,
                      value_peak=math.sin(y_peak) ** 2 / y_peak,
                      first_zero=first_zero)


def gap_for_first_zero(z0: float, hbar_d: float) -> float:
    """Gap energy placing the first envelope zero at the mirror distance z0."""
    if z0 <= 0.0:
        raise DomainError("gap_for_first_zero requires z0 > 0")
    if hbar_d <= 0.0:
        raise DomainError("hbar_d must be positive")
    return math.pi * hbar_d / z0


# Convenience for sweeps over the two boundary/motion axes.
def _scenario(dim: Dim, motion: Motion, mirror: bool) -> ScenarioSpec:
    return ScenarioSpec(dim, motion, Boundary.MIRROR if mirror else Boundary.FREE)
